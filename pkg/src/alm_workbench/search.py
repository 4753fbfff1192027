"""Exhaustive enumeration of small AL-monoids up to isomorphism.

The search fixes a lattice first, then fills the + table, then the ∗ table.
Zero is always placed at the bottom of the lattice: in a finite AL-monoid an
element x < 0 generates an idempotent e = mx ≤ x, and a∗(a∧b)+b = a∨b with
a = 0, b = e forces e = 0. :func:`brute_force_models` drops that assumption
and serves as the oracle for small orders.

Partial tables hold -1 in unfilled cells; an axiom instance is checked as soon
as every cell it reads is filled.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import permutations, product
from typing import Any

import numpy as np

from alm_workbench import config
from alm_workbench.algebra import FiniteAlgebra, lattice_from_order, reflexive_transitive_closure
from alm_workbench.axioms import MONOID_LATTICE_AXIOMS, is_al_monoid, violations
from alm_workbench.errors import AlmError, BoundExceededError, NotALatticeError, UnknownPropertyError
from alm_workbench.logs import debug_log, log
from alm_workbench.tracing import create_span

LABELS = "0abcdefghijklmnopqrstuvwxyz"
MODES = ("enumerate", "count", "counterexample")
ORACLE_BOUND = 3

# tables compared in this order when choosing a canonical representative
_KEY_TABLES = ("meet", "plus", "star")


@dataclass(frozen=True)
class SearchSpec:
    order: int
    properties: tuple[str, ...] = ()
    mode: str = "enumerate"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise AlmError(f"unknown search mode {self.mode!r}")
        if self.order < 1:
            raise AlmError("search order must be at least 1")


# -- canonical forms ----------------------------------------------------------


def _relabel(alg: FiniteAlgebra, q: np.ndarray, op: str) -> np.ndarray:
    """Table of ``op`` after moving old element q[i] to position i."""
    p = np.empty_like(q)
    p[q] = np.arange(len(q))
    return p[alg.table(op)[np.ix_(q, q)]]


def _orderings(alg: FiniteAlgebra) -> Iterator[np.ndarray]:
    others = [x for x in alg.elements if x != alg.zero]
    for rest in permutations(others):
        yield np.array([alg.zero, *rest], dtype=np.int64)


def canonical_key(alg: FiniteAlgebra) -> tuple[int, ...]:
    """Least table tuple over relabelings that put zero first."""
    return min(
        tuple(int(v) for op in _KEY_TABLES for v in _relabel(alg, q, op).ravel())
        for q in _orderings(alg)
    )


def canonical_form(alg: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    best = min(
        _orderings(alg),
        key=lambda q: tuple(int(v) for op in _KEY_TABLES for v in _relabel(alg, q, op).ravel()),
    )
    tables = {op: _relabel(alg, best, op) for op in ("plus", "star", "join", "meet")}
    return FiniteAlgebra(
        name=name or alg.name, names=tuple(LABELS[: alg.n]), zero=0, **tables
    )


# -- lattices -----------------------------------------------------------------


def _order_key(leq: np.ndarray) -> tuple[int, ...]:
    n = len(leq)
    middle = range(1, n - 1)
    keys = []
    for rest in permutations(middle):
        q = np.array([0, *rest, n - 1]) if n > 1 else np.array([0])
        keys.append(tuple(int(v) for v in leq[np.ix_(q, q)].ravel()))
    return min(keys)


def lattices(n: int) -> list[np.ndarray]:
    """One order matrix per lattice shape on n elements; bottom 0, top n-1."""
    if n == 1:
        return [np.ones((1, 1), dtype=bool)]
    names = LABELS[:n]
    inner = [(i, j) for i in range(1, n - 1) for j in range(i + 1, n - 1)]
    seen: set[tuple[int, ...]] = set()
    found = []
    for bits in range(1 << len(inner)):
        rel = np.eye(n, dtype=bool)
        rel[0, :] = True
        rel[:, n - 1] = True
        for k, (i, j) in enumerate(inner):
            if bits >> k & 1:
                rel[i, j] = True
        if not np.array_equal(reflexive_transitive_closure(rel), rel):
            continue
        try:
            lattice_from_order(rel, names)
        except NotALatticeError:
            continue
        key = _order_key(rel)
        if key not in seen:
            seen.add(key)
            found.append(rel)
    return found


# -- partial-table checks -----------------------------------------------------


def _get(T: np.ndarray, i: Any, j: Any, ki: Any = True, kj: Any = True) -> tuple[Any, Any]:
    """T[i, j] where the indices are known, with the knownness of the result."""
    known = np.logical_and(ki, kj)
    value = T[np.where(known, i, 0), np.where(known, j, 0)]
    known = known & (value >= 0)
    return np.where(known, value, 0), known


def _plus_consistent(P: np.ndarray, leq: np.ndarray) -> bool:
    n = len(P)
    x, y, z = np.indices((n, n, n))
    xz, k_xz = _get(P, x, z)
    yz, k_yz = _get(P, y, z)
    if np.any(leq[x, y] & k_xz & k_yz & ~leq[xz, yz]):
        return False
    xy, k_xy = _get(P, x, y)
    left, k_left = _get(P, xy, z, k_xy)
    right, k_right = _get(P, x, yz, True, k_yz)
    return not np.any(k_left & k_right & (left != right))


def _star_consistent(
    P: np.ndarray, S: np.ndarray, join: np.ndarray, meet: np.ndarray, leq: np.ndarray
) -> bool:
    n = len(P)
    a, b = np.indices((n, n))
    # a∗(a∧b) + b = a∨b
    s, k = _get(S, a, meet[a, b])
    if np.any(k & (P[s, b] != join[a, b])):
        return False
    # [a∗(a∨b)] ∧ [b∗(a∨b)] = 0
    top = join[a, b]
    s1, k1 = _get(S, a, top)
    s2, k2 = _get(S, b, top)
    if np.any(k1 & k2 & (meet[s1, s2] != 0)):
        return False

    a, x, y = np.indices((n, n, n))
    # triangle: a∗x ≤ a∗y + y∗x
    ax, k_ax = _get(S, a, x)
    ay, k_ay = _get(S, a, y)
    yx, k_yx = _get(S, y, x)
    if np.any(k_ax & k_ay & k_yx & ~leq[ax, P[ay, yx]]):
        return False
    xy, k_xy = _get(S, x, y)
    for T in (P, join, meet):
        lhs, k_lhs = _get(S, T[a, x], T[a, y])
        if np.any(k_lhs & k_xy & ~leq[lhs, xy]):
            return False
    lhs, k_lhs = _get(S, ax, ay, k_ax, k_ay)
    return not np.any(k_lhs & k_xy & ~leq[lhs, xy])


# -- backtracking -------------------------------------------------------------


def _fill(
    table: np.ndarray,
    cells: list[tuple[int, int]],
    choices: Any,
    consistent: Any,
) -> Iterator[np.ndarray]:
    """Fill symmetric ``cells`` in order, yielding every consistent completion."""

    def extend(k: int) -> Iterator[np.ndarray]:
        if k == len(cells):
            yield table.copy()
            return
        i, j = cells[k]
        for v in choices(i, j):
            table[i, j] = table[j, i] = v
            if consistent(table):
                yield from extend(k + 1)
        table[i, j] = table[j, i] = -1

    yield from extend(0)


def _models_on(leq: np.ndarray) -> Iterator[FiniteAlgebra]:
    n = len(leq)
    names = LABELS[:n]
    join, meet = lattice_from_order(leq, names)
    identity = np.arange(n)

    P = np.full((n, n), -1, dtype=np.int64)
    P[0, :] = P[:, 0] = identity
    plus_cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    # x = x+0 ≤ x+y, so x+y lies above x∨y
    plus_choices = lambda i, j: [v for v in range(n) if leq[join[i, j], v]]  # noqa: E731

    for plus in _fill(P, plus_cells, plus_choices, lambda T: _plus_consistent(T, leq)):
        S = np.full((n, n), -1, dtype=np.int64)
        np.fill_diagonal(S, 0)
        S[0, :] = S[:, 0] = identity  # a∗0 = a from a∗(a∧0)+0 = a∨0
        star_cells = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
        star_choices = lambda i, j: range(1, n)  # noqa: E731
        check = lambda T: _star_consistent(plus, T, join, meet, leq)  # noqa: E731
        for star in _fill(S, star_cells, star_choices, check):
            alg = FiniteAlgebra(
                name="candidate", names=tuple(names), zero=0,
                plus=plus, star=star, join=join, meet=meet,
            )
            if is_al_monoid(alg):
                yield alg


def enumerate_models(n: int, *, bound: int = config.SEARCH_BOUND) -> list[FiniteAlgebra]:
    """One canonical representative per isomorphism class of AL-monoids of order n."""
    if n > bound:
        raise BoundExceededError(f"enumerate_models: order {n} exceeds bound {bound}")
    if n < 1:
        raise AlmError("model order must be at least 1")
    with create_span("enumerate_models", {"order": n}) as span:
        found: dict[tuple[int, ...], FiniteAlgebra] = {}
        shapes = lattices(n)
        for leq in shapes:
            for alg in _models_on(leq):
                key = canonical_key(alg)
                if key not in found:
                    found[key] = alg
        models = [
            canonical_form(found[key], name=f"m{n}-{k + 1}")
            for k, key in enumerate(sorted(found))
        ]
        span.set_attribute("alm.lattice_count", len(shapes))
        span.set_attribute("alm.model_count", len(models))
    log(f"order {n}: {len(models)} AL-monoids on {len(shapes)} lattices", debug_only=True)
    return models


def brute_force_models(n: int) -> list[FiniteAlgebra]:
    """Oracle: every labeled lattice with zero at index 0, every symmetric table pair.

    Makes no assumption about the position of zero in the order.
    """
    if n > ORACLE_BOUND:
        raise BoundExceededError(f"brute_force_models: order {n} exceeds bound {ORACLE_BOUND}")
    names = tuple(LABELS[:n])
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    upper = [(i, j) for i in range(n) for j in range(i, n)]
    found: dict[tuple[int, ...], FiniteAlgebra] = {}

    def symmetric(values: tuple[int, ...]) -> np.ndarray:
        T = np.zeros((n, n), dtype=np.int64)
        for (i, j), v in zip(upper, values, strict=True):
            T[i, j] = T[j, i] = v
        return T

    tables = [symmetric(v) for v in product(range(n), repeat=len(upper))]
    for bits in range(1 << len(offdiag)):
        rel = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(offdiag):
            if bits >> k & 1:
                rel[i, j] = True
        if np.any(rel & rel.T & ~np.eye(n, dtype=bool)):
            continue
        if not np.array_equal(reflexive_transitive_closure(rel), rel):
            continue
        try:
            join, meet = lattice_from_order(rel, names)
        except NotALatticeError:
            continue
        for plus in tables:
            base = FiniteAlgebra("oracle", names, 0, plus, plus, join, meet)
            if any(violations(base, ax).size for ax in MONOID_LATTICE_AXIOMS):
                continue
            for star in tables:
                alg = FiniteAlgebra("oracle", names, 0, plus, star, join, meet)
                if is_al_monoid(alg):
                    found.setdefault(canonical_key(alg), alg)
    debug_log(f"oracle order {n}: {len(found)} classes")
    return [canonical_form(found[key], name=f"m{n}-{k + 1}") for k, key in enumerate(sorted(found))]


# -- counterexamples ----------------------------------------------------------


@dataclass
class SearchOutcome:
    order: int
    models_checked: int
    algebra: FiniteAlgebra | None = None
    property_id: str | None = None
    witness: Any = None
    detail: str = ""

    @property
    def found(self) -> bool:
        return self.algebra is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "models_checked": self.models_checked,
            "found": self.found,
            "algebra": self.algebra.name if self.algebra else None,
            "property": self.property_id,
            "witness": self.witness,
            "detail": self.detail,
        }


def counterexample_search(spec: SearchSpec, *, bound: int = config.SEARCH_BOUND) -> SearchOutcome:
    """First model of order ≤ spec.order violating one of the requested properties."""
    from alm_workbench.theorems import REGISTRY, run_theorem

    unknown = [p for p in spec.properties if p not in REGISTRY]
    if unknown:
        raise UnknownPropertyError(f"unknown property id(s): {', '.join(unknown)}")
    checked = 0
    with create_span("counterexample_search", {"order": spec.order}) as span:
        for n in range(1, spec.order + 1):
            for alg in enumerate_models(n, bound=bound):
                checked += 1
                for pid in spec.properties:
                    result = run_theorem(pid, alg)
                    if not result.holds:
                        span.set_attribute("alm.found", True)
                        return SearchOutcome(
                            spec.order, checked, alg, pid, result.witness, result.detail
                        )
        span.set_attribute("alm.found", False)
    return SearchOutcome(spec.order, checked)
