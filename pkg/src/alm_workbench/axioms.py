"""Axiom checks for autometrized algebras and AL-monoids.

Every axiom is a vectorised predicate over index grids. A scan evaluates it on
all tuples at once and reports the first failing tuple in lexicographic index
order as the witness; :func:`replay` evaluates the same predicate at a single
witness.

Verdicts are conjunctions of axiom ids:

==================================  ============================================
verdict                             axiom ids
==================================  ============================================
is_autometrized                     plus.commutative, plus.identity, metric.*
is_lattice_ordered_autometrized     the above, plus.associative, plus.monotone,
                                    join.*, meet.*, lattice.absorption
is_al_monoid                        the above and al.*
is_representable                    is_lattice_ordered_autometrized and repr.*
==================================  ============================================

``plus.join_distributive`` is informational and feeds no verdict.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from alm_workbench.algebra import FiniteAlgebra

Predicate = Callable[..., np.ndarray]


@dataclass(frozen=True)
class Axiom:
    axiom_id: str
    arity: int
    predicate: Predicate
    description: str


@dataclass(frozen=True)
class AxiomResult:
    """Outcome of one axiom; ``witness`` is present iff the axiom fails."""

    axiom_id: str
    holds: bool
    witness: tuple[str, ...] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "axiom_id": self.axiom_id,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness else None,
        }


@dataclass
class AxiomReport:
    algebra: str
    results: list[AxiomResult]
    informational: list[AxiomResult] = field(default_factory=list)
    is_autometrized: bool = False
    is_lattice_ordered_autometrized: bool = False
    is_al_monoid: bool = False
    is_representable: bool = False

    @property
    def verdicts(self) -> dict[str, bool]:
        return {
            "is_autometrized": self.is_autometrized,
            "is_lattice_ordered_autometrized": self.is_lattice_ordered_autometrized,
            "is_al_monoid": self.is_al_monoid,
            "is_representable": self.is_representable,
        }

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.holds]

    def result(self, axiom_id: str) -> AxiomResult:
        for r in (*self.results, *self.informational):
            if r.axiom_id == axiom_id:
                return r
        raise KeyError(axiom_id)

    def to_dict(self) -> dict[str, Any]:
        return {
            "algebra": self.algebra,
            "results": [r.to_dict() for r in self.results],
            "informational": [r.to_dict() for r in self.informational],
            "verdicts": self.verdicts,
        }


# -- predicates ---------------------------------------------------------------


def _commutative(op: str) -> Predicate:
    def holds(A: FiniteAlgebra, x, y):
        T = A.table(op)
        return T[x, y] == T[y, x]

    return holds


def _associative(op: str) -> Predicate:
    def holds(A: FiniteAlgebra, x, y, z):
        T = A.table(op)
        return T[T[x, y], z] == T[x, T[y, z]]

    return holds


def _idempotent(op: str) -> Predicate:
    def holds(A: FiniteAlgebra, x):
        return A.table(op)[x, x] == x

    return holds


def _contraction(op: str) -> Predicate:
    # (aθx)∗(aθy) ≤ x∗y
    def holds(A: FiniteAlgebra, a, x, y):
        T = A.table(op)
        return A.leq[A.star[T[a, x], T[a, y]], A.star[x, y]]

    return holds


def _identity(A: FiniteAlgebra, x):
    return (A.plus[A.zero, x] == x) & (A.plus[x, A.zero] == x)


def _absorption(A: FiniteAlgebra, x, y):
    return (A.join[x, A.meet[x, y]] == x) & (A.meet[x, A.join[x, y]] == x)


def _monotone(A: FiniteAlgebra, x, y, z):
    preserved = A.leq[A.plus[x, z], A.plus[y, z]] & A.leq[A.plus[z, x], A.plus[z, y]]
    return ~A.leq[x, y] | preserved


def _join_distributive(A: FiniteAlgebra, x, y, z):
    return A.plus[x, A.join[y, z]] == A.join[A.plus[x, y], A.plus[x, z]]


def _positive(A: FiniteAlgebra, x, y):
    return A.leq[A.zero, A.star[x, y]]


def _definite(A: FiniteAlgebra, x, y):
    return (A.star[x, y] == A.zero) == (x == y)


def _triangle(A: FiniteAlgebra, a, b, c):
    return A.leq[A.star[a, b], A.plus[A.star[a, c], A.star[c, b]]]


def _join_decomposition(A: FiniteAlgebra, a, b):
    # a∗(a∧b) + b = a∨b
    return A.plus[A.star[a, A.meet[a, b]], b] == A.join[a, b]


def _disjoint_remainders(A: FiniteAlgebra, a, b):
    # [a∗(a∨b)] ∧ [b∗(a∨b)] = 0
    top = A.join[a, b]
    return A.meet[A.star[a, top], A.star[b, top]] == A.zero


def _semiregular(A: FiniteAlgebra, a):
    return ~A.leq[A.zero, a] | (A.star[a, A.zero] == a)


MONOID_LATTICE_AXIOMS: tuple[Axiom, ...] = (
    Axiom("plus.commutative", 2, _commutative("plus"), "x+y = y+x"),
    Axiom("plus.associative", 3, _associative("plus"), "(x+y)+z = x+(y+z)"),
    Axiom("plus.identity", 1, _identity, "0+x = x = x+0"),
    Axiom("join.commutative", 2, _commutative("join"), "x∨y = y∨x"),
    Axiom("join.associative", 3, _associative("join"), "(x∨y)∨z = x∨(y∨z)"),
    Axiom("join.idempotent", 1, _idempotent("join"), "x∨x = x"),
    Axiom("meet.commutative", 2, _commutative("meet"), "x∧y = y∧x"),
    Axiom("meet.associative", 3, _associative("meet"), "(x∧y)∧z = x∧(y∧z)"),
    Axiom("meet.idempotent", 1, _idempotent("meet"), "x∧x = x"),
    Axiom("lattice.absorption", 2, _absorption, "x∨(x∧y) = x = x∧(x∨y)"),
    Axiom("plus.monotone", 3, _monotone, "x ≤ y ⇒ x+z ≤ y+z and z+x ≤ z+y"),
)

INFORMATIONAL_AXIOMS: tuple[Axiom, ...] = (
    Axiom("plus.join_distributive", 3, _join_distributive, "x+(y∨z) = (x+y)∨(x+z)"),
)

METRIC_AXIOMS: tuple[Axiom, ...] = (
    Axiom("metric.positive", 2, _positive, "0 ≤ a∗b"),
    Axiom("metric.definite", 2, _definite, "a∗b = 0 iff a = b"),
    Axiom("metric.symmetric", 2, _commutative("star"), "a∗b = b∗a"),
    Axiom("metric.triangle", 3, _triangle, "a∗b ≤ a∗c + c∗b"),
)

CONTRACTION_OPS = ("plus", "join", "meet", "star")

AL_AXIOMS: tuple[Axiom, ...] = (
    Axiom("al.join_decomposition", 2, _join_decomposition, "a∗(a∧b) + b = a∨b"),
    *(
        Axiom(f"al.contraction.{op}", 3, _contraction(op), f"(a{op}x)∗(a{op}y) ≤ x∗y")
        for op in CONTRACTION_OPS
    ),
    Axiom("al.disjoint_remainders", 2, _disjoint_remainders, "[a∗(a∨b)]∧[b∗(a∨b)] = 0"),
)

REPRESENTABLE_AXIOMS: tuple[Axiom, ...] = (
    Axiom("repr.semiregular", 1, _semiregular, "0 ≤ a ⇒ a∗0 = a"),
    *(
        Axiom(f"repr.contraction.{op}", 3, _contraction(op), f"(a{op}x)∗(a{op}y) ≤ x∗y")
        for op in CONTRACTION_OPS
    ),
)

ALL_AXIOMS: dict[str, Axiom] = {
    ax.axiom_id: ax
    for ax in (
        *MONOID_LATTICE_AXIOMS,
        *INFORMATIONAL_AXIOMS,
        *METRIC_AXIOMS,
        *AL_AXIOMS,
        *REPRESENTABLE_AXIOMS,
    )
}


# -- scanning -----------------------------------------------------------------


def violations(alg: FiniteAlgebra, axiom: Axiom) -> np.ndarray:
    """All failing index tuples, in lexicographic order (shape ``(k, arity)``)."""
    grids = np.indices((alg.n,) * axiom.arity)
    ok = np.broadcast_to(axiom.predicate(alg, *grids), grids.shape[1:])
    return np.argwhere(~ok)


def scan(alg: FiniteAlgebra, axiom: Axiom) -> AxiomResult:
    bad = violations(alg, axiom)
    if bad.size == 0:
        return AxiomResult(axiom.axiom_id, True)
    return AxiomResult(axiom.axiom_id, False, alg.labels(int(i) for i in bad[0]))


def replay(alg: FiniteAlgebra, result: AxiomResult) -> bool:
    """True when the axiom instance at ``result.witness`` is violated."""
    if result.witness is None:
        return False
    axiom = ALL_AXIOMS[result.axiom_id]
    idx = [np.array(alg.index(lbl)) for lbl in result.witness]
    return not bool(axiom.predicate(alg, *idx))


def _scan_all(alg: FiniteAlgebra, axioms: Iterable[Axiom]) -> list[AxiomResult]:
    return [scan(alg, ax) for ax in axioms]


def _all_hold(results: Iterable[AxiomResult]) -> bool:
    return all(r.holds for r in results)


def check_monoid_lattice(alg: FiniteAlgebra) -> list[AxiomResult]:
    """Commutative monoid, lattice, and monotonicity of + in each argument."""
    return _scan_all(alg, MONOID_LATTICE_AXIOMS)


def check_metric(alg: FiniteAlgebra) -> list[AxiomResult]:
    """Positivity, definiteness, symmetry and the triangle inequality of ∗."""
    return _scan_all(alg, METRIC_AXIOMS)


def check_representable(alg: FiniteAlgebra) -> list[AxiomResult]:
    """Semiregularity plus contraction of all four operations."""
    return _scan_all(alg, REPRESENTABLE_AXIOMS)


def check_al_monoid(alg: FiniteAlgebra) -> AxiomReport:
    """Evaluate every axiom and aggregate the four verdicts."""
    monoid_lattice = check_monoid_lattice(alg)
    metric = check_metric(alg)
    al = _scan_all(alg, AL_AXIOMS)
    representable = check_representable(alg)

    by_id = {r.axiom_id: r for r in (*monoid_lattice, *metric)}
    autometrized = (
        by_id["plus.commutative"].holds and by_id["plus.identity"].holds and _all_hold(metric)
    )
    lattice_ordered = autometrized and _all_hold(monoid_lattice)

    return AxiomReport(
        algebra=alg.name,
        results=[*monoid_lattice, *metric, *al, *representable],
        informational=_scan_all(alg, INFORMATIONAL_AXIOMS),
        is_autometrized=autometrized,
        is_lattice_ordered_autometrized=lattice_ordered,
        is_al_monoid=lattice_ordered and _all_hold(al),
        is_representable=lattice_ordered and _all_hold(representable),
    )


def is_al_monoid(alg: FiniteAlgebra) -> bool:
    """Fast yes/no: stops at the first failing axiom."""
    for axiom in (*MONOID_LATTICE_AXIOMS, *METRIC_AXIOMS, *AL_AXIOMS):
        if violations(alg, axiom).size:
            return False
    return True
