"""Congruences, the ideal ↔ congruence correspondence, and quotients.

A partition θ of the carrier is a congruence when

    c1  a≡b ⇒ a+x ≡ b+x
    c3  a≡b and x∗y ≤ a∗b ⇒ x≡y

c2 (∗), c4 (∨) and c5 (∧) compatibility are evaluated alongside. An
equivalence passing c1 and c3 but failing one of them is a remark
counterexample: c1 and c3 are expected to imply the other three.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from alm_workbench import config
from alm_workbench.algebra import OPERATIONS, FiniteAlgebra
from alm_workbench.axioms import AxiomReport, check_al_monoid
from alm_workbench.errors import (
    AlmError,
    BoundExceededError,
    IllDefinedOperationError,
    NotAnIdealError,
)
from alm_workbench.ideals import IdealSet, as_ideal, enumerate_ideals
from alm_workbench.logs import debug_log
from alm_workbench.tracing import algebra_span

CLAUSES = ("c1", "c2", "c3", "c4", "c5")
PRIMARY_CLAUSES = ("c1", "c3")
_COMPATIBILITY = {"c1": "plus", "c2": "star", "c4": "join", "c5": "meet"}


@dataclass(frozen=True)
class Congruence:
    """A partition of the carrier; classes are ordered by least member."""

    universe: FiniteAlgebra = field(compare=False, hash=False)
    classes: tuple[frozenset[int], ...]

    @classmethod
    def from_classes(cls, alg: FiniteAlgebra, classes: Iterable[Iterable[int]]) -> Congruence:
        blocks = [frozenset(c) for c in classes if c]
        seen = sorted(x for b in blocks for x in b)
        if seen != list(alg.elements):
            raise AlmError(f"not a partition of the carrier of {alg.name}")
        return cls(alg, tuple(sorted(blocks, key=min)))

    @classmethod
    def from_labels(cls, alg: FiniteAlgebra, classes: Iterable[Iterable[str]]) -> Congruence:
        return cls.from_classes(alg, ([alg.index(lbl) for lbl in c] for c in classes))

    @classmethod
    def from_class_ids(cls, alg: FiniteAlgebra, ids: Sequence[int]) -> Congruence:
        blocks: dict[int, set[int]] = {}
        for x, k in enumerate(ids):
            blocks.setdefault(k, set()).add(x)
        return cls.from_classes(alg, blocks.values())

    @property
    def class_of(self) -> tuple[int, ...]:
        ids = [0] * self.universe.n
        for k, block in enumerate(self.classes):
            for x in block:
                ids[x] = k
        return tuple(ids)

    def relation(self) -> np.ndarray:
        ids = np.array(self.class_of)
        return ids[:, None] == ids[None, :]

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def zero_class(self) -> frozenset[int]:
        return self.classes[self.class_of[self.universe.zero]]

    def refines(self, other: Congruence) -> bool:
        return bool(np.all(~self.relation() | other.relation()))

    def representative(self, k: int) -> int:
        return min(self.classes[k])

    def labels(self) -> list[list[str]]:
        return [list(self.universe.labels(sorted(c))) for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(c) + "}" for c in self.labels()) + "}"


@dataclass(frozen=True)
class ClauseResult:
    clause: str
    holds: bool
    witness: tuple[str, ...] | None = None


@dataclass
class CongruenceCheck:
    """Per-clause results; ``holds`` is c1 ∧ c3."""

    clauses: list[ClauseResult]

    def clause(self, name: str) -> ClauseResult:
        return next(c for c in self.clauses if c.clause == name)

    @property
    def holds(self) -> bool:
        return all(self.clause(c).holds for c in PRIMARY_CLAUSES)

    @property
    def witness(self) -> tuple[str, ...] | None:
        for name in PRIMARY_CLAUSES:
            if not self.clause(name).holds:
                return self.clause(name).witness
        return None

    @property
    def remark_counterexample(self) -> bool:
        return self.holds and not all(c.holds for c in self.clauses)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "remark_counterexample": self.remark_counterexample,
            "clauses": {
                c.clause: {"holds": c.holds, "witness": list(c.witness) if c.witness else None}
                for c in self.clauses
            },
        }


def _first(alg: FiniteAlgebra, failing: np.ndarray) -> tuple[str, ...] | None:
    bad = np.argwhere(failing)
    return alg.labels(int(i) for i in bad[0]) if bad.size else None


def is_congruence(alg: FiniteAlgebra, theta: Congruence) -> CongruenceCheck:
    """Evaluate c1–c5; witnesses are (a, b, x) or, for c3, (a, b, x, y)."""
    E = theta.relation()
    n = alg.n
    a, b, x = np.indices((n, n, n))
    results: list[ClauseResult] = []
    for clause in CLAUSES:
        if clause == "c3":
            a4, b4, x4, y4 = np.indices((n, n, n, n))
            below = alg.leq[alg.star[x4, y4], alg.star[a4, b4]]
            failing = E[a4, b4] & below & ~E[x4, y4]
        else:
            T = alg.table(_COMPATIBILITY[clause])
            failing = E[a, b] & ~E[T[a, x], T[b, x]]
        witness = _first(alg, failing)
        results.append(ClauseResult(clause, witness is None, witness))
    return CongruenceCheck(results)


def congruence_from_ideal(alg: FiniteAlgebra, I: IdealSet) -> Congruence:
    """a≡b ⇔ a∗b ∈ I."""
    as_ideal(alg, I)
    inside = np.zeros(alg.n, dtype=bool)
    inside[list(I.members)] = True
    rel = inside[alg.star]
    transitive = ~(rel[:, :, None] & rel[None, :, :]) | rel[:, None, :]
    if not (np.all(rel == rel.T) and np.all(transitive) and np.all(np.diag(rel))):
        bad = np.argwhere(~transitive)
        witness = alg.labels(int(i) for i in bad[0]) if bad.size else ()
        raise IllDefinedOperationError(
            f"a∗b ∈ {I} is not an equivalence on {alg.name}", witness
        )
    ids: list[int] = [-1] * alg.n
    for x in alg.elements:
        if ids[x] < 0:
            for y in np.flatnonzero(rel[x]):
                ids[int(y)] = x
    return Congruence.from_class_ids(alg, ids)


def ideal_from_congruence(alg: FiniteAlgebra, theta: Congruence) -> IdealSet:
    """The class of 0; raises NotAnIdealError when that class is not an ideal."""
    return as_ideal(alg, theta.zero_class())


def _restricted_growth(n: int) -> Iterator[list[int]]:
    """Every set partition of range(n), as restricted growth strings."""
    if n == 0:
        yield []
        return
    ids = [0] * n

    def extend(i: int, top: int) -> Iterator[list[int]]:
        if i == n:
            yield list(ids)
            return
        for k in range(top + 2):
            ids[i] = k
            yield from extend(i + 1, max(top, k))

    yield from extend(1, 0)


def _sort_key(theta: Congruence) -> tuple[int, tuple[int, ...]]:
    zero = theta.zero_class()
    return (len(zero), tuple(sorted(zero)))


def enumerate_congruences(
    alg: FiniteAlgebra, *, bound: int = config.IDEAL_BOUND
) -> list[Congruence]:
    """All congruences, ordered like the ideals they correspond to.

    Up to ``config.PARTITION_BOUND`` elements every partition is tested;
    above it the congruences are read off the ideals.
    """
    if alg.n > bound:
        raise BoundExceededError(f"enumerate_congruences: carrier size {alg.n} exceeds bound {bound}")
    with algebra_span("enumerate_congruences", alg) as span:
        if alg.n <= config.PARTITION_BOUND:
            candidates = (Congruence.from_class_ids(alg, ids) for ids in _restricted_growth(alg.n))
            found = [theta for theta in candidates if is_congruence(alg, theta)]
            span.set_attribute("alm.strategy", "partitions")
        else:
            found = [congruence_from_ideal(alg, I) for I in enumerate_ideals(alg, bound=bound)]
            span.set_attribute("alm.strategy", "ideals")
        span.set_attribute("alm.congruence_count", len(found))
    debug_log(f"{len(found)} congruences", alg=alg)
    return sorted(found, key=_sort_key)


def remark_counterexamples(alg: FiniteAlgebra) -> list[tuple[Congruence, CongruenceCheck]]:
    """Partitions passing c1 and c3 but failing c2, c4 or c5."""
    if alg.n > config.PARTITION_BOUND:
        raise BoundExceededError(
            f"remark_counterexamples: carrier size {alg.n} exceeds bound {config.PARTITION_BOUND}"
        )
    out = []
    for ids in _restricted_growth(alg.n):
        theta = Congruence.from_class_ids(alg, ids)
        check = is_congruence(alg, theta)
        if check.remark_counterexample:
            out.append((theta, check))
    return out


# -- quotients ----------------------------------------------------------------


@dataclass
class Quotient:
    algebra: FiniteAlgebra
    congruence: Congruence
    projection: list[int]  # carrier index → class index
    report: AxiomReport

    def to_dict(self) -> dict[str, Any]:
        return {
            "algebra": self.algebra.name,
            "classes": self.congruence.labels(),
            "projection": {
                self.congruence.universe.label(x): self.algebra.label(k)
                for x, k in enumerate(self.projection)
            },
            "is_al_monoid": self.report.is_al_monoid,
        }


def _induced_table(alg: FiniteAlgebra, theta: Congruence, op: str) -> np.ndarray:
    ids = np.array(theta.class_of)
    image = ids[alg.table(op)]
    k = len(theta)
    table = np.zeros((k, k), dtype=np.int64)
    for i, left in enumerate(theta.classes):
        for j, right in enumerate(theta.classes):
            block = image[np.ix_(sorted(left), sorted(right))]
            if np.any(block != block.flat[0]):
                r, s = (int(v) for v in np.argwhere(block != block.flat[0])[0])
                a0, b0 = min(left), min(right)
                a1, b1 = sorted(left)[r], sorted(right)[s]
                raise IllDefinedOperationError(
                    f"induced {op} not well defined: {alg.label(a0)},{alg.label(b0)} and "
                    f"{alg.label(a1)},{alg.label(b1)} land in different classes",
                    alg.labels((a0, b0, a1, b1)),
                )
            table[i, j] = block.flat[0]
    return table


def quotient_by(alg: FiniteAlgebra, theta: Congruence, name: str | None = None) -> Quotient:
    """A/θ with operations induced on classes and the canonical projection."""
    tables = {op: _induced_table(alg, theta, op) for op in OPERATIONS}
    labels = tuple(alg.label(theta.representative(k)) for k in range(len(theta)))
    zero_id = theta.class_of[alg.zero]
    algebra = FiniteAlgebra(
        name=name or f"{alg.name}/{{{','.join(alg.labels(sorted(theta.zero_class())))}}}",
        names=labels,
        zero=zero_id,
        **tables,
    )
    report = check_al_monoid(algebra)
    if not report.is_al_monoid:
        debug_log(f"quotient {algebra.name} fails {[r.axiom_id for r in report.failures()]}")
    return Quotient(algebra, theta, list(theta.class_of), report)


def quotient(alg: FiniteAlgebra, M: IdealSet, name: str | None = None) -> Quotient:
    """A/M through the congruence a≡b ⇔ a∗b ∈ M."""
    return quotient_by(alg, congruence_from_ideal(alg, M), name)


# -- the correspondence -------------------------------------------------------


@dataclass
class BijectionReport:
    holds: bool
    ideal_count: int
    congruence_count: int
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "ideal_count": self.ideal_count,
            "congruence_count": self.congruence_count,
            "failures": self.failures,
        }


def bijection_check(
    alg: FiniteAlgebra,
    ideals: list[IdealSet] | None = None,
    congruences: list[Congruence] | None = None,
) -> BijectionReport:
    """Round-trip ideals through congruences and back, in both directions."""
    ideals = ideals if ideals is not None else enumerate_ideals(alg)
    congruences = congruences if congruences is not None else enumerate_congruences(alg)
    failures: list[str] = []
    for I in ideals:
        try:
            theta = congruence_from_ideal(alg, I)
        except IllDefinedOperationError as e:
            failures.append(f"{I}: {e}")
            continue
        if not is_congruence(alg, theta):
            failures.append(f"{I}: induced partition {theta} is not a congruence")
        if theta.zero_class() != I.members:
            failures.append(f"{I}: class of 0 in {theta} differs")
    for theta in congruences:
        try:
            zero_class = ideal_from_congruence(alg, theta)
        except NotAnIdealError as e:
            failures.append(f"{theta}: class of 0: {e}")
            continue
        if congruence_from_ideal(alg, zero_class) != theta:
            failures.append(f"{theta}: not induced by its class of 0")
    if len(ideals) != len(congruences):
        failures.append(f"{len(ideals)} ideals but {len(congruences)} congruences")
    return BijectionReport(not failures, len(ideals), len(congruences), failures)


def lattice_isomorphism_check(
    alg: FiniteAlgebra, ideals: list[IdealSet] | None = None
) -> tuple[bool, tuple[str, str] | None]:
    """I ⊆ J ⇔ θ_I refines θ_J, for every pair of ideals.

    Returns the verdict and the first offending pair of ideals.
    """
    ideals = ideals if ideals is not None else enumerate_ideals(alg)
    thetas = [congruence_from_ideal(alg, I) for I in ideals]
    for I, tI in zip(ideals, thetas, strict=True):
        for J, tJ in zip(ideals, thetas, strict=True):
            if (I.members <= J.members) != tI.refines(tJ):
                return False, (str(I), str(J))
    return True, None
