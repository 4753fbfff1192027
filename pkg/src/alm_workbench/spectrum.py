"""The prime spectrum with its hull-kernel topology, values, and the μ map.

Points of every space below are prime indices in enumeration order (or value
indices for Val(a)); subsets are bitmasks, see :mod:`alm_workbench.topology`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import numpy as np

from alm_workbench.algebra import FiniteAlgebra
from alm_workbench.errors import UnknownElementError
from alm_workbench.ideals import (
    IdealSet,
    classify_all,
    enumerate_ideals,
    is_ideal,
    principal_ideal,
    prime_ideals,
)
from alm_workbench.topology import FiniteTopology, is_continuous, mask, members


@dataclass
class Spectrum:
    algebra: FiniteAlgebra
    primes: list[IdealSet]
    basic_opens: list[int]  # S(a) per element
    topology: FiniteTopology

    @property
    def carrier(self) -> int:
        return (1 << len(self.primes)) - 1

    def S(self, a: int) -> int:
        return self.basic_opens[a]

    def S_ideal(self, I: IdealSet | frozenset[int]) -> int:
        """{P : I ⊄ P}."""
        inside = I.members if isinstance(I, IdealSet) else I
        return mask(k for k, P in enumerate(self.primes) if not inside <= P.members)

    def primes_in(self, m: int) -> list[IdealSet]:
        return [self.primes[k] for k in members(m)]

    def to_dict(self) -> dict[str, Any]:
        alg = self.algebra
        return {
            "primes": [list(P.labels()) for P in self.primes],
            "basic_opens": {
                alg.label(a): members(self.S(a)) for a in alg.elements
            },
            "open_count": len(self.topology.opens),
            "discrete": self.topology.is_discrete(),
        }


def spectrum(alg: FiniteAlgebra, ideals: list[IdealSet] | None = None) -> Spectrum:
    primes = prime_ideals(alg, ideals)
    basic = [mask(k for k, P in enumerate(primes) if a not in P.members) for a in alg.elements]
    carrier = (1 << len(primes)) - 1
    return Spectrum(alg, primes, basic, FiniteTopology.generated(carrier, basic))


def _check_element(alg: FiniteAlgebra, a: int) -> None:
    if not 0 <= a < alg.n:
        raise UnknownElementError(f"element index {a} out of range for {alg.name}", 1)


# -- separation ---------------------------------------------------------------


@dataclass(frozen=True)
class Separation:
    P: IdealSet
    Q: IdealSet
    a: int
    b: int
    u: int
    v: int
    holds: bool
    failure: str | None = None

    def to_dict(self) -> dict[str, Any]:
        alg = self.P.universe
        return {
            "P": list(self.P.labels()),
            "Q": list(self.Q.labels()),
            "a": alg.label(self.a),
            "b": alg.label(self.b),
            "u": alg.label(self.u),
            "v": alg.label(self.v),
            "holds": self.holds,
            "failure": self.failure,
        }


@dataclass
class SeparationReport:
    pairs: list[Separation]

    @property
    def vacuous(self) -> bool:
        return not self.pairs

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.pairs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "vacuous": self.vacuous,
            "pairs": [s.to_dict() for s in self.pairs],
        }


def separate(spec: Spectrum, p: int, q: int) -> Separation:
    """Disjoint basic neighbourhoods for incomparable primes P, Q.

    With a ∈ P\\Q and b ∈ Q\\P: u = a∗(a∧b) ∉ Q, v = b∗(a∧b) ∉ P, u∧v = 0,
    and S(u) ∩ S(v) = ∅.
    """
    alg = spec.algebra
    P, Q = spec.primes[p], spec.primes[q]
    a = min(P.members - Q.members)
    b = min(Q.members - P.members)
    m = int(alg.meet[a, b])
    u, v = int(alg.star[a, m]), int(alg.star[b, m])

    failure = None
    if not spec.S(u) >> q & 1:
        failure = "u lies in Q"
    elif not spec.S(v) >> p & 1:
        failure = "v lies in P"
    elif int(alg.meet[u, v]) != alg.zero:
        failure = "u∧v ≠ 0"
    elif spec.S(u) & spec.S(v):
        failure = "S(u) and S(v) meet"
    return Separation(P, Q, a, b, u, v, failure is None, failure)


def separation_check(alg: FiniteAlgebra, spec: Spectrum | None = None) -> SeparationReport:
    spec = spec or spectrum(alg)
    pairs = []
    for p, q in combinations(range(len(spec.primes)), 2):
        P, Q = spec.primes[p].members, spec.primes[q].members
        if not (P <= Q or Q <= P):
            pairs.append(separate(spec, p, q))
    return SeparationReport(pairs)


def multiplicativity_witness(spec: Spectrum) -> tuple[str, str] | None:
    """First pair with S(u∧v) ≠ S(u) ∩ S(v)."""
    alg = spec.algebra
    for u in alg.elements:
        for v in alg.elements:
            if spec.S(int(alg.meet[u, v])) != spec.S(u) & spec.S(v):
                return alg.label(u), alg.label(v)
    return None


# -- minimal and maximal primes -----------------------------------------------


def polar(alg: FiniteAlgebra, a: int) -> frozenset[int]:
    """a^⊥ = {x : x∧a = 0}."""
    return frozenset(int(x) for x in np.flatnonzero(alg.meet[a] == alg.zero))


@dataclass
class ExtremePrimes:
    minimal: list[int]  # prime indices
    maximal: list[int]
    minimal_t2: bool
    maximal_t2: bool
    minimal_closed: dict[int, bool]  # element → S_m(a) closed in m(A)
    polar_failures: list[str] = field(default_factory=list)
    principal_whole: int | None = None  # some b with ⟨b⟩ = A

    @property
    def holds(self) -> bool:
        return self.minimal_t2 and self.maximal_t2 and all(self.minimal_closed.values())

    def to_dict(self, spec: Spectrum) -> dict[str, Any]:
        alg = spec.algebra
        return {
            "minimal": [list(spec.primes[k].labels()) for k in self.minimal],
            "maximal": [list(spec.primes[k].labels()) for k in self.maximal],
            "minimal_t2": self.minimal_t2,
            "maximal_t2": self.maximal_t2,
            "minimal_closed": {alg.label(a): ok for a, ok in self.minimal_closed.items()},
            "polar_failures": self.polar_failures,
            "principal_whole": (
                alg.label(self.principal_whole) if self.principal_whole is not None else None
            ),
        }


def is_t2_antichain(spec: Spectrum, antichain: list[int]) -> bool:
    return spec.topology.subspace(mask(antichain)).is_t2()


def minimal_maximal_primes(alg: FiniteAlgebra, spec: Spectrum | None = None) -> ExtremePrimes:
    spec = spec or spectrum(alg)
    k = len(spec.primes)
    sets = [P.members for P in spec.primes]
    minimal = [i for i in range(k) if not any(sets[j] < sets[i] for j in range(k))]
    maximal = [i for i in range(k) if not any(sets[i] < sets[j] for j in range(k))]
    m_mask = mask(minimal)
    m_space = spec.topology.subspace(m_mask)

    closed: dict[int, bool] = {}
    failures: list[str] = []
    for a in alg.elements:
        s_m = spec.S(a) & m_mask
        closed[a] = m_space.is_closed(s_m)
        perp = polar(alg, a)
        if not is_ideal(alg, perp):
            failures.append(f"{alg.label(a)}^⊥ is not an ideal")
            continue
        s_perp = spec.S_ideal(perp) & m_mask
        if s_m & s_perp or (s_m | s_perp) != m_mask:
            failures.append(f"S({alg.label(a)}) and S({alg.label(a)}^⊥) do not split m(A)")

    whole = frozenset(alg.elements)
    principal_whole = next(
        (b for b in alg.elements if principal_ideal(alg, b).members == whole), None
    )
    return ExtremePrimes(
        minimal=minimal,
        maximal=maximal,
        minimal_t2=m_space.is_t2(),
        maximal_t2=is_t2_antichain(spec, maximal),
        minimal_closed=closed,
        polar_failures=failures,
        principal_whole=principal_whole,
    )


# -- values -------------------------------------------------------------------


@dataclass
class ValueAssignment:
    element: int
    values: list[IdealSet]
    mu: dict[int, int]  # prime index → value index, where unique
    multiplicity: dict[int, int]  # prime index → number of values above it
    continuous: bool
    values_t2: bool

    @property
    def unique(self) -> bool:
        return all(m == 1 for m in self.multiplicity.values())

    def to_dict(self, spec: Spectrum) -> dict[str, Any]:
        return {
            "element": spec.algebra.label(self.element),
            "values": [list(V.labels()) for V in self.values],
            "mu": {
                str(spec.primes[p]): list(self.values[v].labels()) for p, v in self.mu.items()
            },
            "unique": self.unique,
            "continuous": self.continuous,
            "values_t2": self.values_t2,
        }


def values(alg: FiniteAlgebra, a: int, ideals: list[IdealSet] | None = None) -> list[IdealSet]:
    """Ideals maximal with respect to not containing a; empty for a = 0."""
    _check_element(alg, a)
    if a == alg.zero:
        return []
    ideals = ideals if ideals is not None else enumerate_ideals(alg)
    missing = [I for I in ideals if a not in I.members]
    return [I for I in missing if not any(I.members < J.members for J in missing)]


def values_and_mu(
    alg: FiniteAlgebra, a: int, spec: Spectrum | None = None, ideals: list[IdealSet] | None = None
) -> ValueAssignment:
    ideals = ideals if ideals is not None else classify_all(alg)
    spec = spec or spectrum(alg, ideals)
    vals = values(alg, a, ideals)
    s_a = spec.S(a) if a != alg.zero else 0

    mu: dict[int, int] = {}
    multiplicity: dict[int, int] = {}
    for p in members(s_a):
        above = [v for v, V in enumerate(vals) if spec.primes[p].members <= V.members]
        multiplicity[p] = len(above)
        if len(above) == 1:
            mu[p] = above[0]

    # Val(a) carries the hull-kernel topology: basic opens {V : x ∉ V}
    carrier = (1 << len(vals)) - 1
    val_space = FiniteTopology.generated(
        carrier,
        (mask(v for v, V in enumerate(vals) if x not in V.members) for x in alg.elements),
    )
    continuous = len(mu) == len(multiplicity) and is_continuous(
        mu.__getitem__, spec.topology.subspace(s_a), val_space
    )
    return ValueAssignment(a, vals, mu, multiplicity, continuous, val_space.is_t2())
