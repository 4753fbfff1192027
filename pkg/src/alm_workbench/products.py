"""Direct products, tuple homomorphisms, decompositions and subdirect representation."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, product
from typing import Any

import numpy as np

from alm_workbench import config
from alm_workbench.algebra import OPERATIONS, FiniteAlgebra
from alm_workbench.axioms import AxiomReport, check_al_monoid
from alm_workbench.congruences import congruence_from_ideal, quotient
from alm_workbench.errors import AlmError, BoundExceededError
from alm_workbench.ideals import (
    IdealSet,
    classify_all,
    distant_pairs,
    enumerate_ideals,
    intersection,
    is_ideal,
    maximal_ideals,
    prime_ideals,
    star_product,
    strong_witness,
)
from alm_workbench.logs import debug_log
from alm_workbench.morphisms import (
    Homomorphism,
    find_isomorphism,
    is_homomorphism,
    kernel_image,
)


@dataclass
class ProductAlgebra:
    """∏ factors; carrier index k ↔ ``tuples[k]`` in lexicographic order."""

    factors: list[FiniteAlgebra]
    tuples: list[tuple[int, ...]]
    algebra: FiniteAlgebra

    def index(self, coords: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(coords), tuple(f.n for f in self.factors)))

    def projection(self, i: int) -> Homomorphism:
        return Homomorphism(self.algebra, self.factors[i], tuple(t[i] for t in self.tuples))

    def coordinate_kernel(self, i: int) -> IdealSet:
        return kernel_image(self.projection(i)).kernel


def _tuple_label(factors: Sequence[FiniteAlgebra], coords: Sequence[int]) -> str:
    return "(" + ",".join(f.label(c) for f, c in zip(factors, coords, strict=True)) + ")"


def direct_product(
    factors: Sequence[FiniteAlgebra], *, bound: int = config.PRODUCT_BOUND, name: str | None = None
) -> ProductAlgebra:
    """Componentwise operations on the tuples of the factors."""
    if not factors:
        raise AlmError("a direct product needs at least one factor")
    dims = tuple(f.n for f in factors)
    size = int(np.prod(dims))
    if size > bound:
        raise BoundExceededError(f"direct_product: {size} elements exceeds bound {bound}")

    tuples = list(product(*(f.elements for f in factors)))
    coords = np.array(tuples, dtype=np.int64).reshape(size, len(factors))
    tables = {}
    for op in OPERATIONS:
        parts = [
            f.table(op)[coords[:, None, i], coords[None, :, i]] for i, f in enumerate(factors)
        ]
        tables[op] = np.ravel_multi_index(tuple(parts), dims)
    zero = int(np.ravel_multi_index(tuple(f.zero for f in factors), dims))
    algebra = FiniteAlgebra(
        name=name or "×".join(f.name for f in factors),
        names=tuple(_tuple_label(factors, t) for t in tuples),
        zero=zero,
        **tables,
    )
    return ProductAlgebra(list(factors), tuples, algebra)


@dataclass
class ProductAxiomReport:
    factors_al: list[bool]
    product_report: AxiomReport

    @property
    def holds(self) -> bool:
        return not all(self.factors_al) or self.product_report.is_al_monoid


def product_axiom_check(factors: Sequence[FiniteAlgebra]) -> ProductAxiomReport:
    """A product of AL-monoids passes the axiom check."""
    prod = direct_product(factors)
    return ProductAxiomReport([check_al_monoid(f).is_al_monoid for f in factors], check_al_monoid(prod.algebra))


# -- tuple homomorphisms ------------------------------------------------------


@dataclass
class KernelMeetReport:
    holds: bool
    is_homomorphism: bool
    kernel: frozenset[int]
    intersection: frozenset[int]
    tuple_map: Homomorphism | None = None

    def to_dict(self) -> dict[str, Any]:
        source = self.tuple_map.source if self.tuple_map else None
        labels = (lambda s: list(source.labels(sorted(s)))) if source else sorted
        return {
            "holds": self.holds,
            "is_homomorphism": self.is_homomorphism,
            "kernel": labels(self.kernel),
            "intersection": labels(self.intersection),
        }


def tuple_hom_kernel_check(homs: Sequence[Homomorphism]) -> KernelMeetReport:
    """α(a) = (α₁(a), …, α_k(a)) is a homomorphism with ker α = ∩ ker αᵢ."""
    if not homs:
        raise AlmError("need at least one homomorphism")
    source = homs[0].source
    if any(h.source is not source for h in homs):
        raise AlmError("homomorphisms must share a source")
    prod = direct_product([h.target for h in homs])
    alpha = Homomorphism(
        source,
        prod.algebra,
        tuple(prod.index([h(x) for h in homs]) for x in source.elements),
    )
    kernel = kernel_image(alpha).kernel.members
    meet = reduce(frozenset.intersection, (kernel_image(h).kernel.members for h in homs))
    hom = is_homomorphism(source, prod.algebra, alpha.mapping).holds
    return KernelMeetReport(hom and kernel == meet, hom, kernel, meet, alpha)


# -- decomposition ------------------------------------------------------------


@dataclass
class DecompositionReport:
    first: IdealSet
    second: IdealSet
    isomorphic: bool
    isomorphism: Homomorphism | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "first": list(self.first.labels()),
            "second": list(self.second.labels()),
            "isomorphic": self.isomorphic,
            "isomorphism": self.isomorphism.labels() if self.isomorphism else None,
        }


def decompose_distant(alg: FiniteAlgebra) -> list[DecompositionReport]:
    """A ≅ A/I × A/J for every distant pair of proper ideals."""
    reports = []
    for pair in distant_pairs(alg).pairs:
        I, J = pair.first, pair.second
        if not (I.is_proper() and J.is_proper()):
            continue
        prod = direct_product([quotient(alg, I).algebra, quotient(alg, J).algebra])
        iso = find_isomorphism(alg, prod.algebra)
        reports.append(DecompositionReport(I, J, iso is not None, iso))
    return reports


@dataclass
class CoordinateKernelReport:
    """Converse instance: the coordinate kernels of a two-factor product."""

    first: IdealSet
    second: IdealSet
    meet_is_zero: bool
    star_is_whole: bool
    both_strong: bool

    @property
    def holds(self) -> bool:
        return self.meet_is_zero and self.star_is_whole


def coordinate_kernel_check(prod: ProductAlgebra) -> CoordinateKernelReport:
    if len(prod.factors) != 2:
        raise AlmError("coordinate kernels are compared for two-factor products")
    alg = prod.algebra
    k1, k2 = prod.coordinate_kernel(0), prod.coordinate_kernel(1)
    return CoordinateKernelReport(
        first=k1,
        second=k2,
        meet_is_zero=k1.members & k2.members == {alg.zero},
        star_is_whole=star_product(alg, k1, k2) == frozenset(alg.elements),
        both_strong=strong_witness(alg, k1) is None and strong_witness(alg, k2) is None,
    )


@dataclass
class IndecomposabilityReport:
    decomposable: bool
    pair: tuple[IdealSet, IdealSet] | None
    distant_verdict: bool  # is_directly_indecomposable from distant pairs

    @property
    def agrees(self) -> bool:
        return self.decomposable != self.distant_verdict


def natural_decomposition(alg: FiniteAlgebra) -> tuple[IdealSet, IdealSet] | None:
    """Proper ideals I, J with a ↦ ([a]_I, [a]_J) a bijection onto A/I × A/J."""
    ideals = [I for I in enumerate_ideals(alg) if I.is_proper() and not I.is_zero()]
    for I, J in combinations(ideals, 2):
        ti, tj = congruence_from_ideal(alg, I), congruence_from_ideal(alg, J)
        if len(ti) * len(tj) != alg.n:
            continue
        pairs = {(ti.class_of[x], tj.class_of[x]) for x in alg.elements}
        if len(pairs) == alg.n:
            return I, J
    return None


def indecomposability_check(alg: FiniteAlgebra) -> IndecomposabilityReport:
    pair = natural_decomposition(alg)
    return IndecomposabilityReport(
        decomposable=pair is not None,
        pair=pair,
        distant_verdict=distant_pairs(alg).is_directly_indecomposable,
    )


def product_ideals_check(
    factors: Sequence[FiniteAlgebra],
) -> tuple[bool, str | None]:
    """Ideals of the product are exactly the products of factor ideals.

    Checks that each product of factor ideals is an ideal, that every ideal K
    of the product projects onto factor ideals, and that K equals the product
    of its projections.
    """
    prod = direct_product(factors)
    alg = prod.algebra
    per_factor = [enumerate_ideals(f) for f in factors]
    for choice in product(*per_factor):
        members = frozenset(
            prod.index(t) for t in product(*(sorted(I.members) for I in choice))
        )
        check = is_ideal(alg, members)
        if not check:
            shown = " × ".join(str(I) for I in choice)
            return False, f"{shown} is not an ideal ({check.clause})"
    for K in enumerate_ideals(alg, bound=max(alg.n, config.IDEAL_BOUND)):
        images = []
        for i, f in enumerate(factors):
            image = frozenset(prod.tuples[x][i] for x in K.members)
            if not is_ideal(f, image):
                return False, f"projection of {K} to factor {i + 1} is not an ideal"
            images.append(sorted(image))
        rectangle = frozenset(prod.index(t) for t in product(*images))
        if rectangle != K.members:
            return False, f"{K} is not the product of its projections"
    return True, None


# -- subdirect representation -------------------------------------------------


@dataclass
class SubdirectReport:
    found: bool
    family: list[IdealSet] = field(default_factory=list)
    embedding: list[tuple[int, ...]] = field(default_factory=list)  # element → class tuple
    injective: bool = False
    projections_onto: bool = False
    factors_are_chains: list[bool] = field(default_factory=list)
    is_homomorphism: bool | None = None  # None when the product is above the bound

    @property
    def into_chains(self) -> bool:
        return self.found and self.injective and all(self.factors_are_chains)

    def to_dict(self) -> dict[str, Any]:
        return {
            "found": self.found,
            "family": [list(P.labels()) for P in self.family],
            "injective": self.injective,
            "projections_onto": self.projections_onto,
            "factors_are_chains": self.factors_are_chains,
            "is_homomorphism": self.is_homomorphism,
        }


def _embed(alg: FiniteAlgebra, family: Sequence[IdealSet]) -> SubdirectReport:
    quotients = [quotient(alg, P) for P in family]
    embedding = [tuple(q.projection[x] for q in quotients) for x in alg.elements]
    onto = all(set(q.projection) == set(q.algebra.elements) for q in quotients)
    report = SubdirectReport(
        found=True,
        family=list(family),
        embedding=embedding,
        injective=len(set(embedding)) == alg.n,
        projections_onto=onto,
        factors_are_chains=[q.algebra.is_chain() for q in quotients],
    )
    size = int(np.prod([q.algebra.n for q in quotients])) if quotients else 1
    if quotients and size <= config.PRODUCT_BOUND:
        prod = direct_product([q.algebra for q in quotients])
        mapping = [prod.index(t) for t in embedding]
        report.is_homomorphism = is_homomorphism(alg, prod.algebra, mapping).holds
    return report


def subdirect_representation(
    alg: FiniteAlgebra, primes: list[IdealSet] | None = None
) -> SubdirectReport:
    """Smallest family of primes meeting in {0}, tried by size then spectrum order."""
    primes = primes if primes is not None else prime_ideals(alg)
    zero_only = frozenset({alg.zero})
    for k in range(len(primes) + 1):
        for family in combinations(primes, k):
            if intersection(alg, family) == zero_only:
                debug_log(f"subdirect family of size {k}", alg=alg)
                return _embed(alg, family)
    return SubdirectReport(found=False)


@dataclass
class RepresentabilityReport:
    r1: bool  # semiregular with contracting operations
    r2: bool  # primes meet in {0}
    r3: bool  # subdirect embedding into chain quotients
    m2: bool  # maximals meet in {0} with simple chain quotients
    notes: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.r1 == self.r2 == self.r3

    def to_dict(self) -> dict[str, Any]:
        return {
            "R1": self.r1,
            "R2": self.r2,
            "R3": self.r3,
            "M2": self.m2,
            "agree": self.agree,
            "notes": self.notes,
        }


def representability_check(alg: FiniteAlgebra) -> RepresentabilityReport:
    ideals = classify_all(alg)
    primes = prime_ideals(alg, ideals)
    zero_only = frozenset({alg.zero})

    r1 = check_al_monoid(alg).is_representable
    r2 = intersection(alg, primes) == zero_only
    sub = subdirect_representation(alg, primes)
    r3 = sub.into_chains

    maximals = maximal_ideals(alg, ideals)
    m2 = intersection(alg, maximals) == zero_only
    for M in maximals if m2 else []:
        q = quotient(alg, M).algebra
        q_ideals = enumerate_ideals(q)
        if not (q.is_chain() and len(q_ideals) <= 2):
            m2 = False
            break

    notes = ["homomorphic images reversing the order are not considered"]
    if not (r1 == r2 == r3):
        notes.append(f"disagreement on {alg.name}: R1={r1} R2={r2} R3={r3}")
    return RepresentabilityReport(r1, r2, r3, m2, notes)
