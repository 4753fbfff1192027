"""Homomorphisms, isomorphism search, and the isomorphism and chain theorems.

A homomorphism preserves +, ∗, ∨, ∧ and sends zero to zero.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import numpy as np

from alm_workbench.algebra import (
    OPERATIONS,
    ElementSubset,
    FiniteAlgebra,
    induced_subalgebra,
    is_subalgebra,
)
from alm_workbench.congruences import Quotient, quotient
from alm_workbench.errors import AlmError
from alm_workbench.ideals import (
    IdealSet,
    classify_all,
    enumerate_ideals,
    is_ideal,
    prime_ideals,
    star_product,
)
from alm_workbench.tracing import algebra_span


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @property
    def is_epimorphism(self) -> bool:
        return set(self.mapping) == set(self.target.elements)

    @property
    def is_monomorphism(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_isomorphism(self) -> bool:
        return self.is_epimorphism and self.is_monomorphism

    def labels(self) -> dict[str, str]:
        return {
            self.source.label(x): self.target.label(y) for x, y in enumerate(self.mapping)
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source.name,
            "target": self.target.name,
            "map": self.labels(),
            "epimorphism": self.is_epimorphism,
            "monomorphism": self.is_monomorphism,
            "isomorphism": self.is_isomorphism,
        }

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Homomorphism)
            and self.source is other.source
            and self.target is other.target
            and self.mapping == other.mapping
        )

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.mapping))


@dataclass(frozen=True)
class HomCheck:
    """``condition`` is the first violated condition: zero, plus, star, join or meet."""

    holds: bool
    condition: str | None = None
    witness: tuple[str, ...] | None = None
    epimorphism: bool = False
    monomorphism: bool = False
    isomorphism: bool = False

    def __bool__(self) -> bool:
        return self.holds


def is_homomorphism(
    source: FiniteAlgebra, target: FiniteAlgebra, mapping: Sequence[int]
) -> HomCheck:
    if len(mapping) != source.n:
        raise AlmError(f"map has {len(mapping)} entries, {source.name} has {source.n} elements")
    f = np.asarray(mapping, dtype=np.int64)
    hom = Homomorphism(source, target, tuple(int(v) for v in f))
    flags = {
        "epimorphism": hom.is_epimorphism,
        "monomorphism": hom.is_monomorphism,
        "isomorphism": hom.is_isomorphism,
    }
    if f[source.zero] != target.zero:
        return HomCheck(False, "zero", (source.label(source.zero),), **flags)
    for op in OPERATIONS:
        # f(x op y) = f(x) op f(y)
        bad = np.argwhere(f[source.table(op)] != target.table(op)[np.ix_(f, f)])
        if bad.size:
            return HomCheck(False, op, source.labels(int(i) for i in bad[0]), **flags)
    return HomCheck(True, **flags)


def identity(alg: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(alg, alg, tuple(alg.elements))


def compose(f: Homomorphism, g: Homomorphism) -> Homomorphism:
    """g ∘ f."""
    if f.target is not g.source:
        raise AlmError(f"cannot compose {f.source.name}→{f.target.name} with {g.source.name}→…")
    return Homomorphism(f.source, g.target, tuple(g.mapping[y] for y in f.mapping))


def inverse(f: Homomorphism) -> Homomorphism:
    if not f.is_isomorphism:
        raise AlmError("only an isomorphism has an inverse")
    back = [0] * f.target.n
    for x, y in enumerate(f.mapping):
        back[y] = x
    return Homomorphism(f.target, f.source, tuple(back))


@dataclass
class KernelImage:
    kernel: IdealSet
    image: ElementSubset
    kernel_is_ideal: bool
    image_is_subalgebra: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "kernel": list(self.kernel.labels()),
            "image": list(self.image.labels()),
            "kernel_is_ideal": self.kernel_is_ideal,
            "image_is_subalgebra": self.image_is_subalgebra,
        }


def kernel_image(f: Homomorphism) -> KernelImage:
    kernel = frozenset(x for x in f.source.elements if f(x) == f.target.zero)
    image = frozenset(f.mapping)
    return KernelImage(
        kernel=IdealSet(f.source, kernel),
        image=ElementSubset(f.target, image),
        kernel_is_ideal=is_ideal(f.source, kernel).holds,
        image_is_subalgebra=is_subalgebra(f.target, image),
    )


# -- search -------------------------------------------------------------------


def _signature(alg: FiniteAlgebra, x: int) -> tuple[Any, ...]:
    down = alg.leq.sum(axis=0)
    up = alg.leq.sum(axis=1)
    star_row = tuple(sorted(int(down[int(v)]) for v in alg.star[x]))
    plus_row = tuple(sorted(int(down[int(v)]) for v in alg.plus[x]))
    return (
        x == alg.zero,
        int(down[x]),
        int(up[x]),
        int(alg.plus[x, x]) == x,
        star_row,
        plus_row,
    )


def _consistent(A: FiniteAlgebra, B: FiniteAlgebra, f: list[int], x: int) -> bool:
    """Check the instances completed by mapping x; elements are mapped in index order."""
    for op in OPERATIONS:
        TA, TB = A.table(op), B.table(op)
        for y in range(x + 1):
            for a, b in ((x, y), (y, x)):
                r = int(TA[a, b])
                if r <= x and f[r] != int(TB[f[a], f[b]]):
                    return False
        # earlier pairs whose result is x
        for a in range(x):
            for b in range(x):
                if int(TA[a, b]) == x and f[x] != int(TB[f[a], f[b]]):
                    return False
    return True


def _maps(
    A: FiniteAlgebra, B: FiniteAlgebra, *, injective: bool
) -> Iterator[tuple[int, ...]]:
    """All structure-preserving maps A → B in lexicographic order."""
    f = [-1] * A.n
    used: set[int] = set()
    sig_a = [_signature(A, x) for x in A.elements]
    sig_b = [_signature(B, y) for y in B.elements]

    def candidates(x: int) -> list[int]:
        if x == A.zero:
            return [B.zero]
        if injective:
            return [y for y in B.elements if y not in used and sig_b[y] == sig_a[x]]
        return list(B.elements)

    def extend(x: int) -> Iterator[tuple[int, ...]]:
        if x == A.n:
            yield tuple(f)
            return
        for y in candidates(x):
            f[x] = y
            used.add(y)
            if _consistent(A, B, f, x):
                yield from extend(x + 1)
            used.discard(y)
            f[x] = -1

    yield from extend(0)


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Homomorphism | None:
    """The lexicographically least isomorphism A → B, or None."""
    if A.n != B.n:
        return None
    with algebra_span("find_isomorphism", A, target=B.name):
        for mapping in _maps(A, B, injective=True):
            return Homomorphism(A, B, mapping)
    return None


def enumerate_homs(
    A: FiniteAlgebra, B: FiniteAlgebra, *, limit: int | None = None
) -> list[Homomorphism]:
    found: list[Homomorphism] = []
    for mapping in _maps(A, B, injective=False):
        found.append(Homomorphism(A, B, mapping))
        if limit is not None and len(found) >= limit:
            break
    return found


def automorphisms(alg: FiniteAlgebra) -> list[Homomorphism]:
    return [Homomorphism(alg, alg, m) for m in _maps(alg, alg, injective=True)]


def projection(q: Quotient) -> Homomorphism:
    """The canonical map a ↦ [a] onto a quotient."""
    return Homomorphism(q.congruence.universe, q.algebra, tuple(q.projection))


# -- isomorphism theorems -----------------------------------------------------


@dataclass
class IsoTheoremReport:
    theorem: str
    holds: bool
    left: FiniteAlgebra | None
    right: FiniteAlgebra | None
    isomorphism: Homomorphism | None = None
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "holds": self.holds,
            "left": self.left.name if self.left else None,
            "right": self.right.name if self.right else None,
            "isomorphism": self.isomorphism.labels() if self.isomorphism else None,
            "detail": self.detail,
        }


def first_isomorphism_check(f: Homomorphism) -> IsoTheoremReport:
    """A/ker f ≅ Im f."""
    if not is_homomorphism(f.source, f.target, f.mapping):
        raise AlmError("first isomorphism theorem needs a homomorphism")
    ki = kernel_image(f)
    if not ki.kernel_is_ideal:
        return IsoTheoremReport("first", False, None, None, detail=f"kernel {ki.kernel} is not an ideal")
    if not ki.image_is_subalgebra:
        return IsoTheoremReport("first", False, None, None, detail=f"image {ki.image} is not a subalgebra")
    left = quotient(f.source, ki.kernel).algebra
    right, _ = induced_subalgebra(f.target, ki.image, name=f"Im({f.target.name})")
    iso = find_isomorphism(left, right)
    return IsoTheoremReport("first", iso is not None, left, right, iso)


def second_isomorphism_check(
    alg: FiniteAlgebra, B: ElementSubset, N: IdealSet
) -> IsoTheoremReport:
    """B∗N/N ≅ B/(B∧N), after checking B∗N is a subalgebra."""
    if not is_subalgebra(alg, B):
        raise AlmError(f"{B} is not a subalgebra of {alg.name}")
    check = is_ideal(alg, N)
    if not check:
        raise AlmError(f"{N} is not an ideal of {alg.name} ({check.clause})")
    BN = star_product(alg, B, N)
    shown = "{" + ",".join(alg.labels(sorted(BN))) + "}"
    if not is_subalgebra(alg, BN):
        return IsoTheoremReport("second", False, None, None, detail=f"B∗N = {shown} is not a subalgebra")

    bn_alg, bn_embed = induced_subalgebra(alg, BN, name=f"{alg.name}|B∗N")
    n_in_bn = frozenset(bn_embed.index(x) for x in N.members if x in BN)
    if len(n_in_bn) != len(N.members) or not is_ideal(bn_alg, n_in_bn):
        return IsoTheoremReport("second", False, None, None, detail=f"{N} is not an ideal of B∗N")
    left = quotient(bn_alg, IdealSet(bn_alg, n_in_bn)).algebra

    b_alg, b_embed = induced_subalgebra(alg, B, name=f"{alg.name}|B")
    meet = frozenset(b_embed.index(x) for x in B.members & N.members)
    if not is_ideal(b_alg, meet):
        return IsoTheoremReport("second", False, left, None, detail="B∧N is not an ideal of B")
    right = quotient(b_alg, IdealSet(b_alg, meet)).algebra
    iso = find_isomorphism(left, right)
    return IsoTheoremReport("second", iso is not None, left, right, iso)


def subalgebras(alg: FiniteAlgebra) -> list[ElementSubset]:
    """Every subset containing 0 closed under the four operations."""
    rest = [x for x in alg.elements if x != alg.zero]
    found = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            members = frozenset((alg.zero, *extra))
            if is_subalgebra(alg, members):
                found.append(ElementSubset(alg, members))
    return found


def iso_theorem_checks(alg: FiniteAlgebra) -> list[IsoTheoremReport]:
    """Both theorems over every quotient map and every (subalgebra, ideal) pair."""
    ideals = enumerate_ideals(alg)
    reports = [first_isomorphism_check(projection(quotient(alg, M))) for M in ideals]
    for B in subalgebras(alg):
        for N in ideals:
            reports.append(second_isomorphism_check(alg, B, N))
    return reports


# -- chains -------------------------------------------------------------------


@dataclass
class ChainReport:
    is_chain: bool
    criterion_holds: bool
    criterion_witness: tuple[str, str] | None
    is_simple: bool
    quotient_discrepancies: list[str] = field(default_factory=list)
    upset_failures: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return (
            self.is_chain == self.criterion_holds
            and not self.quotient_discrepancies
            and not self.upset_failures
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "is_chain": self.is_chain,
            "criterion_holds": self.criterion_holds,
            "criterion_witness": list(self.criterion_witness) if self.criterion_witness else None,
            "is_simple": self.is_simple,
            "quotient_discrepancies": self.quotient_discrepancies,
            "upset_failures": self.upset_failures,
        }


def chain_criterion(alg: FiniteAlgebra) -> tuple[bool, tuple[str, str] | None]:
    """a∧b = 0 ⇒ a = 0 or b = 0, with the first offending pair."""
    nonzero = np.arange(alg.n) != alg.zero
    bad = np.argwhere((alg.meet == alg.zero) & nonzero[:, None] & nonzero[None, :])
    if bad.size:
        a, b = (int(v) for v in bad[0])
        return False, (alg.label(a), alg.label(b))
    return True, None


def chain_checks(alg: FiniteAlgebra) -> ChainReport:
    criterion, witness = chain_criterion(alg)
    ideals = classify_all(alg)
    whole = frozenset(alg.elements)
    simple = {I.members for I in ideals} == {frozenset({alg.zero}), whole}

    discrepancies = []
    for M in ideals:
        q = quotient(alg, M).algebra
        prime = bool(M.flags and M.flags.is_prime)
        # A/A is the one-element chain, but A is never prime
        if M.members != whole and q.is_chain() != prime:
            discrepancies.append(f"A/{M}: chain={q.is_chain()} prime={prime}")

    upset_failures = []
    for P in prime_ideals(alg, ideals):
        above = [I for I in ideals if P.members <= I.members]
        for I, J in combinations(above, 2):
            if not (I.members <= J.members or J.members <= I.members):
                upset_failures.append(f"above {P}: {I} and {J} incomparable")
                break

    return ChainReport(
        is_chain=alg.is_chain(),
        criterion_holds=criterion,
        criterion_witness=witness,
        is_simple=simple or alg.n == 1,
        quotient_discrepancies=discrepancies,
        upset_failures=upset_failures,
    )
