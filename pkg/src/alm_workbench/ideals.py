"""Ideals: enumeration, generation, the ideal lattice and classification.

An ideal contains 0, is closed under + and is downward closed. Prime, maximal
and regular ideals are proper by definition. A prime ideal satisfies
a∧b ∈ I ⇒ a ∈ I or b ∈ I.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from functools import reduce
from itertools import combinations
from typing import Any

from alm_workbench import config
from alm_workbench.algebra import ElementSubset, FiniteAlgebra
from alm_workbench.errors import BoundExceededError, NotAnIdealError
from alm_workbench.logs import log


@dataclass(frozen=True)
class IdealFlags:
    is_prime: bool
    is_maximal: bool
    is_regular: bool
    is_strong: bool

    def to_dict(self) -> dict[str, bool]:
        return {
            "prime": self.is_prime,
            "maximal": self.is_maximal,
            "regular": self.is_regular,
            "strong": self.is_strong,
        }


@dataclass(frozen=True)
class IdealSet(ElementSubset):
    """An ideal, optionally carrying its classification."""

    flags: IdealFlags | None = field(default=None, compare=False)

    def is_proper(self) -> bool:
        return len(self.members) < self.universe.n

    def is_zero(self) -> bool:
        return self.members == frozenset({self.universe.zero})

    def is_whole(self) -> bool:
        return len(self.members) == self.universe.n

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"members": list(self.labels())}
        if self.flags is not None:
            out.update(self.flags.to_dict())
        return out


@dataclass(frozen=True)
class IdealCheck:
    """Outcome of the ideal test; ``clause`` names the first failed clause."""

    holds: bool
    clause: str | None = None
    witness: tuple[str, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _members(S: ElementSubset | Iterable[int]) -> frozenset[int]:
    return S.members if isinstance(S, ElementSubset) else frozenset(S)


def _sort_key(ideal: ElementSubset) -> tuple[int, tuple[int, ...]]:
    return (len(ideal.members), tuple(sorted(ideal.members)))


def is_ideal(alg: FiniteAlgebra, S: ElementSubset | Iterable[int]) -> IdealCheck:
    """Nonempty, contains zero, closed under +, downward closed.

    Witnesses: ``plus_closed`` → (a, b) with a+b outside S;
    ``downward_closed`` → (x, a) with x ≤ a, a ∈ S, x ∉ S.
    """
    members = _members(S)
    if not members:
        return IdealCheck(False, "nonempty")
    if alg.zero not in members:
        return IdealCheck(False, "contains_zero", (alg.label(alg.zero),))
    ordered = sorted(members)
    for a in ordered:
        for b in ordered:
            if int(alg.plus[a, b]) not in members:
                return IdealCheck(False, "plus_closed", alg.labels((a, b)))
    for a in ordered:
        for x in alg.elements:
            if alg.leq[x, a] and x not in members:
                return IdealCheck(False, "downward_closed", alg.labels((x, a)))
    return IdealCheck(True)


def as_ideal(alg: FiniteAlgebra, S: ElementSubset | Iterable[int]) -> IdealSet:
    members = _members(S)
    check = is_ideal(alg, members)
    if not check:
        shown = "{" + ",".join(alg.labels(sorted(members))) + "}"
        raise NotAnIdealError(f"{shown} is not an ideal ({check.clause})", check.witness)
    return IdealSet(alg, members)


def _check_bound(alg: FiniteAlgebra, bound: int, what: str) -> None:
    if alg.n > bound:
        raise BoundExceededError(f"{what}: carrier size {alg.n} exceeds bound {bound}")


def _downsets(alg: FiniteAlgebra) -> list[frozenset[int]]:
    """Every downset, each generated by its antichain of maximal elements."""
    comparable = alg.leq | alg.leq.T
    down = [alg.downset(x) for x in alg.elements]
    found: list[frozenset[int]] = []

    def extend(start: int, chosen: list[int], current: frozenset[int]) -> None:
        found.append(current)
        for x in range(start, alg.n):
            if not any(comparable[x, c] for c in chosen):
                extend(x + 1, [*chosen, x], current | down[x])

    extend(0, [], frozenset())
    return found


def _plus_closed(alg: FiniteAlgebra, members: frozenset[int]) -> bool:
    return all(int(alg.plus[a, b]) in members for a in members for b in members)


def enumerate_ideals(alg: FiniteAlgebra, *, bound: int = config.IDEAL_BOUND) -> list[IdealSet]:
    """All ideals, sorted by (size, membership)."""
    _check_bound(alg, bound, "enumerate_ideals")
    ideals = [
        IdealSet(alg, d)
        for d in _downsets(alg)
        if alg.zero in d and _plus_closed(alg, d)
    ]
    return sorted(ideals, key=_sort_key)


def ideals_brute_force(alg: FiniteAlgebra) -> list[IdealSet]:
    """All ideals by testing every subset; cross-check for small carriers."""
    found = [
        IdealSet(alg, frozenset(c))
        for k in range(1, alg.n + 1)
        for c in combinations(alg.elements, k)
        if is_ideal(alg, c)
    ]
    return sorted(found, key=_sort_key)


def generated_ideal(alg: FiniteAlgebra, S: ElementSubset | Iterable[int]) -> IdealSet:
    """{x : x ≤ a₁+…+a_k, aᵢ ∈ S}, the smallest ideal containing S."""
    seed = set(_members(S)) | {alg.zero}
    sums = set(seed)
    frontier = set(seed)
    while frontier:
        new = {int(alg.plus[s, t]) for s in frontier for t in seed} - sums
        sums |= new
        frontier = new
    members: set[int] = set()
    for s in sums:
        members |= alg.downset(s)
    return IdealSet(alg, frozenset(members))


def principal_ideal(alg: FiniteAlgebra, a: int) -> IdealSet:
    """⟨a⟩ = {x : x ≤ ma for some positive integer m}."""
    return generated_ideal(alg, [a])


def ideal_join_meet(
    alg: FiniteAlgebra, I: ElementSubset, J: ElementSubset
) -> tuple[IdealSet, IdealSet]:
    """(I ∨ J, I ∧ J) with I ∨ J = {a : a ≤ x+y, x ∈ I, y ∈ J}."""
    sums = {int(alg.plus[x, y]) for x in I.members for y in J.members}
    join: set[int] = set()
    for s in sums:
        join |= alg.downset(s)
    return IdealSet(alg, frozenset(join)), IdealSet(alg, I.members & J.members)


# -- the ideal lattice --------------------------------------------------------


@dataclass
class IdealLattice:
    ideals: list[IdealSet]
    leq: list[list[bool]]
    joins: list[list[int]]
    meets: list[list[int]]
    principal: list[str | None]  # a generating element label, if any
    join_formula_agrees: bool
    algebraic: bool

    def index(self, ideal: ElementSubset) -> int:
        for i, candidate in enumerate(self.ideals):
            if candidate.members == ideal.members:
                return i
        raise KeyError(str(ideal))

    def to_dict(self) -> dict[str, Any]:
        return {
            "ideals": [list(i.labels()) for i in self.ideals],
            "joins": self.joins,
            "meets": self.meets,
            "principal": self.principal,
            "join_formula_agrees": self.join_formula_agrees,
            "algebraic": self.algebraic,
        }


def ideal_lattice(alg: FiniteAlgebra, ideals: list[IdealSet] | None = None) -> IdealLattice:
    """The lattice of ideals under inclusion."""
    ideals = ideals if ideals is not None else enumerate_ideals(alg)
    position = {i.members: k for k, i in enumerate(ideals)}
    k = len(ideals)

    leq = [[ideals[a].members <= ideals[b].members for b in range(k)] for a in range(k)]
    meets = [[position[ideals[a].members & ideals[b].members] for b in range(k)] for a in range(k)]
    joins = [[0] * k for _ in range(k)]
    agrees = True
    for a in range(k):
        for b in range(k):
            # least ideal above both: the intersection of every upper bound
            union = ideals[a].members | ideals[b].members
            bound = intersection(alg, (J for J in ideals if union <= J.members))
            joins[a][b] = position[bound]
            formula, _ = ideal_join_meet(alg, ideals[a], ideals[b])
            agrees = agrees and formula.members == bound

    principal: list[str | None] = [None] * k
    for x in alg.elements:
        slot = position.get(principal_ideal(alg, x).members)
        if slot is not None and principal[slot] is None:
            principal[slot] = alg.label(x)

    # every ideal is the join of the principal ideals it contains
    algebraic = True
    for a in range(k):
        below = [b for b in range(k) if principal[b] is not None and leq[b][a]]
        total = reduce(lambda p, q: joins[p][q], below) if below else None
        algebraic = algebraic and total == a

    return IdealLattice(
        ideals=ideals,
        leq=leq,
        joins=joins,
        meets=meets,
        principal=principal,
        join_formula_agrees=agrees,
        algebraic=algebraic,
    )


# -- classification -----------------------------------------------------------


def star_image(alg: FiniteAlgebra, a: int, S: ElementSubset | Iterable[int]) -> frozenset[int]:
    """a∗S = {a∗x : x ∈ S}."""
    return frozenset(int(alg.star[a, x]) for x in _members(S))


def star_product(
    alg: FiniteAlgebra, I: ElementSubset | Iterable[int], J: ElementSubset | Iterable[int]
) -> frozenset[int]:
    """I∗J = {x∗y : x ∈ I, y ∈ J}."""
    right = _members(J)
    return frozenset(int(alg.star[x, y]) for x in _members(I) for y in right)


def star_sets(
    alg: FiniteAlgebra, a: int, I: ElementSubset, J: ElementSubset
) -> tuple[ElementSubset, ElementSubset]:
    return ElementSubset(alg, star_image(alg, a, I)), ElementSubset(alg, star_product(alg, I, J))


def strong_witness(alg: FiniteAlgebra, I: ElementSubset) -> tuple[str, tuple[str, ...]] | None:
    """First failing instance of the strong-ideal conditions, or None.

    Returns ``("member", (a,))`` when a ∈ I ⇎ a∗I = I, or
    ``("coset", (a, b))`` when a∗I = b∗I ⇎ a∗b ∈ I.
    """
    members = I.members
    images = [star_image(alg, a, members) for a in alg.elements]
    for a in alg.elements:
        if (a in members) != (images[a] == members):
            return "member", (alg.label(a),)
    for a in alg.elements:
        for b in alg.elements:
            if (images[a] == images[b]) != (int(alg.star[a, b]) in members):
                return "coset", alg.labels((a, b))
    return None


def is_prime(alg: FiniteAlgebra, I: ElementSubset) -> bool:
    members = I.members
    if len(members) == alg.n:
        return False
    return all(
        a in members or b in members
        for a in alg.elements
        for b in alg.elements
        if int(alg.meet[a, b]) in members
    )


def _strictly_above(I: ElementSubset, ideals: Sequence[IdealSet]) -> list[IdealSet]:
    return [J for J in ideals if I.members < J.members]


def classify_ideal(
    alg: FiniteAlgebra, I: ElementSubset, ideals: Sequence[IdealSet] | None = None
) -> IdealFlags:
    """Prime, maximal, regular and strong flags of an ideal."""
    as_ideal(alg, I)
    ideals = ideals if ideals is not None else enumerate_ideals(alg)
    proper = len(I.members) < alg.n
    above = _strictly_above(I, ideals)
    maximal = proper and all(len(J.members) == alg.n for J in above)
    if proper:
        meet_above = reduce(frozenset.intersection, (J.members for J in above))
        regular = meet_above != I.members
    else:
        regular = False
    return IdealFlags(
        is_prime=is_prime(alg, I),
        is_maximal=maximal,
        is_regular=regular,
        is_strong=strong_witness(alg, I) is None,
    )


def classify_all(alg: FiniteAlgebra, ideals: list[IdealSet] | None = None) -> list[IdealSet]:
    ideals = ideals if ideals is not None else enumerate_ideals(alg)
    return [replace(I, flags=classify_ideal(alg, I, ideals)) for I in ideals]


def _classified(alg: FiniteAlgebra, ideals: list[IdealSet] | None) -> list[IdealSet]:
    ideals = ideals if ideals is not None else enumerate_ideals(alg)
    if all(I.flags is not None for I in ideals):
        return ideals
    return classify_all(alg, ideals)


def maximal_ideals(alg: FiniteAlgebra, ideals: list[IdealSet] | None = None) -> list[IdealSet]:
    return [I for I in _classified(alg, ideals) if I.flags and I.flags.is_maximal]


def prime_ideals(alg: FiniteAlgebra, ideals: list[IdealSet] | None = None) -> list[IdealSet]:
    return [I for I in _classified(alg, ideals) if I.flags and I.flags.is_prime]


def intersection(alg: FiniteAlgebra, family: Iterable[ElementSubset]) -> frozenset[int]:
    """∩ of a family; the empty family intersects to the whole carrier."""
    out = frozenset(alg.elements)
    for S in family:
        out &= S.members
    return out


def radical(alg: FiniteAlgebra, ideals: list[IdealSet] | None = None) -> IdealSet:
    """Intersection of all maximal ideals."""
    maximals = maximal_ideals(alg, ideals)
    if not maximals:
        log("no proper ideals, radical taken as {0}", alg=alg, debug_only=True)
        return IdealSet(alg, frozenset({alg.zero}))
    return IdealSet(alg, intersection(alg, maximals))


# -- distant ideals -----------------------------------------------------------


@dataclass(frozen=True)
class ComplementaryPair:
    """Ideals with I∗J = A and I ∩ J = {0}; distant when both are strong."""

    first: IdealSet
    second: IdealSet
    both_strong: bool

    @property
    def trivial(self) -> bool:
        return {self.first.members, self.second.members} <= {
            frozenset({self.first.universe.zero}),
            frozenset(self.first.universe.elements),
        }

    @property
    def distant(self) -> bool:
        # {0} and A are distant by definition
        return self.both_strong or self.trivial

    def to_dict(self) -> dict[str, Any]:
        return {
            "first": list(self.first.labels()),
            "second": list(self.second.labels()),
            "both_strong": self.both_strong,
            "distant": self.distant,
        }


@dataclass
class DistantReport:
    pairs: list[ComplementaryPair]
    complementary: list[ComplementaryPair]
    is_directly_indecomposable: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "pairs": [p.to_dict() for p in self.pairs],
            "complementary": [p.to_dict() for p in self.complementary],
            "is_directly_indecomposable": self.is_directly_indecomposable,
        }


def distant_pairs(alg: FiniteAlgebra, ideals: list[IdealSet] | None = None) -> DistantReport:
    """Ordered distant pairs and the direct-indecomposability verdict.

    The verdict is true iff the ideals occurring in distant pairs are exactly
    {0} and A.
    """
    ideals = _classified(alg, ideals)
    zero_only = frozenset({alg.zero})
    whole = frozenset(alg.elements)
    complementary: list[ComplementaryPair] = []
    for I in ideals:
        for J in ideals:
            if I.members & J.members != zero_only:
                continue
            if star_product(alg, I, J) != whole:
                continue
            strong = bool(I.flags and I.flags.is_strong and J.flags and J.flags.is_strong)
            complementary.append(ComplementaryPair(I, J, strong))
    pairs = [p for p in complementary if p.distant]
    occurring = {p.first.members for p in pairs} | {p.second.members for p in pairs}
    return DistantReport(
        pairs=pairs,
        complementary=complementary,
        is_directly_indecomposable=occurring == {zero_only, whole},
    )


# -- convexity ----------------------------------------------------------------


def convexity_witness(alg: FiniteAlgebra, I: ElementSubset) -> tuple[str, tuple[str, ...]] | None:
    """First failure of 'closed under all operations' or 'convex', or None."""
    members = sorted(I.members)
    for a in members:
        for b in members:
            for op in ("star", "join", "meet"):
                if int(alg.table(op)[a, b]) not in I.members:
                    return f"{op}_closed", alg.labels((a, b))
            low, high = int(alg.meet[a, b]), int(alg.join[a, b])
            for x in alg.elements:
                if alg.leq[low, x] and alg.leq[x, high] and x not in I.members:
                    return "convex", alg.labels((a, b, x))
    return None
