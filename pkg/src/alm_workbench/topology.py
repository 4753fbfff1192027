"""Finite topological spaces with subsets encoded as bitmasks over point indices."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass


def mask(points: Iterable[int]) -> int:
    out = 0
    for p in points:
        out |= 1 << p
    return out


def members(m: int) -> list[int]:
    return [i for i in range(m.bit_length()) if m >> i & 1]


@dataclass(frozen=True)
class FiniteTopology:
    carrier: int
    opens: frozenset[int]

    @classmethod
    def generated(cls, carrier: int, subbasis: Iterable[int]) -> FiniteTopology:
        """Smallest topology on ``carrier`` containing ``subbasis``."""
        basis = {carrier}
        for s in subbasis:
            basis |= {s & b for b in basis}
        opens = {0} | basis
        frontier = set(opens)
        while frontier:
            new = {a | b for a in frontier for b in opens} - opens
            opens |= new
            frontier = new
        return cls(carrier, frozenset(opens))

    def points(self) -> list[int]:
        return members(self.carrier)

    def is_open(self, m: int) -> bool:
        return m in self.opens

    def is_closed(self, m: int) -> bool:
        return (self.carrier & ~m) in self.opens

    def subspace(self, subset: int) -> FiniteTopology:
        return FiniteTopology(subset, frozenset(o & subset for o in self.opens))

    def neighbourhood(self, p: int) -> int:
        """The least open set containing p."""
        out = self.carrier
        for o in self.opens:
            if o >> p & 1:
                out &= o
        return out

    def is_t2(self) -> bool:
        nbhd = {p: self.neighbourhood(p) for p in self.points()}
        return all(
            not nbhd[p] & nbhd[q] for p in nbhd for q in nbhd if p < q
        )

    def t2_witness(self) -> tuple[int, int] | None:
        nbhd = {p: self.neighbourhood(p) for p in self.points()}
        for p in nbhd:
            for q in nbhd:
                if p < q and nbhd[p] & nbhd[q]:
                    return p, q
        return None

    def is_discrete(self) -> bool:
        return all(1 << p in self.opens for p in self.points())


def is_continuous(
    f: Callable[[int], int], source: FiniteTopology, target: FiniteTopology
) -> bool:
    """Preimages of open sets are open."""
    for o in target.opens:
        pre = mask(p for p in source.points() if o >> f(p) & 1)
        if not source.is_open(pre):
            return False
    return True
