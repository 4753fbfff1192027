"""Finite algebra data model, the .alm text format, and order derivation.

A finite algebra is stored as four n×n integer tables (``plus``, ``star``,
``join``, ``meet``) over carrier indices ``0..n-1`` plus a designated zero.
The partial order is never read from input when join/meet tables exist: it is
derived from ``meet`` and cross-checked against ``join``.

Tables are read-only numpy arrays, so a ``FiniteAlgebra`` can be shared freely
between analyses.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from alm_workbench.errors import (
    AlmSyntaxError,
    InconsistentTablesError,
    NotALatticeError,
    NotPartialOrderError,
    RaggedTableError,
    UnknownElementError,
)

TABLE_SECTIONS = ("plus", "star", "join", "meet")
OPERATIONS = TABLE_SECTIONS


def _frozen(table: np.ndarray) -> np.ndarray:
    table = np.array(table, dtype=np.int64)
    table.flags.writeable = False
    return table


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A finite carrier with tables for +, ∗, ∨, ∧ and a designated zero.

    ``leq[x, y]`` holds exactly when ``meet[x, y] == x``.
    """

    name: str
    names: tuple[str, ...]
    zero: int
    plus: np.ndarray
    star: np.ndarray
    join: np.ndarray
    meet: np.ndarray
    leq: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.names)
        if n == 0:
            raise AlmSyntaxError("an algebra needs at least one element", 1)
        if len(set(self.names)) != n:
            dupes = sorted({x for x in self.names if self.names.count(x) > 1})
            raise AlmSyntaxError(f"duplicate element labels: {', '.join(dupes)}", 1)
        if not 0 <= self.zero < n:
            raise AlmSyntaxError(f"zero index {self.zero} out of range", 1)
        object.__setattr__(self, "names", tuple(self.names))
        for op in OPERATIONS:
            table = _frozen(getattr(self, op))
            if table.shape != (n, n):
                raise RaggedTableError(f"{op} table has shape {table.shape}, expected {(n, n)}", 1)
            if table.size and (table.min() < 0 or table.max() >= n):
                raise AlmSyntaxError(f"{op} table holds an index outside [0, {n})", 1)
            object.__setattr__(self, op, table)
        object.__setattr__(self, "leq", order_from_lattice(self.meet, self.join, self.names))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(self.n)

    def index(self, label: str) -> int:
        """Carrier index of an element label."""
        try:
            return self.names.index(label)
        except ValueError:
            raise UnknownElementError(f"unknown element {label!r} in {self.name}", 1) from None

    def label(self, i: int) -> str:
        return self.names[i]

    def labels(self, indices: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.names[i] for i in indices)

    def table(self, op: str) -> np.ndarray:
        return getattr(self, op)

    def same_tables(self, other: FiniteAlgebra) -> bool:
        """Element-wise identity: labels, zero and all four tables."""
        return (
            self.names == other.names
            and self.zero == other.zero
            and all(np.array_equal(self.table(op), other.table(op)) for op in OPERATIONS)
        )

    def is_chain(self) -> bool:
        return bool(np.all(self.leq | self.leq.T))

    def downset(self, a: int) -> frozenset[int]:
        return frozenset(int(x) for x in np.flatnonzero(self.leq[:, a]))

    def bottom(self) -> int | None:
        below_all = np.flatnonzero(self.leq.all(axis=1))
        return int(below_all[0]) if below_all.size else None

    def top(self) -> int | None:
        above_all = np.flatnonzero(self.leq.all(axis=0))
        return int(above_all[0]) if above_all.size else None

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name!r}, n={self.n})"


@dataclass(frozen=True)
class ElementSubset:
    """A set of carrier indices of one algebra."""

    universe: FiniteAlgebra = field(compare=False, hash=False)
    members: frozenset[int]

    @classmethod
    def of(cls, alg: FiniteAlgebra, labels: Iterable[str]) -> ElementSubset:
        return cls(alg, frozenset(alg.index(lbl) for lbl in labels))

    @classmethod
    def full(cls, alg: FiniteAlgebra) -> ElementSubset:
        return cls(alg, frozenset(alg.elements))

    def __contains__(self, i: object) -> bool:
        return i in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def labels(self) -> tuple[str, ...]:
        return self.universe.labels(sorted(self.members))

    def __str__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


# -- order derivation ---------------------------------------------------------


def order_from_lattice(
    meet: np.ndarray, join: np.ndarray, names: Sequence[str]
) -> np.ndarray:
    """Derive ≤ from the meet table and cross-check it against join."""
    n = len(names)
    idx = np.arange(n)
    leq = meet == idx[:, None]
    via_join = join == idx[None, :]
    if not np.array_equal(leq, via_join):
        x, y = (int(v) for v in np.argwhere(leq != via_join)[0])
        raise InconsistentTablesError(
            f"join/meet tables inconsistent at ({names[x]}, {names[y]}): "
            f"{names[x]}∧{names[y]}={names[int(meet[x, y])]} but "
            f"{names[x]}∨{names[y]}={names[int(join[x, y])]}"
        )
    _check_partial_order(leq, names)
    leq.flags.writeable = False
    return leq


def _check_partial_order(leq: np.ndarray, names: Sequence[str]) -> None:
    n = len(names)
    for x in range(n):
        if not leq[x, x]:
            raise NotPartialOrderError(f"not reflexive at {names[x]}", (names[x],))
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        x, y = (int(v) for v in np.argwhere(both)[0])
        raise NotPartialOrderError(
            f"not antisymmetric: {names[x]} ≤ {names[y]} ≤ {names[x]}", (names[x], names[y])
        )
    # x ≤ y ≤ z but not x ≤ z
    broken = leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :]
    if broken.any():
        x, y, z = (int(v) for v in np.argwhere(broken)[0])
        raise NotPartialOrderError(
            f"not transitive: {names[x]} ≤ {names[y]} ≤ {names[z]}",
            (names[x], names[y], names[z]),
        )


def derived_order(alg: FiniteAlgebra) -> np.ndarray:
    """The relation leq(x, y) ⇔ meet(x, y) = x, validated at construction."""
    return alg.leq


def reflexive_transitive_closure(rel: np.ndarray) -> np.ndarray:
    closure = rel.astype(bool) | np.eye(len(rel), dtype=bool)
    while True:
        step = closure | ((closure.astype(np.int64) @ closure.astype(np.int64)) > 0)
        if np.array_equal(step, closure):
            return closure
        closure = step


def lattice_from_order(leq: np.ndarray, names: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
    """Compute join and meet tables of a partial order, failing if it is not a lattice."""
    n = len(names)
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            join[x, y] = _extremum(leq, x, y, names, upper=True)
            meet[x, y] = _extremum(leq, x, y, names, upper=False)
    return join, meet


def _extremum(leq: np.ndarray, x: int, y: int, names: Sequence[str], *, upper: bool) -> int:
    rel = leq if upper else leq.T
    bounds = np.flatnonzero(rel[x, :] & rel[y, :])
    least = [b for b in bounds if all(rel[b, c] for c in bounds)]
    if len(least) != 1:
        kind = "supremum" if upper else "infimum"
        raise NotALatticeError(
            f"order section not a lattice: ({names[x]}, {names[y]}) has no unique {kind}",
            (names[x], names[y]),
        )
    return int(least[0])


# -- subalgebras --------------------------------------------------------------


def subalgebra_closure(alg: FiniteAlgebra, seed: ElementSubset | Iterable[int]) -> ElementSubset:
    """Least superset of ``seed ∪ {0}`` closed under +, ∗, ∨, ∧."""
    members = set(seed.members if isinstance(seed, ElementSubset) else seed)
    members.add(alg.zero)
    frontier = list(members)
    while frontier:
        new: set[int] = set()
        for x in frontier:
            for y in list(members):
                for op in OPERATIONS:
                    table = alg.table(op)
                    for r in (int(table[x, y]), int(table[y, x])):
                        if r not in members:
                            new.add(r)
        members |= new
        frontier = list(new)
    return ElementSubset(alg, frozenset(members))


def is_subalgebra(alg: FiniteAlgebra, subset: ElementSubset | Iterable[int]) -> bool:
    members = subset.members if isinstance(subset, ElementSubset) else frozenset(subset)
    return alg.zero in members and subalgebra_closure(alg, members).members == members


def induced_subalgebra(
    alg: FiniteAlgebra, subset: ElementSubset | Iterable[int], name: str | None = None
) -> tuple[FiniteAlgebra, list[int]]:
    """Materialise a subalgebra as its own algebra.

    Returns the algebra and the embedding (new index → old index). The
    carrier keeps the parent's index order.
    """
    members = sorted(subset.members if isinstance(subset, ElementSubset) else set(subset))
    if not is_subalgebra(alg, members):
        raise InconsistentTablesError(
            f"{{{','.join(alg.labels(members))}}} is not a subalgebra of {alg.name}"
        )
    position = {old: new for new, old in enumerate(members)}
    sub = np.ix_(members, members)
    tables = {op: np.vectorize(position.__getitem__)(alg.table(op)[sub]) for op in OPERATIONS}
    return (
        FiniteAlgebra(
            name=name or f"{alg.name}|{{{','.join(alg.labels(members))}}}",
            names=alg.labels(members),
            zero=position[alg.zero],
            **tables,
        ),
        members,
    )


def trivial_algebra(name: str = "trivial") -> FiniteAlgebra:
    one = np.zeros((1, 1), dtype=np.int64)
    return FiniteAlgebra(name=name, names=("0",), zero=0, plus=one, star=one, join=one, meet=one)


def from_order(
    name: str,
    names: Sequence[str],
    plus: np.ndarray,
    star: np.ndarray,
    leq: np.ndarray,
    zero: int = 0,
) -> FiniteAlgebra:
    join, meet = lattice_from_order(np.asarray(leq, dtype=bool), names)
    return FiniteAlgebra(
        name=name, names=tuple(names), zero=zero, plus=plus, star=star, join=join, meet=meet
    )


# -- .alm text format ---------------------------------------------------------

# Section keywords carry their colon, so a table row can never be mistaken for one.
_HEADER = re.compile(r"^(algebra|elements|zero|plus|star|join|meet|order):(.*)$")


@dataclass
class _Line:
    number: int
    text: str
    offset: int  # column of the first character of ``text``


def _tokens(line: _Line) -> list[tuple[str, int]]:
    return [(m.group(0), line.offset + m.start()) for m in re.finditer(r"\S+", line.text)]


def parse_algebra(text: str) -> FiniteAlgebra:
    """Parse an .alm document."""
    lines: list[_Line] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        stripped = content.lstrip()
        if stripped:
            lines.append(_Line(number, stripped, len(content) - len(stripped) + 1))

    if not lines:
        raise AlmSyntaxError("empty document", 1)

    first = lines[0]
    m = re.match(r"^algebra\s+(\S.*)$", first.text)
    if not m:
        raise AlmSyntaxError("expected 'algebra <name>'", first.number, first.offset)
    name = m.group(1).strip()

    if len(lines) < 2 or not lines[1].text.startswith("elements:"):
        where = lines[1] if len(lines) > 1 else first
        raise AlmSyntaxError("expected 'elements: <labels>'", where.number, where.offset)
    elements_line = lines[1]
    body = _Line(
        elements_line.number,
        elements_line.text[len("elements:") :],
        elements_line.offset + len("elements:"),
    )
    names = [tok for tok, _ in _tokens(body)]
    if not names:
        raise AlmSyntaxError("no elements declared", elements_line.number, elements_line.offset)
    if len(set(names)) != len(names):
        raise AlmSyntaxError("element labels must be unique", elements_line.number, body.offset)
    position = {lbl: i for i, lbl in enumerate(names)}
    n = len(names)

    def lookup(tok: str, line: _Line, col: int) -> int:
        if tok not in position:
            raise UnknownElementError(f"unknown element label {tok!r}", line.number, col)
        return position[tok]

    zero = 0
    sections: dict[str, list[_Line]] = {}
    current: str | None = None
    for line in lines[2:]:
        header = _HEADER.match(line.text)
        if header:
            key, rest = header.group(1), header.group(2).strip()
            if key in ("algebra", "elements"):
                raise AlmSyntaxError(f"duplicate '{key}' line", line.number, line.offset)
            if key == "zero":
                if not rest:
                    raise AlmSyntaxError("expected 'zero: <label>'", line.number, line.offset)
                zero = lookup(rest, line, line.offset + line.text.index(rest))
                current = None
                continue
            if rest:
                col = line.offset + line.text.index(rest)
                raise AlmSyntaxError(f"unexpected text after '{key}:'", line.number, col)
            if key in sections:
                raise AlmSyntaxError(f"duplicate section '{key}:'", line.number, line.offset)
            sections[key] = []
            current = key
            continue
        if current is None:
            raise AlmSyntaxError("text outside any section", line.number, line.offset)
        sections[current].append(line)

    for required in ("plus", "star"):
        if required not in sections:
            raise AlmSyntaxError(f"missing '{required}:' section", lines[-1].number)

    def read_table(key: str) -> np.ndarray:
        rows = sections[key]
        if len(rows) != n:
            at = rows[-1].number if rows else lines[-1].number
            raise RaggedTableError(f"'{key}:' has {len(rows)} rows, expected {n}", at)
        table = np.zeros((n, n), dtype=np.int64)
        for i, row in enumerate(rows):
            toks = _tokens(row)
            if len(toks) != n:
                raise RaggedTableError(
                    f"'{key}:' row {i + 1} has {len(toks)} entries, expected {n}",
                    row.number,
                    row.offset,
                )
            for j, (tok, col) in enumerate(toks):
                table[i, j] = lookup(tok, row, col)
        return table

    plus = read_table("plus")
    star = read_table("star")

    has_tables = "join" in sections or "meet" in sections
    if has_tables and "order" in sections:
        raise AlmSyntaxError("give either 'join:'/'meet:' or 'order:', not both", lines[-1].number)
    if has_tables:
        for required in ("join", "meet"):
            if required not in sections:
                raise AlmSyntaxError(f"missing '{required}:' section", lines[-1].number)
        return FiniteAlgebra(
            name=name,
            names=tuple(names),
            zero=zero,
            plus=plus,
            star=star,
            join=read_table("join"),
            meet=read_table("meet"),
        )
    if "order" not in sections:
        raise AlmSyntaxError("missing 'join:'/'meet:' or 'order:' section", lines[-1].number)

    rel = np.zeros((n, n), dtype=bool)
    for line in sections["order"]:
        for part in line.text.split(","):
            part_col = line.offset + line.text.index(part)
            pm = re.match(r"^\s*(\S+)\s*<=\s*(\S+)\s*$", part)
            if not pm:
                raise AlmSyntaxError("expected 'x <= y'", line.number, part_col)
            x = lookup(pm.group(1), line, part_col + pm.start(1))
            y = lookup(pm.group(2), line, part_col + pm.start(2))
            rel[x, y] = True
    leq = reflexive_transitive_closure(rel)
    _check_partial_order(leq, names)
    return from_order(name, names, plus, star, leq, zero=zero)


def serialize_algebra(alg: FiniteAlgebra) -> str:
    """Render an algebra as an .alm document (always with join/meet tables)."""
    width = max(len(s) for s in alg.names)
    out = [f"algebra {alg.name}", "elements: " + " ".join(alg.names)]
    if alg.zero != 0:
        out.append(f"zero: {alg.label(alg.zero)}")
    for op in TABLE_SECTIONS:
        out.append(f"{op}:")
        for row in alg.table(op):
            out.append("  " + " ".join(alg.label(int(v)).ljust(width) for v in row).rstrip())
    return "\n".join(out) + "\n"


def load_algebra(path: str | Path) -> FiniteAlgebra:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        line_start = raw.rfind(b"\n", 0, exc.start) + 1
        raise AlmSyntaxError(
            "file is not valid UTF-8",
            raw.count(b"\n", 0, exc.start) + 1,
            exc.start - line_start + 1,
        ) from exc
    return parse_algebra(text)


def dump_algebra(alg: FiniteAlgebra, path: str | Path) -> None:
    Path(path).write_text(serialize_algebra(alg), encoding="utf-8")
