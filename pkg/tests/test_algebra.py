"""Tests for algebra module."""

import numpy as np
import pytest

from alm_workbench.algebra import (
    ElementSubset,
    dump_algebra,
    induced_subalgebra,
    is_subalgebra,
    load_algebra,
    parse_algebra,
    reflexive_transitive_closure,
    serialize_algebra,
    subalgebra_closure,
)
from alm_workbench.errors import (
    AlmSyntaxError,
    InconsistentTablesError,
    NotALatticeError,
    NotPartialOrderError,
    RaggedTableError,
    UnknownElementError,
)
from alm_workbench.search import enumerate_models

CHAIN2_TABLES = """\
algebra t
elements: 0 x
plus:
  0 x
  x x
star:
  0 x
  x 0
"""


class TestParse:
    """Tests for the .alm reader."""

    def test_order_section_builds_lattice(self, paper4) -> None:
        assert paper4.n == 4
        assert paper4.names == ("0", "a", "b", "c")
        assert paper4.is_chain()
        assert paper4.bottom() == 0
        assert paper4.top() == 3
        assert paper4.label(int(paper4.join[1, 2])) == "b"
        assert paper4.label(int(paper4.meet[1, 2])) == "a"

    def test_join_meet_sections(self, boolean4) -> None:
        assert not boolean4.is_chain()
        assert bool(boolean4.leq[boolean4.index("p"), boolean4.index("1")])
        assert not boolean4.leq[boolean4.index("p"), boolean4.index("q")]

    def test_comments_and_indentation_ignored(self) -> None:
        alg = parse_algebra("# header\n" + CHAIN2_TABLES + "order:\n  0 <= x  # the only pair\n")
        assert alg.n == 2
        assert alg.name == "t"

    def test_zero_line(self) -> None:
        text = """\
algebra swapped
elements: x 0
zero: 0
plus:
  x x
  x 0
star:
  0 x
  x 0
order:
  0 <= x
"""
        alg = parse_algebra(text)
        assert alg.zero == 1
        assert alg.bottom() == 1

    def test_unknown_label_reports_position(self) -> None:
        text = CHAIN2_TABLES.replace("  x x\nstar", "  x z\nstar") + "order:\n  0 <= x\n"
        with pytest.raises(UnknownElementError) as exc:
            parse_algebra(text)
        assert exc.value.line == 5
        assert exc.value.column == 5

    def test_ragged_row(self) -> None:
        text = CHAIN2_TABLES.replace("  x x\nstar", "  x\nstar") + "order:\n  0 <= x\n"
        with pytest.raises(RaggedTableError) as exc:
            parse_algebra(text)
        assert exc.value.line == 5

    def test_missing_star_section(self) -> None:
        with pytest.raises(AlmSyntaxError, match="missing 'star:'"):
            parse_algebra("algebra t\nelements: 0\nplus:\n  0\norder:\n  0 <= 0\n")

    def test_missing_header(self) -> None:
        with pytest.raises(AlmSyntaxError) as exc:
            parse_algebra("elements: 0\n")
        assert exc.value.line == 1

    def test_order_without_supremum(self) -> None:
        text = """\
algebra vee
elements: 0 a b
plus:
  0 a b
  a a a
  b a b
star:
  0 a b
  a 0 a
  b a 0
order:
  0 <= a, 0 <= b
"""
        with pytest.raises(NotALatticeError) as exc:
            parse_algebra(text)
        assert exc.value.pair == ("a", "b")

    def test_order_cycle_is_not_partial_order(self) -> None:
        text = """\
algebra cyc
elements: 0 a b
plus:
  0 a b
  a a b
  b b b
star:
  0 a b
  a 0 b
  b b 0
order:
  0 <= a, a <= b, b <= a
"""
        with pytest.raises(NotPartialOrderError):
            parse_algebra(text)

    def test_inconsistent_join_and_meet(self) -> None:
        text = CHAIN2_TABLES + "join:\n  0 x\n  x x\nmeet:\n  0 x\n  x x\n"
        with pytest.raises(InconsistentTablesError):
            parse_algebra(text)


class TestSerialize:
    """Tests for the .alm writer."""

    def test_reparse_keeps_tables(self, paper4) -> None:
        again = parse_algebra(serialize_algebra(paper4))
        assert again.same_tables(paper4)
        assert again.name == paper4.name

    def test_writes_join_and_meet(self, chain2) -> None:
        text = serialize_algebra(chain2)
        assert "join:" in text
        assert "meet:" in text
        assert "order:" not in text


class TestOrder:
    """Tests for order helpers."""

    def test_closure_is_reflexive_and_transitive(self) -> None:
        rel = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=bool)
        closed = reflexive_transitive_closure(rel)
        assert closed.diagonal().all()
        assert closed[0, 2]
        assert not closed[2, 0]

    def test_downset(self, paper4) -> None:
        assert paper4.downset(paper4.index("b")) == frozenset({0, 1, 2})


class TestSubalgebras:
    """Tests for subalgebra closure and materialisation."""

    def test_closure_adds_zero(self, paper4) -> None:
        closed = subalgebra_closure(paper4, {paper4.index("a")})
        assert closed.labels() == ("0", "a")

    def test_two_point_subalgebra(self, paper4) -> None:
        subset = ElementSubset.of(paper4, ["0", "c"])
        assert is_subalgebra(paper4, subset)
        sub, embedding = induced_subalgebra(paper4, subset)
        assert sub.names == ("0", "c")
        assert embedding == [0, 3]

    def test_boolean_antichain_pair_is_not_closed(self, boolean4) -> None:
        assert not is_subalgebra(boolean4, ElementSubset.of(boolean4, ["0", "p", "q"]))
        with pytest.raises(InconsistentTablesError):
            induced_subalgebra(boolean4, ElementSubset.of(boolean4, ["0", "p", "q"]))

    @pytest.mark.parametrize("name", ["paper4", "paper6", "boolean4", "chain3"])
    def test_closure_operator_laws(self, name, request) -> None:
        alg = request.getfixturevalue(name)
        closures = {
            bits: subalgebra_closure(alg, [i for i in alg.elements if bits >> i & 1]).members
            for bits in range(1 << alg.n)
        }
        for bits, closed in closures.items():
            seed = {i for i in alg.elements if bits >> i & 1}
            assert seed | {alg.zero} <= closed
            assert subalgebra_closure(alg, closed).members == closed
            assert is_subalgebra(alg, closed)
        for small, closed in closures.items():
            for big in range(1 << alg.n):
                if small & big == small:
                    assert closed <= closures[big]


class TestLoad:
    """Tests for reading .alm files from disk."""

    def test_invalid_utf8_is_a_syntax_error(self, tmp_path) -> None:
        bad = tmp_path / "bad.alm"
        bad.write_bytes(b"algebra t\nelements: 0\n\xff\xfe\x00garbage\n")
        with pytest.raises(AlmSyntaxError) as exc:
            load_algebra(bad)
        assert exc.value.line == 3
        assert exc.value.column == 1
        assert "UTF-8" in str(exc.value)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_generated_models_reload(self, n, tmp_path) -> None:
        for model in enumerate_models(n):
            path = tmp_path / f"{model.name}.alm"
            dump_algebra(model, path)
            again = load_algebra(path)
            assert again.same_tables(model)
            assert again.names == model.names
