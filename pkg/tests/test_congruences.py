"""Tests for congruences module."""

import pytest

from alm_workbench.algebra import load_algebra
from alm_workbench.congruences import (
    Congruence,
    bijection_check,
    congruence_from_ideal,
    enumerate_congruences,
    ideal_from_congruence,
    is_congruence,
    lattice_isomorphism_check,
    quotient,
    quotient_by,
    remark_counterexamples,
)
from alm_workbench.errors import AlmError, IllDefinedOperationError, NotAnIdealError
from alm_workbench.ideals import enumerate_ideals
from alm_workbench.morphisms import find_isomorphism
from tests.conftest import fixture_path, ideal

ALGEBRAS = ["paper-4elem", "boolean-4", "chain3-mv", "chain2", "trivial"]


class TestCongruence:
    """Tests for the partition type."""

    def test_classes_sorted_by_least_member(self, paper4) -> None:
        theta = Congruence.from_labels(paper4, [["c"], ["b", "0"], ["a"]])
        assert theta.labels() == [["0", "b"], ["a"], ["c"]]
        assert str(theta) == "{{0,b}, {a}, {c}}"
        assert theta.related(paper4.index("0"), paper4.index("b"))

    def test_not_a_partition(self, paper4) -> None:
        with pytest.raises(AlmError):
            Congruence.from_labels(paper4, [["0", "a"], ["b"]])

    def test_refines(self, paper4) -> None:
        fine = congruence_from_ideal(paper4, ideal(paper4, "0,a"))
        coarse = congruence_from_ideal(paper4, ideal(paper4, "0,a,b"))
        assert fine.refines(coarse)
        assert not coarse.refines(fine)


class TestIsCongruence:
    """Tests for the congruence clauses."""

    def test_ideal_partition_passes(self, paper4) -> None:
        theta = Congruence.from_labels(paper4, [["0", "a"], ["b"], ["c"]])
        check = is_congruence(paper4, theta)
        assert check.holds
        assert not check.remark_counterexample

    def test_gap_partition_fails(self, paper4) -> None:
        theta = Congruence.from_labels(paper4, [["0", "b"], ["a"], ["c"]])
        check = is_congruence(paper4, theta)
        assert not check.holds
        assert check.clause("c1").witness == ("0", "b", "a")
        assert check.clause("c3").witness == ("0", "b", "0", "a")
        assert check.witness == ("0", "b", "a")

    def test_top_class_fails_star_clause(self, paper4) -> None:
        theta = Congruence.from_labels(paper4, [["0"], ["a"], ["b", "c"]])
        check = is_congruence(paper4, theta)
        assert check.clause("c1").holds
        assert not check.clause("c3").holds


class TestEnumerate:
    """Tests for congruence enumeration."""

    def test_four_element_chain(self, paper4) -> None:
        found = enumerate_congruences(paper4)
        assert [t.labels() for t in found] == [
            [["0"], ["a"], ["b"], ["c"]],
            [["0", "a"], ["b"], ["c"]],
            [["0", "a", "b"], ["c"]],
            [["0", "a", "b", "c"]],
        ]

    def test_chain2(self, chain2) -> None:
        assert len(enumerate_congruences(chain2)) == 2

    @pytest.mark.parametrize("name", ALGEBRAS)
    def test_bijection_with_ideals(self, name) -> None:
        alg = load_algebra(fixture_path(name))
        report = bijection_check(alg)
        assert report.holds, report.failures
        assert report.ideal_count == report.congruence_count
        assert lattice_isomorphism_check(alg) == (True, None)

    def test_no_remark_counterexamples(self, paper4, boolean4) -> None:
        assert remark_counterexamples(paper4) == []
        assert remark_counterexamples(boolean4) == []


class TestIdealCorrespondence:
    """Tests for the ideal ↔ congruence maps."""

    def test_zero_class(self, paper4) -> None:
        theta = congruence_from_ideal(paper4, ideal(paper4, "0,a,b"))
        assert theta.labels() == [["0", "a", "b"], ["c"]]
        assert ideal_from_congruence(paper4, theta).labels() == ("0", "a", "b")

    def test_six_element_classes(self, paper6) -> None:
        theta = congruence_from_ideal(paper6, ideal(paper6, "0,a,b"))
        assert theta.labels() == [["0", "a", "b"], ["c", "d", "e"]]

    def test_rejects_non_ideal(self, paper4) -> None:
        with pytest.raises(NotAnIdealError):
            congruence_from_ideal(paper4, ideal(paper4, "0,b"))

    def test_zero_class_must_be_an_ideal(self, paper4) -> None:
        theta = Congruence.from_labels(paper4, [["0", "b"], ["a"], ["c"]])
        with pytest.raises(NotAnIdealError) as exc:
            ideal_from_congruence(paper4, theta)
        assert exc.value.witness == ("a", "b")

    def test_bijection_reports_bad_zero_class(self, paper4) -> None:
        theta = Congruence.from_labels(paper4, [["0", "b"], ["a"], ["c"]])
        report = bijection_check(paper4, congruences=[theta])
        assert not report.holds
        assert any("class of 0" in f for f in report.failures)


class TestQuotient:
    """Tests for quotient algebras."""

    def test_by_small_ideal(self, paper4) -> None:
        q = quotient(paper4, ideal(paper4, "0,a"))
        assert q.algebra.names == ("0", "b", "c")
        assert q.algebra.is_chain()
        assert q.report.is_al_monoid
        assert q.projection == [0, 0, 1, 2]
        assert q.algebra.name == "paper-4elem/{0,a}"

    def test_by_maximal_ideal_is_two_chain(self, paper4, chain2) -> None:
        q = quotient(paper4, ideal(paper4, "0,a,b"))
        assert q.algebra.names == ("0", "c")
        assert find_isomorphism(q.algebra, chain2) is not None

    def test_by_zero_ideal_is_isomorphic(self, paper4) -> None:
        q = quotient(paper4, ideal(paper4, "0"))
        assert q.algebra.same_tables(paper4) or find_isomorphism(q.algebra, paper4) is not None

    def test_by_whole_is_trivial(self, boolean4) -> None:
        q = quotient(boolean4, ideal(boolean4, "0,p,q,1"))
        assert q.algebra.n == 1

    def test_boolean_quotients_are_chains(self, boolean4) -> None:
        for I in enumerate_ideals(boolean4):
            q = quotient(boolean4, I)
            assert q.report.is_al_monoid
            assert q.algebra.is_chain() == (len(I) == 2 or len(I) == 4)

    def test_ill_defined_partition(self, paper4) -> None:
        theta = Congruence.from_labels(paper4, [["0", "b"], ["a"], ["c"]])
        with pytest.raises(IllDefinedOperationError) as exc:
            quotient_by(paper4, theta)
        assert len(exc.value.witness) == 4

    def test_to_dict(self, paper4) -> None:
        out = quotient(paper4, ideal(paper4, "0,a")).to_dict()
        assert out["projection"] == {"0": "0", "a": "0", "b": "b", "c": "c"}
        assert out["is_al_monoid"]
