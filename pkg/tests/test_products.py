"""Tests for products module."""

import pytest

from alm_workbench.algebra import parse_algebra
from alm_workbench.axioms import check_al_monoid
from alm_workbench.congruences import quotient
from alm_workbench.errors import AlmError, BoundExceededError
from alm_workbench.morphisms import find_isomorphism, projection
from alm_workbench.products import (
    coordinate_kernel_check,
    decompose_distant,
    direct_product,
    indecomposability_check,
    product_axiom_check,
    product_ideals_check,
    representability_check,
    subdirect_representation,
    tuple_hom_kernel_check,
)
from tests.conftest import ideal


class TestDirectProduct:
    """Tests for building products."""

    def test_labels_and_zero(self, square) -> None:
        alg = square.algebra
        assert alg.names == ("(0,0)", "(0,x)", "(x,0)", "(x,x)")
        assert alg.zero == 0
        assert alg.name == "chain2×chain2"

    def test_componentwise_operations(self, paper4, chain2) -> None:
        prod = direct_product([paper4, chain2])
        alg = prod.algebra
        left = prod.index([paper4.index("a"), 1])
        right = prod.index([paper4.index("b"), 0])
        assert alg.label(int(alg.plus[left, right])) == "(b,x)"
        assert alg.label(int(alg.star[left, right])) == "(b,x)"
        assert alg.label(int(alg.meet[left, right])) == "(a,0)"

    def test_square_is_boolean(self, square, boolean4) -> None:
        assert find_isomorphism(square.algebra, boolean4) is not None

    def test_trivial_factor(self, paper4, trivial) -> None:
        prod = direct_product([paper4, trivial])
        assert find_isomorphism(prod.algebra, paper4) is not None

    def test_bound(self, paper4) -> None:
        with pytest.raises(BoundExceededError):
            direct_product([paper4, paper4, paper4], bound=16)

    def test_needs_a_factor(self) -> None:
        with pytest.raises(AlmError):
            direct_product([])


class TestProductAxioms:
    """Tests for axioms and ideals of products."""

    def test_chain_times_chain(self, paper4, chain2) -> None:
        report = product_axiom_check([paper4, chain2])
        assert report.holds
        assert report.product_report.is_al_monoid
        assert direct_product([paper4, chain2]).algebra.n == 8

    def test_failing_factor_makes_it_vacuous(self, paper6, chain2) -> None:
        report = product_axiom_check([paper6, chain2])
        assert report.factors_al == [False, True]
        assert report.holds

    def test_product_ideals(self, paper4, chain2) -> None:
        assert product_ideals_check([paper4, chain2]) == (True, None)
        assert product_ideals_check([chain2, chain2]) == (True, None)

    def test_ideal_that_is_not_a_rectangle(self) -> None:
        flat = parse_algebra(
            "algebra flat\nelements: 0 x\nplus:\n  0 0\n  0 0\nstar:\n  0 x\n  x 0\norder:\n  0 <= x\n"
        )
        holds, detail = product_ideals_check([flat, flat])
        assert not holds
        assert detail == "{(0,0),(0,x),(x,0)} is not the product of its projections"


class TestKernelMeet:
    """Tests for tuple homomorphisms."""

    def test_projections_of_square(self, square) -> None:
        report = tuple_hom_kernel_check([square.projection(0), square.projection(1)])
        assert report.is_homomorphism
        assert report.holds
        assert report.kernel == frozenset({square.algebra.zero})

    def test_quotient_maps(self, paper4) -> None:
        homs = [
            projection(quotient(paper4, ideal(paper4, "0,a"))),
            projection(quotient(paper4, ideal(paper4, "0,a,b"))),
        ]
        report = tuple_hom_kernel_check(homs)
        assert report.holds
        assert paper4.labels(sorted(report.kernel)) == ("0", "a")

    def test_sources_must_match(self, square, paper4) -> None:
        other = projection(quotient(paper4, ideal(paper4, "0,a")))
        with pytest.raises(AlmError):
            tuple_hom_kernel_check([square.projection(0), other])


class TestDecomposition:
    """Tests for distant pairs against direct products."""

    def test_boolean_decomposes(self, boolean4) -> None:
        reports = decompose_distant(boolean4)
        assert len(reports) == 2
        assert all(r.isomorphic for r in reports)

    def test_chain_has_nothing_to_decompose(self, paper4) -> None:
        assert decompose_distant(paper4) == []

    def test_coordinate_kernels_of_square(self, square) -> None:
        report = coordinate_kernel_check(square)
        assert report.first.labels() == ("(0,0)", "(0,x)")
        assert report.second.labels() == ("(0,0)", "(x,0)")
        assert report.holds
        assert report.both_strong

    def test_coordinate_kernels_need_not_be_strong(self, paper4, chain2) -> None:
        report = coordinate_kernel_check(direct_product([paper4, chain2]))
        assert report.holds
        assert not report.both_strong

    def test_indecomposability_agrees(self, paper4, boolean4, chain3) -> None:
        assert indecomposability_check(boolean4).decomposable
        assert not indecomposability_check(paper4).decomposable
        for alg in (paper4, boolean4, chain3):
            assert indecomposability_check(alg).agrees


class TestSubdirect:
    """Tests for subdirect representations."""

    def test_chain_needs_one_prime(self, paper4) -> None:
        report = subdirect_representation(paper4)
        assert [P.labels() for P in report.family] == [("0",)]
        assert report.into_chains
        assert report.is_homomorphism

    def test_boolean_needs_both(self, boolean4) -> None:
        report = subdirect_representation(boolean4)
        assert [P.labels() for P in report.family] == [("0", "p"), ("0", "q")]
        assert report.injective
        assert report.projections_onto
        assert report.factors_are_chains == [True, True]
        assert report.is_homomorphism

    def test_trivial_uses_empty_family(self, trivial) -> None:
        report = subdirect_representation(trivial)
        assert report.found
        assert report.family == []
        assert report.into_chains


class TestRepresentability:
    """Tests for the equivalent representability conditions."""

    def test_chain(self, paper4) -> None:
        report = representability_check(paper4)
        assert (report.r1, report.r2, report.r3) == (True, True, True)
        assert not report.m2
        assert report.agree

    def test_boolean(self, boolean4) -> None:
        report = representability_check(boolean4)
        assert report.agree
        assert report.m2
        assert report.to_dict()["R3"]

    def test_product_of_chains(self, paper4, chain2) -> None:
        alg = direct_product([paper4, chain2]).algebra
        assert check_al_monoid(alg).is_representable
        assert representability_check(alg).agree
