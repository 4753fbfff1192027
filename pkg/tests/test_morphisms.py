"""Tests for morphisms module."""

import pytest

from alm_workbench.algebra import ElementSubset
from alm_workbench.congruences import quotient
from alm_workbench.errors import AlmError
from alm_workbench.morphisms import (
    Homomorphism,
    automorphisms,
    chain_checks,
    chain_criterion,
    compose,
    enumerate_homs,
    find_isomorphism,
    first_isomorphism_check,
    identity,
    inverse,
    is_homomorphism,
    iso_theorem_checks,
    kernel_image,
    projection,
    second_isomorphism_check,
    subalgebras,
)
from tests.conftest import ideal


class TestIsHomomorphism:
    """Tests for the homomorphism predicate."""

    def test_identity(self, paper4) -> None:
        f = identity(paper4)
        check = is_homomorphism(paper4, paper4, f.mapping)
        assert check.holds
        assert check.isomorphism

    def test_collapse_onto_trivial(self, paper4, trivial) -> None:
        check = is_homomorphism(paper4, trivial, [0, 0, 0, 0])
        assert check.holds
        assert check.epimorphism
        assert not check.monomorphism

    def test_zero_must_map_to_zero(self, chain2) -> None:
        check = is_homomorphism(chain2, chain2, [1, 1])
        assert check.condition == "zero"

    def test_swapping_chain_points_breaks_plus(self, paper4) -> None:
        # a ↔ b: a+b = b but f(a)+f(b) = b+a = b ↦ a
        check = is_homomorphism(paper4, paper4, [0, 2, 1, 3])
        assert not check.holds
        assert check.condition == "plus"

    def test_length_mismatch(self, chain2) -> None:
        with pytest.raises(AlmError):
            is_homomorphism(chain2, chain2, [0])


class TestComposition:
    """Tests for identity, composition and inverse."""

    def test_compose_with_identity(self, boolean4) -> None:
        swap = next(f for f in automorphisms(boolean4) if f.mapping != tuple(boolean4.elements))
        assert compose(identity(boolean4), swap) == swap
        assert compose(swap, swap) == identity(boolean4)

    def test_inverse(self, boolean4) -> None:
        for f in automorphisms(boolean4):
            assert compose(f, inverse(f)) == identity(boolean4)

    def test_inverse_needs_bijection(self, paper4, trivial) -> None:
        with pytest.raises(AlmError):
            inverse(Homomorphism(paper4, trivial, (0, 0, 0, 0)))

    def test_mismatched_composition(self, paper4, chain2) -> None:
        with pytest.raises(AlmError):
            compose(identity(paper4), identity(chain2))


class TestKernelImage:
    """Tests for kernels and images."""

    def test_projection_kernel_is_the_ideal(self, paper4) -> None:
        q = quotient(paper4, ideal(paper4, "0,a"))
        ki = kernel_image(projection(q))
        assert ki.kernel.labels() == ("0", "a")
        assert ki.kernel_is_ideal
        assert ki.image_is_subalgebra
        assert len(ki.image) == 3

    def test_projection_is_epimorphism(self, boolean4) -> None:
        f = projection(quotient(boolean4, ideal(boolean4, "0,p")))
        assert is_homomorphism(f.source, f.target, f.mapping)
        assert f.is_epimorphism


class TestSearch:
    """Tests for isomorphism and homomorphism search."""

    def test_self_isomorphism_is_identity(self, paper4) -> None:
        assert find_isomorphism(paper4, paper4) == identity(paper4)

    def test_chain_and_boolean_are_not_isomorphic(self, paper4, boolean4) -> None:
        assert find_isomorphism(paper4, boolean4) is None

    def test_size_mismatch(self, paper4, chain2) -> None:
        assert find_isomorphism(paper4, chain2) is None

    def test_square_of_two_chain_is_boolean(self, square, boolean4) -> None:
        f = find_isomorphism(square.algebra, boolean4)
        assert f is not None
        assert is_homomorphism(square.algebra, boolean4, f.mapping).isomorphism

    def test_boolean_automorphisms(self, boolean4) -> None:
        found = automorphisms(boolean4)
        assert len(found) == 2
        assert all(is_homomorphism(boolean4, boolean4, f.mapping).isomorphism for f in found)

    def test_chain_has_only_identity(self, paper4) -> None:
        assert automorphisms(paper4) == [identity(paper4)]

    def test_endomorphisms_of_two_chain(self, chain2) -> None:
        homs = enumerate_homs(chain2, chain2)
        assert {f.mapping for f in homs} == {(0, 0), (0, 1)}

    def test_limit(self, chain2) -> None:
        assert len(enumerate_homs(chain2, chain2, limit=1)) == 1


class TestIsomorphismTheorems:
    """Tests for the first and second isomorphism theorems."""

    def test_first_for_every_quotient(self, paper4) -> None:
        for theorem in iso_theorem_checks(paper4):
            assert theorem.holds, theorem.detail

    def test_first_for_collapse(self, paper4, trivial) -> None:
        report = first_isomorphism_check(Homomorphism(paper4, trivial, (0, 0, 0, 0)))
        assert report.holds
        assert report.left.n == 1

    def test_second_with_top_pair(self, paper4) -> None:
        B = ElementSubset.of(paper4, ["0", "c"])
        report = second_isomorphism_check(paper4, B, ideal(paper4, "0,a"))
        assert report.holds
        assert report.left.n == 2
        assert report.right.n == 2

    def test_second_with_zero_subalgebra(self, boolean4) -> None:
        B = ElementSubset.of(boolean4, ["0"])
        report = second_isomorphism_check(boolean4, B, ideal(boolean4, "0,p"))
        assert report.holds

    def test_second_rejects_non_subalgebra(self, boolean4) -> None:
        B = ElementSubset.of(boolean4, ["0", "p", "q"])
        with pytest.raises(AlmError):
            second_isomorphism_check(boolean4, B, ideal(boolean4, "0"))

    def test_boolean_subalgebras(self, boolean4) -> None:
        found = {S.labels() for S in subalgebras(boolean4)}
        assert found == {
            ("0",),
            ("0", "p"),
            ("0", "q"),
            ("0", "1"),
            ("0", "p", "q", "1"),
        }


class TestChains:
    """Tests for the chain criterion and its companions."""

    def test_chain(self, paper4) -> None:
        report = chain_checks(paper4)
        assert report.is_chain
        assert report.criterion_holds
        assert not report.is_simple
        assert report.consistent

    def test_boolean_witness(self, boolean4) -> None:
        assert chain_criterion(boolean4) == (False, ("p", "q"))
        report = chain_checks(boolean4)
        assert not report.is_chain
        assert report.consistent

    def test_simple_algebras(self, chain2, trivial) -> None:
        assert chain_checks(chain2).is_simple
        assert chain_checks(trivial).is_simple
