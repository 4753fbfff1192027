"""Tests for search module."""

from itertools import combinations

import pytest

from alm_workbench.algebra import serialize_algebra
from alm_workbench.axioms import is_al_monoid
from alm_workbench.errors import AlmError, BoundExceededError, UnknownPropertyError
from alm_workbench.morphisms import find_isomorphism
from alm_workbench.search import (
    SearchSpec,
    brute_force_models,
    canonical_form,
    canonical_key,
    counterexample_search,
    enumerate_models,
    lattices,
)


class TestCanonicalForm:
    """Tests for canonical keys and relabeling."""

    def test_isomorphic_algebras_share_a_key(self, square, boolean4) -> None:
        assert canonical_key(square.algebra) == canonical_key(boolean4)

    def test_different_algebras_differ(self, paper4, boolean4) -> None:
        assert canonical_key(paper4) != canonical_key(boolean4)

    def test_form_uses_standard_labels(self, boolean4) -> None:
        form = canonical_form(boolean4)
        assert form.names == ("0", "a", "b", "c")
        assert form.zero == 0
        assert find_isomorphism(form, boolean4) is not None


class TestLattices:
    """Tests for lattice shapes."""

    def test_counts(self) -> None:
        assert [len(lattices(n)) for n in range(1, 6)] == [1, 1, 1, 2, 5]

    def test_bottom_and_top(self) -> None:
        for leq in lattices(4):
            assert leq[0].all()
            assert leq[:, 3].all()


class TestEnumerateModels:
    """Tests for model enumeration."""

    def test_small_counts(self) -> None:
        assert [len(enumerate_models(n)) for n in (1, 2, 3)] == [1, 1, 2]

    def test_names(self) -> None:
        assert [m.name for m in enumerate_models(3)] == ["m3-1", "m3-2"]

    def test_three_element_models(self, chain3) -> None:
        models = enumerate_models(3)
        assert all(m.is_chain() for m in models)
        assert canonical_key(chain3) in {canonical_key(m) for m in models}

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_agrees_with_brute_force(self, n) -> None:
        fast = {canonical_key(m) for m in enumerate_models(n)}
        oracle = {canonical_key(m) for m in brute_force_models(n)}
        assert fast == oracle

    def test_order_four(self, paper4, boolean4) -> None:
        models = enumerate_models(4)
        keys = [canonical_key(m) for m in models]
        assert canonical_key(paper4) in keys
        assert canonical_key(boolean4) in keys
        assert len(set(keys)) == len(keys)
        assert all(is_al_monoid(m) for m in models)
        for A, B in combinations(models, 2):
            assert find_isomorphism(A, B) is None

    def test_deterministic(self) -> None:
        first = [serialize_algebra(m) for m in enumerate_models(3)]
        second = [serialize_algebra(m) for m in enumerate_models(3)]
        assert first == second

    def test_bounds(self) -> None:
        with pytest.raises(BoundExceededError):
            enumerate_models(6)
        with pytest.raises(AlmError):
            enumerate_models(0)
        with pytest.raises(BoundExceededError):
            brute_force_models(4)


class TestCounterexampleSearch:
    """Tests for counterexample search."""

    def test_maximal_ideals_are_prime_on_small_models(self) -> None:
        outcome = counterexample_search(SearchSpec(3, ("T-MAX-PRIME",), "counterexample"))
        assert not outcome.found
        assert outcome.models_checked == 4

    def test_strong_ideals_fail_at_order_three(self) -> None:
        outcome = counterexample_search(SearchSpec(3, ("T-STRONG-ALL",), "counterexample"))
        assert outcome.found
        assert outcome.property_id == "T-STRONG-ALL"
        assert outcome.algebra.n == 3

    def test_unknown_property(self) -> None:
        with pytest.raises(UnknownPropertyError):
            counterexample_search(SearchSpec(2, ("T-NOPE",), "counterexample"))

    def test_bad_mode(self) -> None:
        with pytest.raises(AlmError):
            SearchSpec(2, (), "guess")
