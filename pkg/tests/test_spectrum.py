"""Tests for spectrum and topology modules."""

import pytest

from alm_workbench.errors import UnknownElementError
from alm_workbench.products import direct_product
from alm_workbench.spectrum import (
    minimal_maximal_primes,
    multiplicativity_witness,
    polar,
    separation_check,
    spectrum,
    values,
    values_and_mu,
)
from alm_workbench.topology import FiniteTopology, is_continuous, mask, members


class TestFiniteTopology:
    """Tests for bitmask topologies."""

    def test_mask_members(self) -> None:
        assert mask([0, 2]) == 0b101
        assert members(0b101) == [0, 2]

    def test_generated_chain_topology(self) -> None:
        top = FiniteTopology.generated(0b111, [0b001, 0b011])
        assert top.opens == frozenset({0, 0b001, 0b011, 0b111})
        assert top.is_closed(0b110)
        assert not top.is_t2()
        assert top.t2_witness() == (0, 1)
        assert top.neighbourhood(1) == 0b011

    def test_discrete(self) -> None:
        top = FiniteTopology.generated(0b11, [0b01, 0b10])
        assert top.is_discrete()
        assert top.is_t2()

    def test_subspace(self) -> None:
        top = FiniteTopology.generated(0b111, [0b001, 0b011])
        assert top.subspace(0b110).opens == frozenset({0, 0b010, 0b110})

    def test_continuity(self) -> None:
        coarse = FiniteTopology(0b11, frozenset({0, 0b11}))
        fine = FiniteTopology.generated(0b11, [0b01, 0b10])
        assert is_continuous(lambda p: p, fine, coarse)
        assert not is_continuous(lambda p: p, coarse, fine)


class TestSpectrum:
    """Tests for primes and basic open sets."""

    def test_chain(self, paper4) -> None:
        spec = spectrum(paper4)
        assert [P.labels() for P in spec.primes] == [("0",), ("0", "a"), ("0", "a", "b")]
        assert spec.S(paper4.index("0")) == 0
        assert spec.S(paper4.index("a")) == 0b001
        assert spec.S(paper4.index("b")) == 0b011
        assert spec.S(paper4.index("c")) == 0b111

    def test_boolean_is_discrete(self, boolean4) -> None:
        spec = spectrum(boolean4)
        assert spec.S(boolean4.index("p")) == 0b10
        assert spec.S(boolean4.index("q")) == 0b01
        assert spec.topology.is_discrete()

    def test_trivial_is_empty(self, trivial) -> None:
        spec = spectrum(trivial)
        assert spec.primes == []
        assert spec.carrier == 0

    def test_meets_go_to_intersections(self, paper4, boolean4, chain3) -> None:
        for alg in (paper4, boolean4, chain3):
            assert multiplicativity_witness(spectrum(alg)) is None

    def test_to_dict(self, boolean4) -> None:
        out = spectrum(boolean4).to_dict()
        assert out["primes"] == [["0", "p"], ["0", "q"]]
        assert out["basic_opens"]["1"] == [0, 1]
        assert out["discrete"]


class TestSeparation:
    """Tests for separating incomparable primes."""

    def test_boolean(self, boolean4) -> None:
        report = separation_check(boolean4)
        assert len(report.pairs) == 1
        pair = report.pairs[0]
        assert pair.holds
        assert (boolean4.label(pair.u), boolean4.label(pair.v)) == ("p", "q")

    def test_chain_is_vacuous(self, paper4) -> None:
        report = separation_check(paper4)
        assert report.vacuous
        assert report.holds

    def test_product_of_chains(self, paper4, chain2) -> None:
        report = separation_check(direct_product([paper4, chain2]).algebra)
        assert not report.vacuous
        assert report.holds


class TestExtremePrimes:
    """Tests for minimal and maximal primes."""

    def test_chain(self, paper4) -> None:
        extremes = minimal_maximal_primes(paper4)
        assert extremes.minimal == [0]
        assert extremes.maximal == [2]
        assert extremes.holds
        assert extremes.polar_failures == []
        assert extremes.principal_whole == paper4.index("c")

    def test_boolean(self, boolean4) -> None:
        extremes = minimal_maximal_primes(boolean4)
        assert extremes.minimal == [0, 1]
        assert extremes.maximal == [0, 1]
        assert extremes.minimal_t2
        assert extremes.maximal_t2
        assert extremes.polar_failures == []

    def test_polar(self, boolean4) -> None:
        assert boolean4.labels(sorted(polar(boolean4, boolean4.index("p")))) == ("0", "q")


class TestValues:
    """Tests for values and the μ map."""

    def test_values_of_top(self, paper4) -> None:
        found = values(paper4, paper4.index("c"))
        assert [V.labels() for V in found] == [("0", "a", "b")]

    def test_zero_has_no_values(self, paper4) -> None:
        assert values(paper4, paper4.zero) == []

    def test_out_of_range(self, paper4) -> None:
        with pytest.raises(UnknownElementError):
            values(paper4, 9)

    def test_mu_on_chain(self, paper4) -> None:
        assignment = values_and_mu(paper4, paper4.index("c"))
        assert assignment.mu == {0: 0, 1: 0, 2: 0}
        assert assignment.unique
        assert assignment.continuous
        assert assignment.values_t2

    def test_mu_on_boolean(self, boolean4) -> None:
        assignment = values_and_mu(boolean4, boolean4.index("1"))
        assert [V.labels() for V in assignment.values] == [("0", "p"), ("0", "q")]
        assert assignment.mu == {0: 0, 1: 1}
        assert assignment.unique
        assert assignment.continuous

    def test_mu_of_zero(self, boolean4) -> None:
        assignment = values_and_mu(boolean4, boolean4.zero)
        assert assignment.values == []
        assert assignment.mu == {}
        assert assignment.unique
