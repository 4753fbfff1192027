"""Shared algebra fixtures, loaded from the repository fixtures/ directory."""

from __future__ import annotations

from pathlib import Path

import pytest

from alm_workbench.algebra import FiniteAlgebra, load_algebra, trivial_algebra
from alm_workbench.ideals import IdealSet
from alm_workbench.products import ProductAlgebra, direct_product

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.alm"


def ideal(alg: FiniteAlgebra, labels: str) -> IdealSet:
    """IdealSet from comma-separated labels, e.g. ``ideal(alg, "0,a")``."""
    return IdealSet.of(alg, labels.split(","))  # type: ignore[return-value]


@pytest.fixture
def paper4() -> FiniteAlgebra:
    return load_algebra(fixture_path("paper-4elem"))


@pytest.fixture
def paper6() -> FiniteAlgebra:
    return load_algebra(fixture_path("paper-6elem"))


@pytest.fixture
def chain2() -> FiniteAlgebra:
    return load_algebra(fixture_path("chain2"))


@pytest.fixture
def chain3() -> FiniteAlgebra:
    return load_algebra(fixture_path("chain3-mv"))


@pytest.fixture
def boolean4() -> FiniteAlgebra:
    return load_algebra(fixture_path("boolean-4"))


@pytest.fixture
def trivial() -> FiniteAlgebra:
    return trivial_algebra()


@pytest.fixture
def square(chain2: FiniteAlgebra) -> ProductAlgebra:
    """chain2 × chain2."""
    return direct_product([chain2, chain2])
