"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from schottkit.schottky import (
    SchottkyData,
    build_schottky,
    classical_configuration,
    tangent_configuration,
)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every randomized check is reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def classical_g2() -> SchottkyData:
    """Classical genus-2 group with disks at ∓3, ∓6."""
    disks, generators = classical_configuration(2)
    return build_schottky(disks, generators)


@pytest.fixture
def tangent_g2() -> SchottkyData:
    """Genus-2 group whose last pair is tangent at 0 with a parabolic generator."""
    disks, generators = tangent_configuration(2)
    return build_schottky(disks, generators)
