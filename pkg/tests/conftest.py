"""Shared fixtures for the spinchain test suite."""

import numpy as np
import pytest

from spinchain.model import ModelParams, thermo_kgrid


@pytest.fixture(scope="session")
def base_params():
    """Reference drive: a=1.4, b=0, tau=0.3, beta=20."""
    return ModelParams(a=1.4, b=0.0, tau=0.3, beta=20.0)


@pytest.fixture(scope="session")
def tkgrid():
    """Default thermodynamic-limit quadrature grid."""
    return thermo_kgrid(4096)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260823)
