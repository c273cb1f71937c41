import numpy as np
import pytest

from sigmadamp.model import ModelParams


@pytest.fixture
def fractional_params() -> ModelParams:
    """Reference configuration with sigma1 > 0 (both dampings fractional)."""
    return ModelParams(n=3, sigma=1.0, sigma1=0.25, sigma2=0.75)


@pytest.fixture
def frictional_params() -> ModelParams:
    """Reference configuration with sigma1 = 0 (classical friction term)."""
    return ModelParams(n=1, sigma=1.0, sigma1=0.0, sigma2=0.8)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260821)
