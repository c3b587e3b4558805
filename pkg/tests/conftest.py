"""
Shared fixtures and hypothesis profiles.

The default profile is derandomized so that property tests are reproducible run to run.
Select another profile with HYPOTHESIS_PROFILE=dev.
"""

import os

import pytest
from hypothesis import HealthCheck
from hypothesis import settings as hypothesis_settings

from src.utils.exactla import Field

hypothesis_settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
hypothesis_settings.register_profile("dev", max_examples=200, deadline=None)
hypothesis_settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def q() -> Field:
    """The rationals."""
    return Field.rational()


@pytest.fixture
def gf2() -> Field:
    """GF(2)."""
    return Field.gf(2)


@pytest.fixture
def gf3() -> Field:
    """GF(3)."""
    return Field.gf(3)
