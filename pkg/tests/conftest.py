import os

import hypothesis
import numpy as np
import pytest

hypothesis.settings.register_profile("ci", max_examples=25, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=200, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_unit_points(rng, n):
    return np.exp(1j * np.sort(rng.uniform(0, 2 * np.pi, n)))
