from __future__ import annotations

from pathlib import Path

import pytest

from fllp import DEFAULT_ALGEBRA_CONFIG, build_inverse_table, load_algebra_config

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

# One strengthening hedge against two weakening ones, to exercise domains
# where the two hedge classes have different sizes.
ASYM_CONFIG = """\
primary: low, high
hedge: more class=+ rank=1
hedge: roughly class=- rank=1
hedge: barely class=- rank=2
positive: more -> more, barely
negative: more -> roughly
positive: roughly -> roughly
negative: roughly -> more, barely
positive: barely -> roughly
negative: barely -> more, barely
limit: 2
"""


@pytest.fixture(scope="session")
def vmpl():
    algebra, domain, overrides = load_algebra_config(DEFAULT_ALGEBRA_CONFIG)
    return algebra, domain, build_inverse_table(domain, overrides)


@pytest.fixture(scope="session")
def algebra(vmpl):
    return vmpl[0]


@pytest.fixture(scope="session")
def domain(vmpl):
    return vmpl[1]


@pytest.fixture(scope="session")
def table(vmpl):
    return vmpl[2]


@pytest.fixture(scope="session")
def asym():
    algebra, domain, overrides = load_algebra_config(ASYM_CONFIG)
    return algebra, domain, build_inverse_table(domain, overrides)


@pytest.fixture(scope="session")
def samples_dir():
    return SAMPLES
