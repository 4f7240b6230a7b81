import os
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings as hypothesis_settings

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules.code.spec import CodeSpec
from modules.gf.field import build_field
from modules.llrv.transform import KernelCoeffs

# Hypothesis profiles: default for local runs, ci for thorough runs, quick for iteration
hypothesis_settings.register_profile("default", deadline=5000, max_examples=100, print_blob=True)
hypothesis_settings.register_profile("ci", deadline=10000, max_examples=1000, print_blob=True)
hypothesis_settings.register_profile("quick", deadline=1000, max_examples=10)
hypothesis_settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def popcount_code(N: int, K: int, field, kernel: KernelCoeffs = None) -> CodeSpec:
    """Code freezing the N-K indices of lowest popcount (lowest index first)."""
    kernel = kernel or KernelCoeffs(2 if field.q > 2 else 1, 1)
    weights = np.array([bin(i).count("1") for i in range(N)])
    order = np.lexsort((np.arange(N), weights))
    return CodeSpec.from_frozen(N, field, kernel, {int(i): 0 for i in order[:N - K]})


@pytest.fixture
def gf2():
    return build_field(1)


@pytest.fixture
def gf4():
    return build_field(2)


@pytest.fixture
def gf16():
    return build_field(4)


@pytest.fixture
def gf256():
    return build_field(8)


@pytest.fixture
def toy_code(gf4):
    """(8, 3) code over GF(4) with nonzero frozen values."""
    return CodeSpec.from_frozen(8, gf4, KernelCoeffs(2, 1), {0: 0, 1: 1, 2: 0, 3: 2, 4: 0})


@pytest.fixture
def code_128(gf256):
    """(128, 64) code over GF(256)."""
    return popcount_code(128, 64, gf256)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
