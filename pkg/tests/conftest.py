"""Shared fixtures: the two full-size reference runs used across tests.

Both sets are expensive (N = 1e5 windows of T = 252), so they are built
once per session. The Gaussian run also records its wall-clock time for
the runtime budget check.
"""

from __future__ import annotations

import time

import pytest

from sharpedist import GAUSSIAN, STUDENT, DistributionSpec, simulate_joint

MU = 1.45e-4
SIGMA = 1.73e-2
NU = 3.0
T = 252
N = 100_000
SEED = 42


@pytest.fixture(scope="session")
def gaussian_spec() -> DistributionSpec:
    return DistributionSpec(GAUSSIAN, MU, SIGMA)


@pytest.fixture(scope="session")
def student_spec() -> DistributionSpec:
    return DistributionSpec(STUDENT, MU, SIGMA, nu=NU)


@pytest.fixture(scope="session")
def gaussian_run(gaussian_spec):
    started = time.perf_counter()
    sample_set = simulate_joint(gaussian_spec, T, N, SEED, workers=1)
    return sample_set, time.perf_counter() - started


@pytest.fixture(scope="session")
def gaussian_set(gaussian_run):
    return gaussian_run[0]


@pytest.fixture(scope="session")
def student_set(student_spec):
    return simulate_joint(student_spec, T, N, SEED, workers=1)
