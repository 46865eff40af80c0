"""Independent oracles shared by the test modules.

None of these touch the package internals: they are plain partial products,
brute-force enumerations and textbook formulas.
"""

import math
import warnings
from functools import lru_cache

import pytest
import scipy.integrate

from ctm_entropy import Truncation


def partial_log_product(z, w, n_factors):
    """ln prod_{n < n_factors} (1 - z w^n), factor by factor."""
    return sum(math.log(1.0 - z * w**n) for n in range(n_factors))


@lru_cache(maxsize=None)
def _partitions_bounded(n, largest):
    """Partitions of n into odd parts no larger than ``largest``."""
    if n == 0:
        return 1
    total = 0
    for part in range(min(largest, n), 0, -1):
        if part % 2 == 1:
            total += _partitions_bounded(n - part, part)
    return total


def odd_part_partitions(n):
    return _partitions_bounded(n, n)


def kernel_oracle(t):
    """f(t) = ln(1 - e^-t) - t / (e^t - 1), safe at the t = 0 endpoint."""
    t = max(t, 1e-300)
    one_minus = -math.expm1(-t)
    return math.log(one_minus) - t * math.exp(-t) / one_minus


def bilateral_block_sum(a, b, eps, half_width=1000):
    """S(a, b) = sum_{|n| < half_width} f(|eps (a + n b)|), summed smallest first."""
    vals = [kernel_oracle(abs(eps * (a + n * b))) for n in range(-half_width, half_width)]
    return math.fsum(sorted(vals, key=abs))


def quad_transform(y):
    """int_0^inf f(t) cos(y t) dt via QUADPACK (QAWO head, QAWF tail)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.integrate.IntegrationWarning)
        head, _ = scipy.integrate.quad(kernel_oracle, 0, 1, weight="cos", wvar=y, epsabs=1e-14, limit=200)
        tail, _ = scipy.integrate.quad(kernel_oracle, 1, math.inf, weight="cos", wvar=y, epsabs=1e-14, limlst=200)
    return head + tail


@pytest.fixture
def tight():
    return Truncation(abs_tol=1e-15)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion; echoed live and in the summary."""

    def record(label, ok, detail):
        line = f"{label} {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
