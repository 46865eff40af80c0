"""Real-argument q-Pochhammer symbols, theta functions and exact q-product series.

Everything is accumulated in log space. Close to x = 1 the individual
products behave like exp(-C/eps) and underflow long before their ratios do.
"""

from __future__ import annotations

import math
import os
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, SeriesError, TruncationError

TOL_ENV_VAR = "CTM_ENTROPY_ABS_TOL"


@dataclass(frozen=True)
class Nome:
    """Coupling ``epsilon > 0`` and the nome ``x = exp(-epsilon)``."""

    epsilon: float

    def __post_init__(self):
        eps = float(self.epsilon)
        if not (eps > 0.0 and math.isfinite(eps)):
            raise DomainError(f"epsilon must be a positive finite number, got {self.epsilon!r}")
        object.__setattr__(self, "epsilon", eps)

    @property
    def x(self) -> float:
        return math.exp(-self.epsilon)

    @classmethod
    def from_x(cls, x: float) -> "Nome":
        if not 0.0 < x < 1.0:
            raise DomainError(f"nome x must lie in (0, 1), got {x!r}")
        return cls(-math.log(x))


@dataclass(frozen=True)
class Truncation:
    """Absolute tolerance on a computed value and a hard cap on series terms."""

    abs_tol: float = 1e-13
    max_terms: int = 10**7

    def __post_init__(self):
        if not self.abs_tol > 0.0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms!r}")

    @classmethod
    def from_env(cls, **overrides) -> "Truncation":
        """Default truncation, with ``abs_tol`` taken from the environment if set."""
        raw = os.environ.get(TOL_ENV_VAR)
        if raw and "abs_tol" not in overrides:
            overrides["abs_tol"] = float(raw)
        return cls(**overrides)


DEFAULT_TRUNCATION = Truncation()


def _log_qpochhammer_terms(z: float, w: float, trunc: Truncation) -> tuple[float, int, float]:
    """Return ``(value, terms_used, tail_bound)`` for ln (z; w)_inf."""
    if not 0.0 <= z < 1.0:
        raise DomainError(f"q-Pochhammer needs 0 <= z < 1, got z={z!r}")
    if not 0.0 < w < 1.0:
        raise DomainError(f"q-Pochhammer needs 0 < w < 1, got w={w!r}")
    if z == 0.0:
        return 0.0, 0, 0.0

    terms = []
    t = z
    one_minus_w = 1.0 - w
    for n in range(trunc.max_terms):
        # |ln(1 - t_k)| <= t_k / (1 - t_k) and t_k shrinks geometrically from t on
        tail = t / ((1.0 - t) * one_minus_w)
        if tail < trunc.abs_tol:
            return math.fsum(terms), n, tail
        terms.append(math.log1p(-t))
        t *= w
    raise TruncationError(
        f"(z; w)_inf with z={z}, w={w} needs more than max_terms={trunc.max_terms} factors"
    )


def log_qpochhammer(z: float, w: float, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    """ln of (z; w)_inf = prod_{n>=0} (1 - z w^n), for 0 <= z < 1 and 0 < w < 1."""
    return _log_qpochhammer_terms(z, w, trunc)[0]


def qpochhammer(z: float, w: float, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    return math.exp(log_qpochhammer(z, w, trunc))


def log_theta(w: float, z: float, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    """ln of theta_w(z) = (z; w)_inf (w/z; w)_inf (w; w)_inf.

    All three q-products must have their first argument in [0, 1), so
    ``0 < z < 1`` and ``w < z`` are both required.
    """
    if not 0.0 < w < 1.0:
        raise DomainError(f"theta needs 0 < w < 1, got w={w!r}")
    if not 0.0 < z < 1.0:
        raise DomainError(f"theta needs 0 < z < 1, got z={z!r}")
    ratio = w / z
    if not ratio < 1.0:
        raise DomainError(f"theta needs w/z < 1, got w={w!r}, z={z!r}")
    return math.fsum(
        (
            log_qpochhammer(z, w, trunc),
            log_qpochhammer(ratio, w, trunc),
            log_qpochhammer(w, w, trunc),
        )
    )


def theta(w: float, z: float, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    return math.exp(log_theta(w, z, trunc))


def _as_power(e) -> Fraction:
    p = Fraction(e)
    if p.denominator not in (1, 2):
        raise SeriesError(f"only integer and half-integer powers are supported, got {e!r}")
    return p


def qproduct_series(
    factors: Iterable[tuple[int, int, object]],
    order: int,
    *,
    nonnegative: bool = False,
) -> list[int]:
    """Exact coefficients c_0..c_order of prod_j (x^a_j; x^b_j)_inf^e_j.

    ``factors`` holds ``(a, b, e)`` triples with positive integers ``a``, ``b``
    and ``e`` in {+-1, +-1/2} (anything integer is accepted). Half powers are
    only meaningful when identical ``(a, b)`` factors pair up to an integer
    total; otherwise :class:`SeriesError` is raised. With ``nonnegative=True``
    a negative coefficient also raises, which is how partition functions are
    checked.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    powers: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for a, b, e in factors:
        if int(a) != a or int(b) != b or a < 1 or b < 1:
            raise SeriesError(f"factor ({a}, {b}) needs positive integer a and b")
        powers[int(a), int(b)] += _as_power(e)

    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for (a, b), p in sorted(powers.items()):
        if p.denominator != 1:
            raise SeriesError(
                f"half power of (x^{a}; x^{b})_inf does not cancel; total exponent {p}"
            )
        k = int(p)
        for m in range(a, order + 1, b):
            for _ in range(abs(k)):
                if k > 0:
                    # multiply by (1 - x^m)
                    for n in range(order, m - 1, -1):
                        coeffs[n] -= coeffs[n - m]
                else:
                    # divide by (1 - x^m)
                    for n in range(m, order + 1):
                        coeffs[n] += coeffs[n - m]

    if nonnegative:
        bad = [n for n, c in enumerate(coeffs) if c < 0]
        if bad:
            raise SeriesError(f"negative coefficient at x^{bad[0]}: {coeffs[bad[0]]}")
    return coeffs


def evaluate_series(coeffs: Sequence[int], x: float) -> float:
    """Horner evaluation of a truncated power series at ``x``."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
