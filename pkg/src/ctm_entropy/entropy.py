"""Entanglement entropy S^(i,kappa)(eps) of the half-infinite chain.

The entropy is additive over the elementary blocks of Z, so everything reduces
to the block entropy S(a, b) = sum_{n in Z} f(|eps (a + n b)|). Four routes:

direct
    the bilateral f-kernel sum, fast for eps >~ 0.5;
poisson
    the resummed series, whose correction terms decay like
    exp(-4 pi^2 n / (eps b)) and so converge fastest as eps -> 0;
spectrum
    -sum p_n ln p_n over the exact CTM spectrum (moderate x only);
asymptotic
    scaling-limit closed form, exact up to exponentially small corrections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .character import (
    DEFAULT_SPECTRUM_ORDER,
    ModelPoint,
    block_decomposition,
    ctm_spectrum,
    log_partition_theta,
)
from .errors import DomainError, NegativeEntropyError, TailTooHeavyError, TruncationError
from .qseries import DEFAULT_TRUNCATION, Truncation

Method = Literal["direct", "poisson", "spectrum", "asymptotic"]
METHODS = ("direct", "poisson", "spectrum", "asymptotic")

F_HAT_ZERO = -math.pi**2 / 3
F_HAT_SERIES_CUTOFF = 1e-3
SPECTRUM_MAX_X = 0.85
AUTO_POISSON_BELOW = 0.5

_EPS = 2.0**-52
# Taylor coefficients of f_hat around y = 0 (even powers only)
_F_HAT_C2 = 2 * math.pi**4 / 45
_F_HAT_C4 = -2 * math.pi**6 / 315


@dataclass(frozen=True)
class EntropyResult:
    value: float
    method: str
    est_error: float
    terms_used: int


def f_kernel(y: float) -> float:
    """f(y) = ln(1 - e^-y) + y / (1 - e^y), the entropy of one CTM mode at energy y."""
    if not y > 0.0:
        raise DomainError(f"f(y) needs y > 0, got {y!r}")
    if y > math.log(2.0):
        log_part = math.log1p(-math.exp(-y))
    else:
        log_part = math.log(-math.expm1(-y))
    return log_part - y / math.expm1(y)


def _f_bound(y: float) -> float:
    # |f(y)| <= (1 + y) t / (1 - t) with t = e^-y
    return (1.0 + y) / math.expm1(y)


def _sinh2u_minus_2u(u: float) -> float:
    """sinh(2u) - 2u without cancellation for u < 1."""
    z = 2.0 * u
    z2 = z * z
    term = z * z2 / 6.0
    total = 0.0
    k = 3
    while term > 1e-17 * (total + term):
        total += term
        term *= z2 / ((k + 1) * (k + 2))
        k += 2
    return total + term


def f_hat(y: float) -> float:
    """Cosine transform of the kernel, f_hat(y) = int_0^inf f(t) cos(y t) dt.

    Closed form (pi/2y) (pi y - sinh(pi y) cosh(pi y)) / sinh^2(pi y), continued
    to f_hat(0) = -pi^2/3. Tends to -pi/(2y) for large y.
    """
    if y < 0.0:
        y = -y
    if y == 0.0:
        return F_HAT_ZERO
    if y < F_HAT_SERIES_CUTOFF:
        y2 = y * y
        return F_HAT_ZERO + y2 * (_F_HAT_C2 + y2 * _F_HAT_C4)
    u = math.pi * y
    if u < 1.0:
        numer = -0.5 * _sinh2u_minus_2u(u)
        return (math.pi / (2.0 * y)) * numer / math.sinh(u) ** 2
    return -math.pi / (2.0 * y) + f_hat_correction(y)


def f_hat_correction(y: float) -> float:
    """f_hat(y) + pi/(2y), the exponentially small part of the transform.

    Equals (pi/2y) (1 - coth(pi y) + pi y / sinh^2(pi y)); it is positive and
    decays like 2 pi^2 e^(-2 pi y).
    """
    if not y > 0.0:
        raise DomainError(f"f_hat_correction needs y > 0, got {y!r}")
    u = math.pi * y
    if u < 1.0:
        return f_hat(y) + math.pi / (2.0 * y)
    e = math.exp(-2.0 * u)
    one_minus_e = -math.expm1(-2.0 * u)
    return (math.pi / (2.0 * y)) * (e / one_minus_e) * (4.0 * u / one_minus_e - 2.0)


def _f_hat_correction_bound(y: float) -> float:
    # both pieces of the correction are positive; bound their sum
    e = math.exp(-2.0 * math.pi * y)
    one_minus_e = -math.expm1(-2.0 * math.pi * y)
    return 2.0 * math.pi**2 * e / one_minus_e**2 + (math.pi / y) * e / one_minus_e


def _check_block(a: int, b: int, epsilon: float) -> None:
    if not 0 < a < b:
        raise DomainError(f"block S(a, b) needs 0 < a < b, got ({a}, {b})")
    if not epsilon > 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")


def _one_sided_direct(y0: float, step: float, budget: float, max_terms: int) -> tuple[list[float], float]:
    """Terms f(y0 + n step) until the rigorous tail bound drops below ``budget``."""
    terms = []
    y = y0
    for _ in range(max_terms):
        # B(y) bounds |f| and B(y + h)/B(y) <= (1 + h/(1 + y)) e^-h
        ratio = (1.0 + step / (1.0 + y)) * math.exp(-step)
        tail = _f_bound(y) / (1.0 - ratio) if ratio < 1.0 else math.inf
        if tail < budget:
            return terms, tail
        terms.append(f_kernel(y))
        y += step
    raise TruncationError(
        f"direct block sum needs more than {max_terms} terms at step={step:g}; use the poisson route"
    )


def _block_direct(a: int, b: int, epsilon: float, trunc: Truncation) -> tuple[float, float, int]:
    _check_block(a, b, epsilon)
    budget = trunc.abs_tol / 10.0
    step = epsilon * b
    left, tail_l = _one_sided_direct(epsilon * a, step, budget, trunc.max_terms)
    right, tail_r = _one_sided_direct(epsilon * (b - a), step, budget, trunc.max_terms)
    terms = left + right
    value = math.fsum(terms)
    peak = max((abs(t) for t in terms), default=0.0)
    err = tail_l + tail_r + 4 * _EPS * peak * math.sqrt(len(terms) + 1)
    return value, err, len(terms)


def block_entropy_direct(a: int, b: int, epsilon: float, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    """S(a, b) as the bilateral kernel sum over the block's mode energies."""
    return _block_direct(a, b, epsilon, trunc)[0]


def _block_poisson(a: int, b: int, epsilon: float, trunc: Truncation) -> tuple[float, float, int]:
    _check_block(a, b, epsilon)
    eb = epsilon * b
    spacing = 2.0 * math.pi / eb
    prefactor = 4.0 / eb
    # the -pi/(2y) part of f_hat sums exactly to ln(2 sin(pi a/b))
    head = [-2.0 * math.pi**2 / (3.0 * eb), math.log(2.0 * math.sin(math.pi * a / b))]
    ratio = math.exp(-2.0 * math.pi * spacing)
    budget = trunc.abs_tol / 10.0
    corr = []
    for n in range(1, trunc.max_terms + 1):
        y = n * spacing
        tail = prefactor * _f_hat_correction_bound(y) / (1.0 - ratio) if ratio < 1.0 else math.inf
        if tail < budget:
            break
        corr.append(prefactor * f_hat_correction(y) * math.cos(2.0 * math.pi * n * a / b))
    else:
        raise TruncationError(
            f"poisson block series needs more than {trunc.max_terms} terms at eps*b={eb:g}; use the direct route"
        )
    value = math.fsum(head + corr)
    scale = max([abs(h) for h in head] + [abs(c) for c in corr])
    err = tail + 4 * _EPS * scale * math.sqrt(len(corr) + 2)
    return value, err, len(corr) + 1


def block_entropy_poisson(a: int, b: int, epsilon: float, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    """S(a, b) from the Poisson-resummed series.

    S(a,b) = -2 pi^2/(3 eps b) + (4/(eps b)) sum_{n>=1} f_hat(2 pi n/(eps b)) cos(2 pi n a/b).
    The slowly decaying -pi/(2y) part of f_hat is summed in closed form
    (-sum cos(2 pi n a/b)/n = ln(2 sin(pi a/b))) and only the exponentially
    decaying remainder is summed term by term.
    """
    return _block_poisson(a, b, epsilon, trunc)[0]


def block_entropy_asymptotic(a: int, b: int, epsilon: float) -> float:
    _check_block(a, b, epsilon)
    return -2.0 * math.pi**2 / (3.0 * epsilon * b) + math.log(2.0 * math.sin(math.pi * a / b))


def _block_asymptotic_gap(a: int, b: int, epsilon: float) -> float:
    """Bound on |S(a, b) - block_entropy_asymptotic(a, b, eps)|."""
    eb = epsilon * b
    spacing = 2.0 * math.pi / eb
    ratio = math.exp(-2.0 * math.pi * spacing)
    if ratio >= 1.0:
        return math.inf
    return (4.0 / eb) * _f_hat_correction_bound(spacing) / (1.0 - ratio)


def resolve_method(method: str, epsilon: float) -> str:
    """Map ``auto`` to poisson below eps = 0.5 and direct otherwise."""
    if method == "auto":
        return "poisson" if epsilon < AUTO_POISSON_BELOW else "direct"
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS + ('auto',)}")
    return method


def entropy(
    point: ModelPoint,
    method: str = "auto",
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> EntropyResult:
    """S^(i,kappa) = ln Z - x ln x Z'/Z, summed block by block.

    Each block T(a, b)^e contributes e * S(a, b). ``est_error`` adds up the
    per-block truncation and rounding bounds; for the asymptotic route it is
    a bound on the neglected exponentially small corrections.
    """
    method = resolve_method(method, point.epsilon)
    if method == "spectrum":
        return entropy_from_spectrum(point, trunc=trunc)

    eps = point.epsilon
    blocks = block_decomposition(point.kappa, point.boundary_i)
    parts, err, n_terms = [], 0.0, 0
    for blk in blocks:
        weight = float(blk.power)
        if method == "direct":
            val, e, t = _block_direct(blk.a, blk.b, eps, trunc)
        elif method == "poisson":
            val, e, t = _block_poisson(blk.a, blk.b, eps, trunc)
        else:
            val = block_entropy_asymptotic(blk.a, blk.b, eps)
            e, t = _block_asymptotic_gap(blk.a, blk.b, eps), 1
        parts.append(weight * val)
        err += abs(weight) * e
        n_terms += t
    value = math.fsum(parts)
    err += 4 * _EPS * max(abs(p) for p in parts) * len(parts)

    if method != "asymptotic" and value < 0.0:
        if value < -err:
            raise NegativeEntropyError(
                f"S^({point.boundary_i},{point.kappa})(eps={eps}) = {value} < 0 via {method}"
            )
        value = 0.0
    return EntropyResult(value, method, err, n_terms)


def spectrum_probabilities(
    point: ModelPoint,
    order: int = DEFAULT_SPECTRUM_ORDER,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> tuple[list[tuple[int, int, float]], float]:
    """Level occupations of the reduced density matrix x^(2 H_CTM) / Z.

    Returns ``(levels, missing_mass)``. ``levels`` holds ``(n, d_n, p_n)`` for
    every occupied level n <= order, where p_n = d_n x^(2n) / Z is the total
    weight of the level (each of its d_n states carries x^(2n) / Z).
    ``missing_mass`` is 1 - sum p_n with Z from the theta quotient.
    """
    table = ctm_spectrum(point.kappa, point.boundary_i, order)
    # Z feeds every probability; evaluate it well below the requested tolerance
    tight = Truncation(min(trunc.abs_tol, 1e-17), trunc.max_terms)
    log_z = log_partition_theta(point, tight)
    two_log_x = -2.0 * point.epsilon
    levels = [
        (n, d, math.exp(math.log(d) + n * two_log_x - log_z))
        for n, d in enumerate(table.degeneracies)
        if d > 0
    ]
    missing = 1.0 - math.fsum(p for _, _, p in levels)
    return levels, missing


def entropy_from_spectrum(
    point: ModelPoint,
    order: int = DEFAULT_SPECTRUM_ORDER,
    trunc: Truncation = DEFAULT_TRUNCATION,
    max_x: float = SPECTRUM_MAX_X,
) -> EntropyResult:
    """Von Neumann entropy summed level by level over the truncated CTM spectrum.

    S = -sum_n p_n ln(x^(2n) / Z): level n has weight p_n but is spread over
    d_n degenerate states. Probabilities are renormalised over the window and
    the resulting shift is part of ``est_error``.
    """
    if point.x > max_x:
        raise TailTooHeavyError(
            f"x={point.x:.6g} exceeds the spectrum-route ceiling {max_x}; use direct or poisson"
        )
    levels, missing = spectrum_probabilities(point, order, trunc)
    if missing > trunc.abs_tol:
        raise TailTooHeavyError(
            f"spectrum window of order {order} misses probability {missing:.3g} at x={point.x:.6g}"
        )
    norm = 1.0 - missing
    log_norm = math.log1p(-missing)
    log_z = math.log(levels[0][2])  # p_0 = 1/Z since d_0 = 1
    value = -math.fsum(
        (p / norm) * (-2.0 * n * point.epsilon + log_z - log_norm) for n, _, p in levels
    )
    gap = max(abs(missing), _EPS)
    est = gap * (1.0 + abs(math.log(gap)) + value) + 4 * _EPS * max(value, 1.0) * math.sqrt(len(levels))
    return EntropyResult(max(value, 0.0), "spectrum", est, len(levels))


def entropy_asymptotic(point: ModelPoint) -> float:
    """Scaling-limit entropy (pi^2/(12 eps)) c + ln(sqrt(2) sin(pi (i+1)/(kappa+2)) / sqrt(kappa+2))."""
    k2 = point.kappa + 2
    c = 3.0 * point.kappa / k2
    boundary = math.log(math.sqrt(2.0) * math.sin(math.pi * (point.boundary_i + 1) / k2) / math.sqrt(k2))
    return math.pi**2 * c / (12.0 * point.epsilon) + boundary
