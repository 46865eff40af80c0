"""Scaling-limit observables: central charge, boundary entropy, correlation length.

The entropy behaves as S = (c/6) ln xi + ln g + C in the scaling limit, with
ln xi ~ pi^2 / (2 eps). Fitting S against 1/eps gives c, the label difference
S^(i) - S^(0) isolates ln g, and whatever is left over is C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .character import ModelPoint, check_labels
from .entropy import entropy
from .errors import DomainError, IllConditionedError, TruncationError
from .qseries import DEFAULT_TRUNCATION, Truncation

MODULUS_CONVENTION = (
    "jacobi nome q = x = exp(-eps); k' = (theta4(q)/theta3(q))^2 "
    "= prod_n tanh((2n-1) eps/2)^4, so k' ~ 4 exp(-pi^2/(2 eps))"
)
MIN_EPS_SPAN = 4.0


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    c_estimate: float
    residual_max: float
    points_used: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class BoundaryEntropy:
    kappa: int
    i: int
    g_value: float
    ln_g: float


def central_charge(kappa: int) -> float:
    """Level-kappa SU(2) WZW central charge 3 kappa / (kappa + 2)."""
    if kappa < 1:
        raise DomainError(f"kappa must be >= 1, got {kappa}")
    return 3.0 * kappa / (kappa + 2)


def boundary_g(kappa: int, i: int) -> BoundaryEntropy:
    """Affleck-Ludwig ground-state degeneracy for boundary label i."""
    check_labels(kappa, i, max_kappa=max(kappa, 1))
    k2 = kappa + 2
    # fold onto the smaller label so g(i) == g(kappa - i) bit for bit
    j = min(i, kappa - i)
    g = 1.0 if j == 0 else math.sin(math.pi * (j + 1) / k2) / math.sin(math.pi / k2)
    return BoundaryEntropy(kappa, i, g, math.log(g))


def log_conjugate_modulus(epsilon: float, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    """ln k' for the nome x = exp(-eps), as 4 sum_n ln tanh((2n - 1) eps / 2).

    Every term is negative, so the sum stays accurate where k' itself is far
    below the smallest double.
    """
    if not epsilon > 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    terms = []
    decay = -math.expm1(-2.0 * epsilon)
    y = epsilon
    for _ in range(trunc.max_terms):
        t = math.exp(-y)
        # |ln tanh(y/2)| <= 2t/(1 - t); successive t shrink by exp(-2 eps)
        if 8.0 * t / ((1.0 - t) * decay) < trunc.abs_tol:
            return 4.0 * math.fsum(terms)
        if y > 1.0:
            terms.append(math.log1p(-2.0 * t / (1.0 + t)))
        else:
            terms.append(math.log(math.tanh(0.5 * y)))
        y += 2.0 * epsilon
    raise TruncationError(f"conjugate modulus series exceeded {trunc.max_terms} terms at eps={epsilon}")


def correlation_length(
    epsilon: float,
    mode: Literal["asymptotic", "exact"] = "exact",
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> float:
    """Return ln xi, where 1/xi = -(1/2) ln((1 - k')/(1 + k')) = artanh(k').

    ``asymptotic`` gives the scaling form pi^2 / (2 eps).
    """
    if not epsilon > 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    if mode == "asymptotic":
        return math.pi**2 / (2.0 * epsilon)
    if mode != "exact":
        raise ValueError(f"mode must be 'asymptotic' or 'exact', got {mode!r}")
    log_k = log_conjugate_modulus(epsilon, trunc)
    k = math.exp(log_k)
    if k < 1e-4:
        # artanh(k) = k (1 + k^2/3 + k^4/5 + ...)
        k2 = k * k
        return -log_k - math.log1p(k2 / 3.0 + k2 * k2 / 5.0)
    one_minus_k = -math.expm1(log_k)
    if one_minus_k <= 0.0:
        return -math.inf
    inv_xi = 0.5 * (math.log1p(k) - math.log(one_minus_k))
    return -math.log(inv_xi)


def geometric_grid(start: float, stop: float, count: int) -> list[float]:
    """``count`` geometrically spaced values between the endpoints, largest first."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not (start > 0 and stop > 0):
        raise DomainError("grid endpoints must be positive")
    hi, lo = max(start, stop), min(start, stop)
    if count == 1:
        return [hi]
    grid = [float(v) for v in np.geomspace(hi, lo, count)]
    grid[0], grid[-1] = hi, lo
    return grid


def entropy_sweep(
    kappa: int,
    i: int,
    eps_list: Iterable[float],
    method: str = "auto",
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> list[tuple[float, float]]:
    return [
        (eps, entropy(ModelPoint.from_eps(kappa, i, eps), method, trunc).value)
        for eps in eps_list
    ]


def fit_scaling(samples: Sequence[tuple[float, float]]) -> ScalingFit:
    """Least-squares fit S = A/eps + B; the central charge estimate is 12 A / pi^2."""
    pts = sorted(((float(e), float(s)) for e, s in samples), key=lambda p: -p[0])
    if len(pts) < 3:
        raise ValueError(f"need at least 3 samples, got {len(pts)}")
    eps = np.array([p[0] for p in pts])
    s = np.array([p[1] for p in pts])
    if np.any(eps <= 0):
        raise DomainError("all eps values must be positive")
    if eps[0] / eps[-1] < MIN_EPS_SPAN:
        raise IllConditionedError(
            f"eps samples span only a factor {eps[0] / eps[-1]:.3g}; need at least {MIN_EPS_SPAN}"
        )
    design = np.column_stack([1.0 / eps, np.ones_like(eps)])
    (slope, intercept), *_ = np.linalg.lstsq(design, s, rcond=None)
    resid = s - design @ np.array([slope, intercept])
    return ScalingFit(
        slope=float(slope),
        intercept=float(intercept),
        c_estimate=float(12.0 * slope / math.pi**2),
        residual_max=float(np.max(np.abs(resid))),
        points_used=tuple(pts),
    )


def richardson(eps_list: Sequence[float], values: Sequence[float], order: int = 1) -> float:
    """Extrapolate ``values(eps)`` to eps -> 0 with a degree-``order`` polynomial in eps.

    Uses the ``order + 1`` smallest eps values; order 1 is the two-point rule
    (v1 eps2 - v2 eps1) / (eps2 - eps1).
    """
    if len(eps_list) != len(values):
        raise ValueError("eps_list and values differ in length")
    if order < 0:
        raise ValueError("order must be >= 0")
    pairs = sorted(zip(eps_list, values))[: order + 1]
    if len(pairs) < order + 1:
        raise ValueError(f"order {order} extrapolation needs {order + 1} points, got {len(pairs)}")
    e = np.array([p[0] for p in pairs], dtype=float)
    v = np.array([p[1] for p in pairs], dtype=float)
    if order > 0 and np.min(np.diff(e)) <= 1e-8 * e[-1]:
        raise IllConditionedError("eps values nearly coincide; cannot extrapolate")
    vander = np.vander(e, order + 1, increasing=True)
    return float(np.linalg.solve(vander, v)[0])


def extract_boundary_entropy(
    kappa: int,
    i: int,
    eps_list: Sequence[float],
    method: str = "auto",
    order: int = 1,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> float:
    """Estimate ln g^(i,kappa) from S^(i) - S^(0) extrapolated to eps -> 0.

    The difference cancels the 1/eps term and the label-independent constant,
    leaving ln g^(i,kappa) - ln g^(0,kappa) = ln g^(i,kappa).
    """
    check_labels(kappa, i, max_kappa=max(kappa, 1))
    if i == 0:
        return 0.0
    eps_list = list(eps_list)
    if len(eps_list) < 2:
        raise ValueError("need at least two eps values")
    diffs = [
        entropy(ModelPoint.from_eps(kappa, i, e), method, trunc).value
        - entropy(ModelPoint.from_eps(kappa, 0, e), method, trunc).value
        for e in eps_list
    ]
    return richardson(eps_list, diffs, order=min(order, len(eps_list) - 1))


def residual_constant(
    kappa: int,
    i: int,
    eps_list: Sequence[float],
    xi_mode: Literal["asymptotic", "exact"] = "exact",
    method: str = "auto",
    order: int = 1,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> float:
    """C_kappa = S - (c/6) ln xi - ln g, extrapolated to eps -> 0.

    With ``xi_mode="asymptotic"`` this tends to
    ln(sqrt(2) sin(pi/(kappa+2)) / sqrt(kappa+2)); with the exact correlation
    length it picks up the constant offset of ln xi from pi^2/(2 eps).
    """
    eps_list = list(eps_list)
    if not eps_list:
        raise ValueError("need at least one eps value")
    c6 = central_charge(kappa) / 6.0
    ln_g = boundary_g(kappa, i).ln_g
    vals = [
        entropy(ModelPoint.from_eps(kappa, i, e), method, trunc).value
        - c6 * correlation_length(e, xi_mode, trunc)
        - ln_g
        for e in eps_list
    ]
    return richardson(eps_list, vals, order=min(order, len(eps_list) - 1))
