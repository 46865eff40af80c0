"""Acceptance criteria AC-1..AC-9, at their stated tolerances."""

import math
from itertools import combinations

from conftest import odd_part_partitions, quad_transform
from ctm_entropy import (
    ModelPoint,
    Nome,
    boundary_g,
    central_charge,
    correlation_length,
    ctm_spectrum,
    entropy,
    extract_boundary_entropy,
    f_hat,
    fit_scaling,
    log_qpochhammer,
    partition_blocks,
    partition_theta,
    qpochhammer,
)
from ctm_entropy.entropy import block_entropy_poisson
from ctm_entropy.scaling import entropy_sweep, geometric_grid


def test_ac1_route_equivalence(acceptance):
    worst = 0.0
    for kappa in range(1, 5):
        for i in range(kappa + 1):
            for eps in (0.2, 0.35, 0.5, 1.0, 2.0):
                p = ModelPoint.from_eps(kappa, i, eps)
                vals = [entropy(p, m).value for m in ("direct", "poisson", "spectrum")]
                worst = max(worst, max(abs(a - b) for a, b in combinations(vals, 2)))
    assert acceptance("AC-1", worst < 1e-8, f"max pairwise route gap {worst:.2e} (tol 1e-8)")


def test_ac2_central_charge(acceptance):
    grid = geometric_grid(0.02, 0.2, 8)
    rel = {}
    for kappa in range(1, 5):
        fit = fit_scaling(entropy_sweep(kappa, 0, grid))
        rel[kappa] = abs(fit.c_estimate / central_charge(kappa) - 1)
    worst = max(rel.values())
    detail = ", ".join(f"k={k}: {r:.1e}" for k, r in rel.items())
    assert acceptance("AC-2", worst < 2e-3, f"relative c error {detail} (tol 2e-3)")


def test_ac3_boundary_entropy(acceptance):
    eps = [0.08, 0.04, 0.02]
    worst = 0.0
    for kappa in (2, 3, 4):
        for i in range(kappa + 1):
            est = extract_boundary_entropy(kappa, i, eps)
            worst = max(worst, abs(est - boundary_g(kappa, i).ln_g))
    sqrt2 = abs(extract_boundary_entropy(2, 1, eps) - math.log(math.sqrt(2)))
    ok = worst < 1e-3 and sqrt2 < 1e-3
    assert acceptance("AC-3", ok, f"max |ln g error| {worst:.1e}, (2,1) vs ln sqrt2 {sqrt2:.1e} (tol 1e-3)")


def test_ac4_kappa1_closed_form(acceptance):
    worst = 0.0
    sym = 0.0
    for x in (0.2, 0.5, 0.8):
        ref = 1.0 / qpochhammer(x * x, x**4)
        for i in (0, 1):
            p = ModelPoint(1, i, Nome.from_x(x))
            worst = max(worst, abs(partition_theta(p) / ref - 1), abs(partition_blocks(p) / ref - 1))
        a, b = (partition_blocks(ModelPoint(1, i, Nome.from_x(x))) for i in (0, 1))
        sym = max(sym, abs(a / b - 1))
    ok = worst < 1e-11 and sym < 1e-11
    assert acceptance("AC-4", ok, f"max relative error {worst:.1e}, i-asymmetry {sym:.1e} (tol 1e-11)")


def test_ac5_kernel_transform(acceptance):
    zero = f_hat(0.0) == -math.pi**2 / 3
    quad = max(abs(f_hat(y) - quad_transform(y)) for y in (0.5, 1.0, 2.0, 5.0))
    tail = abs(50 * f_hat(50.0) + math.pi / 2)
    ok = zero and quad < 1e-8 and tail < 1e-6
    detail = f"f_hat(0) exact={zero}, quadrature gap {quad:.1e} (tol 1e-8), |y f_hat + pi/2| at 50 {tail:.1e} (tol 1e-6)"
    assert acceptance("AC-5", ok, detail)


def test_ac6_scaling_block_constant(acceptance):
    eps = 0.01
    gap = abs(block_entropy_poisson(2, 6, eps) + math.pi**2 / (9 * eps) - math.log(math.sqrt(3)))
    assert acceptance("AC-6", gap < 1e-4, f"gap to ln sqrt3 {gap:.1e} (tol 1e-4)")


def test_ac7_qproduct_identity(acceptance):
    worst = 0.0
    for m in range(2, 6):
        for x in (0.3, 0.6, 0.9):
            q = x * x
            lhs = log_qpochhammer(q, q)
            rhs = math.fsum(log_qpochhammer(q**j, q**m) for j in range(1, m + 1))
            worst = max(worst, abs(lhs - rhs))
    assert acceptance("AC-7", worst < 1e-11, f"max identity gap {worst:.1e} (tol 1e-11)")


def test_ac8_spectrum_integrality(acceptance):
    ok = True
    for kappa in range(1, 4):
        for i in range(kappa + 1):
            d = ctm_spectrum(kappa, i, 200).degeneracies
            ok &= len(d) == 201 and all(isinstance(v, int) and v >= 0 for v in d)
    table = ctm_spectrum(1, 0, 30).degeneracies
    match = list(table) == [odd_part_partitions(n) for n in range(31)]
    assert acceptance("AC-8", ok and match, f"nonnegative integers={ok}, odd-part partitions n<=30 match={match}")


def test_ac9_correlation_length(acceptance):
    eps = 0.02
    val = eps * correlation_length(eps)
    gap = abs(val - math.pi**2 / 2)
    assert acceptance("AC-9", gap <= 0.05, f"eps ln xi = {val:.6f}, |gap to pi^2/2| {gap:.4f} (tol 0.05)")
