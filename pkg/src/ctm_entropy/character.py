"""The partition function Z^(i,kappa)(x), computed three independent ways.

* ``partition_theta``: quotient of two theta functions.
* ``partition_blocks``: product of elementary blocks T(a, b) raised to +1, -1
  or -1/2.
* ``ctm_spectrum``: exact integer degeneracies of the corner transfer matrix
  Hamiltonian, i.e. the coefficients of Z as a power series in x^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, SeriesError
from .qseries import (
    DEFAULT_TRUNCATION,
    Nome,
    Truncation,
    log_qpochhammer,
    log_theta,
    qproduct_series,
)

MAX_KAPPA = 64
DEFAULT_SPECTRUM_ORDER = 400


@dataclass(frozen=True)
class ModelPoint:
    """Spin kappa/2 chain with boundary label ``boundary_i`` at coupling ``nome``."""

    kappa: int
    boundary_i: int
    nome: Nome
    max_kappa: int = MAX_KAPPA

    def __post_init__(self):
        check_labels(self.kappa, self.boundary_i, self.max_kappa)

    @classmethod
    def from_eps(cls, kappa: int, i: int, epsilon: float, **kw) -> "ModelPoint":
        return cls(kappa, i, Nome(epsilon), **kw)

    @property
    def i_bar(self) -> int:
        return self.kappa - self.boundary_i

    @property
    def epsilon(self) -> float:
        return self.nome.epsilon

    @property
    def x(self) -> float:
        return self.nome.x


def check_labels(kappa: int, i: int, max_kappa: int = MAX_KAPPA) -> None:
    if int(kappa) != kappa or kappa < 1:
        raise DomainError(f"kappa must be a positive integer, got {kappa!r}")
    if kappa > max_kappa:
        raise DomainError(f"kappa={kappa} exceeds the cap max_kappa={max_kappa}")
    if int(i) != i or not 0 <= i <= kappa:
        raise DomainError(f"boundary label i must be an integer in [0, {kappa}], got {i!r}")


@dataclass(frozen=True)
class BlockFactor:
    """T(a, b)^power with T(a, b) = (x^a; x^b)_inf (x^(b-a); x^b)_inf."""

    a: int
    b: int
    power: Fraction

    def __post_init__(self):
        if not 0 < self.a < self.b:
            raise DomainError(f"block T(a, b) needs 0 < a < b, got ({self.a}, {self.b})")
        object.__setattr__(self, "power", Fraction(self.power))


@dataclass(frozen=True)
class SpectrumTable:
    """Degeneracies d_0..d_N of the CTM Hamiltonian (coefficients of x^(2n) in Z)."""

    degeneracies: tuple[int, ...]

    def __post_init__(self):
        if not self.degeneracies or self.degeneracies[0] != 1:
            raise SeriesError("CTM ground state must be non-degenerate (d_0 = 1)")
        if any(d < 0 for d in self.degeneracies):
            raise SeriesError("CTM degeneracies must be nonnegative")

    @property
    def order(self) -> int:
        return len(self.degeneracies) - 1


def block_decomposition(kappa: int, i: int) -> list[BlockFactor]:
    """Elementary-block factorisation of Z^(i,kappa), written out term by term.

    No cancellation is attempted: for kappa = 1 the numerator T(2, 6) and the
    denominator T(2, 6) both appear and only cancel numerically.
    """
    check_labels(kappa, i, max(kappa, MAX_KAPPA))
    big = 2 * (kappa + 2)
    blocks = [BlockFactor(2 * (i + 1), big, Fraction(1)), BlockFactor(2, 4, Fraction(-1, 2))]
    if kappa % 2 == 0:
        blocks.append(BlockFactor(kappa + 2, big, Fraction(-1, 2)))
        top = kappa // 2
    else:
        top = (kappa + 1) // 2
    blocks.extend(BlockFactor(2 * j, big, Fraction(-1)) for j in range(1, top + 1))
    return blocks


def log_t_block(a: int, b: int, nome: Nome, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    if not 0 < a < b:
        raise DomainError(f"block T(a, b) needs 0 < a < b, got ({a}, {b})")
    eps = nome.epsilon
    w = math.exp(-b * eps)
    return log_qpochhammer(math.exp(-a * eps), w, trunc) + log_qpochhammer(
        math.exp(-(b - a) * eps), w, trunc
    )


def t_block(a: int, b: int, nome: Nome, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    return math.exp(log_t_block(a, b, nome, trunc))


def log_partition_theta(point: ModelPoint, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    eps = point.epsilon
    k2 = point.kappa + 2
    num = log_theta(math.exp(-2 * k2 * eps), math.exp(-2 * (point.boundary_i + 1) * eps), trunc)
    den = log_theta(math.exp(-4 * eps), math.exp(-2 * eps), trunc)
    return num - den


def partition_theta(point: ModelPoint, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    return math.exp(log_partition_theta(point, trunc))


def log_partition_blocks(point: ModelPoint, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    parts = [
        float(blk.power) * log_t_block(blk.a, blk.b, point.nome, trunc)
        for blk in block_decomposition(point.kappa, point.boundary_i)
    ]
    return math.fsum(parts)


def partition_blocks(point: ModelPoint, trunc: Truncation = DEFAULT_TRUNCATION) -> float:
    return math.exp(log_partition_blocks(point, trunc))


def block_qproduct_factors(blocks: list[BlockFactor]) -> list[tuple[int, int, Fraction]]:
    """Rewrite blocks as (a, b, e) q-Pochhammer factors with no half powers left.

    A half power only ever sits on T(b/2, b) = (x^(b/2); x^b)_inf^2, so it is
    turned back into an integer power of the single q-Pochhammer symbol.
    """
    out = []
    for blk in blocks:
        if blk.power.denominator == 1:
            out.append((blk.a, blk.b, blk.power))
            out.append((blk.b - blk.a, blk.b, blk.power))
        elif 2 * blk.a == blk.b:
            out.append((blk.a, blk.b, 2 * blk.power))
        else:
            raise SeriesError(f"half power on T({blk.a}, {blk.b}) with a != b/2")
    return out


def ctm_spectrum(kappa: int, i: int, order: int = DEFAULT_SPECTRUM_ORDER) -> SpectrumTable:
    """Exact CTM degeneracies d_0..d_order of Z^(i,kappa) in powers of x^2."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    factors = block_qproduct_factors(block_decomposition(kappa, i))
    coeffs = qproduct_series(factors, 2 * order, nonnegative=True)
    odd = [n for n in range(1, len(coeffs), 2) if coeffs[n] != 0]
    if odd:
        raise SeriesError(f"Z^({i},{kappa}) has a nonzero odd-power coefficient at x^{odd[0]}")
    return SpectrumTable(tuple(coeffs[::2]))
