"""Catalan numbers, exact pairings, and the discrepancy of the tile count.

The tile count is density * lambda^n + d(n); the subtraction cancels about
n*log2(lambda) bits, so d(n) is always produced as a certified enclosure at
the precision policy bits(N) = ceil(N*log2(lambda)) + 128 (exact, radius 0,
whenever mu is rational).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError
from .hpreal import HPReal
from .sequences import CountVector, EventuallyConstantSeq, abelian_step, count_series
from .spectral import SpectralData, mu_value, spectral_data
from .twist import StabilizingVector, pair_with_counts


def catalan(k: int) -> int:
    """The k-th Catalan number, binom(2k, k) / (k + 1), exactly."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return math.comb(2 * k, k) // (k + 1)


def catalan_series(n: int) -> list:
    """C_0 .. C_n via the exact recurrence C_{k+1} = 2(2k+1) C_k / (k+2)."""
    out = [1]
    for k in range(n):
        out.append(out[-1] * 2 * (2 * k + 1) // (k + 2))
    return out


def exact_pairing(seq: EventuallyConstantSeq, y: StabilizingVector, n: int) -> Fraction:
    """[y A^n]_0 as an exact rational, evaluated against the count vector.

    Column 0 of A^n is finitely supported, so the pairing is the finite sum
    of y against the abelianisation of rho^n([0]).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    v = CountVector.unit()
    for _ in range(n):
        v = abelian_step(seq, v)
    return pair_with_counts(y, v)


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    checked: int
    first_mismatch: tuple | None  # (n, computed, expected)
    message: str


def verify_catalan_identity(n_max: int) -> CheckReport:
    """For the all-ones sequence: [(-1,1,1,...) A^n]_0 = -C_{n/2} or 0.

    Exact big-integer computation for every n <= n_max; returns the first
    counterexample instead of raising.
    """
    from .sequences import build_sequence

    seq = build_sequence([], 1)
    y = StabilizingVector((Fraction(-1),), Fraction(1))
    v = CountVector.unit()
    cats = catalan_series(n_max // 2 + 1)
    for n in range(n_max + 1):
        lhs = pair_with_counts(y, v)
        expected = -cats[n // 2] if n % 2 == 0 else 0
        if lhs != expected:
            return CheckReport(False, n_max, (n, lhs, expected), "mismatch")
        v = abelian_step(seq, v)
    return CheckReport(True, n_max, None, f"all n <= {n_max} match")


def policy_bits(seq: EventuallyConstantSeq, n_max: int) -> int:
    """Default working precision: ceil(n_max * log2(lambda)) + 128 guard bits."""
    mu = mu_value(seq, 64)
    lam_hi = float(mu.hi() + 1 / mu.lo()) if not mu.is_exact else float(mu.mid + 1 / mu.mid)
    return math.ceil(n_max * math.log2(lam_hi)) + 128


@dataclass(frozen=True)
class DiscrepancySeries:
    """Exact counts with certified enclosures of d(n) = #(n) - density*lambda^n."""

    seq: EventuallyConstantSeq
    counts: list
    d: list  # HPReal enclosures, exact when mu is rational
    bits: int
    spectral: SpectralData
    monotone_from: int  # |d(n)|/lambda^n decreases for n >= monotone_from


def discrepancy_series(
    seq: EventuallyConstantSeq, n_max: int, bits: int | None = None
) -> DiscrepancySeries:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if bits is None:
        bits = policy_bits(seq, n_max)
    sd = spectral_data(seq, bits=bits)
    counts = count_series(seq, n_max)
    lam, density = sd.lam, sd.density
    d: list[HPReal] = []
    ratios = []
    power = HPReal.exact(1, bits)
    for n in range(n_max + 1):
        val = HPReal.exact(counts[n]) - density * power
        # d(n) lives at the Catalan scale 2^n; refuse radii that drown it
        if val.rad * (1 << 32) > (1 << n):
            raise PrecisionError(
                f"d({n}) radius too large at {bits} bits; rerun with more bits"
            )
        d.append(val)
        ratios.append(val.abs_hi() / power.lo() if power.lo() > 0 else val.abs_hi())
        power = power * lam
    monotone_from = n_max
    for n in range(n_max - 1, -1, -1):
        if ratios[n + 1] <= ratios[n]:
            monotone_from = n
        else:
            break
    return DiscrepancySeries(seq, counts, d, bits, sd, monotone_from)


def allones_explicit_d(k: int, bits: int = 128) -> HPReal:
    """d(2k+1) for the all-ones sequence from the explicit Catalan-tail formula.

    d(2k+1) = (1/2)(5/2)^(2k) (5/4 - sum_{i<=k} (2/5)^(2i) C_i), an exact
    dyadic rational; d(2k+2) is 5/2 times this value.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    cats = catalan_series(k)
    inner = Fraction(5, 4) - sum(
        Fraction(4, 25) ** i * c for i, c in enumerate(cats)
    )
    value = Fraction(1, 2) * Fraction(25, 4) ** k * inner
    return HPReal.exact(value, prec=bits)
