"""Numerical experiments on exact count series: residuals, fits, and reports.

Every tile count entering an experiment is exact; radius enters only through
the certified subtraction of algebraic terms. Exponent fitting uses
consecutive-ratio estimates |r(n+2)/r(n)| = 4 (n/(n+2))^p, which cancel the
2^n scale exactly and are insensitive to the unknown constant.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction

from .errors import ComputationError, PrecisionError
from .hpreal import HPReal, decimal_str
from .discrepancy import discrepancy_series, policy_bits
from .sequences import EventuallyConstantSeq, build_sequence, count_series
from .spectral import find_rational_left_eigenvector, spectral_data
from .twist import catalan_combo, growth_exponent


def _coerce(value) -> HPReal:
    return value if isinstance(value, HPReal) else HPReal.exact(value)


@dataclass(frozen=True)
class ResidualSeries:
    """r(n) = #(n) - sum_j c_j b_j^n with certified radii."""

    seq: EventuallyConstantSeq
    n_range: tuple
    residuals: list  # HPReal, index n - n_range[0]
    subtracted_terms: tuple

    def r(self, n: int) -> HPReal:
        return self.residuals[n - self.n_range[0]]


def residual_series(
    seq: EventuallyConstantSeq, n_max: int, terms, bits: int | None = None
) -> ResidualSeries:
    """Subtract the given (coefficient, base) terms from the exact counts.

    Raises PrecisionError when the enclosure radius is no longer negligible
    against the magnitude of the subtracted terms (rerun with more bits).
    """
    if bits is None:
        bits = policy_bits(seq, n_max)
    counts = count_series(seq, n_max)
    pairs = [(_coerce(c), _coerce(b)) for c, b in terms]
    powers = [HPReal.exact(1, bits) for _ in pairs]
    residuals = []
    for n in range(n_max + 1):
        val = HPReal.exact(counts[n], bits)
        for (coeff, _), power in zip(pairs, powers):
            val = val - coeff * power
        # residuals live at (or below) the Catalan scale 2^n
        if val.rad * (1 << 32) > (1 << n):
            raise PrecisionError(
                f"residual radius too large at n={n}; rerun with more bits"
            )
        residuals.append(val)
        powers = [power * base for (_, base), power in zip(pairs, powers)]
    return ResidualSeries(seq, (0, n_max), residuals, tuple(pairs))


@dataclass(frozen=True)
class FitResult:
    """Fitted power of n, with the window and method recorded."""

    exponent: float
    parity: str  # even | odd | all
    window: tuple
    residual_of_fit: float
    n_points: int
    method: str = "median of consecutive-ratio estimates"


def fit_exponent(series: ResidualSeries, parity: str, window: tuple | None = None) -> FitResult:
    """Fit p in |r(n+2)/r(n)| = 4 (n/(n+2))^p on one parity class."""
    if parity not in ("even", "odd", "all"):
        raise ValueError("parity must be 'even', 'odd' or 'all'")
    lo, hi = window if window is not None else series.n_range
    lo = max(lo, series.n_range[0], 1)
    hi = min(hi, series.n_range[1])
    ns = [
        n
        for n in range(lo, hi - 1)
        if parity == "all" or (n % 2 == 0) == (parity == "even")
    ]
    bad = [
        n
        for n in ns
        if series.r(n).mid == 0
        or series.r(n + 2).mid == 0
        or (series.r(n).mid > 0) != (series.r(n + 2).mid > 0)
    ]
    if bad:
        raise ComputationError(f"zero or sign-inconsistent residuals at n in {bad[:10]}")
    if len(ns) < 20:
        raise ValueError("need at least 20 usable points of one parity")
    estimates = []
    for n in ns:
        ratio = abs(Fraction(series.r(n + 2).mid) / Fraction(series.r(n).mid))
        estimates.append(math.log(float(ratio) / 4.0) / math.log(n / (n + 2)))
    p = statistics.median(estimates)
    mad = statistics.median(abs(e - p) for e in estimates)
    return FitResult(p, parity, (lo, hi), mad, len(ns))


def estimate_coefficient(seq: EventuallyConstantSeq, lambda_star, window: tuple) -> HPReal:
    """Average d(n)/lambda_star^n over the window; valid only above Catalan scale."""
    base = _coerce(lambda_star)
    if not abs(base).certainly_gt(2):
        raise ValueError("coefficient not identifiable below Catalan scale")
    lo, hi = window
    series = discrepancy_series(seq, hi)
    values = []
    power = base ** lo
    for n in range(lo, hi + 1):
        values.append(series.d[n] / power)
        power = power * base
    mids = [v.mid for v in values]
    mean = sum(mids, Fraction(0)) / len(mids)
    spread = max(abs(m - mean) for m in mids) + max(v.rad for v in values)
    return HPReal(mean, spread)


def estimate_coefficient_at_two(seq: EventuallyConstantSeq, window: tuple) -> HPReal:
    """Coefficient of (-2)^n in the count, from the parity-drift model.

    Fits d(n)/(-2)^n = c + s*(-1)^n n^(-1/2) per parity by least squares and
    averages the two intercepts. Requires -2 to be an actual eigenvalue
    (a stabilising left eigenvector must exist) and a wide window.
    """
    if find_rational_left_eigenvector(seq, -2) is None:
        raise ValueError("-2 is not an eigenvalue of this sequence")
    lo, hi = window
    if hi - lo < 100:
        raise ValueError("insufficient window for the drift fit")
    series = discrepancy_series(seq, hi)
    intercepts = []
    for want_even in (True, False):
        xs, ys = [], []
        for n in range(lo, hi + 1):
            if (n % 2 == 0) != want_even:
                continue
            xs.append(1.0 / math.sqrt(n))
            ys.append(float(Fraction(series.d[n].mid) / Fraction(-2) ** n))
        xbar = sum(xs) / len(xs)
        ybar = sum(ys) / len(ys)
        var = sum((x - xbar) ** 2 for x in xs)
        slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / var
        intercepts.append(ybar - slope * xbar)
    mean = (intercepts[0] + intercepts[1]) / 2.0
    spread = abs(intercepts[0] - intercepts[1]) / 2.0
    return HPReal(Fraction(mean), Fraction(spread) + Fraction(1, 10**6))


def approx_eigen_residual(seq: EventuallyConstantSeq, n: int) -> Fraction:
    """Exact l1 norm of A v + 2v for v = (1/n)((-1)^n n, ..., -1, 0, ...)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v = [Fraction((-1) ** (n - j) * (n - j), n) for j in range(n)]
    get = lambda j: v[j] if 0 <= j < n else Fraction(0)
    head = sum(seq.a(j) * v[j] for j in range(n)) + get(1)
    residual = [head + 2 * v[0]]
    for j in range(1, n + 1):
        residual.append(get(j - 1) + get(j + 1) + 2 * get(j))
    return sum(abs(r) for r in residual)


# ---------------------------------------------------------------------------
# figure data (CSV series behind the count-vs-prediction plots)
# ---------------------------------------------------------------------------

def figure_csv_text(rows, digits: int = 30) -> str:
    """Render (n, value) rows as a deterministic CSV with header n,value."""
    lines = ["n,value"]
    for n, value in rows:
        mid = value.mid if isinstance(value, HPReal) else Fraction(value)
        lines.append(f"{n},{decimal_str(mid, digits)}")
    return "\n".join(lines) + "\n"


def emit_figure_csv(rows, path, digits: int = 30) -> None:
    """Write the CSV for a figure series; byte output is deterministic."""
    text = figure_csv_text(rows, digits)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def _sqrt32(n: int, prec: int = 192) -> HPReal:
    """n^(3/2) as a certified enclosure."""
    return HPReal.exact(n, prec).sqrt() * n


def _catalan_normalized(seq, terms, n_max) -> list:
    series = residual_series(seq, n_max, terms)
    rows = []
    for n in range(1, n_max + 1):
        rows.append((n, series.r(n) * _sqrt32(n) / Fraction(2) ** n))
    return rows


def _figure_second_eigenvalue(n_max: int) -> list:
    seq = build_sequence([1], 9)
    terms = [(Fraction(5, 8), Fraction(17, 4)), (Fraction(1, 4), Fraction(-5, 2))]
    return _catalan_normalized(seq, terms, n_max)


def _figure_boundary_drift(n_max: int) -> list:
    seq = build_sequence([2, 4], 2)
    sd = spectral_data(seq, bits=policy_bits(seq, n_max))
    return _catalan_normalized(seq, [(sd.density, sd.lam)], n_max)


def _figure_inverse_square(n_max: int) -> list:
    seq = build_sequence([1, 8], 12)
    terms = [(Fraction(3, 5), Fraction(17, 4)), (Fraction(1, 5), Fraction(-2))]
    series = residual_series(seq, n_max, terms)
    rows = []
    for n in range(1, n_max + 1):
        scaled = Fraction(series.r(n).mid) / Fraction(2) ** n
        rows.append((n, HPReal.exact(scaled ** -2) if scaled else HPReal.exact(0)))
    return rows


def _figure_complex_modulus(n_max: int) -> list:
    seq = build_sequence([1, 3], 27)
    series = residual_series(seq, n_max, [(Fraction(1, 2), Fraction(17, 4))])
    root = HPReal.exact(Fraction(29, 6), 192).sqrt()
    rows = []
    for n in range(1, n_max + 1):
        norm = HPReal.exact(Fraction(29, 6) ** (n // 2)) * (root if n % 2 else 1)
        rows.append((n, series.r(n) / norm))
    return rows


FIGURES = {
    "second-eigenvalue-ratio": _figure_second_eigenvalue,
    "boundary-drift-ratio": _figure_boundary_drift,
    "inverse-square-residual": _figure_inverse_square,
    "complex-modulus-ratio": _figure_complex_modulus,
}


def figure_rows(name: str, n_max: int = 200) -> list:
    try:
        builder = FIGURES[name]
    except KeyError:
        raise ValueError(f"unknown figure {name!r}; choose from {sorted(FIGURES)}")
    return builder(n_max)


# ---------------------------------------------------------------------------
# combined asymptotics pipeline (what the `asymptotics` command runs)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TermEstimate:
    base: object  # Fraction | HPReal
    estimate: HPReal  # midpoint = estimate, radius = spread
    snapped: Fraction | None  # small rational used for exact subtraction


@dataclass(frozen=True)
class AsymptoticsReport:
    seq: EventuallyConstantSeq
    n_max: int
    lam: HPReal
    density: HPReal
    terms: tuple
    fits: tuple
    notes: tuple


def _snap_to_small_rational(est: HPReal, max_den: int = 64) -> Fraction | None:
    tol = max(est.rad, Fraction(1, 10**9)) * 2
    mid = est.mid
    for den in range(1, max_den + 1):
        cand = Fraction(round(mid * den), den)
        if abs(cand - mid) <= tol:
            return cand
    return None


def asymptotics_report(seq: EventuallyConstantSeq, n_max: int = 200) -> AsymptoticsReport:
    """Estimate extra exponential terms, subtract them, and fit the exponent.

    Coefficients are estimated from the discrepancy series, snapped to small
    rationals when the estimate allows it, and only the snapped conjectured
    values are subtracted before the Catalan-scale exponent fit.
    """
    from .spectral import GENUINE, classify_roots

    sd = spectral_data(seq, bits=policy_bits(seq, n_max))
    roots = classify_roots(seq)
    terms = [(sd.density, sd.lam)]
    estimates: list[TermEstimate] = []
    notes: list[str] = []
    window = (max(1, (3 * n_max) // 4), n_max)
    complex_noted = False
    for r in roots:
        if r.kind != GENUINE:
            continue
        if not r.mu_star.is_real:
            if not complex_noted:
                notes.append(
                    "complex eigenvalue pair present; trigonometric factor not fitted"
                )
                complex_noted = True
            continue
        lam_star = r.lambda_star.re
        if not abs(lam_star).certainly_gt(2):
            notes.append("real eigenvalue at or below Catalan scale; skipped")
            continue
        base = lam_star.mid if lam_star.is_exact else lam_star
        est = estimate_coefficient(seq, base, window)
        snapped = _snap_to_small_rational(est)
        estimates.append(TermEstimate(base, est, snapped))
        if snapped is not None and snapped != 0:
            terms.append((snapped, base))
    if find_rational_left_eigenvector(seq, -2) is not None:
        if n_max >= 240:
            est = estimate_coefficient_at_two(seq, (n_max // 2, n_max))
            snapped = _snap_to_small_rational(est)
            estimates.append(TermEstimate(Fraction(-2), est, snapped))
            if snapped is not None and snapped != 0:
                terms.append((snapped, Fraction(-2)))
        else:
            notes.append("-2 is an eigenvalue; n_max too small to estimate its coefficient")
    residual = residual_series(seq, n_max, terms)
    fit_window = (max(1, n_max // 2), n_max)
    fits = []
    for parity in ("even", "odd"):
        try:
            fits.append(fit_exponent(residual, parity, fit_window))
        except (ComputationError, ValueError) as exc:
            notes.append(f"{parity} fit unavailable: {exc}")
    return AsymptoticsReport(
        seq, n_max, sd.lam, sd.density, tuple(estimates), tuple(fits), tuple(notes)
    )


# ---------------------------------------------------------------------------
# bounded-distance report
# ---------------------------------------------------------------------------

def bde_report(seq: EventuallyConstantSeq) -> str:
    """Growth certificate and the bounded-distance conclusion, as text."""
    if seq.is_constant_length():
        return (
            f"sequence {seq.label()}: constant-length substitution; "
            "criterion not applicable"
        )
    combo = catalan_combo(seq)
    qs = []
    lines = [
        f"sequence {seq.label()}: non-constant length substitution",
        f"certificate: R = {combo.R}, Q = {combo.Q}, g = {combo.g}",
        f"alpha = {tuple(combo.alpha)}, beta = {tuple(combo.beta)}",
    ]
    for label, coeffs in (("even", combo.alpha), ("odd", combo.beta)):
        if any(coeffs):
            rate = growth_exponent(coeffs)
            qs.append(rate.q)
            lines.append(
                f"{label} subsequence: ratio to C_k is {rate.ratio_str()} (q = {rate.q})"
            )
    q = min(qs)
    lines.append(
        f"a subsequence of the discrepancy grows like 2^n / n^(q + 3/2) with q = {q}"
    )
    lines.append(
        "conclusion: no derived Delone set is bounded distance equivalent to "
        "alpha*Z for any alpha > 0"
    )
    return "\n".join(lines)
