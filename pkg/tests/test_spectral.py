"""Spectral data: mu, lambda, lengths, density, and root classification.

Golden values come from the worked examples; irrational targets are checked
against independently refined enclosures (roots of x^2 - 2 and friends), all
within 2^-100 or better.
"""

from fractions import Fraction

from subdisc import (
    HPReal,
    IntPolynomial,
    StabilizingVector,
    build_sequence,
    classify_roots,
    find_rational_left_eigenvector,
    left_eigenvector_check,
    min_poly_lambda,
    mu_polynomial,
    mu_value,
    refine_root,
    spectral_data,
    tile_count,
)
from subdisc.spectral import BOUNDARY, FAKE, GENUINE, PERRON


def sqrt2(bits=256) -> HPReal:
    return refine_root(IntPolynomial([-2, 0, 1]), (1, 2), bits)


def test_mu_polynomial_examples():
    assert mu_polynomial(build_sequence([], 1)).coeffs == (1, -2)
    assert mu_polynomial(build_sequence([1], 9)).coeffs == (1, -2, -8)
    assert mu_polynomial(build_sequence([1, 1, 3], 4)).coeffs == (1, -2, 0, -2, -1)
    assert mu_polynomial(build_sequence([1], 2)).coeffs == (1, -2, -1)
    assert mu_polynomial(build_sequence([2, 4], 2)).coeffs == (1, -3, -2, 2)


def test_all_ones_spectral_data():
    data = spectral_data(build_sequence([], 1))
    assert data.mu.is_exact and data.mu.mid == Fraction(1, 2)
    assert data.lam.mid == Fraction(5, 2)
    assert data.Q.coeffs == (-5, 2)
    assert data.length_const.mid == 2 and data.length_alpha.mid == -1
    for j in range(8):
        assert data.length(j).mid == 2 - Fraction(1, 2 ** j)
        assert data.frequency(j).mid == Fraction(1, 2 ** (j + 1))
    assert data.avg_length.mid == Fraction(4, 3)
    assert data.density.mid == Fraction(3, 4)


def test_199_spectral_data():
    data = spectral_data(build_sequence([1], 9))
    assert data.mu.mid == Fraction(1, 4)
    assert data.lam.mid == Fraction(17, 4)
    assert data.length_prefix[1].mid == Fraction(13, 4)
    assert data.length_alpha.mid == -3 and data.length_const.mid == 4
    assert data.length(3).mid == 4 - Fraction(3, 4 ** 3)
    assert data.avg_length.mid == Fraction(8, 5)
    assert data.density.mid == Fraction(5, 8)
    assert data.Q.coeffs == (-17, 4)


def test_122_spectral_data():
    # mu = sqrt(2) - 1, lambda = 2 sqrt(2), ell([i]) = sqrt2 + 1 - sqrt2 (sqrt2-1)^i
    data = spectral_data(build_sequence([1], 2), bits=192)
    r2 = sqrt2()
    tol = Fraction(1, 2 ** 100)
    assert data.Q.coeffs == (-8, 0, 1)
    assert abs(data.mu.mid - (r2.mid - 1)) < tol
    assert abs(data.lam.mid - 2 * r2.mid) < tol
    assert abs(data.avg_length.mid - r2.mid) < tol
    for i in range(6):
        expected = r2.mid + 1 - r2.mid * (r2.mid - 1) ** i
        assert abs(data.length(i).mid - expected) < tol * 100


def test_311_and_2422_constants():
    r2 = sqrt2().mid
    tol = Fraction(1, 2 ** 100)
    d311 = spectral_data(build_sequence([3], 1), bits=192)
    assert abs(d311.lam.mid - (3 + 1 / r2)) < tol * 10
    assert abs(d311.avg_length.mid - Fraction(4, 7) * (3 - r2)) < tol * 100

    d2422 = spectral_data(build_sequence([2, 4], 2), bits=192)
    assert abs(d2422.lam.mid - (3 + 1 / r2)) < tol * 10
    assert abs(d2422.avg_length.mid - (4 - 2 * r2)) < tol * 100


def test_1812_spectral_data():
    data = spectral_data(build_sequence([1, 8], 12))
    assert data.density.mid == Fraction(3, 5)
    assert data.lam.mid == Fraction(17, 4)


def test_min_poly_lambda_examples():
    assert min_poly_lambda(build_sequence([], 1)).coeffs == (-5, 2)
    assert min_poly_lambda(build_sequence([1], 2)).coeffs == (-8, 0, 1)
    assert min_poly_lambda(build_sequence([1], 9)).coeffs == (-17, 4)
    assert min_poly_lambda(build_sequence([1, 1, 3], 4)).coeffs == (-8, 0, 1)
    # Q(17/4) = 0 exactly
    assert min_poly_lambda(build_sequence([1], 9)).eval_fraction(Fraction(17, 4)) == 0


def test_eigen_residual_of_lengths():
    # lambda*ell(j) - a_j - ell(j-1) - ell(j+1) = 0 within enclosure radius
    for prefix, tail in [([], 1), ([1], 9), ([1], 2), ([2, 4], 2), ([1, 1, 3], 4)]:
        seq = build_sequence(prefix, tail)
        data = spectral_data(seq, bits=192)
        for j in range(1, seq.k + 50):
            resid = (
                data.lam * data.length(j)
                - seq.a(j)
                - data.length(j - 1)
                - data.length(j + 1)
            )
            assert resid.contains_zero(), (prefix, tail, j)
            assert resid.rad < Fraction(1, 2 ** 64)


def test_frequency_normalisation_closed_form():
    # sum of frequencies = (1-mu) * 1/(1-mu) = 1; check the partial sums approach 1
    data = spectral_data(build_sequence([1, 1, 3], 4), bits=192)
    mu = data.mu
    # exact geometric identity: (1-mu) * sum_{j<N} mu^j = 1 - mu^N
    partial = HPReal.exact(0)
    for j in range(40):
        partial = partial + data.frequency(j)
    assert (partial + mu ** 40).contains(1)


def test_length_positivity():
    for prefix, tail in [([], 1), ([1], 9), ([3], 1), ([2, 4], 2), ([1, 8], 12)]:
        data = spectral_data(build_sequence(prefix, tail), bits=128)
        for j in range(30):
            assert data.length(j).lo() > 0


def test_density_consistency_with_counts():
    # |#(n)/lambda^n - density| -> 0 with a decreasing parity-pair envelope
    # (pointwise monotonicity fails e.g. for (1,2,...) where odd-n errors are 0)
    for prefix, tail in [([], 1), ([1], 9), ([1], 2)]:
        seq = build_sequence(prefix, tail)
        data = spectral_data(seq, bits=256)
        errors = []
        power = HPReal.exact(1)
        for n in range(40):
            err = abs(tile_count(seq, n) / power - data.density)
            errors.append(err.mid)
            power = power * data.lam
        envelope = [max(errors[n], errors[n + 1]) for n in range(2, 39)]
        assert all(b <= a for a, b in zip(envelope, envelope[1:]))
        assert envelope[-1] < Fraction(1, 1000)


def test_classification_199():
    roots = classify_roots(build_sequence([1], 9))
    kinds = {r.kind: r for r in roots}
    assert kinds[PERRON].mu_star.re.mid == Fraction(1, 4)
    assert kinds[GENUINE].mu_star.re.mid == Fraction(-1, 2)
    assert kinds[GENUINE].lambda_star.re.mid == Fraction(-5, 2)


def test_classification_311():
    roots = classify_roots(build_sequence([3], 1))
    kinds = {r.kind: r for r in roots}
    r2 = sqrt2().mid
    assert abs(kinds[PERRON].mu_star.re.mid - (1 - 1 / r2)) < Fraction(1, 2 ** 60)
    assert abs(kinds[FAKE].mu_star.re.mid - (1 + 1 / r2)) < Fraction(1, 2 ** 60)
    assert abs(kinds[FAKE].lambda_star.re.mid - (3 - 1 / r2)) < Fraction(1, 2 ** 60)


def test_classification_2422_boundary():
    roots = classify_roots(build_sequence([2, 4], 2))
    kinds = {r.kind: r for r in roots}
    assert set(kinds) == {PERRON, FAKE, BOUNDARY}
    assert kinds[BOUNDARY].mu_star.re.mid == -1
    assert kinds[BOUNDARY].lambda_star.re.mid == -2
    assert kinds[BOUNDARY].multiplicity == 1


def test_classification_1812_double_boundary():
    roots = classify_roots(build_sequence([1, 8], 12))
    boundary = [r for r in roots if r.kind == BOUNDARY]
    assert len(boundary) == 1
    assert boundary[0].multiplicity == 2
    assert boundary[0].lambda_star.re.mid == -2


def test_classification_complex_cases():
    # (1,7,15,...): complex pair (-1 +/- i)/2, both genuine, |lambda*|^2 = 5/2
    roots = classify_roots(build_sequence([1, 7], 15))
    cplx = [r for r in roots if not r.mu_star.is_real]
    assert len(cplx) == 2 and all(r.kind == GENUINE for r in cplx)
    assert all(r.modulus_sq.mid == Fraction(1, 2) for r in cplx)
    assert all(r.lambda_star.abs2().contains(Fraction(5, 2)) for r in cplx)
    # (1,3,27,...): complex pair (-1 +/- i sqrt5)/6, genuine, |lambda*|^2 = 29/6
    roots = classify_roots(build_sequence([1, 3], 27))
    cplx = [r for r in roots if not r.mu_star.is_real]
    assert len(cplx) == 2 and all(r.kind == GENUINE for r in cplx)
    assert all(r.modulus_sq.mid == Fraction(1, 6) for r in cplx)
    assert all(r.mu_star.re.mid == Fraction(-1, 6) for r in cplx)
    assert all(r.lambda_star.abs2().contains(Fraction(29, 6)) for r in cplx)


def test_left_eigenvector_check_1812():
    seq = build_sequence([1, 8], 12)
    good = StabilizingVector.build([1, -3], -3)
    assert left_eigenvector_check(seq, -2, good)
    broken = StabilizingVector.build([1, -3], 0)
    assert not left_eigenvector_check(seq, -2, broken)


def test_find_rational_left_eigenvector():
    found = find_rational_left_eigenvector(build_sequence([1, 8], 12), -2)
    assert found is not None
    assert found.scale(1 / found.entry(0)) == StabilizingVector.build([1, -3], -3)
    assert find_rational_left_eigenvector(build_sequence([2, 4], 2), -2) is None
    assert find_rational_left_eigenvector(build_sequence([], 1), -2) is None


def test_perron_uniqueness():
    for prefix, tail in [([], 1), ([1], 9), ([3], 1), ([2, 4], 2), ([1, 8], 12), ([1, 7], 15)]:
        roots = classify_roots(build_sequence(prefix, tail))
        assert sum(1 for r in roots if r.kind == PERRON) == 1


def test_mu_value_precision():
    enc = mu_value(build_sequence([2, 4], 2), 512)
    assert enc.rad <= Fraction(1, 2 ** 512)
    p = mu_polynomial(build_sequence([2, 4], 2))
    assert (p.eval_fraction(enc.lo()) > 0) != (p.eval_fraction(enc.hi()) > 0)
