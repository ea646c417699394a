"""Spectral data of a substitution: mu, lambda, lengths, density, root classes.

mu is the unique root in (0,1) of the integer polynomial P attached to the
sequence; lambda = mu + 1/mu is the inflation factor. The natural length
function is obtained from the eigenvector recurrence together with the
bounded-tail closed form ell([j]) = alpha*mu^j + a/(lambda-2) for j >= k.
The other roots of P are classified by a certified comparison of their
modulus with 1 (genuine eigenvalue data, fake values, or boundary cases).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ComputationError, PrecisionError
from .hpreal import HPReal
from .polynomials import (
    ComplexEnclosure,
    IntPolynomial,
    factor_integer_poly,
    isolate_real_roots,
    refine_root,
    root_enclosures,
)
from .sequences import EventuallyConstantSeq

_MAX_BITS = 1 << 16

PERRON = "perron"
GENUINE = "genuine-eigenvalue"
FAKE = "fake"
BOUNDARY = "boundary"


def mu_polynomial(seq: EventuallyConstantSeq) -> IntPolynomial:
    """P(x) = 1 - (1+a_0)x + (a_0-a_1)x^2 + ... + (a_{k-1}-a)x^{k+1}."""
    coeffs = [1, -1 - seq.a(0)]
    for i in range(2, seq.k + 2):
        coeffs.append(seq.a(i - 2) - seq.a(i - 1))
    return IntPolynomial(coeffs)


def mu_isolating_interval(seq: EventuallyConstantSeq) -> tuple[Fraction, Fraction]:
    """The isolating interval of the unique root of P in (0, 1).

    P(0) = 1 and P(1) = -a are nonzero, so refinement always decides
    whether a root lies inside the unit interval.
    """
    p = mu_polynomial(seq)
    candidates = []
    for iv in isolate_real_roots(p):
        bits = 64
        while True:
            enc = refine_root(p, iv, bits)
            if enc.lo() > 0 and enc.hi() < 1:
                candidates.append((enc.lo(), enc.hi()))
                break
            if enc.hi() <= 0 or enc.lo() >= 1:
                break
            bits *= 2
            if bits > _MAX_BITS:
                raise PrecisionError("could not separate a root from the unit interval")
    if len(candidates) != 1:
        raise ComputationError(f"expected one root in (0,1), found {len(candidates)}")
    return candidates[0]


def mu_value(seq: EventuallyConstantSeq, bits: int) -> HPReal:
    """Enclosure of mu with radius <= 2**-bits (exact when mu is rational)."""
    return refine_root(mu_polynomial(seq), mu_isolating_interval(seq), bits)


@dataclass(frozen=True)
class SpectralData:
    seq: EventuallyConstantSeq
    mu: HPReal
    lam: HPReal
    P: IntPolynomial
    m_mu: IntPolynomial
    Q: IntPolynomial
    length_prefix: tuple  # ell([0]) .. ell([k])
    length_alpha: HPReal  # ell([j]) = length_alpha * mu^j + length_const, j >= k
    length_const: HPReal
    avg_length: HPReal
    density: HPReal

    def length(self, j: int) -> HPReal:
        if j < len(self.length_prefix):
            return self.length_prefix[j]
        return self.length_alpha * self.mu ** j + self.length_const

    def frequency(self, j: int) -> HPReal:
        return (1 - self.mu) * self.mu ** j


def _select_factor_at(
    p: IntPolynomial, value: HPReal, refine: "callable"
) -> IntPolynomial:
    """The irreducible factor of p vanishing at the enclosed algebraic value."""
    factors = [f for f, _ in factor_integer_poly(p)]
    if value.is_exact:
        hits = [f for f in factors if f.eval_fraction(value.mid) == 0]
        if len(hits) != 1:
            raise ComputationError("no unique factor vanishing at the value")
        return hits[0]
    bits = max(value.prec, 64)
    while True:
        hits = [f for f in factors if f.eval_interval(value).contains_zero()]
        if len(hits) == 1:
            return hits[0]
        bits *= 2
        if bits > _MAX_BITS:
            raise PrecisionError("could not separate factors; raise precision")
        value = refine(bits)


def minimal_poly_mu(seq: EventuallyConstantSeq, bits: int = 128) -> IntPolynomial:
    p = mu_polynomial(seq)
    return _select_factor_at(p, mu_value(seq, bits), lambda b: mu_value(seq, b))


def min_poly_lambda(seq: EventuallyConstantSeq) -> IntPolynomial:
    """Minimal polynomial Q of lambda: eliminate mu via mu^2 - lambda*mu + 1 = 0.

    The resultant of m_mu(x) and x^2 - y*x + 1 in x is taken, its squarefree
    part factored, and the irreducible factor vanishing at the numeric lambda
    selected. Primitive with positive leading coefficient.
    """
    import sympy

    m_mu = minimal_poly_mu(seq)
    x, y = sympy.symbols("x y")
    mm = sum(int(c) * x ** i for i, c in enumerate(m_mu.coeffs))
    res = sympy.Poly(sympy.resultant(mm, x ** 2 - y * x + 1, x), y)
    candidate = IntPolynomial([int(c) for c in reversed(res.all_coeffs())]).squarefree_part()

    def lam_at(bits: int) -> HPReal:
        mu = mu_value(seq, bits)
        return mu + mu.reciprocal()

    return _select_factor_at(candidate, lam_at(128), lam_at)


def spectral_data(seq: EventuallyConstantSeq, bits: int = 192) -> SpectralData:
    """Compute mu, lambda, the length function, average length, and density."""
    if bits < 64:
        raise ValueError("bits must be >= 64")
    p = mu_polynomial(seq)
    mu = mu_value(seq, bits + 64)
    lam = mu + mu.reciprocal()
    k = seq.k

    lengths = [HPReal.exact(1, bits)]
    if k >= 1:
        lengths.append(lam - seq.a(0))
    for j in range(1, k):
        lengths.append(lam * lengths[j] - lengths[j - 1] - seq.a(j))

    kappa = HPReal.exact(seq.tail) / (lam - 2)
    alpha = (lengths[k] - kappa) / mu ** k

    one_minus_mu = 1 - mu
    avg = HPReal.exact(0, bits)
    for j in range(k):
        avg = avg + one_minus_mu * mu ** j * lengths[j]
    avg = avg + kappa * mu ** k + alpha * mu ** (2 * k) / (1 + mu)
    density = avg.reciprocal()

    m_mu = _select_factor_at(p, mu, lambda b: mu_value(seq, b))
    q_poly = min_poly_lambda(seq)

    return SpectralData(
        seq=seq,
        mu=mu,
        lam=lam,
        P=p,
        m_mu=m_mu,
        Q=q_poly,
        length_prefix=tuple(lengths),
        length_alpha=alpha,
        length_const=kappa,
        avg_length=avg,
        density=density,
    )


# ---------------------------------------------------------------------------
# root classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootInfo:
    """One root of P with its certified modulus class and lambda value."""

    mu_star: ComplexEnclosure
    lambda_star: ComplexEnclosure
    multiplicity: int
    kind: str  # perron | genuine-eigenvalue | fake | boundary
    factor: IntPolynomial
    modulus_sq: HPReal


def _is_reciprocal(f: IntPolynomial) -> bool:
    fwd = list(f.coeffs)
    rev = list(reversed(fwd))
    return fwd == rev or fwd == [-c for c in rev]


def _lambda_of(z: ComplexEnclosure, factor: IntPolynomial) -> ComplexEnclosure:
    if z.is_real:
        lam = z.re + z.re.reciprocal()
        return ComplexEnclosure(lam, z.im)
    if factor.degree == 2:
        # z * conj(z) = c/a exactly, so 1/z = conj(z) * a/c
        ratio = Fraction(factor.coeffs[2], factor.coeffs[0])
        inv = z.conjugate().scale(ratio)
        return z + inv
    return z + z.reciprocal()


def _modulus_sq(z: ComplexEnclosure, factor: IntPolynomial) -> HPReal:
    if factor.degree == 2 and not z.is_real:
        return HPReal.exact(Fraction(factor.coeffs[0], factor.coeffs[2]))
    return z.abs2()


def lambda_star_abs_sq(info: "RootInfo") -> Fraction:
    """|lambda*|^2 as an exact rational, read off the quadratic minimal factor.

    For a complex pair with a x^2 + b x + c = 0: |mu*|^2 = c/a and
    Re(mu*) = -b/(2a), and lambda* = mu* + conj(mu*) a/c has exact real part
    and exact squared imaginary part.
    """
    f = info.factor
    if f.degree != 2 or info.mu_star.is_real:
        raise ValueError("exact |lambda*|^2 requires a complex quadratic factor")
    a, b, c = Fraction(f.coeffs[2]), Fraction(f.coeffs[1]), Fraction(f.coeffs[0])
    m = c / a  # |mu*|^2
    r = -b / (2 * a)  # Re(mu*)
    re_l = r * (1 + a / c)
    im_l_sq = (m - r * r) * (1 - a / c) ** 2
    return re_l * re_l + im_l_sq


def classify_roots(seq: EventuallyConstantSeq, bits: int = 128) -> list[RootInfo]:
    """Classify every root of P by a certified comparison of |mu*| with 1."""
    if bits < 64:
        raise ValueError("bits must be >= 64")
    p = mu_polynomial(seq)
    infos: list[RootInfo] = []
    for factor, mult in factor_integer_poly(p):
        work = bits
        while True:
            try:
                infos_f = _classify_factor(factor, mult, work)
                break
            except PrecisionError:
                work *= 2
                if work > _MAX_BITS:
                    raise PrecisionError("indeterminate modulus; raise precision")
        infos.extend(infos_f)
    infos.sort(key=lambda r: (r.kind != PERRON, r.factor.degree, r.factor.coeffs))
    return infos


def _classify_factor(factor: IntPolynomial, mult: int, bits: int) -> list["RootInfo"]:
    one = HPReal.exact(1)
    out = []
    for z in root_enclosures(factor, bits):
        msq = _modulus_sq(z, factor)
        if msq.is_exact:
            rel = (msq.mid > 1) - (msq.mid < 1)
        elif msq.certainly_lt(one):
            rel = -1
        elif msq.certainly_gt(one):
            rel = 1
        else:
            raise PrecisionError("indeterminate modulus; raise precision")
        if rel == 0:
            kind = BOUNDARY
        elif rel < 0:
            kind = GENUINE
        else:
            kind = FAKE
        if kind == GENUINE and z.is_real:
            # the unique root in (0,1) is mu itself
            if z.re.lo() > 0 and z.re.hi() < 1:
                kind = PERRON
            elif z.re.contains_zero() and not z.re.is_exact:
                raise PrecisionError("root not separated from zero")
        out.append(
            RootInfo(
                mu_star=z,
                lambda_star=_lambda_of(z, factor),
                multiplicity=mult,
                kind=kind,
                factor=factor,
                modulus_sq=msq,
            )
        )
    return out


def left_eigenvector_check(seq: EventuallyConstantSeq, lambda_star, candidate) -> bool:
    """True iff candidate * A = lambda_star * candidate, checked exactly.

    lambda_star may be a rational (exact check) or an HPReal (the residual
    is then only required to contain zero within the enclosure).
    """
    from .twist import row_step

    stepped = row_step(seq, candidate)
    if isinstance(lambda_star, HPReal) and not lambda_star.is_exact:
        n = max(len(stepped.prefix), len(candidate.prefix)) + 1
        for i in list(range(n)) + [None]:
            lhs = stepped.tail if i is None else stepped.entry(i)
            rhs = candidate.tail if i is None else candidate.entry(i)
            if not (HPReal.exact(lhs) - lambda_star * rhs).contains_zero():
                return False
        return True
    lam = Fraction(lambda_star if not isinstance(lambda_star, HPReal) else lambda_star.mid)
    return stepped == candidate.scale(lam)


def find_rational_left_eigenvector(seq: EventuallyConstantSeq, lambda_star):
    """Stabilising left eigenvector at a rational lambda_star, or None.

    Builds the candidate from the eigen-recurrence with y_0 = 1 and accepts
    it only if the tail stabilises and the exact check passes.
    """
    from .twist import StabilizingVector

    lam = Fraction(lambda_star)
    if lam == 2:
        return None
    k = seq.k
    horizon = max(k, 2) + 5
    y = [Fraction(1), lam - seq.a(0), lam * (lam - seq.a(0)) - (seq.a(1) + 1)]
    for j in range(2, horizon):
        y.append(lam * y[j] - y[j - 1] - seq.a(j))
    tail = Fraction(seq.tail) / (lam - 2)
    if any(v != tail for v in y[max(k, 2):]):
        return None
    candidate = StabilizingVector.build(y, tail)
    return candidate if left_eigenvector_check(seq, lam, candidate) else None
