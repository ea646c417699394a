"""Stabilising row vectors and the recurrence certificate for the discrepancy.

The row action of the substitution matrix preserves the space of stabilising
vectors pairing to zero against (1, mu, mu^2, ...). Inside it, the vectors
e_0 = (-1, a_0, ..., a_{k-1}, a, a, ...) and e_i = coefficients of P shifted
by i-1 span an invariant subspace on which the action is the tridiagonal
operator B'. Reducing x_a = (1,1,1,...)Q(A) through that subspace yields
integer polynomials R and g with x_a R(A) = g(B)(e_0), from which the
discrepancy recurrence coefficients (alpha, beta) are read off g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ComputationError
from .hpreal import HPReal
from .polynomials import IntPolynomial, _rp_divmod, _rp_trim, from_fraction_coeffs
from .sequences import CountVector, EventuallyConstantSeq, abelian_step
from .spectral import min_poly_lambda, mu_polynomial, mu_value


@dataclass(frozen=True)
class StabilizingVector:
    """Row vector with an eventually constant tail; prefix is minimal."""

    prefix: tuple
    tail: Fraction

    @staticmethod
    def build(entries, tail) -> "StabilizingVector":
        tail = Fraction(tail)
        prefix = [Fraction(v) for v in entries]
        while prefix and prefix[-1] == tail:
            prefix.pop()
        return StabilizingVector(tuple(prefix), tail)

    @staticmethod
    def zero() -> "StabilizingVector":
        return StabilizingVector((), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.prefix and self.tail == 0

    def entry(self, i: int) -> Fraction:
        return self.prefix[i] if i < len(self.prefix) else self.tail

    def entries(self, n: int) -> list:
        return [self.entry(i) for i in range(n)]

    def __add__(self, other: "StabilizingVector") -> "StabilizingVector":
        n = max(len(self.prefix), len(other.prefix))
        return StabilizingVector.build(
            [self.entry(i) + other.entry(i) for i in range(n)], self.tail + other.tail
        )

    def __sub__(self, other: "StabilizingVector") -> "StabilizingVector":
        return self + other.scale(-1)

    def scale(self, c) -> "StabilizingVector":
        c = Fraction(c)
        return StabilizingVector.build([v * c for v in self.prefix], self.tail * c)

    def __str__(self) -> str:
        shown = ", ".join(str(v) for v in (*self.prefix, self.tail, self.tail))
        return f"({shown}, ...)"


def row_step(seq: EventuallyConstantSeq, y: StabilizingVector) -> StabilizingVector:
    """One application of the matrix on the right: y -> y A, exactly."""
    y0 = y.entry(0)
    n_out = max(len(y.prefix) + 1, seq.k + 1, 2)
    out = [y0 * seq.a(0) + y.entry(1), y0 * (seq.a(1) + 1) + y.entry(2)]
    for j in range(2, n_out):
        out.append(y0 * seq.a(j) + y.entry(j - 1) + y.entry(j + 1))
    return StabilizingVector.build(out, y0 * seq.tail + 2 * y.tail)


def apply_matrix_poly(
    seq: EventuallyConstantSeq, y: StabilizingVector, poly: IntPolynomial
) -> StabilizingVector:
    """y f(A) for an integer polynomial f, via iterated row steps."""
    acc = StabilizingVector.zero()
    power = y
    for c in poly.coeffs:
        if c:
            acc = acc + power.scale(c)
        power = row_step(seq, power)
    return acc


def x_a(seq: EventuallyConstantSeq, q_poly: IntPolynomial | None = None) -> StabilizingVector:
    """x_a = (1,1,1,...) Q(A) with Q the minimal polynomial of lambda."""
    if q_poly is None:
        q_poly = min_poly_lambda(seq)
    ones = StabilizingVector((), Fraction(1))
    return apply_matrix_poly(seq, ones, q_poly)


def e_vector(seq: EventuallyConstantSeq, i: int) -> StabilizingVector:
    """The basis vectors: e_0 from the mu equation, e_i = P shifted by i-1."""
    if i < 0:
        raise ValueError("index must be non-negative")
    if i == 0:
        return StabilizingVector.build(
            [Fraction(-1)] + [Fraction(seq.a(j)) for j in range(seq.k)], Fraction(seq.tail)
        )
    p = mu_polynomial(seq)
    return StabilizingVector.build(
        [Fraction(0)] * (i - 1) + [Fraction(c) for c in p.coeffs], Fraction(0)
    )


def pairing_with_geometric(seq: EventuallyConstantSeq, y: StabilizingVector, mu):
    """Pairing of y with (1, mu, mu^2, ...); exact for rational mu."""
    m = len(y.prefix)
    if isinstance(mu, HPReal) and not mu.is_exact:
        acc = HPReal.exact(0, mu.prec)
        for i, v in enumerate(y.prefix):
            acc = acc + mu ** i * v
        return acc + mu ** m * y.tail / (1 - mu)
    mu = Fraction(mu if not isinstance(mu, HPReal) else mu.mid)
    acc = sum((v * mu ** i for i, v in enumerate(y.prefix)), Fraction(0))
    return acc + y.tail * mu ** m / (1 - mu)


def _check_membership(seq: EventuallyConstantSeq, y: StabilizingVector) -> None:
    mu = mu_value(seq, 192)
    value = pairing_with_geometric(seq, y, mu)
    if isinstance(value, Fraction):
        if value != 0:
            raise ValueError("vector does not pair to zero against (1, mu, mu^2, ...)")
    elif not value.contains_zero():
        raise ValueError("vector does not pair to zero against (1, mu, mu^2, ...)")


def reduce_mod_E(
    seq: EventuallyConstantSeq, y: StabilizingVector, check_membership: bool = True
) -> tuple[Fraction, tuple]:
    """Coordinates of y against the span of the e_i.

    Returns (c0, residue) with c0 = tail(y)/a and residue the remainder of
    (y - c0 e_0), read as a polynomial, modulo P. The vector lies in the
    span iff the residue vanishes.
    """
    if check_membership:
        _check_membership(seq, y)
    c0 = y.tail / seq.tail
    z = y - e_vector(seq, 0).scale(c0)
    if z.tail != 0:
        raise ComputationError("reduction did not cancel the tail")
    _, rem = _rp_divmod(list(z.prefix), mu_polynomial(seq).as_fractions())
    return c0, tuple(rem)


def _quotient_coords(seq: EventuallyConstantSeq, y: StabilizingVector) -> list:
    c0, rem = reduce_mod_E(seq, y, check_membership=False)
    dim = mu_polynomial(seq).degree  # residue degree <= k
    return [rem[i] if i < len(rem) else Fraction(0) for i in range(dim)]


def find_R(seq: EventuallyConstantSeq, q_poly: IntPolynomial | None = None) -> IntPolynomial:
    """Lowest-degree integer polynomial with x_a R(A) in the span of the e_i.

    Iterates the row action on x_a, collects quotient coordinates, and takes
    the first exact rational linear dependence, cleared to integers.
    """
    w = x_a(seq, q_poly)
    pivots: list[tuple[list, dict]] = []  # (reduced vector, combination)
    for m in range(mu_polynomial(seq).degree + 2):
        vec = _quotient_coords(seq, w)
        combo = {m: Fraction(1)}
        for pv, pc in pivots:
            lead = next(i for i, v in enumerate(pv) if v)
            if vec[lead]:
                factor = vec[lead] / pv[lead]
                vec = [a - factor * b for a, b in zip(vec, pv)]
                for idx, c in pc.items():
                    combo[idx] = combo.get(idx, Fraction(0)) - factor * c
        if not any(vec):
            coeffs = [combo.get(i, Fraction(0)) for i in range(m + 1)]
            return from_fraction_coeffs(coeffs)
        pivots.append((vec, combo))
        w = row_step(seq, w)
    raise ComputationError("no dependence found within the guaranteed bound")


def _b_coordinate_step(coords: list) -> list:
    """The tridiagonal action on e-basis coordinates."""
    n = len(coords)
    get = lambda i: coords[i] if 0 <= i < n else Fraction(0)
    out = [get(0) + get(1)]
    for i in range(1, n + 1):
        out.append(get(i - 1) + get(i + 1))
    return _rp_trim(out) or [Fraction(0)]


def e_coordinates(seq: EventuallyConstantSeq, y: StabilizingVector) -> list:
    """Exact coordinates of y in the basis (e_0, e_1, ...); error if outside."""
    c0, rem = reduce_mod_E(seq, y, check_membership=False)
    if any(rem):
        raise ComputationError("vector is not in the span of the e_i")
    z = y - e_vector(seq, 0).scale(c0)
    q, r = _rp_divmod(list(z.prefix), mu_polynomial(seq).as_fractions())
    if r:
        raise ComputationError("vector is not in the span of the e_i")
    return [c0] + list(q)


def find_g(seq: EventuallyConstantSeq, r_poly: IntPolynomial | None = None,
           q_poly: IntPolynomial | None = None) -> IntPolynomial:
    """Integer polynomial g with x_a R(A) = g(B)(e_0), verified exactly."""
    if q_poly is None:
        q_poly = min_poly_lambda(seq)
    if r_poly is None:
        r_poly = find_R(seq, q_poly)
    w = apply_matrix_poly(seq, x_a(seq, q_poly), r_poly)
    if w.is_zero:
        raise ComputationError("x_a R(A) vanishes (constant-length substitution)")
    target = e_coordinates(seq, w)
    m = len(target) - 1
    while m > 0 and target[m] == 0:
        m -= 1
    # rows of the unitriangular change of basis: B^i(e_0) in e-coordinates
    rows = []
    coords = [Fraction(1)]
    for _ in range(m + 1):
        rows.append(list(coords))
        coords = _b_coordinate_step(coords)
    g = [Fraction(0)] * (m + 1)
    residual = [target[i] if i <= m else Fraction(0) for i in range(m + 1)]
    for i in range(m, -1, -1):
        g[i] = residual[i]
        for j, c in enumerate(rows[i]):
            residual[j] -= g[i] * c
    if any(residual):
        raise ComputationError("triangular solve failed")
    if any(c.denominator != 1 for c in g):
        raise ComputationError("non-integer coefficients in g (contract violation)")
    g_poly = IntPolynomial([int(c) for c in g])
    # exact entrywise verification of x_a R(A) = g(B)(e_0)
    check = StabilizingVector.zero()
    power = e_vector(seq, 0)
    for c in g_poly.coeffs:
        if c:
            check = check + power.scale(c)
        power = row_step(seq, power)
    if check != w:
        raise ComputationError("g verification failed")
    return g_poly


@dataclass(frozen=True)
class CatalanCombo:
    """Recurrence certificate: (RQ) * d(n) equals a Catalan combination."""

    alpha: tuple  # even case: sum alpha_i C_{k+i} at n = 2k
    beta: tuple  # odd case:  sum beta_i C_{k+i} at n = 2k+1, beta_0 = 0
    R: IntPolynomial
    Q: IntPolynomial
    g: IntPolynomial

    def predict(self, n: int) -> int:
        from .discrepancy import catalan

        k, parity = divmod(n, 2)
        coeffs = self.beta if parity else self.alpha
        return sum(c * catalan(k + i) for i, c in enumerate(coeffs))


def catalan_combo(seq: EventuallyConstantSeq) -> CatalanCombo:
    """alpha_i = -gamma_{2i}, beta_0 = 0, beta_{i+1} = -gamma_{2i+1} from g."""
    q_poly = min_poly_lambda(seq)
    r_poly = find_R(seq, q_poly)
    g_poly = find_g(seq, r_poly, q_poly)
    gamma = g_poly.coeffs
    alpha = [-gamma[2 * i] for i in range(0, len(gamma) // 2 + 1) if 2 * i < len(gamma)]
    beta = [0] + [-gamma[2 * i + 1] for i in range(len(gamma) // 2) if 2 * i + 1 < len(gamma)]
    while len(alpha) > 1 and alpha[-1] == 0:
        alpha.pop()
    while len(beta) > 1 and beta[-1] == 0:
        beta.pop()
    return CatalanCombo(tuple(alpha), tuple(beta), r_poly, q_poly, g_poly)


def pair_with_counts(y: StabilizingVector, v: CountVector) -> Fraction:
    """Exact pairing of a stabilising row vector with a finite count vector."""
    acc = Fraction(0)
    for i, c in enumerate(v.entries):
        if c:
            acc += y.entry(i) * c
    return acc


@dataclass(frozen=True)
class TwistReport:
    passed: bool
    checked: int
    first_mismatch: tuple | None  # (n, computed, predicted)
    combo: CatalanCombo
    enclosure_checked: bool


def verify_twist_recurrence(seq: EventuallyConstantSeq, n_max: int) -> TwistReport:
    """Check [x_a R(A) A^n]_0 against the Catalan combination for n <= n_max.

    The comparison is an exact integer identity; the same combination is
    additionally cross-checked against the (RQ)-twist of the discrepancy
    enclosure series.
    """
    from .discrepancy import discrepancy_series

    combo = catalan_combo(seq)
    w = apply_matrix_poly(seq, x_a(seq, combo.Q), combo.R)
    v = CountVector.unit()
    first = None
    for n in range(n_max + 1):
        lhs = pair_with_counts(w, v)
        rhs = combo.predict(n)
        if lhs != rhs:
            first = (n, lhs, rhs)
            break
        v = abelian_step(seq, v)

    enclosure_checked = False
    if first is None:
        rq = combo.R * combo.Q
        series = discrepancy_series(seq, n_max + rq.degree)
        for n in range(n_max + 1):
            acc = HPReal.exact(0)
            for i, c in enumerate(rq.coeffs):
                if c:
                    acc = acc + series.d[n + i] * c
            if not acc.contains(combo.predict(n)):
                first = (n, None, combo.predict(n))
                break
        enclosure_checked = first is None

    return TwistReport(first is None, n_max, first, combo, enclosure_checked)


@dataclass(frozen=True)
class GrowthRate:
    """F(k) = sum coeffs_i C_{k+i} written as C_k times a rational function."""

    q: int
    numerator: IntPolynomial  # in the variable k
    denominator: IntPolynomial

    def ratio_str(self) -> str:
        num = str(self.numerator).replace("x", "k")
        den = str(self.denominator).replace("x", "k")
        return num if den == "1" else f"({num}) / ({den})"


def growth_exponent(coeffs) -> GrowthRate:
    """Exponent q with sum coeffs_i C_{k+i} = Theta(4^k / k^(q + 3/2))."""
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("not all coefficients may be zero")
    p = len(coeffs) - 1
    one = [Fraction(1)]

    def poly_mul(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    denominator = one
    for j in range(1, p + 1):
        denominator = poly_mul(denominator, [Fraction(j + 1), Fraction(1)])
    numerator = [Fraction(0)]
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        term = [Fraction(c)]
        for j in range(1, i + 1):
            term = poly_mul(term, [Fraction(2 * (2 * j - 1)), Fraction(4)])
        for j in range(i + 1, p + 1):
            term = poly_mul(term, [Fraction(j + 1), Fraction(1)])
        numerator = [
            (numerator[t] if t < len(numerator) else Fraction(0))
            + (term[t] if t < len(term) else Fraction(0))
            for t in range(max(len(numerator), len(term)))
        ]
    numerator = _rp_trim(numerator)
    if not numerator:
        raise ComputationError("all-cancelling combination")
    from math import gcd as int_gcd

    from .polynomials import _rp_gcd

    g = _rp_gcd(numerator, denominator)
    if len(g) > 1:
        numerator = _rp_divmod(numerator, g)[0]
        denominator = _rp_divmod(denominator, g)[0]
    # clear denominators jointly so the exact ratio is preserved
    lcm = 1
    for c in numerator + denominator:
        lcm = lcm * c.denominator // int_gcd(lcm, c.denominator)
    num_ints = [int(c * lcm) for c in numerator]
    den_ints = [int(c * lcm) for c in denominator]
    content = 0
    for c in num_ints + den_ints:
        content = int_gcd(content, abs(c))
    if den_ints[-1] < 0:
        content = -content
    num_poly = IntPolynomial([c // content for c in num_ints])
    den_poly = IntPolynomial([c // content for c in den_ints])
    q = den_poly.degree - num_poly.degree
    if not 0 <= q <= p:
        raise ComputationError(f"growth exponent {q} outside [0, {p}]")
    return GrowthRate(q, num_poly, den_poly)
