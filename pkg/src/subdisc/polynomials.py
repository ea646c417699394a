"""Integer polynomials with exact real-root isolation and certified complex roots.

Coefficients are stored in ascending order. Real roots are isolated with
Sturm chains over exact rationals and refined by bisection; rational roots
are recognised exactly (radius 0). Factorisation over the integers is
delegated to sympy and re-verified by exact multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ComputationError, PrecisionError
from .hpreal import HPReal

_RATIONAL_SEARCH_LIMIT = 10**9  # skip divisor search above this coefficient size


# ---------------------------------------------------------------------------
# rational-coefficient helpers (dense ascending lists of Fraction)
# ---------------------------------------------------------------------------

def _rp_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c

def _rp_derivative(c: list[Fraction]) -> list[Fraction]:
    return [i * c[i] for i in range(1, len(c))]

def _rp_eval(c: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc

def _rp_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    den = _rp_trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = _rp_trim(list(num))
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    while num and len(num) >= len(den):
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        q[shift] = factor
        for i, d in enumerate(den):
            num[shift + i] -= factor * d
        num.pop()
        _rp_trim(num)
    return _rp_trim(q), num

def _rp_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _rp_trim(list(a)), _rp_trim(list(b))
    while b:
        a, b = b, _rp_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


class IntPolynomial:
    """Polynomial with integer coefficients, ascending order, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def trailing(self) -> int:
        for c in self.coeffs:
            if c:
                return c
        raise ValueError("zero polynomial has no trailing coefficient")

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and force a positive leading coefficient."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)
        ])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __pow__(self, n: int) -> "IntPolynomial":
        result = IntPolynomial([1])
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial([c * a for a in self.coeffs])

    def shift_up(self, k: int) -> "IntPolynomial":
        """Multiply by x**k."""
        if self.is_zero:
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- evaluation --------------------------------------------------------

    def eval_fraction(self, x) -> Fraction:
        return _rp_eval([Fraction(c) for c in self.coeffs], Fraction(x))

    def eval_interval(self, x: HPReal) -> HPReal:
        acc = HPReal.exact(0, x.prec)
        for coeff in reversed(self.coeffs):
            acc = acc * x + coeff
        return acc

    def eval_complex_fraction(self, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
        u, v = Fraction(0), Fraction(0)
        for coeff in reversed(self.coeffs):
            u, v = u * re - v * im + coeff, u * im + v * re
        return u, v

    def as_fractions(self) -> list[Fraction]:
        return [Fraction(c) for c in self.coeffs]

    def squarefree_part(self) -> "IntPolynomial":
        if self.is_zero:
            return self
        if self.degree <= 1:
            return self.primitive()
        g = _rp_gcd(self.as_fractions(), _rp_derivative(self.as_fractions()))
        if len(g) <= 1:
            return self.primitive()
        q, r = _rp_divmod(self.as_fractions(), g)
        if r:
            raise ComputationError("squarefree division left a remainder")
        return from_fraction_coeffs(q)

    # -- protocol ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                var = "x" if i == 1 else f"x^{i}"
                term = var if abs(c) == 1 else f"{abs(c)}{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def from_fraction_coeffs(coeffs) -> IntPolynomial:
    """Clear denominators and return the primitive integer polynomial."""
    coeffs = [Fraction(c) for c in coeffs]
    if not _rp_trim(list(coeffs)):
        return IntPolynomial([])
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPolynomial([int(c * den) for c in coeffs]).primitive()


# ---------------------------------------------------------------------------
# real-root isolation (Sturm chains over exact rationals)
# ---------------------------------------------------------------------------

def _sturm_chain(p: IntPolynomial) -> list[list[Fraction]]:
    chain = [p.as_fractions(), _rp_derivative(p.as_fractions())]
    while chain[-1]:
        rem = _rp_divmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append([-c for c in rem])
    return [c for c in chain if c]

def _variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = _rp_eval(poly, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

def _cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.leading)
    return 1 + max(Fraction(abs(c), lead) for c in p.coeffs)

def _rational_roots(p: IntPolynomial) -> list[Fraction]:
    """All rational roots of p, found by divisor search on trailing/leading."""
    if p.is_zero:
        return []
    roots = []
    coeffs = list(p.coeffs)
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    if shift:
        roots.append(Fraction(0))
    if not coeffs or len(coeffs) == 1:
        return roots
    trail, lead = abs(coeffs[0]), abs(coeffs[-1])
    if trail > _RATIONAL_SEARCH_LIMIT or lead > _RATIONAL_SEARCH_LIMIT:
        return roots
    stripped = IntPolynomial(coeffs)
    for num in _divisors(trail):
        for den in _divisors(lead):
            for sign in (1, -1):
                cand = Fraction(sign * num, den)
                if cand not in roots and stripped.eval_fraction(cand) == 0:
                    roots.append(cand)
    return sorted(roots)

def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)

def _deflate(p: IntPolynomial, root: Fraction) -> IntPolynomial:
    q, r = _rp_divmod(p.as_fractions(), [-root, Fraction(1)])
    if r:
        raise ComputationError("deflation by a non-root")
    return from_fraction_coeffs(q)


def isolate_real_roots(p: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one per distinct real root of p.

    Exact rational roots come back as degenerate intervals [r, r].
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no root set")
    if p.degree <= 0:
        return []
    sf = p.squarefree_part()
    exact = _rational_roots(sf)
    g = sf
    for r in exact:
        g = _deflate(g, r)

    intervals: list[tuple[Fraction, Fraction]] = []
    if g.degree >= 1:
        chain = _sturm_chain(g)
        bound = _cauchy_bound(g)
        work = [(-bound, bound)]
        while work:
            lo, hi = work.pop()
            count = _variations(chain, lo) - _variations(chain, hi)
            if count == 0:
                continue
            if count == 1:
                intervals.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            work.append((lo, mid))
            work.append((mid, hi))
        # shrink until no exact rational root sits inside an isolating interval
        refined = []
        for lo, hi in intervals:
            while any(lo < r <= hi for r in exact):
                mid = (lo + hi) / 2
                if _variations(chain, lo) - _variations(chain, mid) == 1:
                    lo, hi = lo, mid
                else:
                    lo, hi = mid, hi
            refined.append((lo, hi))
        intervals = refined

    intervals.extend((r, r) for r in exact)
    intervals.sort(key=lambda iv: iv[0] + iv[1])
    return intervals


def refine_root(p: IntPolynomial, interval, bits: int) -> HPReal:
    """Shrink an isolating interval to an enclosure of radius <= 2**-bits.

    Rational roots are detected exactly and come back with radius 0.
    """
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if hi < lo:
        raise ValueError("empty interval")
    if p.is_zero:
        raise ValueError("zero polynomial has no root set")
    sf = p.squarefree_part()
    chain = _sturm_chain(sf)

    endpoint_roots = [x for x in (lo, hi) if sf.eval_fraction(x) == 0]
    count = _variations(chain, lo) - _variations(chain, hi)
    total = count + (1 if sf.eval_fraction(lo) == 0 else 0)
    if total != 1:
        raise ValueError(f"interval must isolate exactly one root, found {total}")
    if endpoint_roots:
        return HPReal.exact(endpoint_roots[0], prec=bits)

    for r in _rational_roots(sf):
        if lo <= r <= hi:
            return HPReal.exact(r, prec=bits)

    flo = sf.eval_fraction(lo)
    if (flo > 0) == (sf.eval_fraction(hi) > 0):
        raise ComputationError("no sign change over the isolating interval")
    width_target = Fraction(1, 1 << (bits - 1)) if bits >= 1 else Fraction(2)
    while hi - lo > width_target:
        mid = (lo + hi) / 2
        fmid = sf.eval_fraction(mid)
        if fmid == 0:
            return HPReal.exact(mid, prec=bits)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return HPReal.from_endpoints(lo, hi, prec=bits)


# ---------------------------------------------------------------------------
# factorisation over the integers (sympy-backed, verified exactly)
# ---------------------------------------------------------------------------

def factor_integer_poly(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Irreducible factors with multiplicities, primitive with positive leading.

    The factorisation is re-verified: the product of the returned factors
    reproduces p up to a rational constant, checked by exact multiplication.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no root set")
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(p.coeffs)), x, domain="ZZ")
    _, factor_list = poly.factor_list()
    factors = []
    for fac, mult in factor_list:
        coeffs = [int(c) for c in reversed(fac.all_coeffs())]
        factors.append((IntPolynomial(coeffs).primitive(), int(mult)))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))

    product = IntPolynomial([1])
    for fac, mult in factors:
        product = product * fac ** mult
    if product.degree != p.degree:
        raise ComputationError("factorisation degree mismatch")
    for a, b in zip(p.coeffs, product.coeffs):
        if a * product.leading != b * p.leading:
            raise ComputationError("factorisation failed exact verification")
    return factors


# ---------------------------------------------------------------------------
# certified complex enclosures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexEnclosure:
    """Rectangular enclosure of a complex number."""

    re: HPReal
    im: HPReal

    @property
    def is_real(self) -> bool:
        return self.im.is_exact and self.im.mid == 0

    def conjugate(self) -> "ComplexEnclosure":
        return ComplexEnclosure(self.re, -self.im)

    def abs2(self) -> HPReal:
        return self.re * self.re + self.im * self.im

    def __add__(self, other: "ComplexEnclosure") -> "ComplexEnclosure":
        return ComplexEnclosure(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "ComplexEnclosure") -> "ComplexEnclosure":
        return ComplexEnclosure(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def reciprocal(self) -> "ComplexEnclosure":
        a2 = self.abs2()
        return ComplexEnclosure(self.re / a2, -self.im / a2)

    def scale(self, c) -> "ComplexEnclosure":
        return ComplexEnclosure(self.re * c, self.im * c)

    def to_decimal(self, digits: int = 30) -> str:
        if self.is_real:
            return self.re.to_decimal(digits)
        return f"{self.re.to_decimal(digits)} + ({self.im.to_decimal(digits)})i"


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    if man == 0:
        return Fraction(0)
    val = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -val if sign else val


def _seed_to_fractions(z) -> tuple[Fraction, Fraction]:
    """Exact rational (re, im) of an mpmath root, without context rounding."""
    if hasattr(z, "_mpc_"):
        re_t, im_t = z._mpc_
        return _mpf_tuple_to_fraction(re_t), _mpf_tuple_to_fraction(im_t)
    return _mpf_tuple_to_fraction(z._mpf_), Fraction(0)


def _sqrt_bounds(q: Fraction, bits: int) -> HPReal:
    return HPReal.exact(q, prec=bits).sqrt()


def root_enclosures(f: IntPolynomial, bits: int) -> list[ComplexEnclosure]:
    """Certified enclosures of all complex roots of a squarefree polynomial.

    Real roots come from Sturm isolation; complex pairs from the quadratic
    formula when deg f = 2, otherwise from mpmath seeds certified a
    posteriori by the bound  min_root |z0 - root| <= deg * |f(z0)/f'(z0)|.
    """
    if f.degree < 1:
        return []
    zero_im = HPReal.exact(0, bits)
    real_roots = [
        ComplexEnclosure(refine_root(f, iv, bits), zero_im)
        for iv in isolate_real_roots(f)
    ]
    n_complex = f.degree - len(real_roots)
    if n_complex == 0:
        return real_roots
    if f.degree == 2:
        a, b = Fraction(f.coeffs[2]), Fraction(f.coeffs[1])
        disc = b * b - 4 * a * Fraction(f.coeffs[0])
        re = HPReal.exact(-b / (2 * a), prec=bits)
        im = _sqrt_bounds(-disc, bits) / (2 * a)
        im = abs(im)
        return [ComplexEnclosure(re, im), ComplexEnclosure(re, -im)]
    return real_roots + _certified_disks(f, bits, n_complex)


def _certified_disks(f: IntPolynomial, bits: int, n_complex: int) -> list[ComplexEnclosure]:
    import mpmath

    deg = f.degree
    fp = f.derivative()
    dps = max(60, bits // 3)
    while dps <= 40000:
        with mpmath.workdps(dps):
            seeds = mpmath.polyroots(
                [int(c) for c in reversed(f.coeffs)], maxsteps=200, extraprec=400
            )
        exact_seeds = [_seed_to_fractions(z) for z in seeds]
        upper = [(re, im) for re, im in exact_seeds if im > 0]
        disks = []
        ok = len(upper) * 2 == n_complex
        if ok:
            for cre, cim in upper:
                u, v = f.eval_complex_fraction(cre, cim)
                du, dv = fp.eval_complex_fraction(cre, cim)
                d2 = du * du + dv * dv
                if d2 == 0:
                    ok = False
                    break
                num_hi = _sqrt_bounds(u * u + v * v, bits + 64).hi()
                den_lo = _sqrt_bounds(d2, bits + 64).lo()
                if den_lo <= 0:
                    ok = False
                    break
                rad = Fraction(deg) * num_hi / den_lo
                if rad >= cim:  # disk must stay off the real axis
                    ok = False
                    break
                disks.append((cre, cim, rad))
        if ok:
            for i in range(len(disks)):
                for j in range(i + 1, len(disks)):
                    dx = disks[i][0] - disks[j][0]
                    dy = disks[i][1] - disks[j][1]
                    if dx * dx + dy * dy <= (disks[i][2] + disks[j][2]) ** 2:
                        ok = False
            target = Fraction(1, 1 << bits)
            if ok and all(r <= target for _, _, r in disks):
                out = []
                for cre, cim, rad in disks:
                    re = HPReal(cre, rad, bits)
                    im = HPReal(cim, rad, bits)
                    out.append(ComplexEnclosure(re, im))
                    out.append(ComplexEnclosure(re, -im))
                return out
        dps *= 2
    raise PrecisionError("could not certify complex roots; raise precision")
