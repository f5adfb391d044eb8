"""Exact arithmetic in the real cyclotomic field Q(c), c = 2cos(pi/N).

Every Gram entry -cos(pi/m) with m | N is a polynomial in c with rational
coefficients, so all root pairings of a Coxeter system whose finite labels
divide N live in this field.  Elements are kept in canonical reduced form
(a polynomial in c of degree < deg(minpoly), with integer coefficients over
a common positive denominator), which makes zero testing syntactic.
Nonzero signs are decided by refining a rational isolating interval for c;
there is no floating point anywhere in this module.

Polynomials are coefficient lists, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class FieldError(ValueError):
    """Invalid field parameter or mixing of incompatible field contexts."""


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers
# ---------------------------------------------------------------------------

def _trim(p):
    n = len(p)
    while n > 0 and p[n - 1] == 0:
        n -= 1
    return list(p[:n])


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _trim(out)


def _poly_sub(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
                  for i in range(n)])


def _poly_derivative(p):
    return _trim([i * p[i] for i in range(1, len(p))])


def _content(p):
    g = 0
    for a in p:
        g = gcd(g, a.numerator if isinstance(a, Fraction) else a)
    return g or 1


def _primitive(p):
    """Integer primitive part of a rational polynomial, positive leading coeff."""
    if not p:
        return []
    den = 1
    for a in p:
        if isinstance(a, Fraction):
            den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in p]
    g = _content(ints)
    ints = [a // g for a in ints]
    if ints[-1] < 0:
        ints = [-a for a in ints]
    return ints


def _poly_divmod(p, q):
    """Division over Q; returns (quotient, remainder) as Fraction lists."""
    r = [Fraction(a) for a in p]
    q = [Fraction(a) for a in q]
    quot = [Fraction(0)] * max(len(r) - len(q) + 1, 0)
    while len(_trim(r)) >= len(q):
        r = _trim(r)
        shift = len(r) - len(q)
        coef = r[-1] / q[-1]
        quot[shift] = coef
        for i, b in enumerate(q):
            r[shift + i] -= coef * b
        r = r[:-1]
    return _trim(quot), _trim(r)


def _poly_div_exact(p, q):
    quot, rem = _poly_divmod(p, q)
    if rem:
        raise AssertionError("polynomial division expected to be exact")
    out = [int(a) for a in quot]
    if any(a != b for a, b in zip(out, quot)):
        raise AssertionError("exact quotient expected integer coefficients")
    return out


def _poly_gcd(p, q):
    """Primitive integer gcd of two integer polynomials (Euclid over Q)."""
    a = [Fraction(x) for x in _trim(p)]
    b = [Fraction(x) for x in _trim(q)]
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, [Fraction(x) for x in r]
    return _primitive(a)


def _eval_fraction(p, x):
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def _dickson(n):
    """D_n with D_n(2cos t) = 2cos(nt): D_0 = 2, D_1 = x, D_{k+1} = x*D_k - D_{k-1}."""
    a, b = [2], [0, 1]
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, _poly_sub(_poly_mul([0, 1], b), a)
    return b


def _totient(n):
    out, k = n, 2
    m = n
    while k * k <= m:
        if m % k == 0:
            while m % k == 0:
                m //= k
            out -= out // k
        k += 1
    if m > 1:
        out -= out // m
    return out


_MINPOLY_CACHE = {}


def _minpoly_two_cos(N):
    """Minimal polynomial of 2cos(pi/N) over Q, monic with integer coefficients.

    The roots of D_N(x) + 2 are the 2cos(k pi / N) with k odd; its squarefree
    part factors over odd-quotient divisors of N into the minimal polynomials
    of the 2cos(pi/m), which gives a recursion with exact integer arithmetic.
    """
    if N in _MINPOLY_CACHE:
        return _MINPOLY_CACHE[N]
    p = _poly_sub(_dickson(N), [-2])          # D_N(x) + 2
    sqfree = _poly_div_exact(p, _poly_gcd(p, _poly_derivative(p)))
    for m in range(1, N):
        if N % m == 0 and (N // m) % 2 == 1:
            sqfree = _poly_div_exact(sqfree, _minpoly_two_cos(m))
    if sqfree[-1] != 1:
        raise AssertionError("minimal polynomial expected monic")
    if N >= 2 and len(sqfree) - 1 != _totient(2 * N) // 2:
        raise AssertionError("minimal polynomial has wrong degree")
    _MINPOLY_CACHE[N] = sqfree
    return sqfree


# ---------------------------------------------------------------------------
# Sturm sequences (used once per field, to certify the isolating interval)
# ---------------------------------------------------------------------------

def _sturm_chain(p):
    chain = [[Fraction(a) for a in p], [Fraction(a) for a in _poly_derivative(p)]]
    while chain[-1]:
        _, r = _poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-a for a in r])
    return chain


def _sign_changes(chain, x):
    signs = []
    for p in chain:
        v = _eval_fraction(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_roots(chain, lo, hi):
    """Number of real roots in (lo, hi]."""
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


class FieldContext:
    """The field Q(c), c = 2cos(pi/N), with certified root isolation for c.

    Immutable except for the isolating interval, which only ever shrinks and
    always contains c; concurrent readers may at worst refine it twice.
    """

    def __init__(self, N):
        if N < 2:
            raise FieldError("field parameter must be at least 2, got %r" % (N,))
        self.N = N
        self.minpoly = tuple(_minpoly_two_cos(N))
        self.degree = len(self.minpoly) - 1
        self._reduction_rows = self._build_reduction_rows()
        self._lo, self._hi = self._isolate()
        self._sign_at_lo = self._minpoly_sign(self._lo)
        self._cos_cache = {}
        self.zero = CycReal(self, (0,) * self.degree, 1)
        self.one = self.from_rational(1)

    # -- construction helpers ------------------------------------------------

    def _build_reduction_rows(self):
        deg = self.degree
        rows = []
        top = [-c for c in self.minpoly[:deg]]          # x^deg reduced
        rows.append(list(top))
        for _ in range(deg - 2):
            prev = rows[-1]
            nxt = [0] + prev[:deg - 1]
            carry = prev[deg - 1]
            if carry:
                for i in range(deg):
                    nxt[i] += carry * top[i]
            rows.append(nxt)
        return rows

    def _isolate(self):
        """Rational interval around the largest root of minpoly (which is c)."""
        if self.degree == 1:
            r = Fraction(-self.minpoly[0], self.minpoly[1])
            return r - 1, r + 1
        chain = _sturm_chain(self.minpoly)
        lo, hi = Fraction(-2), Fraction(2)
        while _count_roots(chain, lo, hi) > 1:
            mid = (lo + hi) / 2
            if _count_roots(chain, mid, hi) >= 1:
                lo = mid
            else:
                hi = mid
        if _count_roots(chain, lo, hi) != 1:
            raise AssertionError("failed to isolate the field generator")
        return lo, hi

    def _minpoly_sign(self, x):
        v = _eval_fraction(self.minpoly, x)
        if v == 0:
            raise AssertionError("isolating endpoint hit a root")
        return 1 if v > 0 else -1

    # -- interval state -------------------------------------------------------

    def interval(self):
        return self._lo, self._hi

    def refine(self):
        """Halve the isolating interval, keeping the half that contains c."""
        mid = (self._lo + self._hi) / 2
        if self._minpoly_sign(mid) == self._sign_at_lo:
            self._lo = mid
        else:
            self._hi = mid

    # -- element constructors --------------------------------------------------

    def make(self, nums, den):
        """Canonicalize and wrap integer coefficients over a denominator."""
        if den < 0:
            nums = [-a for a in nums]
            den = -den
        g = den
        for a in nums:
            g = gcd(g, a)
            if g == 1:
                break
        if g > 1:
            nums = [a // g for a in nums]
            den //= g
        if not any(nums):
            den = 1
        return CycReal(self, tuple(nums), den)

    def from_rational(self, q):
        q = Fraction(q)
        nums = [0] * self.degree
        nums[0] = q.numerator
        return self.make(nums, q.denominator)

    def generator(self):
        """The element c = 2cos(pi/N) itself."""
        if self.degree == 1:
            return self.from_rational(Fraction(-self.minpoly[0], self.minpoly[1]))
        nums = [0] * self.degree
        nums[1] = 1
        return CycReal(self, tuple(nums), 1)

    def two_cos(self, k, m):
        """2cos(k pi / m) as a field element; m must divide N."""
        if m < 1 or self.N % m != 0:
            raise FieldError("label %r does not divide field parameter %r" % (m, self.N))
        j = (k * (self.N // m)) % (2 * self.N)
        j = min(j, 2 * self.N - j)
        key = j
        got = self._cos_cache.get(key)
        if got is None:
            c = self.generator()
            a, b = self.from_rational(2), c
            if j == 0:
                got = a
            else:
                for _ in range(j - 1):
                    a, b = b, c * b - a
                got = b
            self._cos_cache[key] = got
        return got

    def __repr__(self):
        return "FieldContext(N=%d, degree=%d)" % (self.N, self.degree)


class CycReal:
    """An element of Q(2cos(pi/N)): integer coefficients over one denominator."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den):
        self.ctx = ctx
        self.num = num
        self.den = den

    # -- predicates ------------------------------------------------------------

    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise FieldError("element is irrational")
        return Fraction(self.num[0], self.den)

    # -- ring operations ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycReal):
            if other.ctx is not self.ctx:
                raise FieldError("operands come from different field contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        da, db = self.den, other.den
        if da == db:
            return self.ctx.make([a + b for a, b in zip(self.num, other.num)], da)
        return self.ctx.make([a * db + b * da for a, b in zip(self.num, other.num)],
                             da * db)

    __radd__ = __add__

    def __neg__(self):
        return CycReal(self.ctx, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_rational():
            self, other = other, self
        if other.is_rational():
            q = other.num[0]
            if q == 0:
                return self.ctx.zero
            return self.ctx.make([a * q for a in self.num], self.den * other.den)
        deg = self.ctx.degree
        conv = [0] * (2 * deg - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        conv[i + j] += a * b
        rows = self.ctx._reduction_rows
        out = conv[:deg]
        for k in range(deg, 2 * deg - 1):
            carry = conv[k]
            if carry:
                row = rows[k - deg]
                for i in range(deg):
                    out[i] += carry * row[i]
        return self.ctx.make(out, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise FieldError("negative powers are not supported")
        out = self.ctx.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- exact comparisons ---------------------------------------------------------

    def sign(self):
        """Exact sign in {-1, 0, +1}."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.num[0] > 0 else -1
        if self.ctx.degree == 1:
            v = _eval_fraction(self.num, Fraction(-self.ctx.minpoly[0],
                                                  self.ctx.minpoly[1]))
            return 1 if v > 0 else (-1 if v < 0 else 0)
        for _ in range(100000):
            lo, hi = self._interval_value()
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.ctx.refine()
        raise AssertionError("sign refinement did not converge")

    def _interval_value(self):
        xlo, xhi = self.ctx.interval()
        lo = hi = Fraction(self.num[-1])
        for a in reversed(self.num[:-1]):
            p1, p2, p3, p4 = lo * xlo, lo * xhi, hi * xlo, hi * xhi
            lo = min(p1, p2, p3, p4) + a
            hi = max(p1, p2, p3, p4) + a
        return lo / self.den, hi / self.den

    def cmp_rational(self, q):
        """-1, 0, +1 comparison against an exact rational."""
        q = Fraction(q)
        nums = list(self.num)
        den = self.den
        nums = [a * q.denominator for a in nums]
        nums[0] -= q.numerator * den
        return self.ctx.make(nums, den * q.denominator).sign()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_fraction() == Fraction(other)
        if not isinstance(other, CycReal):
            return NotImplemented
        return self.ctx is other.ctx and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __lt__(self, other):
        other = self._coerce(other)
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._coerce(other)
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = self._coerce(other)
        return (self - other).sign() >= 0

    def __repr__(self):
        if self.is_rational():
            return str(Fraction(self.num[0], self.den))
        terms = []
        for i, a in enumerate(self.num):
            if a:
                terms.append("%d*c^%d" % (a, i) if i else str(a))
        return "(%s)/%d" % (" + ".join(terms), self.den)


_FIELD_CACHE = {}


def field_init(N):
    """Build (or fetch) the field context for Q(2cos(pi/N)); requires N >= 2."""
    if not isinstance(N, int) or N < 2:
        raise FieldError("field parameter must be an integer >= 2, got %r" % (N,))
    ctx = _FIELD_CACHE.get(N)
    if ctx is None:
        ctx = FieldContext(N)
        _FIELD_CACHE[N] = ctx
    return ctx


def embed_cos(k, m, ctx):
    """cos(k pi / m) as an exact element of ctx; m must divide ctx.N."""
    return ctx.two_cos(k, m) * Fraction(1, 2)


def arith(x, y, op):
    """Field arithmetic dispatch: op in {'add', 'sub', 'mul', 'neg'}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise FieldError("unknown operation %r" % (op,))


def sign(x):
    return x.sign()


def cmp_rational(x, q):
    return x.cmp_rational(q)
