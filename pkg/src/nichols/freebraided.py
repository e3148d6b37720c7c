"""The free braided algebra T(V) of a diagonal braiding, and q-binomials.

Words are tuples of letter indices.  T(V) (x) T(V) carries the braided
product (u (x) v)(u' (x) v') = beta(v, u') uu' (x) vv', where beta(v, u') is
the product of b_ac over letters a of v and c of u'.  The coproduct is the
algebra map sending each generator x_i to x_i (x) 1 + 1 (x) x_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .braiding import BraidingMatrix, cartan_type
from .cyclotomic import CyclotomicInt, RootOfUnity, level_data
from .errors import ResourceGuardError

TERM_GUARD = 10 ** 6


# ---------------------------------------------------------------------------
# Laurent polynomials in a formal variable q

class QPoly:
    """Integer Laurent polynomial; ``terms`` maps exponent to coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, e: int = 0, c: int = 1) -> QPoly:
        return cls({e: c})

    @classmethod
    def from_coeffs(cls, coeffs, shift: int = 0) -> QPoly:
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    def __add__(self, other):
        other = _as_qpoly(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return QPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return QPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_qpoly(other))

    def __rsub__(self, other):
        return _as_qpoly(other) - self

    def __mul__(self, other):
        other = _as_qpoly(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return QPoly(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QPoly.monomial(0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly.monomial(0, other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def shift(self, k: int) -> QPoly:
        """Multiply by q**k."""
        return QPoly({e + k: c for e, c in self.terms.items()})

    def substitute_power(self, k: int) -> QPoly:
        """Replace q by q**k."""
        return QPoly({e * k: c for e, c in self.terms.items()})

    def low(self) -> int:
        return min(self.terms) if self.terms else 0

    def high(self) -> int:
        return max(self.terms) if self.terms else 0

    def exact_div(self, other: QPoly) -> QPoly:
        """Quotient in Z[q, 1/q] when ``other`` divides exactly with unit lead."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e = other.high()
        lead = other.terms[lead_e]
        span = other.high() - other.low()
        rem = QPoly(self.terms)
        quot = {}
        while not rem.is_zero() and rem.high() - rem.low() >= span:
            e = rem.high()
            c, r = divmod(rem.terms[e], lead)
            if r:
                raise ArithmeticError("inexact division")
            quot[e - lead_e] = c
            rem = rem - other.shift(e - lead_e) * c
        if not rem.is_zero():
            raise ArithmeticError("inexact division")
        return QPoly(quot)

    def evaluate(self, root: RootOfUnity, level: int | None = None) -> CyclotomicInt:
        level = level or root.order
        out = CyclotomicInt.zero(level)
        for e, c in self.terms.items():
            out = out + CyclotomicInt.from_root(root ** e, level, c)
        return out

    def __repr__(self):
        if not self.terms:
            return "QPoly(0)"
        parts = [f"{c}*q^{e}" for e, c in sorted(self.terms.items())]
        return "QPoly(" + " + ".join(parts) + ")"


def _as_qpoly(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, int):
        return QPoly.monomial(0, x)
    raise TypeError(f"cannot use {type(x).__name__} as a q-polynomial")


Q = QPoly.monomial(1)


def q_int(n: int) -> QPoly:
    """(n)_q = 1 + q + ... + q^(n-1)."""
    return QPoly.from_coeffs([1] * n)


def q_factorial(n: int) -> QPoly:
    out = QPoly.monomial(0)
    for k in range(1, n + 1):
        out = out * q_int(k)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, i: int) -> QPoly:
    """Gaussian binomial via C(n+1, h) = q^h C(n, h) + C(n, h-1)."""
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= n, got n={n}, i={i}")
    if i == 0 or i == n:
        return QPoly.monomial(0)
    return qbinom(n - 1, i).shift(i) + qbinom(n - 1, i - 1)


def sym_int(n: int) -> QPoly:
    """[n]_q = (q^n - q^-n) / (q - q^-1) = q^(1-n) + q^(3-n) + ... + q^(n-1)."""
    return QPoly({n - 1 - 2 * k: 1 for k in range(n)})


def sym_binom(n: int, i: int) -> QPoly:
    num = QPoly.monomial(0)
    for k in range(1, n + 1):
        num = num * sym_int(k)
    den = QPoly.monomial(0)
    for k in range(1, i + 1):
        den = den * sym_int(k)
    for k in range(1, n - i + 1):
        den = den * sym_int(k)
    return num.exact_div(den)


@dataclass
class SuiteResult:
    failures: list = field(default_factory=list)

    def __bool__(self):
        return not self.failures


def _two_letter_power(n: int) -> dict:
    """(x + y)^n in the algebra with xy = q yx, as {(i, j): coeff of y^i x^j}."""
    state = {(0, 0): QPoly.monomial(0)}
    for _ in range(n):
        nxt = {}
        for (i, j), c in state.items():
            for key, val in (((i, j + 1), c), ((i + 1, j), c.shift(j))):
                nxt[key] = nxt.get(key, QPoly()) + val
        state = nxt
    return state


def qbinom_identity_suite(n_max: int) -> SuiteResult:
    """Check the q-binomial identities for 1 <= n <= n_max."""
    res = SuiteResult()
    fail = res.failures.append
    for n in range(1, n_max + 1):
        for h in range(1, n + 1):
            left = qbinom(n, h).shift(h) + qbinom(n, h - 1)
            mid = qbinom(n, h) + qbinom(n, h - 1).shift(n + 1 - h)
            if not (left == mid == qbinom(n + 1, h)):
                fail(f"Pascal recurrences, n={n}, h={h}")
        for i in range(n + 1):
            if qbinom(n, i) * q_factorial(i) * q_factorial(n - i) != q_factorial(n):
                fail(f"factorial ratio, n={n}, i={i}")
            if qbinom(n, i).substitute_power(2) != sym_binom(n, i).shift(i * (n - i)):
                fail(f"symmetric binomial relation, n={n}, i={i}")
        s4 = QPoly()
        s5 = QPoly()
        s6 = QPoly()
        for i in range(n + 1):
            sign = -1 if i % 2 else 1
            s4 = s4 + sym_binom(n, i).shift(i * (1 - n)) * sign
            s5 = s5 + qbinom(n, i).shift((i * i + i) // 2 - n * i) * sign
            s6 = s6 + qbinom(n, i).shift((i * i - i) // 2) * sign
        for name, s in (("alternating symmetric sum", s4), ("alternating sum, shifted form", s5),
                        ("alternating sum", s6)):
            if not s.is_zero():
                fail(f"{name}, n={n}")
        power = _two_letter_power(n)
        expected = {(i, n - i): qbinom(n, i) for i in range(n + 1)}
        if {k: v for k, v in power.items() if not v.is_zero()} != expected:
            fail(f"quantum binomial formula, n={n}")
        for r in range(n + 1):
            if q_int(r) + q_int(n - r).shift(r) != q_int(n):
                fail(f"(r)+q^r(s)=(r+s), r={r}, s={n - r}")
    return res


# ---------------------------------------------------------------------------
# T(V)

class BraidedPoly:
    """Element of T(V) with coefficients in Z[zeta_L], L = level of b."""

    __slots__ = ("braiding", "level", "terms")

    def __init__(self, braiding: BraidingMatrix, terms=None):
        self.braiding = braiding
        self.level = braiding.level
        clean = {}
        for w, c in (terms or {}).items():
            if isinstance(c, int):
                c = CyclotomicInt.from_int(self.level, c)
            if not c.is_zero():
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def letter(cls, b: BraidingMatrix, i: int) -> BraidedPoly:
        if not 0 <= i < b.theta:
            raise IndexError(f"no generator x_{i}")
        return cls(b, {(i,): 1})

    @classmethod
    def word(cls, b: BraidingMatrix, w, coeff=1) -> BraidedPoly:
        return cls(b, {tuple(w): coeff})

    @classmethod
    def one(cls, b: BraidingMatrix) -> BraidedPoly:
        return cls(b, {(): 1})

    def _same(self, other):
        if not isinstance(other, BraidedPoly):
            raise TypeError("expected a BraidedPoly")
        if other.braiding != self.braiding:
            raise ValueError("braiding context mismatch")

    def __add__(self, other):
        self._same(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t[w] + c if w in t else c
        return BraidedPoly(self.braiding, t)

    def __neg__(self):
        return BraidedPoly(self.braiding, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> BraidedPoly:
        """Multiply by an integer, a CyclotomicInt or a RootOfUnity."""
        if isinstance(s, RootOfUnity):
            return BraidedPoly(self.braiding, {w: c.mul_root(s) for w, c in self.terms.items()})
        return BraidedPoly(self.braiding, {w: c * s for w, c in self.terms.items()})

    def __mul__(self, other):
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, BraidedPoly):
            return NotImplemented
        return self.braiding == other.braiding and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def multidegree(self):
        """Common letter counts of all words, or None if inhomogeneous."""
        degs = {tuple(w.count(i) for i in range(self.braiding.theta)) for w in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None if degs else tuple([0] * self.braiding.theta)

    def character_at(self, i: int) -> RootOfUnity:
        """chi_v(g_i) = prod of b_{i, letter} for the (homogeneous) degree of self."""
        deg = self.multidegree()
        if deg is None:
            raise ValueError("element is not homogeneous")
        out = RootOfUnity(0)
        for k, m in enumerate(deg):
            out = out * self.braiding[i, k] ** m
        return out

    def __repr__(self):
        items = ", ".join(f"{w}: {list(c.coeffs)}" for w, c in sorted(self.terms.items()))
        return f"BraidedPoly({{{items}}})"


def multiply(a: BraidedPoly, b: BraidedPoly) -> BraidedPoly:
    a._same(b)
    t = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            w = w1 + w2
            c = c1 * c2
            t[w] = t[w] + c if w in t else c
    return BraidedPoly(a.braiding, t)


class BraidedPolyTensor:
    """Element of T(V) (x) T(V); ``terms`` maps (u, v) to a coefficient."""

    __slots__ = ("braiding", "level", "terms")

    def __init__(self, braiding: BraidingMatrix, terms=None):
        self.braiding = braiding
        self.level = braiding.level
        clean = {}
        for k, c in (terms or {}).items():
            if isinstance(c, int):
                c = CyclotomicInt.from_int(self.level, c)
            if not c.is_zero():
                clean[(tuple(k[0]), tuple(k[1]))] = c
        self.terms = clean

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t[k] + c if k in t else c
        return BraidedPolyTensor(self.braiding, t)

    def __neg__(self):
        return BraidedPolyTensor(self.braiding, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, BraidedPolyTensor):
            return NotImplemented
        return self.braiding == other.braiding and self.terms == other.terms

    def __mul__(self, other):
        b = self.braiding
        t = {}
        for (u, v), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                s = _beta(b, v, u2)
                c = (c1 * c2).mul_root(s)
                k = (u + u2, v + v2)
                t[k] = t[k] + c if k in t else c
        return BraidedPolyTensor(b, t)

    def is_zero(self) -> bool:
        return not self.terms

    @classmethod
    def pure(cls, a: BraidedPoly, b: BraidedPoly) -> BraidedPolyTensor:
        t = {}
        for u, c1 in a.terms.items():
            for v, c2 in b.terms.items():
                t[(u, v)] = c1 * c2
        return cls(a.braiding, t)


def _beta(b: BraidingMatrix, v, u) -> RootOfUnity:
    out = RootOfUnity(0)
    for x in v:
        for y in u:
            out = out * b[x, y]
    return out


def word_coproduct(b: BraidingMatrix, w) -> dict:
    """Delta of a single word as {(u, v): {exponent mod L: count}}.

    Multiplies Delta(x_i) = x_i (x) 1 + 1 (x) x_i letter by letter: appending
    a letter on the left factor moves it past every letter already sitting
    in the right factor.
    """
    level = b.level
    state = {((), ()): {0: 1}}
    for x in w:
        nxt = {}
        for (u, v), coeffs in state.items():
            s = RootOfUnity(0)
            for y in v:
                s = s * b[y, x]
            shift = s.num * (level // s.den)
            left = nxt.setdefault((u + (x,), v), {})
            for e, c in coeffs.items():
                e2 = (e + shift) % level
                left[e2] = left.get(e2, 0) + c
            right = nxt.setdefault((u, v + (x,)), {})
            for e, c in coeffs.items():
                right[e] = right.get(e, 0) + c
        state = nxt
    return state


def coproduct(a: BraidedPoly) -> BraidedPolyTensor:
    b = a.braiding
    work = sum(2 ** len(w) for w in a.terms)
    if work > TERM_GUARD:
        raise ResourceGuardError(f"coproduct expansion needs {work} terms", work)
    lv = level_data(a.level)
    t = {}
    for w, c in a.terms.items():
        for key, coeffs in word_coproduct(b, w).items():
            acc = t.get(key)
            for e, k in coeffs.items():
                term = c.mul_root(RootOfUnity(e, lv.n)) * k
                acc = term if acc is None else acc + term
            t[key] = acc
    return BraidedPolyTensor(b, t)


def ad_c(i, v: BraidedPoly) -> BraidedPoly:
    """Braided adjoint of the generator x_i on a homogeneous v.

    i may be an index or the letter x_i itself.
    """
    if isinstance(i, BraidedPoly):
        x = i
        words = [w for w, c in x.terms.items() if not c.is_zero()]
        if len(words) != 1 or len(words[0]) != 1 or x.terms[words[0]] != CyclotomicInt.one(x.braiding.level):
            raise ValueError("ad_c expects a single letter")
        i = words[0][0]
    else:
        x = BraidedPoly.letter(v.braiding, i)
    return x * v - (v * x).scale(v.character_at(i))


def serre_element(b: BraidingMatrix, i: int, j: int, a_ij: int | None = None) -> BraidedPoly:
    """(ad_c x_i)^(1 - a_ij) x_j."""
    if i == j:
        raise ValueError("need i != j")
    if a_ij is None:
        ct = cartan_type(b)
        if ct is None:
            raise ValueError("braiding is not of Cartan type; pass a_ij explicitly")
        a_ij = ct.gcm.a[i][j]
    if a_ij > 0:
        raise ValueError("a_ij must be non-positive")
    z = BraidedPoly.letter(b, j)
    for _ in range(1 - a_ij):
        z = ad_c(i, z)
    return z


def serre_closed_form(b: BraidingMatrix, i: int, j: int, r: int) -> BraidedPoly:
    """sum_k (-1)^k C(r,k)_chi chi^(k(k-1)/2) eta^k x^(r-k) y x^k."""
    chi = b[i, i]
    eta = b[i, j]
    level = b.level
    terms = {}
    for k in range(r + 1):
        coeff = qbinom(r, k).evaluate(chi, level).mul_root(chi ** (k * (k - 1) // 2) * eta ** k)
        if k % 2:
            coeff = -coeff
        terms[(i,) * (r - k) + (j,) + (i,) * k] = coeff
    return BraidedPoly(b, terms)


def is_primitive(z: BraidedPoly) -> bool:
    one = BraidedPoly.one(z.braiding)
    diff = coproduct(z) - BraidedPolyTensor.pure(z, one) - BraidedPolyTensor.pure(one, z)
    return diff.is_zero()


def serre_condition_value(b: BraidingMatrix, i: int, j: int, r: int) -> RootOfUnity:
    """eta(g) chi(t) chi(g)^(r-1) = b_ij b_ji b_ii^(r-1)."""
    return b[i, j] * b[j, i] * b[i, i] ** (r - 1)


def serre_coefficients(b: BraidingMatrix, i: int, j: int, r: int) -> list[CyclotomicInt]:
    """alpha_m, the coefficient of x^m y x^(r-m) in the Serre element."""
    z = serre_closed_form(b, i, j, r)
    zero = CyclotomicInt.zero(b.level)
    return [z.terms.get((i,) * m + (j,) + (i,) * (r - m), zero) for m in range(r + 1)]


def serre_system_residuals(b: BraidingMatrix, i: int, j: int, r: int, alpha) -> list[CyclotomicInt]:
    """Left-hand sides of the two linear systems whose vanishing gives primitivity.

    For z = sum_m alpha_m x^m y x^(r-m), these are the coefficients of
    x^l y x^h (x) x^(r-l-h) and x^(r-u-v) (x) x^u y x^v in Delta(z) for
    l + h < r and u + v < r.
    """
    chi, eta, chi_t = b[i, i], b[i, j], b[j, i]
    level = b.level
    out = []

    def binom(n, k):
        return qbinom(n, k).evaluate(chi, level)

    for left, right in product(range(r), repeat=2):
        if left + right >= r:
            continue
        first = CyclotomicInt.zero(level)
        second = CyclotomicInt.zero(level)
        for m in range(left, r - right + 1):
            s1 = eta ** (m - left) * chi ** (right * (m - left))
            first = first + (alpha[m] * binom(m, left) * binom(r - m, right)).mul_root(s1)
            s2 = chi_t ** (r - m - right) * chi ** (left * (r - m - right))
            second = second + (alpha[m] * binom(m, left) * binom(r - m, right)).mul_root(s2)
        out.extend([first, second])
    return out
