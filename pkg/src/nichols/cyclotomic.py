"""Exact arithmetic for roots of unity and cyclotomic integers.

A root of unity exp(2*pi*i*num/den) is stored by its exponent num/den in
Q/Z.  Elements of Z[zeta_N] are stored as integer coordinate vectors in the
power basis 1, zeta, ..., zeta^(phi(N)-1), i.e. as polynomials reduced
modulo the N-th cyclotomic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import AmbiguousLogError


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The root of unity exp(2 pi i num/den), kept in canonical form."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError(f"denominator must be positive, got {self.den}")
        g = gcd(self.num, self.den)
        den = self.den // g
        object.__setattr__(self, "num", (self.num // g) % den)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_fraction(cls, x) -> RootOfUnity:
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @classmethod
    def parse(cls, text: str) -> RootOfUnity:
        """Parse ``"num/den"`` (or a bare integer, meaning 1)."""
        text = text.strip()
        if "/" in text:
            a, b = text.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(text), 1)

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def order(self) -> int:
        return self.den

    def is_one(self) -> bool:
        return self.num == 0

    def inverse(self) -> RootOfUnity:
        return RootOfUnity(-self.num, self.den)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        d = lcm(self.den, other.den)
        return RootOfUnity(self.num * (d // self.den) + other.num * (d // other.den), d)

    def __truediv__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> RootOfUnity:
        return RootOfUnity(self.num * k, self.den)

    def __str__(self):
        return f"{self.num}/{self.den}"


ONE = RootOfUnity(0, 1)


def mul(a: RootOfUnity, b: RootOfUnity) -> RootOfUnity:
    return a * b


def power(a: RootOfUnity, k: int) -> RootOfUnity:
    return a ** k


def discrete_log(base: RootOfUnity, target: RootOfUnity, lo: int, hi: int):
    """The unique k in (lo, hi] with base**k == target, or None.

    Raises AmbiguousLogError when the window is longer than the order of
    ``base`` and several exponents match.
    """
    if base.is_one():
        raise ValueError("base must not be 1")
    if lo >= hi:
        raise ValueError("empty window")
    n = base.order
    if n % target.order:
        return None
    # base = zeta_n^u with u invertible mod n; target = zeta_n^t
    u = base.num
    t = target.num * (n // target.den)
    k0 = (t * pow(u, -1, n)) % n
    first = lo + 1 + (k0 - lo - 1) % n
    if first > hi:
        return None
    if first + n <= hi:
        raise AmbiguousLogError(f"several exponents in ({lo}, {hi}] give {target}")
    return first


# ---------------------------------------------------------------------------
# cyclotomic integers

@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _poly_exact_div(a, b):
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + db] // b[db]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    assert not any(a), "inexact polynomial division"
    return q


class _Level:
    """Reduction data for Z[zeta_n]: sparse rows of x^e mod Phi_n."""

    __slots__ = ("n", "phi", "rows", "units")

    def __init__(self, n: int):
        poly = cyclotomic_polynomial(n)
        phi = len(poly) - 1
        self.n = n
        self.phi = phi
        self.units = [k for k in range(1, n + 1) if gcd(k, n) == 1] if n > 1 else [1]
        count = max(n, 2 * phi - 1)
        rows = []
        v = [0] * phi
        v[0] = 1
        for _ in range(count):
            rows.append(tuple((i, c) for i, c in enumerate(v) if c))
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                for i in range(phi):
                    v[i] -= top * poly[i]
        self.rows = rows

    def row(self, e: int):
        return self.rows[e % self.n] if e >= self.n else self.rows[e]


@lru_cache(maxsize=None)
def level_data(n: int) -> _Level:
    return _Level(n)


def _mul(a, b, lv):
    phi = lv.phi
    if phi == 1:
        return [a[0] * b[0]]
    prod = [0] * (2 * phi - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    res = prod[:phi]
    rows = lv.rows
    for e in range(phi, 2 * phi - 1):
        c = prod[e]
        if c:
            for i, r in rows[e]:
                res[i] += c * r
    return res


def _mul_root(a, e, lv):
    """a * zeta^e."""
    res = [0] * lv.phi
    n = lv.n
    rows = lv.rows
    for j, aj in enumerate(a):
        if aj:
            for i, r in rows[(j + e) % n]:
                res[i] += aj * r
    return res


def _galois(a, k, lv):
    res = [0] * lv.phi
    n = lv.n
    rows = lv.rows
    for j, aj in enumerate(a):
        if aj:
            for i, r in rows[(j * k) % n]:
                res[i] += aj * r
    return res


def _adjugate(a, lv):
    """Product of the non-identity Galois conjugates of a."""
    res = [0] * lv.phi
    res[0] = 1
    for k in lv.units:
        if k % lv.n != 1 % lv.n:
            res = _mul(res, _galois(a, k, lv), lv)
    return res


def _norm_and_adjugate(a, lv):
    adj = _adjugate(a, lv)
    nrm = _mul(a, adj, lv)
    assert not any(nrm[1:]), "norm is not rational"
    return nrm[0], adj


def _exact_div_by(a, adj, nrm, lv):
    prod = _mul(a, adj, lv)
    out = []
    for c in prod:
        qq, rr = divmod(c, nrm)
        assert rr == 0, "inexact division in Z[zeta]"
        out.append(qq)
    return out


class CyclotomicInt:
    """An element of Z[zeta_N] in the power basis."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        lv = level_data(level)
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != lv.phi:
            raise ValueError(f"expected {lv.phi} coefficients at level {level}")
        self.level = level
        self.coeffs = coeffs

    @classmethod
    def zero(cls, level: int) -> CyclotomicInt:
        return cls(level, [0] * level_data(level).phi)

    @classmethod
    def one(cls, level: int) -> CyclotomicInt:
        return cls.from_int(level, 1)

    @classmethod
    def from_int(cls, level: int, k: int) -> CyclotomicInt:
        c = [0] * level_data(level).phi
        c[0] = k
        return cls(level, c)

    @classmethod
    def from_root(cls, root: RootOfUnity, level: int, scale: int = 1) -> CyclotomicInt:
        if level % root.den:
            raise ValueError(f"{root} does not live at level {level}")
        lv = level_data(level)
        c = [0] * lv.phi
        for i, r in lv.row(root.num * (level // root.den)):
            c[i] += scale * r
        return cls(level, c)

    @classmethod
    def from_polynomial(cls, level: int, poly) -> CyclotomicInt:
        """Reduce sum poly[e] * zeta^e (any length) to canonical form."""
        lv = level_data(level)
        c = [0] * lv.phi
        for e, a in enumerate(poly):
            if a:
                for i, r in lv.row(e):
                    c[i] += a * r
        return cls(level, c)

    def _check(self, other):
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        if other.level != self.level:
            raise ValueError("level mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.level, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.level, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CyclotomicInt(self.level, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.level, [a * other for a in self.coeffs])
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.level, _mul(self.coeffs, other.coeffs, level_data(self.level)))

    __rmul__ = __mul__

    def mul_root(self, root: RootOfUnity) -> CyclotomicInt:
        if self.level % root.den:
            raise ValueError(f"{root} does not live at level {self.level}")
        e = root.num * (self.level // root.den)
        return CyclotomicInt(self.level, _mul_root(self.coeffs, e, level_data(self.level)))

    def galois(self, k: int) -> CyclotomicInt:
        """Apply zeta -> zeta^k (k coprime to the level)."""
        if gcd(k, self.level) != 1:
            raise ValueError("k must be coprime to the level")
        return CyclotomicInt(self.level, _galois(self.coeffs, k, level_data(self.level)))

    def norm(self) -> int:
        return _norm_and_adjugate(self.coeffs, level_data(self.level))[0]

    def exact_div(self, other: CyclotomicInt) -> CyclotomicInt:
        """self / other, which must lie in Z[zeta_N]."""
        lv = level_data(self.level)
        nrm, adj = _norm_and_adjugate(other.coeffs, lv)
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Z[zeta]")
        return CyclotomicInt(self.level, _exact_div_by(self.coeffs, adj, nrm, lv))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            return self == CyclotomicInt.from_int(self.level, other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __repr__(self):
        return f"CyclotomicInt({self.level}, {list(self.coeffs)})"

    def to_json(self):
        return {"level": self.level, "coeffs": list(self.coeffs)}


def common_level(roots) -> int:
    n = 1
    for r in roots:
        n = lcm(n, r.den)
    return n


# ---------------------------------------------------------------------------
# exact rank over Q(zeta_N)

def _raw_rows(matrix):
    rows = [list(row) for row in matrix]
    level = None
    for row in rows:
        for x in row:
            if level is None:
                level = x.level
            elif x.level != level:
                raise ValueError("entries must share one level")
    return rows, level


def _echelon(raw, ncols, lv):
    """Fraction-free elimination; returns original indices of pivot rows.

    Each step replaces row i by (p * row_i - a_ic * row_r) / prev, where p is
    the current pivot and prev the previous one.  By Sylvester's identity the
    division is exact in Z[zeta_N]; it is carried out by multiplying with the
    Galois adjugate of prev and dividing by its (rational) norm.
    """
    m = len(raw)
    order = list(range(m))
    prev = None
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if any(raw[i][c]):
                piv = i
                break
        if piv is None:
            continue
        raw[r], raw[piv] = raw[piv], raw[r]
        order[r], order[piv] = order[piv], order[r]
        p = raw[r][c]
        if prev is not None:
            nrm, adj = _norm_and_adjugate(prev, lv)
            trivial = nrm == 1 and adj == [1] + [0] * (lv.phi - 1)
        pivot_row = raw[r]
        for i in range(r + 1, m):
            row = raw[i]
            a = row[c]
            a_zero = not any(a)
            for j in range(c + 1, ncols):
                x = row[j]
                if any(x):
                    v = _mul(p, x, lv)
                else:
                    v = [0] * lv.phi
                if not a_zero and any(pivot_row[j]):
                    w = _mul(a, pivot_row[j], lv)
                    v = [s - t for s, t in zip(v, w)]
                if prev is not None and not trivial and any(v):
                    v = _exact_div_by(v, adj, nrm, lv)
                row[j] = v
            row[c] = [0] * lv.phi
        prev = p
        r += 1
    return order[:r]


def cyc_row_basis(matrix) -> list[int]:
    """Indices of rows forming a basis of the row space over Q(zeta_N)."""
    rows, level = _raw_rows(matrix)
    if not rows or level is None:
        return []
    lv = level_data(level)
    raw = [[list(x.coeffs) for x in row] for row in rows]
    return sorted(_echelon(raw, len(raw[0]), lv))


def cyc_rank(matrix) -> int:
    """Rank over Q(zeta_N) of a matrix of CyclotomicInt at a common level."""
    return len(cyc_row_basis(matrix))
