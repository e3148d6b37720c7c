"""Exponent-level twisting of realizations over finite abelian groups.

The group is Gamma = Z/E_1 + ... + Z/E_M with E_1 | E_2 | ... | E_M.  A
group element g and a character chi are integer vectors; their pairing is

    <chi, g> = q ** sum_h D_h chi_h g_h,    D_h = E_M / E_h,

with q a fixed root of unity of order E_M.  A realization attaches a pair
(g(i), chi(i)) to every generator x_i and has braiding
b_ij = <chi(j), g(i)>.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import lcm

from .braiding import BraidingMatrix, cartan_type, is_symmetric
from .cyclotomic import RootOfUnity
from .errors import PreconditionError


@dataclass(frozen=True)
class GroupData:
    invariant_factors: tuple

    def __post_init__(self):
        e = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", e)
        if not e:
            raise ValueError("need at least one cyclic factor")
        if any(x < 1 for x in e):
            raise ValueError("invariant factors must be positive")
        for a, b in zip(e, e[1:]):
            if b % a:
                raise ValueError(f"invariant factors must divide each other: {e}")

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1]

    @property
    def order(self) -> int:
        n = 1
        for x in self.invariant_factors:
            n *= x
        return n

    @property
    def D(self) -> tuple:
        return tuple(self.exponent // x for x in self.invariant_factors)

    def reduce(self, v) -> tuple:
        if len(v) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(v)}")
        return tuple(int(x) % e for x, e in zip(v, self.invariant_factors))

    def elements(self):
        return product(*(range(e) for e in self.invariant_factors))

    def add(self, u, v) -> tuple:
        return tuple((a + b) % e for a, b, e in zip(u, v, self.invariant_factors))

    def pairing_exponent(self, chi, g) -> int:
        return sum(d * x * y for d, x, y in zip(self.D, chi, g)) % self.exponent

    def pairing(self, chi, g) -> RootOfUnity:
        return RootOfUnity(self.pairing_exponent(chi, g), self.exponent)


@dataclass(frozen=True)
class RealizationData:
    """Group elements g(i) and characters chi(i) of the generators x_i."""

    group: GroupData
    g: tuple
    chi: tuple

    def __post_init__(self):
        g = tuple(self.group.reduce(v) for v in self.g)
        chi = tuple(self.group.reduce(v) for v in self.chi)
        if len(g) != len(chi) or not g:
            raise ValueError("g and chi must have the same positive length")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "chi", chi)

    @property
    def theta(self) -> int:
        return len(self.g)

    @property
    def alpha(self) -> tuple:
        """alpha[i][j] with b_ij = q ** alpha[i][j], i.e. <chi(j), g(i)>."""
        n = self.theta
        return tuple(tuple(self.group.pairing_exponent(self.chi[j], self.g[i]) for j in range(n))
                     for i in range(n))

    def braiding(self) -> BraidingMatrix:
        return BraidingMatrix.from_exponents(self.alpha, self.group.exponent)

    def nondegenerate(self) -> bool:
        """<chi(i), g(i)> != 1 for every i."""
        return all(self.group.pairing_exponent(c, x) != 0 for c, x in zip(self.chi, self.g))


@dataclass(frozen=True)
class CocycleData:
    group: GroupData
    c: tuple

    def __post_init__(self):
        m = self.group.rank
        c = tuple(tuple(int(x) for x in row) for row in self.c)
        if len(c) != m or any(len(row) != m for row in c):
            raise ValueError(f"cocycle matrix must be {m}x{m}")
        e = self.group.invariant_factors
        for i in range(m):
            for j in range(m):
                if j <= i and c[i][j] != 0:
                    raise ValueError("cocycle matrix must be strictly upper triangular")
                if j > i and not 0 <= c[i][j] < e[i]:
                    raise ValueError(f"c[{i}][{j}] must lie in [0, {e[i]})")
        object.__setattr__(self, "c", c)

    @classmethod
    def trivial(cls, group: GroupData) -> CocycleData:
        m = group.rank
        return cls(group, tuple((0,) * m for _ in range(m)))


def omega_exponent(c: CocycleData, tau, chi) -> int:
    grp = c.group
    m = grp.rank
    if len(tau) != m or len(chi) != m:
        raise ValueError("character length mismatch")
    d = grp.D
    total = 0
    for i in range(m):
        for j in range(i + 1, m):
            total += d[i] * c.c[i][j] * tau[j] * chi[i]
    return total % grp.exponent


def omega(c: CocycleData, tau, chi) -> RootOfUnity:
    """The 2-cocycle value q ** sum_{i<j} D_i c_ij tau_j chi_i."""
    return RootOfUnity(omega_exponent(c, tau, chi), c.group.exponent)


def cocycle_identity_check(c: CocycleData, samples: int | None = None, omega_fn=None,
                           rng: random.Random | None = None) -> bool:
    """Check normalization, the cocycle identity and the commutator identity.

    All triples are checked when the group is small and ``samples`` is None;
    otherwise ``samples`` random triples (default 2000).
    """
    grp = c.group
    w = omega_fn or (lambda x, y: omega(c, x, y))
    one = (0,) * grp.rank
    mult = grp.add
    if samples is None and grp.order ** 3 <= 200_000:
        elems = list(grp.elements())
        triples = product(elems, repeat=3)
        singles = elems
    else:
        rng = rng or random.Random(0)
        k = samples or 2000

        def draw():
            return tuple(rng.randrange(e) for e in grp.invariant_factors)

        triples = [(draw(), draw(), draw()) for _ in range(k)]
        singles = [t[0] for t in triples]
    for t in singles:
        if not (w(t, one).is_one() and w(one, t).is_one()):
            return False
    for t, z, h in triples:
        if w(t, z) * w(mult(t, z), h) != w(t, mult(z, h)) * w(z, h):
            return False
        tz = mult(t, z)
        lhs = w(tz, h) / w(h, tz) / w(z, h) * w(h, z)
        if lhs != w(t, h) / w(h, t):
            return False
    return True


def twisted_group_element(c: CocycleData, g, chi) -> tuple:
    """The group element g twisted along the character chi."""
    grp = c.group
    m = grp.rank
    d = grp.D
    e = grp.invariant_factors
    out = []
    for j in range(m):
        x = g[j]
        for i in range(j):
            x += (d[i] // d[j]) * c.c[i][j] * chi[i]
        for h in range(j + 1, m):
            x -= c.c[j][h] * chi[h]
        out.append(x % e[j])
    return tuple(out)


def twist_exponents(m: RealizationData, c: CocycleData) -> RealizationData:
    """Twist every g(i) along chi(i); characters are unchanged."""
    if m.group != c.group:
        raise ValueError("realization and cocycle live over different groups")
    g = tuple(twisted_group_element(c, x, chi) for x, chi in zip(m.g, m.chi))
    return RealizationData(m.group, g, m.chi)


def twisted_alpha(m: RealizationData, c: CocycleData) -> tuple:
    """Closed form of the twisted exponent matrix."""
    grp = m.group
    d = grp.D
    k = grp.rank
    alpha = m.alpha
    n = m.theta
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = alpha[i][j]
            for t in range(k):
                for h in range(t + 1, k):
                    x += d[t] * c.c[t][h] * (m.chi[i][t] * m.chi[j][h] - m.chi[i][h] * m.chi[j][t])
            row.append(x % grp.exponent)
        out.append(tuple(row))
    return tuple(out)


def twisted_braiding(m: RealizationData, c: CocycleData) -> BraidingMatrix:
    return twist_exponents(m, c).braiding()


def realize_over_group(b: BraidingMatrix) -> RealizationData:
    """Realize b over a product of cyclic groups with chi(j) the j-th generator.

    E_j is the lcm of the orders of the entries in columns 0..j, so that
    column j, which records <chi(j), g(i)>, lives in the j-th factor.
    """
    n = b.theta
    factors = []
    running = 1
    for j in range(n):
        for i in range(n):
            running = lcm(running, b[i, j].order)
        factors.append(running)
    grp = GroupData(tuple(factors))
    chi = tuple(tuple(int(k == j) for k in range(n)) for j in range(n))
    g = tuple(tuple(b[i, j].num * (factors[j] // b[i, j].den) for j in range(n)) for i in range(n))
    r = RealizationData(grp, g, chi)
    assert r.braiding() == b
    return r


def symmetrize(b: BraidingMatrix):
    """A realization of b and a cocycle whose twist is symmetric."""
    if not b.odd_order:
        raise PreconditionError("symmetrization needs entries of odd order")
    ct = cartan_type(b)
    if ct is None:
        raise PreconditionError("braiding is not of Cartan type")
    a = ct.gcm.a
    m = realize_over_group(b)
    grp = m.group
    e = grp.invariant_factors
    inv2 = pow(2, -1, grp.exponent) if grp.exponent > 1 else 0
    n = b.theta
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            tilde = 2 * m.g[j][i] - a[i][j] * m.g[i][i]
            c[i][j] = (inv2 * tilde) % e[i]
    cocycle = CocycleData(grp, tuple(map(tuple, c)))
    twisted = twisted_braiding(m, cocycle)
    assert is_symmetric(twisted), "symmetrization failed"
    return m, cocycle
