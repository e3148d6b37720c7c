"""Braiding matrices of diagonal type and the decisions built on them.

Indices are 0-based throughout: a braiding on x_0, ..., x_{theta-1} has
c(x_i (x) x_j) = b[i][j] x_j (x) x_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .cartan import GeneralizedCartanMatrix, symmetrizer
from .cyclotomic import RootOfUnity, discrete_log
from .errors import NotSymmetrizableError, PreconditionError


@dataclass(frozen=True)
class BraidingMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(x if isinstance(x, RootOfUnity) else RootOfUnity.from_fraction(x)
                           for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise ValueError("a braiding needs at least one generator")
        if any(len(r) != n for r in rows):
            raise ValueError("braiding matrix must be square")

    @property
    def theta(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> RootOfUnity:
        i, j = ij
        return self.entries[i][j]

    @property
    def odd_order(self) -> bool:
        return all(x.order % 2 == 1 for row in self.entries for x in row)

    @property
    def level(self) -> int:
        n = 1
        for row in self.entries:
            for x in row:
                n = lcm(n, x.order)
        return n

    def submatrix(self, idx) -> BraidingMatrix:
        return BraidingMatrix(tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def transpose(self) -> BraidingMatrix:
        n = self.theta
        return BraidingMatrix(tuple(tuple(self.entries[j][i] for j in range(n)) for i in range(n)))

    @classmethod
    def from_exponents(cls, alpha, modulus: int) -> BraidingMatrix:
        """Entries q**alpha[i][j] for q = exp(2 pi i / modulus)."""
        return cls(tuple(tuple(RootOfUnity(x, modulus) for x in row) for row in alpha))

    @classmethod
    def from_json(cls, data) -> BraidingMatrix:
        if not isinstance(data, dict) or "entries" not in data or "theta" not in data:
            raise ValueError("braiding JSON needs 'theta' and 'entries'")
        theta = data["theta"]
        entries = data["entries"]
        if not isinstance(theta, int) or isinstance(theta, bool) or theta < 1:
            raise ValueError("'theta' must be a positive integer")
        if not isinstance(entries, list) or len(entries) != theta:
            raise ValueError("'entries' must have theta rows")
        rows = []
        for row in entries:
            if not isinstance(row, list) or len(row) != theta:
                raise ValueError("each row of 'entries' must have theta items")
            try:
                rows.append(tuple(RootOfUnity.parse(str(x)) for x in row))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad root of unity in {row}: {exc}") from None
        return cls(tuple(rows))

    def to_json(self):
        return {"theta": self.theta, "entries": [[str(x) for x in row] for row in self.entries]}


@dataclass(frozen=True)
class CartanTypeResult:
    gcm: GeneralizedCartanMatrix
    diagonal_orders: tuple


@dataclass(frozen=True)
class FLWitness:
    d: tuple
    q: RootOfUnity


def cartan_type(b: BraidingMatrix):
    """The generalized Cartan matrix of b, or None if b is not of Cartan type."""
    n = b.theta
    orders = []
    for i in range(n):
        if b[i, i].is_one():
            return None
        orders.append(b[i, i].order)
    a = [[2] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            k = discrete_log(b[i, i], b[i, j] * b[j, i], -orders[i], 0)
            if k is None:
                return None
            a[i][j] = k
    for i in range(n):
        for j in range(n):
            assert (a[i][j] == 0) == (a[j][i] == 0)
    return CartanTypeResult(GeneralizedCartanMatrix(tuple(map(tuple, a))), tuple(orders))


def connected_components(b: BraidingMatrix) -> list[list[int]]:
    n = b.theta
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if not (b[i, j] * b[j, i]).is_one():
                parent[find(i)] = find(j)
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return sorted(blocks.values())


def is_symmetric(b: BraidingMatrix) -> bool:
    n = b.theta
    return all(b[i, j] == b[j, i] for i in range(n) for j in range(i + 1, n))


# ---------------------------------------------------------------------------
# FL-type

def _require_odd(b):
    if not b.odd_order:
        raise PreconditionError("FL-type decisions need entries of odd order")


def _search_q(b, a, d, comp):
    big = 1
    for i in comp:
        big = lcm(big, 2 * d[i] * b[i, i].order)
    for t in range(big):
        q = RootOfUnity(t, big)
        if all(q ** (d[i] * a[i][j]) == b[i, j] for i in comp for j in comp):
            return q
    return None


def fl_witness(b: BraidingMatrix, ct: CartanTypeResult):
    """A pair (d, q) with b_ij = q**(d_i a_ij) for all i, j, or None.

    Raises NotSymmetrizableError when the Cartan matrix has no symmetrizer,
    which also rules out FL-type.
    """
    _require_odd(b)
    a = ct.gcm.a
    d0 = symmetrizer(ct.gcm)
    if d0 is None:
        raise NotSymmetrizableError("Cartan matrix is not symmetrizable")
    comps = ct.gcm.components()
    where = {i: k for k, comp in enumerate(comps) for i in comp}
    n = b.theta
    for i in range(n):
        for j in range(n):
            if where[i] != where[j] and not b[i, j].is_one():
                return None
    qs = []
    for comp in comps:
        q = _search_q(b, a, d0, comp)
        if q is None:
            return None
        qs.append(q)
    if len(comps) == 1:
        return FLWitness(d0, qs[0])
    # one q for all components: q_I = q**lam_I with q of order m
    m = 1
    for q in qs:
        m = lcm(m, q.order)
    lam = [q.num * (m // q.den) or m for q in qs]
    d = [lam[where[i]] * d0[i] for i in range(n)]
    common = 0
    for x in d:
        common = gcd(common, x)
    w = FLWitness(tuple(x // common for x in d), RootOfUnity(common, m))
    assert check_fl_witness(b, ct, w)
    return w


def check_fl_witness(b: BraidingMatrix, ct: CartanTypeResult, w: FLWitness) -> bool:
    a = ct.gcm.a
    n = b.theta
    d = w.d
    return all(d[i] * a[i][j] == d[j] * a[j][i] and w.q ** (d[i] * a[i][j]) == b[i, j]
               for i in range(n) for j in range(n))


def fl_rank2_criterion(b: BraidingMatrix, ct: CartanTypeResult) -> bool:
    """Arithmetic FL test for connected symmetric rank-2 braidings."""
    if b.theta != 2:
        raise PreconditionError("rank-2 braiding required")
    _require_odd(b)
    if not is_symmetric(b):
        raise PreconditionError("braiding must be symmetric")
    a12, a21 = ct.gcm.a[0][1], ct.gcm.a[1][0]
    if a12 == 0:
        raise PreconditionError("braiding must be connected")
    g = gcd(a12, a21)
    d1, d2 = abs(a21) // g, abs(a12) // g
    n1, n2 = ct.diagonal_orders
    r = lcm(d1 * n1, d2 * n2)
    e1, e2 = r // (d1 * n1), r // (d2 * n2)
    s = r // (d1 * d2)
    # xi = exp(2 pi i / r); xi**(e_i d_i) has exponent 1/N_i, so k_i is the numerator of b_ii
    k1 = b[0, 0].num * (n1 // b[0, 0].den)
    k2 = b[1, 1].num * (n2 // b[1, 1].den)
    return (e1 * k1 - e2 * k2) % s == 0


def is_locally_fl(b: BraidingMatrix, ct: CartanTypeResult) -> bool:
    """Every principal 2x2 block, symmetrized if needed, is of FL-type."""
    from .twisting import symmetrize, twisted_braiding

    _require_odd(b)
    n = b.theta
    for i in range(n):
        for j in range(i + 1, n):
            sub = b.submatrix([i, j])
            if not is_symmetric(sub):
                sub = twisted_braiding(*symmetrize(sub))
            if fl_witness(sub, cartan_type(sub)) is None:
                return False
    return True
