"""Generalized Cartan matrices, root systems and Nichols dimension formulas."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import TYPE_CHECKING

from .errors import PreconditionError, RecognizerMismatch

if TYPE_CHECKING:
    from .braiding import BraidingMatrix, CartanTypeResult

HARD_CAP = 10 ** 6

# largest number of positive roots of a connected finite root system of rank n
_CONNECTED_MAX = {1: 1, 2: 6, 3: 9, 4: 24, 5: 25, 6: 36, 7: 63, 8: 120}


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    a: tuple

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in row) for row in self.a)
        object.__setattr__(self, "a", a)
        n = len(a)
        if n == 0:
            raise ValueError("empty matrix")
        for i, row in enumerate(a):
            if len(row) != n:
                raise ValueError("matrix is not square")
            if row[i] != 2:
                raise ValueError(f"a[{i}][{i}] must be 2")
            for j, x in enumerate(row):
                if i != j:
                    if x > 0:
                        raise ValueError(f"a[{i}][{j}] = {x} is positive")
                    if (x == 0) != (a[j][i] == 0):
                        raise ValueError(f"a[{i}][{j}] and a[{j}][{i}] must vanish together")

    @property
    def size(self) -> int:
        return len(self.a)

    def submatrix(self, idx) -> GeneralizedCartanMatrix:
        return GeneralizedCartanMatrix(tuple(tuple(self.a[i][j] for j in idx) for i in idx))

    def permuted(self, perm) -> GeneralizedCartanMatrix:
        """Matrix with rows and columns reordered: new index k is old perm[k]."""
        return self.submatrix(perm)

    def components(self) -> list[list[int]]:
        n = self.size
        seen = [False] * n
        out = []
        for s in range(n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if not seen[j] and self.a[i][j] != 0:
                        seen[j] = True
                        stack.append(j)
            out.append(sorted(comp))
        return out

    def to_list(self):
        return [list(r) for r in self.a]


@dataclass(frozen=True)
class RootSystemData:
    positive_roots: tuple
    heights: tuple

    def __len__(self):
        return len(self.positive_roots)


def symmetrizer(g: GeneralizedCartanMatrix):
    """Positive integers d with d_i a_ij = d_j a_ji, or None.

    Each connected component is normalized separately to coprime entries.
    """
    a = g.a
    n = g.size
    d = [None] * n
    for comp in g.components():
        root = comp[0]
        d[root] = Fraction(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in comp:
                if a[i][j] != 0 and j != i and d[j] is None:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    stack.append(j)
        den = 1
        for i in comp:
            den = lcm(den, d[i].denominator)
        ints = [int(d[i] * den) for i in comp]
        common = 0
        for x in ints:
            common = gcd(common, x)
        for i, x in zip(comp, ints):
            d[i] = x // common
    for i in range(n):
        for j in range(n):
            if d[i] * a[i][j] != d[j] * a[j][i]:
                return None
    return tuple(d)


def _det(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return int(det)


def principal_minors_positive(g: GeneralizedCartanMatrix) -> bool:
    n = g.size
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if _det([[g.a[i][j] for j in idx] for i in idx]) <= 0:
                return False
    return True


@lru_cache(maxsize=None)
def max_positive_roots(n: int) -> int:
    """Largest |R+| over finite root systems of rank n (any decomposition)."""
    if n == 0:
        return 0
    best = _CONNECTED_MAX.get(n, n * n)
    for k in range(1, n):
        best = max(best, _CONNECTED_MAX.get(k, k * k) + max_positive_roots(n - k))
    return best


def reflection_closure(g: GeneralizedCartanMatrix, cap: int | None = None):
    """Positive real roots reachable from simple roots, or None past the cap.

    The default cap is the largest possible number of positive roots of a
    finite root system of this rank, so running past it certifies that the
    matrix is not of finite type.
    """
    a = g.a
    n = g.size
    if cap is None:
        cap = max_positive_roots(n)
    cap = min(cap, HARD_CAP)
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                s = sum(a[i][k] * beta[k] for k in range(n))
                if s == 0:
                    continue
                gamma = list(beta)
                gamma[i] -= s
                if gamma[i] < 0:
                    continue
                gamma = tuple(gamma)
                if gamma not in seen:
                    seen.add(gamma)
                    if len(seen) > cap:
                        return None
                    nxt.append(gamma)
        frontier = nxt
    return seen


def is_finite_type(g: GeneralizedCartanMatrix) -> bool:
    by_minors = principal_minors_positive(g)
    by_closure = reflection_closure(g) is not None
    if by_minors != by_closure:
        raise RecognizerMismatch(f"finite-type recognizers disagree on {g.a}")
    return by_minors


def positive_roots(g: GeneralizedCartanMatrix) -> RootSystemData:
    if not is_finite_type(g):
        raise PreconditionError("matrix is not of finite type")
    roots = sorted(reflection_closure(g), key=lambda r: (sum(r), tuple(-x for x in r)))
    return RootSystemData(tuple(roots), tuple(sum(r) for r in roots))


def diagram_label(g: GeneralizedCartanMatrix) -> str:
    """Convenience name such as ``A2xA1``; never used for decisions."""
    labels = []
    for comp in g.components():
        sub = g.submatrix(comp)
        r = sub.size
        if not is_finite_type(sub):
            labels.append((r, f"?{r}"))
            continue
        m = len(reflection_closure(sub))
        d = symmetrizer(sub)
        if r == 1:
            name = "A1"
        elif max(d) == min(d):
            if m == r * (r + 1) // 2:
                name = f"A{r}"
            elif m == r * (r - 1):
                name = f"D{r}"
            else:
                name = f"E{r}"
        elif max(d) == 3 * min(d):
            name = "G2"
        elif r == 2:
            name = "B2"
        elif r == 4 and m == 24:
            name = "F4"
        else:
            long_count = sum(1 for x in d if x == max(d))
            name = f"B{r}" if long_count == r - 1 else f"C{r}"
        labels.append((r, name))
    labels.sort(key=lambda t: (-t[0], t[1]))
    return "x".join(name for _, name in labels)


# ---------------------------------------------------------------------------
# dimension formulas

def _require_odd(b: BraidingMatrix):
    if not b.odd_order:
        raise PreconditionError("all braiding entries must have odd order")


def _component_data(ct: CartanTypeResult):
    g = ct.gcm
    if not is_finite_type(g):
        raise PreconditionError("Cartan matrix is not of finite type")
    out = []
    for comp in g.components():
        n_i = 1
        for i in comp:
            n_i = lcm(n_i, ct.diagonal_orders[i])
        out.append((comp, n_i, positive_roots(g.submatrix(comp))))
    return out


def nichols_dimension(b: BraidingMatrix, ct: CartanTypeResult) -> int:
    """Product over components I of N_I ** |R+(I)|."""
    _require_odd(b)
    dim = 1
    for _, n_i, roots in _component_data(ct):
        dim *= n_i ** len(roots)
    return dim


def top_degree(ct: CartanTypeResult) -> int:
    """Sum over components and positive roots of (N_I - 1) * ht(beta)."""
    return sum((n_i - 1) * sum(roots.heights) for _, n_i, roots in _component_data(ct))


def graded_hilbert(b: BraidingMatrix, ct: CartanTypeResult, cap: int | None = None) -> list[int]:
    """Coefficients of prod_beta (1 + t^h + ... + t^((N-1)h)), degrees 0..cap."""
    _require_odd(b)
    data = _component_data(ct)
    for comp, _, _ in data:
        orders = {ct.diagonal_orders[i] for i in comp}
        if len(orders) > 1:
            raise PreconditionError(f"component {comp} has diagonal entries of unequal orders")
    if cap is None:
        cap = top_degree(ct)
    series = [1] + [0] * cap
    for _, n_i, roots in data:
        for h in roots.heights:
            new = [0] * (cap + 1)
            for deg, c in enumerate(series):
                if c:
                    for k in range(n_i):
                        if deg + k * h > cap:
                            break
                        new[deg + k * h] += c
            series = new
    return series
