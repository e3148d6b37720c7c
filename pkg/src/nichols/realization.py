"""Realizations over Z/(p) and their classification up to isomorphism.

Over Gamma = Z/(p) every realization satisfying <chi(i), g(i)> != 1 can be
brought to a normal form with g(0) = u the generator 1, and
<chi(0), u> = q**q_exp.  The remaining data are the exponents g(k) = u**g_k
and <chi(k), u> = q**(q_exp * d_k) for k >= 1, all nonzero mod p.

The pairing constraint of Cartan type, b_ij b_ji = b_ii**a_ij, reads in
exponents

    chi_j g_i + chi_i g_j = a_ij chi_i g_i   (mod p),

which is what every scan below evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .braiding import BraidingMatrix, cartan_type
from .cartan import GeneralizedCartanMatrix, diagram_label, is_finite_type, nichols_dimension
from .errors import PreconditionError, ResourceGuardError
from .twisting import GroupData, RealizationData

MAX_P = 100
AUT_GUARD = 100_000
QUADRATIC = {"A2": 1, "B2": 2, "G2": 3}

# Cartan matrices that satisfy all rank-2 constraints over Z/(p) for the
# listed p but admit no realization there
EXCLUDED_CARTAN_MATRICES = (
    (3, ((2, -2, -1), (-1, 2, -1), (-2, -1, 2))),
    (3, ((2, -2, 0, -1), (-1, 2, -1, 0), (0, -1, 2, -2), (-1, 0, -1, 2))),
    (5, ((2, -3, -1), (-1, 2, -1), (-2, -1, 2))),
    (5, ((2, -3, -1), (-1, 2, -2), (-1, -1, 2))),
    (7, ((2, -3, -1), (-1, 2, -1), (-3, -2, 2))),
    (7, ((2, -2, -1), (-1, 2, -2), (-2, -1, 2))),
    (11, ((2, -3, -1), (-1, 2, -2), (-2, -1, 2))),
    (13, ((2, -3, -1), (-1, 2, -3), (-3, -1, 2))),
    (17, ((2, -3, -1), (-1, 2, -2), (-3, -1, 2))),
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _check_p(p: int):
    if not (isinstance(p, int) and p % 2 == 1 and is_prime(p)):
        raise PreconditionError(f"{p} is not an odd prime")
    if p > MAX_P:
        raise PreconditionError(f"p = {p} exceeds the exhaustive-search bound {MAX_P}")


def braiding_of(r: RealizationData) -> BraidingMatrix:
    """b_ij = <chi(j), g(i)>."""
    return r.braiding()


def normal_form(p: int, q_exp: int, gs=(), ds=()) -> RealizationData:
    """Realization over Z/(p) with g = (1, *gs) and chi = q_exp * (1, *ds)."""
    g = [(1,)] + [(x,) for x in gs]
    chi = [(q_exp,)] + [(q_exp * x,) for x in ds]
    return RealizationData(GroupData((p,)), tuple(g), tuple(chi))


@dataclass(frozen=True)
class ZpRank2Params:
    p: int
    q_exp: int
    b: int
    d: int

    def realization(self) -> RealizationData:
        return normal_form(self.p, self.q_exp, (self.b,), (self.d,))


def rank2_solutions(p: int, diagram: str) -> set[int]:
    """Residues b with k b^2 + k b + 1 = 0 mod p (k = 1, 2, 3 for A2, B2, G2)."""
    _check_p(p)
    k = QUADRATIC[diagram]
    return {b for b in range(1, p) if (k * b * b + k * b + 1) % p == 0}


def rank2_params(p: int, diagram: str) -> list[tuple[int, int]]:
    """Pairs (b, d) with d = -1 - b for the chosen diagram."""
    return [(b, (-1 - b) % p) for b in sorted(rank2_solutions(p, diagram))]


def exists_diagram_over_zp(p: int, diagram: str) -> bool:
    _check_p(p)
    if diagram in ("A1", "A1xA1"):
        return True
    if diagram == "A2":
        return p == 3 or p % 3 == 1
    if diagram == "B2":
        return p % 4 == 1
    if diagram == "G2":
        return p % 3 == 1
    if diagram in ("A2xA1", "A2xA2"):
        return p == 3
    return False


# ---------------------------------------------------------------------------
# scans over the normal form

def _gcm_arrays(p, gs, chis):
    """Vectorized Cartan matrices from exponent columns; shape (count, n*n)."""
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    n = len(gs)
    cols = []
    for i in range(n):
        diag_inv = inv[(chis[i] * gs[i]) % p]
        for j in range(n):
            if i == j:
                cols.append(np.full(gs[0].shape, 2, dtype=np.int64))
                continue
            t = ((chis[j] * gs[i] + chis[i] * gs[j]) % p) * diag_inv % p
            cols.append(np.where(t == 0, 0, t - p))
    return np.stack(cols, axis=1)


@lru_cache(maxsize=None)
def _finite(gcm_flat: tuple) -> bool:
    n = int(round(len(gcm_flat) ** 0.5))
    g = GeneralizedCartanMatrix(tuple(gcm_flat[i * n:(i + 1) * n] for i in range(n)))
    return is_finite_type(g)


def _scan_exhaustive(p, theta):
    """All (gs, ds) in units^(2(theta-1)) whose Cartan matrix is finite."""
    k = theta - 1
    found = []
    units = np.arange(1, p, dtype=np.int64)
    if k == 0:
        return [((), ())]
    # loop over g_1 to bound memory; vectorize over the rest
    rest = 2 * k - 1
    grids = np.meshgrid(*([units] * rest), indexing="ij") if rest else []
    flat = [x.ravel() for x in grids]
    size = flat[0].shape[0] if flat else 1
    for g1 in range(1, p):
        cols = [np.full(size, g1, dtype=np.int64)] + flat
        gs = [np.ones(size, dtype=np.int64)] + cols[:k]
        chis = [np.ones(size, dtype=np.int64)] + cols[k:]
        mats = _gcm_arrays(p, gs, chis)
        # rank-2 principal minors must be positive: a_ij a_ji <= 3
        n = len(gs)
        keep = np.ones(mats.shape[0], dtype=bool)
        for i in range(n):
            for j in range(i + 1, n):
                keep &= mats[:, i * n + j] * mats[:, j * n + i] <= 3
        if not keep.any():
            continue
        idx = np.nonzero(keep)[0]
        mats = mats[idx]
        # entries lie in (-p, 2], so each row packs into one integer
        codes = (mats + p) @ (p + 3) ** np.arange(mats.shape[1], dtype=np.int64)
        uniq, first, inverse = np.unique(codes, return_index=True, return_inverse=True)
        good = [u for u in range(len(uniq)) if _finite(tuple(int(x) for x in mats[first[u]]))]
        if not good:
            continue
        rows = idx[np.nonzero(np.isin(inverse, good))[0]]
        for r in rows:
            vals = [int(c[r]) for c in cols]
            found.append((tuple(vals[:k]), tuple(vals[k:])))
    return sorted(found)


def _pair_ok(p, gi, ci, gj, cj):
    """Cartan matrix of a two-vertex sub-realization is finite."""
    a_ij = _exp_cartan(p, gi, ci, gj, cj)
    a_ji = _exp_cartan(p, gj, cj, gi, ci)
    return a_ij * a_ji <= 3


def _exp_cartan(p, gi, ci, gj, cj):
    t = (cj * gi + ci * gj) * pow(ci * gi, -1, p) % p
    return t - p if t else 0


def _scan_pruned(p, theta):
    """Same result as the exhaustive scan, extending finite rank-2 pieces.

    A principal submatrix of a finite-type matrix is of finite type, so
    every vertex k >= 1 must form a finite pair with vertex 0.
    """
    k = theta - 1
    if k == 0:
        return [((), ())]
    pairs = [(g, c) for g in range(1, p) for c in range(1, p) if _pair_ok(p, 1, 1, g, c)]
    found = []
    for combo in product(pairs, repeat=k):
        gs = (1,) + tuple(x[0] for x in combo)
        cs = (1,) + tuple(x[1] for x in combo)
        ok = all(_pair_ok(p, gs[i], cs[i], gs[j], cs[j])
                 for i in range(1, theta) for j in range(i + 1, theta))
        if not ok:
            continue
        flat = tuple(2 if i == j else _exp_cartan(p, gs[i], cs[i], gs[j], cs[j])
                     for i in range(theta) for j in range(theta))
        if _finite(flat):
            found.append((gs[1:], cs[1:]))
    return sorted(found)


def finite_normal_forms(p: int, theta: int, method: str = "pruned"):
    """Normal-form data (gs, ds) at q_exp = 1 with finite Cartan matrix.

    The Cartan matrix does not depend on q_exp, since changing q_exp
    multiplies every exponent by the same unit.
    """
    _check_p(p)
    if method == "exhaustive":
        return _scan_exhaustive(p, theta)
    if method == "pruned":
        return _scan_pruned(p, theta)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# isomorphism

def _elementary_prime(grp: GroupData):
    e = grp.invariant_factors
    p = e[0]
    if any(x != p for x in e) or not is_prime(p):
        raise PreconditionError("isomorphism test needs Gamma = (Z/p)^s")
    return p


def _automorphisms(p, s):
    size = 1
    for k in range(s):
        size *= p ** s - p ** k
    if size > AUT_GUARD:
        raise ResourceGuardError(f"|Aut| = {size} exceeds the guard {AUT_GUARD}", size)
    for flat in product(range(p), repeat=s * s):
        mat = [flat[i * s:(i + 1) * s] for i in range(s)]
        if _det_mod(mat, p):
            yield mat


def _det_mod(mat, p):
    m = [list(r) for r in mat]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for i in range(c + 1, n):
            f = m[i][c] * inv % p
            for j in range(c, n):
                m[i][j] = (m[i][j] - f * m[c][j]) % p
    return det % p


def iso_equivalent(r1: RealizationData, r2: RealizationData) -> bool:
    """Is there phi in Aut(Gamma) and sigma in S_theta with
    phi(g1(j)) = g2(sigma j) and chi1(j) = chi2(sigma j) o phi for all j?"""
    if r1.group != r2.group:
        raise PreconditionError("realizations live over different groups")
    if r1.theta != r2.theta:
        return False
    p = _elementary_prime(r1.group)
    s = r1.group.rank
    n = r1.theta
    for mat in _automorphisms(p, s):
        img = [tuple(sum(mat[a][b] * g[b] for b in range(s)) % p for a in range(s)) for g in r1.g]
        pulled = [tuple(sum(chi[a] * mat[a][b] for a in range(s)) % p for b in range(s))
                  for chi in r2.chi]
        for sigma in permutations(range(n)):
            if all(img[j] == r2.g[sigma[j]] and r1.chi[j] == pulled[sigma[j]] for j in range(n)):
                return True
    return False


def canonical_key(r: RealizationData) -> tuple:
    """Smallest normal-form parameters (q_exp, gs, ds) in the orbit of r.

    Only for Gamma = Z/(p).  Two realizations are isomorphic exactly when
    their keys agree.
    """
    if r.group.rank != 1:
        raise PreconditionError("canonical keys are defined over Z/(p)")
    p = _elementary_prime(r.group)
    n = r.theta
    g = [x[0] for x in r.g]
    chi = [x[0] for x in r.chi]
    best = None
    for order in permutations(range(n)):
        # order[k] is the old index placed at position k
        first = g[order[0]]
        if first == 0:
            continue
        m = pow(first, -1, p)
        new_g = [g[i] * m % p for i in order]
        new_chi = [chi[i] * first % p for i in order]
        q_exp = new_chi[0]
        if q_exp == 0:
            continue
        qi = pow(q_exp, -1, p)
        key = (q_exp, tuple(new_g[1:]), tuple(x * qi % p for x in new_chi[1:]))
        if best is None or key < best:
            best = key
    return best


def key_realization(p: int, key) -> RealizationData:
    q_exp, gs, ds = key
    return normal_form(p, q_exp, gs, ds)


# ---------------------------------------------------------------------------
# searches

def rank3_search(p: int, method: str = "exhaustive") -> list[RealizationData]:
    """Isomorphism classes of rank-3 realizations of finite Cartan type."""
    return _classes(p, finite_normal_forms(p, 3, method))


def _classes(p, forms):
    keys = set()
    for gs, ds in forms:
        for q_exp in range(1, p):
            keys.add(canonical_key(normal_form(p, q_exp, gs, ds)))
    return [key_realization(p, k) for k in sorted(keys)]


def pair_constraint(p: int, a_ij: int, a_ji: int, gi, ci, gj, cj) -> bool:
    lhs = (cj * gi + ci * gj) % p
    return lhs == (a_ij * ci * gi) % p and lhs == (a_ji * cj * gj) % p


def vertex_pair_solutions(p: int, gcm, k: int) -> set[tuple[int, int]]:
    """(g_k, chi_k) solving the constraints between vertex 0 and vertex k."""
    a = GeneralizedCartanMatrix(gcm).a
    return {(g, c) for g in range(1, p) for c in range(1, p)
            if pair_constraint(p, a[0][k], a[k][0], 1, 1, g, c)}


def excluded_matrix_search(p: int, gcm) -> list[tuple]:
    """All normal-form exponents realizing ``gcm`` over Z/(p).

    Returns tuples (g_1, ..., g_{n-1}, chi_1, ..., chi_{n-1}) with
    g_0 = chi_0 = 1.  The equations are generated from the matrix itself.
    """
    _check_p(p)
    a = GeneralizedCartanMatrix(gcm).a
    n = len(a)
    if any(a[i][j] <= -p for i in range(n) for j in range(n) if i != j):
        return []
    candidates = [sorted(vertex_pair_solutions(p, a, k)) for k in range(1, n)]
    out = []
    for combo in product(*candidates):
        gs = (1,) + tuple(x[0] for x in combo)
        cs = (1,) + tuple(x[1] for x in combo)
        if all(pair_constraint(p, a[i][j], a[j][i], gs[i], cs[i], gs[j], cs[j])
               for i in range(1, n) for j in range(i + 1, n)):
            out.append(gs[1:] + cs[1:])
    return out


# ---------------------------------------------------------------------------
# classification report

def classify_zp(p: int, max_rank: int = 6) -> dict:
    """Finite Cartan-type realizations over Z/(p), grouped into classes."""
    _check_p(p)
    families = {}
    for theta in range(1, max_rank + 1):
        forms = finite_normal_forms(p, theta)
        if not forms:
            break
        for r in _classes(p, forms):
            b = braiding_of(r)
            ct = cartan_type(b)
            label = diagram_label(ct.gcm)
            fam = families.setdefault(label, {"diagram": label, "rank": theta, "classes": [],
                                              "dimensions": set()})
            key = canonical_key(r)
            fam["classes"].append({"q_exp": key[0], "g": [1, *key[1]], "d": [1, *key[2]],
                                   "braiding": b.to_json()["entries"]})
            fam["dimensions"].add(nichols_dimension(b, ct))
    out = []
    for label in sorted(families, key=lambda s: (families[s]["rank"], s)):
        fam = families[label]
        dims = sorted(fam.pop("dimensions"))
        assert len(dims) == 1
        fam["dimension"] = str(dims[0])
        fam["class_count"] = len(fam["classes"])
        out.append(fam)
    return {"p": p, "families": out,
            "existence": {d: exists_diagram_over_zp(p, d) for d in ("A2", "B2", "G2")}}


def class_counts(report: dict) -> dict[str, int]:
    return {f["diagram"]: f["class_count"] for f in report["families"]}


