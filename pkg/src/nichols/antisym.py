"""Graded dimensions of Nichols algebras via quantum antisymmetrizers.

The degree-n part of the Nichols algebra is V^(x)n modulo the kernel of the
quantum antisymmetrizer S_n = sum over permutations of their positive braid
lifts, so its dimension is rank S_n.  S_n preserves letter multisets, and
splits as

    S_n = T_n o (S_{n-1} (x) id),

where T_n = sum_k c_k c_{k+1} ... c_{n-2} moves the last letter to position
k (positions are 0-based, c_m acts on positions m, m+1 and c_{n-2} is
applied first).  Hence Im S_n = T_n(Im S_{n-1} (x) V), which is what
``graded_ranks`` propagates block by block.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from .braiding import BraidingMatrix, CartanTypeResult
from .cartan import is_finite_type, top_degree
from .cyclotomic import CyclotomicInt, RootOfUnity, cyc_rank, cyc_row_basis
from .errors import PreconditionError, RecognizerMismatch, ResourceGuardError

BLOCK_GUARD = 20_000
DEFAULT_DEGREE_CAP = 12


@dataclass(frozen=True)
class AntisymResult:
    ranks: tuple
    total: int | None
    capped: bool

    def to_json(self):
        return {"ranks": list(self.ranks),
                "total": None if self.total is None else str(self.total),
                "capped": self.capped}


@dataclass
class MultidegreeBlock:
    letters: tuple
    basis: list
    matrix: list


def braid_generator_action(b: BraidingMatrix, word, k: int):
    """c at positions k, k+1 (0-based): swap the letters, scalar b_{w_k, w_k+1}."""
    word = tuple(word)
    if not 0 <= k < len(word) - 1:
        raise IndexError(f"position {k} out of range for a word of length {len(word)}")
    i, j = word[k], word[k + 1]
    return word[:k] + (j, i) + word[k + 2:], b[i, j]


def reduced_word(perm) -> list[int]:
    """Positions of adjacent swaps sending the letter at i to position perm[i]."""
    t = list(perm)
    if sorted(t) != list(range(len(t))):
        raise ValueError(f"{perm} is not a permutation")
    out = []
    changed = True
    while changed:
        changed = False
        for k in range(len(t) - 1):
            if t[k] > t[k + 1]:
                t[k], t[k + 1] = t[k + 1], t[k]
                out.append(k)
                changed = True
    return out


def all_reduced_words(perm) -> list[list[int]]:
    """Every reduced word of perm in the convention of ``reduced_word``."""
    t = tuple(perm)
    if t == tuple(sorted(t)):
        return [[]]
    out = []
    for k in range(len(t) - 1):
        if t[k] > t[k + 1]:
            s = list(t)
            s[k], s[k + 1] = s[k + 1], s[k]
            out.extend([k] + rest for rest in all_reduced_words(s))
    return out


def lift_permutation(b: BraidingMatrix, perm, word, swaps=None):
    """Positive braid lift of perm applied to a word; returns (word', scalar).

    The letter at position i ends at position perm[i].  ``swaps`` may give
    any reduced word; the default is the bubble-sort one.
    """
    word = tuple(word)
    if len(perm) != len(word):
        raise ValueError("permutation and word differ in length")
    if swaps is None:
        swaps = reduced_word(perm)
    scalar = RootOfUnity(0)
    for k in swaps:
        word, s = braid_generator_action(b, word, k)
        scalar = scalar * s
    return word, scalar


def _check_guard(n_words):
    if n_words > BLOCK_GUARD:
        raise ResourceGuardError(f"multidegree block with {n_words} words exceeds the guard", n_words)


def _block_words(letters):
    return sorted(set(permutations(letters)))


def _multinomial(letters):
    n = factorial(len(letters))
    for x in set(letters):
        n //= factorial(letters.count(x))
    return n


def _move_last(b: BraidingMatrix, vec: dict, level: int) -> dict:
    """Apply T_n to a vector {word: CyclotomicInt}."""
    out = {}
    for w, c in vec.items():
        x = w[-1]
        scalar = RootOfUnity(0)
        for k in range(len(w) - 1, -1, -1):
            if k < len(w) - 1:
                scalar = scalar * b[w[k], x]
            nw = w[:k] + (x,) + w[k:-1]
            term = c.mul_root(scalar)
            out[nw] = out[nw] + term if nw in out else term
    return {w: c for w, c in out.items() if not c.is_zero()}


def _independent(vectors, level):
    """A maximal linearly independent subset of a list of sparse vectors."""
    if not vectors:
        return []
    cols = sorted({w for v in vectors for w in v})
    zero = CyclotomicInt.zero(level)
    matrix = [[v.get(w, zero) for w in cols] for v in vectors]
    return [vectors[i] for i in cyc_row_basis(matrix)]


def _key(word):
    return tuple(sorted(word))


def graded_ranks(b: BraidingMatrix, max_degree: int, method: str = "image") -> list[int]:
    """rank S_n for n = 0..max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    if method == "block":
        return [antisymmetrizer_rank(b, n, method="block") for n in range(max_degree + 1)]
    if method != "image":
        raise ValueError(f"unknown method {method!r}")
    level = b.level
    one = CyclotomicInt.one(level)
    images = {(): [{(): one}]}
    ranks = [1]
    for n in range(1, max_degree + 1):
        if ranks[-1] == 0:
            ranks.append(0)
            continue
        candidates = {}
        for vecs in images.values():
            for v in vecs:
                for x in range(b.theta):
                    ext = {w + (x,): c for w, c in v.items()}
                    key = _key(next(iter(ext)))
                    _check_guard(_multinomial(key))
                    img = _move_last(b, ext, level)
                    if img:
                        candidates.setdefault(key, []).append(img)
        images = {}
        for key in sorted(candidates):
            basis = _independent(candidates[key], level)
            if basis:
                images[key] = basis
        ranks.append(sum(len(v) for v in images.values()))
    return ranks


def symmetrizer_columns(b: BraidingMatrix, words) -> dict:
    """S_n applied to each word, via the factorization through S_{n-1}."""
    level = b.level
    cache = {(): {(): CyclotomicInt.one(level)}}

    def apply(w):
        if w not in cache:
            head = apply(w[:-1])
            cache[w] = _move_last(b, {u + (w[-1],): c for u, c in head.items()}, level)
        return cache[w]

    return {tuple(w): apply(tuple(w)) for w in words}


def definitional_columns(b: BraidingMatrix, words) -> dict:
    """S_n applied to each word as the plain sum of all permutation lifts."""
    level = b.level
    out = {}
    for w in words:
        w = tuple(w)
        col = {}
        for perm in permutations(range(len(w))):
            nw, s = lift_permutation(b, perm, w)
            term = CyclotomicInt.from_root(s, level)
            col[nw] = col[nw] + term if nw in col else term
        out[w] = {u: c for u, c in col.items() if not c.is_zero()}
    return out


def blocks(b: BraidingMatrix, n: int, definitional: bool = False) -> list[MultidegreeBlock]:
    """The matrices of S_n on each multidegree block (rows are images of basis words)."""
    from itertools import combinations_with_replacement

    level = b.level
    zero = CyclotomicInt.zero(level)
    out = []
    for letters in combinations_with_replacement(range(b.theta), n):
        _check_guard(_multinomial(letters))
        words = _block_words(letters)
        cols = (definitional_columns if definitional else symmetrizer_columns)(b, words)
        matrix = [[cols[w].get(u, zero) for u in words] for w in words]
        out.append(MultidegreeBlock(tuple(letters), words, matrix))
    return out


def antisymmetrizer_rank(b: BraidingMatrix, n: int, method: str = "image") -> int:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n == 0:
        return 1
    if method == "image":
        return graded_ranks(b, n)[n]
    if method in ("block", "definitional"):
        return sum(cyc_rank(blk.matrix) for blk in blocks(b, n, method == "definitional"))
    raise ValueError(f"unknown method {method!r}")


def total_dimension(b: BraidingMatrix, ct: CartanTypeResult,
                    degree_cap: int = DEFAULT_DEGREE_CAP) -> AntisymResult:
    """Sum of graded ranks up to the predicted top degree.

    Ranks at the two degrees above the top must vanish.  If the top degree
    (plus two) is beyond ``degree_cap`` or a block exceeds the guard, the
    ranks computed so far are returned with ``capped`` set and no total.
    """
    if not is_finite_type(ct.gcm):
        raise PreconditionError("Cartan matrix is not of finite type")
    top = top_degree(ct)
    want = top + 2
    if want > degree_cap:
        try:
            ranks = graded_ranks(b, degree_cap)
        except ResourceGuardError:
            ranks = _ranks_until_guard(b, degree_cap)
        return AntisymResult(tuple(ranks), None, True)
    try:
        ranks = graded_ranks(b, want)
    except ResourceGuardError:
        return AntisymResult(tuple(_ranks_until_guard(b, want)), None, True)
    if ranks[top + 1] or ranks[top + 2]:
        raise RecognizerMismatch(f"nonzero rank above the predicted top degree {top}: {ranks}")
    return AntisymResult(tuple(ranks), sum(ranks), False)


def _ranks_until_guard(b, cap):
    ranks = [1]
    for n in range(1, cap + 1):
        try:
            ranks = graded_ranks(b, n)
        except ResourceGuardError:
            break
    return ranks
