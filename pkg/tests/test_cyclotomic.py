import random

import pytest
from hypothesis import given, strategies as st

from nichols.cyclotomic import (CyclotomicInt, RootOfUnity, cyc_rank, cyc_row_basis,
                                cyclotomic_polynomial, discrete_log, mul, power)
from nichols.errors import AmbiguousLogError

R = RootOfUnity

roots = st.builds(RootOfUnity, st.integers(-50, 50), st.integers(1, 30))


def test_canonical_form():
    assert R(2, 6) == R(1, 3)
    assert R(-1, 3) == R(2, 3)
    assert R(3, 3) == R(0, 1)
    assert R(0, 7).order == 1
    assert str(R(4, 6)) == "2/3"
    assert R.parse(" 6/9 ") == R(2, 3)
    with pytest.raises(ValueError):
        R(1, 0)


def test_mul_examples():
    assert mul(R(1, 3), R(1, 3)) == R(2, 3)
    assert mul(R(1, 2), R(1, 2)) == R(0, 1)
    assert mul(R(1, 3), R(1, 6)) == R(1, 2)


def test_pow_examples():
    assert power(R(1, 5), -1) == R(4, 5)
    assert power(R(1, 3), 3) == R(0, 1)
    assert power(R(2, 7), 4) == R(1, 7)


@given(roots, roots)
def test_order_of_product_divides_lcm(a, b):
    from math import lcm
    assert lcm(a.order, b.order) % (a * b).order == 0


@given(roots, st.integers(-40, 40))
def test_power_reduces_mod_order(r, k):
    assert r ** r.order == R(0)
    assert r ** k == r ** (k % r.order)


def test_discrete_log_examples():
    assert discrete_log(R(1, 5), R(3, 5), -5, 0) == -2
    # (-3, 0] excludes -3; k = 0 is the exponent giving 1
    assert discrete_log(R(1, 3), R(0, 1), -3, 0) == 0
    assert discrete_log(R(1, 3), R(1, 2), -3, 0) is None


def test_discrete_log_ambiguous_and_errors():
    with pytest.raises(AmbiguousLogError):
        discrete_log(R(1, 3), R(1, 3), -7, 0)
    with pytest.raises(ValueError):
        discrete_log(R(0), R(0), -3, 0)
    with pytest.raises(ValueError):
        discrete_log(R(1, 3), R(0), 0, 0)


@given(st.integers(1, 30), st.integers(-60, 60))
def test_discrete_log_brute_force(n, t):
    base = R(1, n) if n > 1 else None
    if base is None:
        return
    target = R(t, n)
    k = discrete_log(base, target, -n, 0)
    expected = [k for k in range(-n + 1, 1) if base ** k == target]
    assert [k] == expected


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_polynomial(15)) - 1 == 8


def test_root_embedding_round_trip():
    level = 15
    for a in range(15):
        for b in range(15):
            x = CyclotomicInt.from_root(R(a, 15), level)
            y = CyclotomicInt.from_root(R(b, 15), level)
            assert x * y == CyclotomicInt.from_root(R(a + b, 15), level)
            assert x.mul_root(R(b, 15)) == x * y


def test_phi_relation_is_zero():
    one, z = CyclotomicInt.one(3), CyclotomicInt.from_root(R(1, 3), 3)
    assert (one + z + z * z).is_zero()
    assert (one + z + z * z) == 0


def _random_element(rng, level):
    from nichols.cyclotomic import level_data
    return CyclotomicInt(level, [rng.randint(-4, 4) for _ in range(level_data(level).phi)])


@pytest.mark.parametrize("level", [1, 2, 3, 5, 7, 9, 12, 15])
def test_ring_laws(level):
    rng = random.Random(level)
    for _ in range(30):
        a, b, c = (_random_element(rng, level) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not b.is_zero():
            assert (a * b).exact_div(b) == a


def test_norm_and_galois():
    z = CyclotomicInt.from_root(R(1, 5), 5)
    assert (CyclotomicInt.one(5) - z).norm() == 5
    assert z.galois(2) == CyclotomicInt.from_root(R(2, 5), 5)
    with pytest.raises(ValueError):
        z.galois(5)


def test_level_mismatch():
    with pytest.raises(ValueError):
        CyclotomicInt.one(3) + CyclotomicInt.one(5)
    with pytest.raises(ValueError):
        CyclotomicInt.from_root(R(1, 5), 3)


def test_rank_examples():
    def c(level, k):
        return CyclotomicInt.from_int(level, k)

    ident = [[c(1, int(i == j)) for j in range(3)] for i in range(3)]
    assert cyc_rank(ident) == 3
    z = CyclotomicInt.from_root(R(1, 3), 3)
    assert cyc_rank([[c(3, 1), z], [z * z, c(3, 1)]]) == 1
    assert cyc_rank([[c(3, 1) + z + z * z, c(3, 0)], [c(3, 0), c(3, 1)]]) == 1
    assert cyc_rank([]) == 0


def test_row_basis_spans():
    z = CyclotomicInt.from_root(R(1, 5), 5)
    one = CyclotomicInt.one(5)
    zero = CyclotomicInt.zero(5)
    rows = [[zero, zero], [one, z], [z, z * z], [one, one]]
    assert cyc_row_basis(rows) == [1, 3]


@pytest.mark.parametrize("level", [3, 5, 7, 15])
def test_rank_invariances(level):
    rng = random.Random(100 + level)
    for trial in range(6):
        n, m, r = 5, 6, rng.randint(1, 4)
        left = [[_random_element(rng, level) for _ in range(r)] for _ in range(n)]
        right = [[_random_element(rng, level) for _ in range(m)] for _ in range(r)]
        zero = CyclotomicInt.zero(level)
        mat = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = zero
                for k in range(r):
                    acc = acc + left[i][k] * right[k][j]
                row.append(acc)
            mat.append(row)
        rank = cyc_rank(mat)
        assert rank <= r
        perm_rows = rng.sample(range(n), n)
        perm_cols = rng.sample(range(m), m)
        assert cyc_rank([[mat[i][j] for j in perm_cols] for i in perm_rows]) == rank
        unit = CyclotomicInt.from_root(R(rng.randrange(level), level), level)
        scaled = [row[:] for row in mat]
        scaled[0] = [x * unit for x in scaled[0]]
        assert cyc_rank(scaled) == rank
        nonzero = _random_element(rng, level)
        if not nonzero.is_zero():
            scaled[1] = [x * nonzero for x in scaled[1]]
            assert cyc_rank(scaled) == rank


def test_rank_against_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(7)
    level = 7
    zeta = sympy.exp(2 * sympy.pi * sympy.I / level)
    for _ in range(5):
        mat = [[_random_element(rng, level) for _ in range(3)] for _ in range(3)]
        mat[2] = [a + b for a, b in zip(mat[0], mat[1])]
        sym = sympy.Matrix([[sum(c * zeta ** k for k, c in enumerate(x.coeffs)) for x in row]
                            for row in mat])
        assert cyc_rank(mat) == 2
        assert sympy.simplify(sym.det()) == 0
