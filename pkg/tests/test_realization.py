import random
from itertools import permutations

import pytest

from nichols.braiding import cartan_type
from nichols.cartan import is_finite_type
from nichols.cyclotomic import RootOfUnity as R
from nichols.errors import PreconditionError
from nichols.realization import (EXCLUDED_CARTAN_MATRICES, ZpRank2Params, braiding_of,
                                 canonical_key, class_counts, classify_zp,
                                 exists_diagram_over_zp, finite_normal_forms, is_prime,
                                 iso_equivalent, normal_form, rank2_params, rank2_solutions,
                                 rank3_search, vertex_pair_solutions)
from nichols.twisting import GroupData, RealizationData


def test_braiding_of_examples():
    r = RealizationData(GroupData((3,)), ((1,),), ((1,),))
    assert braiding_of(r).to_json()["entries"] == [["1/3"]]
    b = ZpRank2Params(7, 1, 2, 4).realization().braiding()
    assert b.to_json()["entries"] == [["1/7", "4/7"], ["2/7", "1/7"]]
    assert b[0, 1] == R(4, 7) and b[1, 0] == R(2, 7)


def test_rank4_family_over_z3():
    for e in (1, 2):
        r = normal_form(3, 1, (1, e, e), (1, -e, -e))
        ct = cartan_type(braiding_of(r))
        assert ct.gcm.a == ((2, -1, 0, 0), (-1, 2, 0, 0), (0, 0, 2, -1), (0, 0, -1, 2))


def test_rank2_solutions_examples():
    assert rank2_solutions(7, "A2") == {2, 4}
    assert rank2_solutions(13, "B2") == {2, 10}
    assert rank2_solutions(7, "B2") == set()
    assert rank2_solutions(7, "G2") == {1, 5}
    for b, d in rank2_params(13, "B2"):
        assert (2 * b * d) % 13 == 1
    for b, d in rank2_params(7, "G2"):
        assert (3 * b * d) % 7 == 1


def test_rank2_solutions_give_the_diagram():
    # with g(1) = u^b and d = -1 - b the short root sits at index 1
    expected = {"A2": ((2, -1), (-1, 2)), "B2": ((2, -1), (-2, 2)), "G2": ((2, -1), (-3, 2))}
    for p in (7, 13, 37):
        for diagram, gcm in expected.items():
            for b, d in rank2_params(p, diagram):
                ct = cartan_type(ZpRank2Params(p, 1, b, d).realization().braiding())
                assert ct.gcm.a == gcm


def test_exists_examples():
    assert exists_diagram_over_zp(13, "A2")
    assert exists_diagram_over_zp(5, "B2")
    assert not exists_diagram_over_zp(5, "A3")
    assert exists_diagram_over_zp(3, "A2xA1") and not exists_diagram_over_zp(7, "A2xA1")
    with pytest.raises(PreconditionError):
        exists_diagram_over_zp(9, "A2")
    with pytest.raises(PreconditionError):
        exists_diagram_over_zp(2, "A2")
    with pytest.raises(PreconditionError):
        exists_diagram_over_zp(101, "A2")


def test_g2_matches_quadratic_residue_form():
    for p in range(5, 101):
        if not is_prime(p):
            continue
        minus3_square = any((x * x + 3) % p == 0 for x in range(p))
        assert bool(rank2_solutions(p, "G2")) == minus3_square == (p % 3 == 1)


def test_scans_agree():
    for p in (3, 5, 7):
        for theta in (2, 3):
            assert finite_normal_forms(p, theta, "exhaustive") == finite_normal_forms(p, theta, "pruned")


def test_rank3_search_examples():
    assert rank3_search(5) == [] and rank3_search(7) == []
    reps = rank3_search(3)
    assert len(reps) == 4
    for r in reps:
        assert cartan_type(braiding_of(r)).gcm.submatrix([0, 1, 2]).components() != [[0, 1, 2]]


def test_iso_equivalent_basics():
    r = normal_form(7, 1, (2,), (4,))
    assert iso_equivalent(r, r)
    # A2: b and -1 - b give isomorphic realizations
    for p in (7, 13):
        for q in range(1, p):
            for b in rank2_solutions(p, "A2"):
                r1 = normal_form(p, q, (b,), ((-1 - b) % p,))
                b2 = (-1 - b) % p
                r2 = normal_form(p, q, (b2,), ((-1 - b2) % p,))
                assert iso_equivalent(r1, r2)
    # B2: the two roots are not isomorphic
    (b1, d1), (b2, d2) = rank2_params(13, "B2")
    assert not iso_equivalent(normal_form(13, 1, (b1,), (d1,)), normal_form(13, 1, (b2,), (d2,)))


def test_iso_is_equivalence_and_matches_keys():
    rng = random.Random(1)
    p = 7
    pool = [normal_form(p, q, (b,), (d,)) for q in range(1, p) for b, d in rank2_params(p, "G2")]
    pool += [normal_form(p, q, (b,), (d,)) for q in range(1, 3) for b, d in rank2_params(p, "A2")]
    for _ in range(150):
        a, b, c = (rng.choice(pool) for _ in range(3))
        assert iso_equivalent(a, b) == iso_equivalent(b, a)
        assert iso_equivalent(a, b) == (canonical_key(a) == canonical_key(b))
        if iso_equivalent(a, b) and iso_equivalent(b, c):
            assert iso_equivalent(a, c)


def test_iso_over_larger_group_and_guard():
    grp = GroupData((3, 3))
    r1 = RealizationData(grp, ((1, 0), (0, 1)), ((1, 0), (0, 2)))
    r2 = RealizationData(grp, ((0, 1), (1, 0)), ((0, 2), (1, 0)))
    assert iso_equivalent(r1, r2)
    from nichols.errors import ResourceGuardError
    big = GroupData((7, 7, 7))
    r = RealizationData(big, ((1, 0, 0),), ((1, 0, 0),))
    with pytest.raises(ResourceGuardError):
        iso_equivalent(r, r)


def test_isomorphic_braidings_have_permuted_gcms():
    p = 3
    forms = finite_normal_forms(p, 3)
    reps = rank3_search(p)
    for gs, ds in forms:
        for q in (1, 2):
            r = normal_form(p, q, gs, ds)
            match = [x for x in reps if iso_equivalent(r, x)]
            assert len(match) == 1
            g1 = cartan_type(braiding_of(r)).gcm
            g2 = cartan_type(braiding_of(match[0])).gcm
            assert any(g1.permuted(s) == g2 for s in permutations(range(3)))


def test_excluded_matrices():
    for p, gcm in EXCLUDED_CARTAN_MATRICES:
        from nichols.realization import excluded_matrix_search
        assert excluded_matrix_search(p, gcm) == []


def test_excluded_intermediate_sets():
    p, gcm = 13, ((2, -3, -1), (-1, 2, -3), (-3, -1, 2))
    assert vertex_pair_solutions(p, gcm, 1) == {(2, 8), (8, 2)}
    assert vertex_pair_solutions(p, gcm, 2) == {(5, 7), (7, 5)}


@pytest.mark.parametrize("p,expected", [
    (3, {"A1": 2, "A1xA1": 2, "A2": 2, "A2xA1": 4, "A2xA2": 2}),
    (5, {"A1": 4, "A1xA1": 8, "B2": 8}),
    (7, {"A1": 6, "A1xA1": 18, "A2": 6, "G2": 12}),
])
def test_classify_counts(p, expected):
    report = classify_zp(p)
    assert class_counts(report) == expected
    for fam in report["families"]:
        for cls in fam["classes"]:
            r = normal_form(p, cls["q_exp"], cls["g"][1:], cls["d"][1:])
            assert r.nondegenerate()
            ct = cartan_type(braiding_of(r))
            assert ct is not None and is_finite_type(ct.gcm)


def test_classify_dimensions():
    report = classify_zp(3)
    dims = {f["diagram"]: f["dimension"] for f in report["families"]}
    assert dims == {"A1": "3", "A1xA1": "9", "A2": "27", "A2xA1": "81", "A2xA2": "729"}


def test_rank3_families_pairwise_distinct():
    """The four rank-3 algebras over Z/3 (two q, two e) are pairwise non-isomorphic."""
    reps = [normal_form(3, q, (1, e), (1, -e)) for q in (1, 2) for e in (1, 2)]
    for i in range(4):
        for j in range(i + 1, 4):
            assert not iso_equivalent(reps[i], reps[j])


def test_rank4_families_collapse_under_block_swap():
    """Swapping the two A2 blocks identifies (q, e) with (q^2, e) in rank 4."""
    def fam(q, e):
        return normal_form(3, q, (1, e, e), (1, -e, -e))

    assert iso_equivalent(fam(1, 1), fam(2, 1))
    assert iso_equivalent(fam(1, 2), fam(2, 2))
    assert not iso_equivalent(fam(1, 1), fam(1, 2))
    # the block swap that realizes the first isomorphism
    r1, r2 = fam(1, 1), fam(2, 1)
    sigma = (2, 3, 0, 1)
    assert all(r1.g[j] == r2.g[sigma[j]] and r1.chi[j] == r2.chi[sigma[j]] for j in range(4))


def test_classify_refuses_bad_p():
    for p in (9, 2, 1, 103):
        with pytest.raises(PreconditionError):
            classify_zp(p)
