"""Tests for lattice constructions, invariants and small-rank searches."""

import random

import pytest

from cubiclat.errors import DegenerateGramError, LatticeFormatError
from cubiclat.exactlinalg import IntMatrix, determinant
from cubiclat.lattices import (
    ISOMETRIC,
    NOT_FOUND_WITHIN_BOUND,
    NOT_ISOMETRIC,
    Lattice,
    LatticeVec,
    a2,
    cubic_lattice,
    direct_sum,
    discriminant_group,
    e8,
    hyperbolic_plane,
    hyperplane_square,
    inner_product,
    is_isometric_small,
    k3_lattice,
    k3_polarized_primitive,
    lattice_by_name,
    lattice_from_json,
    lattice_to_json,
    middle_lattice,
    mukai_lattice,
    odd_unimodular,
    orthogonal_complement,
    saturation,
    signature,
    standard_lattice,
    twist,
    vectors_with_norm,
    z_lattice,
)
from cubiclat.mukai import kuznetsov_rank3_lattice


def random_unimodular(rng, n, steps=10):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            k = rng.randint(-2, 2)
            m[i] = [x + k * y for x, y in zip(m[i], m[j])]
    return IntMatrix(m)


# ---------------------------------------------------------------------------
# standard lattices


def test_standard_grams():
    assert a2().gram == IntMatrix([[2, -1], [-1, 2]])
    assert hyperbolic_plane().gram == IntMatrix([[0, 1], [1, 0]])
    assert determinant(hyperbolic_plane().gram) == -1
    assert z_lattice(-26).gram == IntMatrix([[-26]])


def test_e8_is_even_unimodular_positive_definite():
    L = e8()
    assert L.rank == 8
    assert determinant(L.gram) == 1
    assert signature(L) == (8, 0)
    assert all(L.gram.rows[i][i] % 2 == 0 for i in range(8))
    assert discriminant_group(L).factors == ()


def test_standard_lattice_parser():
    assert standard_lattice("E8") == e8()
    assert standard_lattice("Z(-5)").gram == IntMatrix([[-5]])
    assert standard_lattice("I(2,1)").rank == 3
    with pytest.raises(ValueError):
        standard_lattice("Z(0)")
    with pytest.raises(ValueError):
        standard_lattice("I(0,0)")
    with pytest.raises(ValueError):
        standard_lattice("F4")


def test_twist():
    assert twist(a2(), -1).gram == IntMatrix([[-2, 1], [1, -2]])
    assert twist(a2(), 1) == a2()
    assert twist(hyperbolic_plane(), -1).gram == IntMatrix([[0, -1], [-1, 0]])
    with pytest.raises(ValueError):
        twist(a2(), 0)


def test_twist_determinant_scaling():
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(1, 3)
        M = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        sym = IntMatrix([[M[i][j] + M[j][i] for j in range(n)] for i in range(n)])
        L = Lattice(n, sym)
        k = rng.choice([-3, -2, -1, 2, 3])
        assert determinant(twist(L, k).gram) == k**n * determinant(L.gram)


def test_direct_sum_ranks_and_det():
    assert cubic_lattice().rank == 22
    assert k3_lattice().rank == 22
    assert mukai_lattice().rank == 24
    assert direct_sum([a2()]) == a2()
    parts = [e8(), hyperbolic_plane(), a2()]
    total = direct_sum(parts)
    prod = 1
    for p in parts:
        prod *= determinant(p.gram)
    assert determinant(total.gram) == prod
    with pytest.raises(ValueError):
        direct_sum([])


# ---------------------------------------------------------------------------
# inner products


def test_inner_product_known_values():
    L = kuznetsov_rank3_lattice(26)
    v = (1, 3, 1)
    assert inner_product(L, v, v) == 0
    assert inner_product(L, v, (11, 22, 7)) == 0
    assert inner_product(L, v, (1, 0, 0)) == 1
    assert inner_product(L, (0, 0, 0), v) == 0


def test_inner_product_bilinear_symmetric():
    rng = random.Random(4)
    L = kuznetsov_rank3_lattice(42)
    for _ in range(50):
        x = tuple(rng.randint(-5, 5) for _ in range(3))
        y = tuple(rng.randint(-5, 5) for _ in range(3))
        z = tuple(rng.randint(-5, 5) for _ in range(3))
        assert inner_product(L, x, y) == inner_product(L, y, x)
        xy = tuple(a + b for a, b in zip(x, y))
        assert inner_product(L, xy, z) == inner_product(L, x, z) + inner_product(L, y, z)


def test_inner_product_rejects_mismatch():
    with pytest.raises(ValueError):
        inner_product(a2(), (1, 2, 3), (1, 0))
    with pytest.raises(ValueError):
        inner_product(a2(), LatticeVec(hyperbolic_plane(), (1, 0)), (1, 0))


# ---------------------------------------------------------------------------
# discriminant groups and signatures


def test_discriminant_groups():
    assert discriminant_group(e8()).factors == ()
    assert discriminant_group(a2()).factors == (3,)
    assert discriminant_group(k3_polarized_primitive(26)).factors == (26,)
    assert discriminant_group(cubic_lattice()).factors == (3,)


def test_discriminant_group_rejects_degenerate():
    L = Lattice(2, IntMatrix([[1, 1], [1, 1]]))
    with pytest.raises(DegenerateGramError):
        discriminant_group(L)
    with pytest.raises(DegenerateGramError):
        signature(L)


def test_discriminant_order_equals_abs_det():
    rng = random.Random(12)
    count = 0
    while count < 60:
        n = rng.randint(1, 4)
        M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        sym = IntMatrix([[M[i][j] + M[j][i] for j in range(n)] for i in range(n)])
        if determinant(sym) == 0:
            continue
        L = Lattice(n, sym)
        assert discriminant_group(L).order == abs(determinant(sym))
        count += 1


def test_signatures():
    assert signature(cubic_lattice()) == (20, 2)
    assert signature(mukai_lattice()) == (20, 4)
    assert signature(z_lattice(-26)) == (0, 1)
    assert signature(k3_lattice()) == (3, 19)
    assert signature(middle_lattice()) == (21, 2)


def test_signature_unimodular_invariance():
    rng = random.Random(8)
    L = direct_sum([hyperbolic_plane(), z_lattice(-5)])
    for _ in range(20):
        Q = random_unimodular(rng, 3)
        cong = Lattice(3, Q.transpose() @ L.gram @ Q)
        assert signature(cong) == signature(L)


# ---------------------------------------------------------------------------
# orthogonal complements and saturation


def test_complement_in_u():
    U = hyperbolic_plane()
    sub, basis = orthogonal_complement(U, [(1, 1)])
    assert [b.coords for b in basis] == [(1, -1)]
    assert sub.gram == IntMatrix([[-2]])


def test_complement_of_hyperplane_square():
    L = middle_lattice()
    h2 = hyperplane_square()
    assert inner_product(L, h2, h2) == 3
    sub, basis = orthogonal_complement(L, [h2])
    assert sub.rank == 22
    assert discriminant_group(sub).factors == (3,)
    assert signature(sub) == (20, 2)
    # primitivity: saturation of the basis has index 1
    sat = saturation(L, basis)
    assert len(sat) == len(basis)
    sub2 = IntMatrix(
        [[inner_product(L, x, y) for y in sat] for x in sat], ncols=len(sat)
    )
    assert abs(determinant(sub2)) == abs(determinant(sub.gram))


def test_complement_of_spanning_set_is_zero_rank():
    U = hyperbolic_plane()
    sub, basis = orthogonal_complement(U, [(1, 0), (0, 1)])
    assert sub.rank == 0 and basis == []


def test_complement_of_nothing_is_everything():
    U = hyperbolic_plane()
    sub, basis = orthogonal_complement(U, [])
    assert sub.rank == 2
    assert sub.gram == U.gram


def test_saturation_examples():
    L = Lattice(2, IntMatrix([[1, 0], [0, 1]]))
    sat = saturation(L, [(2, 0)])
    assert [b.coords for b in sat] == [(1, 0)]
    sat = saturation(L, [(1, 0), (0, 1)])
    assert len(sat) == 2
    with pytest.raises(ValueError):
        saturation(L, [(1, 0), (2, 0)])


def test_saturation_in_l26_has_index_one():
    L = kuznetsov_rank3_lattice(26)
    vecs = [(1, 3, 1), (11, 22, 7)]
    sat = saturation(L, vecs)
    assert len(sat) == 2
    gram_in = IntMatrix([[inner_product(L, x, y) for y in vecs] for x in vecs])
    gram_sat = IntMatrix(
        [[inner_product(L, x, y) for y in sat] for x in sat], ncols=2
    )
    # equal Gram determinants means saturation index 1
    assert determinant(gram_in) == determinant(gram_sat)
    # idempotent
    again = saturation(L, [s.coords for s in sat])
    gram_again = IntMatrix(
        [[inner_product(L, x, y) for y in again] for x in again], ncols=2
    )
    assert determinant(gram_again) == determinant(gram_sat)


def _label_sublattice(L, r_coords):
    h2 = hyperplane_square().coords
    return [h2, r_coords]


@pytest.mark.parametrize(
    "r_coords,expected_disc",
    [
        ((0, 0, 1, 1, 1) + (0,) * 18, 8),
        ((2, 1, 1, 1, 1, 1, 1) + (0,) * 16, 14),
    ],
)
def test_unimodular_complement_det_identity(r_coords, expected_disc):
    # |det K| = |det K_perp| for a primitive sublattice K of a unimodular lattice
    L = middle_lattice()
    vecs = _label_sublattice(L, r_coords)
    gram_k = IntMatrix([[inner_product(L, x, y) for y in vecs] for x in vecs])
    assert abs(determinant(gram_k)) == expected_disc
    sat = saturation(L, vecs)
    gram_sat = IntMatrix(
        [[inner_product(L, x, y) for y in sat] for x in sat], ncols=2
    )
    assert abs(determinant(gram_sat)) == expected_disc  # primitive as given
    sub, _ = orthogonal_complement(L, vecs)
    assert abs(determinant(sub.gram)) == expected_disc


# ---------------------------------------------------------------------------
# vector enumeration


def test_vectors_with_norm_small():
    U = hyperbolic_plane()
    iso = vectors_with_norm(U.gram, 0, 3)
    assert iso[0] == (0, 1)
    assert all(inner_product(U, v, v) == 0 for v in iso)
    norm2 = vectors_with_norm(a2().gram, 2, 1)
    # the six roots of A2 up to sign
    assert len(norm2) == 3


# ---------------------------------------------------------------------------
# isometry testing


def test_isometry_l26_vs_hyperbolic_splitting():
    L26 = kuznetsov_rank3_lattice(26)
    target = direct_sum([hyperbolic_plane(), z_lattice(-26)])
    res = is_isometric_small(L26, target)
    assert res.status == ISOMETRIC
    T = res.map
    assert (T.transpose() @ L26.gram @ T) == target.gram
    assert determinant(T) in (1, -1)


def test_isometry_l42_vs_hyperbolic_splitting():
    L42 = kuznetsov_rank3_lattice(42)
    target = direct_sum([hyperbolic_plane(), z_lattice(-42)])
    res = is_isometric_small(L42, target)
    assert res.status == ISOMETRIC
    assert (res.map.transpose() @ L42.gram @ res.map) == target.gram


def test_isometry_signature_prescreen():
    res = is_isometric_small(a2(), twist(a2(), -1))
    assert res.status == NOT_ISOMETRIC
    assert res.reason == "signature"


def test_isometry_identity_fast_path():
    res = is_isometric_small(hyperbolic_plane(), hyperbolic_plane())
    assert res.map == IntMatrix.identity(2)


def test_isometry_not_found_within_bound():
    # I(1,1) and U share rank, determinant, signature and discriminant
    # group, but U is even: the box search cannot find a witness.
    res = is_isometric_small(odd_unimodular(1, 1), hyperbolic_plane())
    assert res.status == NOT_FOUND_WITHIN_BOUND
    assert res.map is None


def test_isometry_rank_and_degenerate_rejection():
    with pytest.raises(ValueError):
        is_isometric_small(e8(), e8())
    bad = Lattice(2, IntMatrix([[1, 1], [1, 1]]))
    with pytest.raises(DegenerateGramError):
        is_isometric_small(bad, hyperbolic_plane())
    res = is_isometric_small(a2(), hyperbolic_plane())
    assert res.status == NOT_ISOMETRIC


def test_isometry_random_congruence():
    rng = random.Random(42)
    base = [a2(), hyperbolic_plane(), direct_sum([hyperbolic_plane(), z_lattice(-3)])]
    for L in base:
        for _ in range(5):
            Q = random_unimodular(rng, L.rank, steps=6)
            cong = Lattice(L.rank, Q.transpose() @ L.gram @ Q)
            res = is_isometric_small(L, cong)
            assert res.status == ISOMETRIC
            T = res.map
            assert (T.transpose() @ L.gram @ T) == cong.gram


def test_isometry_deterministic():
    L26 = kuznetsov_rank3_lattice(26)
    target = direct_sum([hyperbolic_plane(), z_lattice(-26)])
    r1 = is_isometric_small(L26, target)
    r2 = is_isometric_small(L26, target)
    assert r1.map == r2.map


# ---------------------------------------------------------------------------
# catalog and file format


def test_lattice_by_name():
    assert lattice_by_name("Gamma").rank == 22
    assert lattice_by_name("K3").rank == 22
    assert lattice_by_name("Mukai").rank == 24
    assert lattice_by_name("I21_2").rank == 23
    assert lattice_by_name("Lambda_26").gram.rows[-1][-1] == -26
    assert lattice_by_name("U") == hyperbolic_plane()
    with pytest.raises(ValueError):
        lattice_by_name("nonsense")


def test_file_roundtrip_is_bit_exact():
    for L in (a2(), cubic_lattice(), kuznetsov_rank3_lattice(26)):
        text = lattice_to_json(L)
        back = lattice_from_json(text)
        assert back == L
        assert back.label == L.label
        assert lattice_to_json(back) == text


def test_file_roundtrip_via_disk(tmp_path):
    from cubiclat.lattices import load_lattice, save_lattice

    path = tmp_path / "l26.json"
    L = kuznetsov_rank3_lattice(26)
    save_lattice(L, str(path))
    assert load_lattice(str(path)) == L


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        "[1, 2]",
        '{"gram": [[0, 1], [1, 0]]}',
        '{"rank": 2}',
        '{"rank": "2", "gram": [[0, 1], [1, 0]]}',
        '{"rank": 2, "gram": [[0, 1], [1, "x"]]}',
        '{"rank": 2, "gram": [[0, 1], [1, 0]], "label": 3}',
        '{"rank": 3, "gram": [[0, 1], [1, 0]]}',
        '{"rank": 2, "gram": [[0, 1], [2, 0]]}',
        '{"rank": 2, "gram": [[0, 1, 2], [1, 0, 3]]}',
    ],
)
def test_file_parse_errors(text):
    with pytest.raises(LatticeFormatError):
        lattice_from_json(text)
