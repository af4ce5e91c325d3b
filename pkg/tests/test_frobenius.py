import random
from fractions import Fraction

import pytest

from quasiharm.coxeter import build_group
from quasiharm.dihedral import charpoly_closed, qh_generators
from quasiharm.frobenius import (
    charpoly_from_ideal,
    charpoly_rank2_minors,
    coinvariant_data,
    complete_intersection_corpus,
    corpus_checks,
    derivative_span_dims,
    dual_to_primal,
    from_divided,
    graded_dims_from_charpoly,
    hankel_rank,
    hilbert_factor,
    product_charpolys,
    resultant,
    restrict,
    root_product,
)
from quasiharm.ring import MPoly, proportional

X = ("x1", "x2")
x1, x2 = MPoly.gens(X)
Z = ("z", "zb")
z, zb = MPoly.gens(Z)


def _random_form(rng, deg):
    return MPoly(X, {(i, deg - i): rng.randint(-4, 4) for i in range(deg + 1)})


def test_monomial_ideal():
    for a, b in ((2, 3), (3, 4), (1, 5)):
        data = charpoly_from_ideal([x1 ** a, x2 ** b])
        assert proportional(data.charpoly, x1 ** (a - 1) * x2 ** (b - 1))
        assert data.dims == hilbert_factor([a, b], 2)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_dihedral_coinvariants(m):
    G = build_group("dihedral", m)
    data = coinvariant_data(G)
    assert data.socle_degree == m and data.total_dim == 2 * m
    assert proportional(data.charpoly, z ** m - zb ** m * (-1) ** m)
    assert proportional(dual_to_primal(G, data.charpoly), root_product(G))


def test_symmetric_coinvariants():
    for n in (3, 4):
        G = build_group("symmetric", n)
        data = coinvariant_data(G)
        assert data.total_dim == G.order
        assert proportional(dual_to_primal(G, data.charpoly), root_product(G))
    S3 = build_group("symmetric", 3)
    v1, v2 = MPoly.gens(S3.vars)
    assert proportional(root_product(S3), v1 * v2 * (v1 - v2))


def test_rank2_minors():
    assert proportional(charpoly_rank2_minors(z ** 2, zb ** 2), z * zb)
    c0 = Fraction(1, 7)
    R1, R2 = qh_generators(3, 4, c0)
    assert proportional(charpoly_rank2_minors(R1, R2), charpoly_closed(3, 3, c0))
    with pytest.raises(ValueError):
        charpoly_rank2_minors(z ** 3 + zb ** 3, z ** 3 + zb ** 3)
    assert resultant(z ** 2, zb ** 2) != 0


def test_graded_dims():
    assert derivative_span_dims(x1 * x2) == [1, 2, 1]
    I4 = build_group("dihedral", 4)
    p = coinvariant_data(I4).charpoly
    assert derivative_span_dims(p) == [1, 2, 2, 2, 1]
    assert graded_dims_from_charpoly(p, 2) == 2


def test_dims_from_charpoly_match_ideal():
    rng = random.Random(17)
    done = 0
    while done < 5:
        a, b = rng.randint(2, 4), rng.randint(2, 4)
        gens = [_random_form(rng, a), _random_form(rng, b)]
        if a == b and resultant(*gens) == 0:
            continue
        try:
            data = charpoly_from_ideal(gens)
        except (ArithmeticError, ValueError):
            continue
        if data.total_dim != a * b:
            continue
        assert derivative_span_dims(data.charpoly) == data.dims == hilbert_factor([a, b], 2)
        for k in range(data.socle_degree + 1):
            assert hankel_rank(data.charpoly, k) == data.dims[k]
        done += 1


def test_hankel():
    p = from_divided(Z, {(2, 2): 1})
    assert hankel_rank(p, 1) == 2
    assert hankel_rank(from_divided(Z, {(4, 0): 1}), 1) == 1


def test_products():
    p = z * zb
    assert product_charpolys(p, MPoly.const(Z, 1)) == p
    t = product_charpolys(MPoly.gens(("x1",))[0], MPoly.gens(("x2",))[0], "tensor")
    assert t == x1 * x2 and derivative_span_dims(t) == [1, 2, 1]
    sq = product_charpolys(p, p)
    assert sq == z ** 2 * zb ** 2 and derivative_span_dims(sq) == [1, 2, 3, 2, 1]
    with pytest.raises(ValueError):
        product_charpolys(p, p, "direct")


def test_restrict():
    t = MPoly.gens(("t1",))[0]
    assert restrict(x1 * x2, [[1, 1]]) == t ** 2
    with pytest.raises(ValueError):
        restrict(z * zb, [[1, 0]])


def test_internal_is_tensor_then_diagonal():
    rng = random.Random(4)
    for _ in range(5):
        pa, pb = _random_form(rng, 2), _random_form(rng, 3)
        if not pa or not pb:
            continue
        tensor = product_charpolys(pa, pb, "tensor")
        diag = restrict(tensor, [[1, 0, 1, 0], [0, 1, 0, 1]], X)
        assert diag == product_charpolys(pa, pb)


def test_corpus():
    corpus = complete_intersection_corpus()
    assert len(corpus) >= 10
    for entry in corpus:
        assert all(corpus_checks(entry)["flags"].values()), entry.name
