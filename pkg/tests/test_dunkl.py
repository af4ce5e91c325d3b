import random
from fractions import Fraction

import pytest

from quasiharm.coxeter import build_group
from quasiharm.dunkl import (
    DunklContext,
    closed_form_mismatches,
    commutator,
    dihedral_F,
    dihedral_Y,
    dunkl_apply,
    nabla,
    pairing,
    sl2_mismatches,
    sl2_triple,
)
from quasiharm.ring import CPoly, MPoly

C = Fraction(2, 7)


def _random_poly(vars, deg, rng):
    return MPoly(vars, {(a, deg - a): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for a in range(deg + 1)})


def test_c_zero_is_derivative():
    rng = random.Random(3)
    for G in (build_group("dihedral", 4), build_group("symmetric", 3)):
        ctx = DunklContext(G, (0,) * G.class_count)
        for _ in range(5):
            q = MPoly(G.vars, {(rng.randint(0, 4), rng.randint(0, 4)): rng.randint(1, 9) for _ in range(4)})
            assert dunkl_apply(ctx, 0, q) == q.diff(0)
            assert dunkl_apply(ctx, 1, q) == q.diff(1)


def test_dunkl_z4_reflection_sum():
    G = build_group("dihedral", 3)
    z, zb = MPoly.gens(G.vars)
    for c in (C, CPoly.c1()):
        ctx = DunklContext(G, (c,))
        want = MPoly(G.vars, {(3, 0): 4 - 3 * c, (0, 3): 3 * c})
        assert dunkl_apply(ctx, 0, z ** 4) == want
    assert dihedral_Y(3, C, z ** 4) == MPoly(G.vars, {(3, 0): 4 - 3 * C, (0, 3): 3 * C})


def test_degree_one_pairing_scales():
    G = build_group("symmetric", 4)
    ctx, ctx0 = DunklContext(G, (C,)), DunklContext(G, (Fraction(0),))
    scale = 1 - ctx.abs_c()
    for y in MPoly.gens(G.dual_vars):
        for x in MPoly.gens(G.vars):
            assert pairing(ctx, y, x) == scale * pairing(ctx0, y, x)


def test_nabla_e2():
    for m in (3, 4, 5, 6):
        G = build_group("dihedral", m)
        ctx = DunklContext(G, (C,))
        z, zb = MPoly.gens(G.vars)
        e2 = G.dual_invariants[0]
        assert nabla(ctx, e2, z * zb) == MPoly.const(G.vars, 1 - m * C)
        assert not nabla(ctx, e2, z + 3 * zb)


def test_dunkl_operators_commute():
    rng = random.Random(11)
    G = build_group("dihedral", 5)
    ctx = DunklContext(G, (Fraction(3, 11),))
    q = _random_poly(G.vars, 6, rng)
    assert dunkl_apply(ctx, 0, dunkl_apply(ctx, 1, q)) == dunkl_apply(ctx, 1, dunkl_apply(ctx, 0, q))
    S = build_group("symmetric", 4)
    cs = DunklContext(S, (Fraction(1, 5),))
    x = MPoly.gens(S.vars)
    q = x[0] ** 3 * x[1] + 2 * x[2] ** 2 * x[1] ** 2
    assert dunkl_apply(cs, 0, dunkl_apply(cs, 2, q)) == dunkl_apply(cs, 2, dunkl_apply(cs, 0, q))


def test_pairing_degrees_and_form_symmetry():
    G = build_group("dihedral", 3)
    ctx = DunklContext(G, (C,))
    z, zb = MPoly.gens(G.vars)
    w, wb = MPoly.gens(G.dual_vars)
    assert pairing(ctx, w * wb, z) == 0
    to_dual = {"z": wb, "zb": w}
    to_primal = {"w": zb, "wb": z}
    for d in (2, 3):
        prim = [MPoly(G.vars, {(a, d - a): 1}) for a in range(d + 1)]
        dual = [MPoly(G.dual_vars, {(a, d - a): 1}) for a in range(d + 1)]
        for p in dual:
            for q in prim:
                lhs = pairing(ctx, p, q)
                rhs = pairing(ctx, q.substitute(to_dual, G.dual_vars), p.substitute(to_primal, G.vars))
                assert lhs == rhs


def test_closed_forms():
    V = ("z", "zb")
    z, zb = MPoly.gens(V)
    assert dihedral_F(3, C, z ** 4 * zb) == MPoly(V, {(3, 0): 3 * C - 4})
    rng = random.Random(5)
    for _ in range(4):
        p = _random_poly(V, rng.randint(1, 7), rng)
        assert dihedral_Y(4, 0, p) == p.diff(0)
        assert dihedral_F(4, 0, p) == p.diff(0).diff(1).scale(-1)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_closed_forms_match_reflection_sums(m):
    assert closed_form_mismatches(m, Fraction(3, 13), 7) == []
    if m % 2 == 0:
        assert closed_form_mismatches(m, (Fraction(1, 3), Fraction(-2, 5)), 7) == []


def test_sl2():
    z = MPoly.gens(("z", "zb"))[0]
    for m in range(3, 7):
        E, F, H = sl2_triple(m, CPoly.c1())
        assert commutator(E, F, z) == H(z) == MPoly(z.vars, {(1, 0): 2 - m * CPoly.c1()})
        assert sl2_mismatches(m, CPoly.c1(), 12) == []
