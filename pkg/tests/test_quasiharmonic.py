from fractions import Fraction

import pytest

from quasiharm.coxeter import build_group
from quasiharm.dihedral import rho
from quasiharm.quasiharmonic import (
    QHSpace,
    algebraic_independence_check,
    deformed_invariant,
    exceptional_locus,
    generation_check,
    generator_names,
    hilbert_table,
    is_singular_value,
    isotypic_component,
    jack_f,
    jack_is_singular,
    matches_reference,
    mutdef_multiplicity,
    predicted_series,
    q_family,
    qh_space,
    regular_probes,
    singular_candidates,
    singular_scan,
    singular_vectors,
)
from quasiharm.ring import CPoly, MPoly, parse_poly, proportional

S3 = build_group("symmetric", 3)
S4 = build_group("symmetric", 4)
S5 = build_group("symmetric", 5)


def _span_equal(a, b):
    sp = QHSpace(None, (), 0, list(a))
    return len(a) == len(b) and all(sp.contains(p) for p in b)


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7])
def test_dihedral_qh_dim_two(m):
    G = build_group("dihedral", m)
    for n in range(1, 2 * m + 2):
        assert qh_space(G, "symbolic", n).dim == 2


def test_s4_dimensions():
    assert [qh_space(S4, "symbolic", n).dim for n in range(6)] == [1, 3, 5, 6, 6, 6]
    assert predicted_series(S4, "quasiharmonic", 5)["dim"] == [1, 3, 5, 6, 6, 6]


def test_harmonics_vanish_above_top():
    top = sum(d - 1 for d in S3.exponents)
    assert qh_space(S3, Fraction(1, 5), top, "harmonic").dim == 1
    assert qh_space(S3, Fraction(1, 5), top + 1, "harmonic").dim == 0


def test_sn_elementary_invariants_undeformed():
    for d in (2, 3):
        inv = deformed_invariant(S4, d)
        assert inv.generator_form(generator_names(S4)) == parse_poly(f"e{d}", generator_names(S4))


@pytest.mark.parametrize("G", [S4, S5], ids=["S4", "S5"])
def test_sn_e4_formula(G):
    n = G.size
    names = generator_names(G)
    want = parse_poly(f"{(n - 2) * (n - 3)}/2*(1-{n}*c1)*e2^2 + ({n * n * (n - 1)}*c1 - {n * (n + 1)})*e4", names)
    assert proportional(deformed_invariant(G, 4).generator_form(names), want)


def test_s4_e4_specialization():
    names = generator_names(S4)
    got = deformed_invariant(S4, 4).generator_form(names)
    assert proportional(got, parse_poly("4*(12*c1-5)*e4 - (4*c1-1)*e2^2", names))
    assert got == parse_poly("(4*c1-1)*e2^2 + (-48*c1+20)*e4", names)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_dihedral_top_invariant_undeformed(m):
    G = build_group("dihedral", m)
    inv = deformed_invariant(G, m, Fraction(2, 9))
    assert proportional(inv.polynomial, G.invariant_generators[1])
    assert matches_reference(deformed_invariant(G, m)) is True


@pytest.mark.parametrize("m", [4, 6])
def test_dihedral_two_class_invariant(m):
    G = build_group("dihedral", m)
    z, zb = MPoly.gens(G.vars)
    c1, c2 = CPoly.c1(), CPoly.c2()
    want = (z ** m + zb ** m).scale(c1 + c2 - 1) + ((z * zb) ** (m // 2)).scale((c2 - c1) * 2 * (-1) ** (m // 2))
    inv = deformed_invariant(G, m, "symbolic2")
    assert proportional(inv.polynomial, want)
    assert matches_reference(inv, two_class=True) is True


def test_algebraic_independence():
    classical = [deformed_invariant(S4, d, 0) for d in S4.exponents]
    assert algebraic_independence_check(classical, 0)
    sym = [deformed_invariant(S4, d) for d in S4.exponents]
    for c0 in regular_probes(S4, 3):
        assert algebraic_independence_check(sym, c0)
    I4 = build_group("dihedral", 4)
    two = [deformed_invariant(I4, d, "symbolic2") for d in I4.exponents]
    assert algebraic_independence_check(two, (Fraction(1, 3), Fraction(-2, 7)))
    assert not algebraic_independence_check(two, (Fraction(1, 3), Fraction(2, 3)))


def test_exceptional_locus_s4():
    loc = exceptional_locus(S4, 4)
    assert sorted(loc.values) == [Fraction(1, 3), Fraction(1, 2), Fraction(3, 4)]


def test_isotypic_components():
    c0 = regular_probes(S4, 1)[0]
    sp = qh_space(S4, c0, 3)
    v = isotypic_component(S4, c0, 3, "V", sp)
    ve = isotypic_component(S4, c0, 3, "V*eps", sp)
    assert len(v) == 3 and len(ve) == 3
    assert not _span_equal(v, ve)
    assert isotypic_component(S4, c0, 3, "1", sp) == []
    for m in (5, 7):
        G = build_group("dihedral", m)
        for n in (m - 1, m + 1, 2 * m + 1):
            mult = G.decompose_module(qh_space(G, Fraction(1, 9), n).basis)
            assert {k: v for k, v in mult.items() if v} == {G.alias("V"): 1}


def test_singular_vectors():
    assert singular_vectors(build_group("dihedral", 5), Fraction(2, 5), 2)
    I4 = build_group("dihedral", 4)
    vecs = singular_vectors(I4, Fraction(1, 2), 4)
    assert vecs
    assert QHSpace(I4, (), 4, vecs).contains(rho(4, 4, Fraction(1, 2)))
    for G in (S4, I4):
        for n in range(1, 5):
            assert singular_vectors(G, 0, n) == []


def test_singular_values():
    I5 = build_group("dihedral", 5)
    assert is_singular_value(I5, Fraction(2, 5))
    assert not is_singular_value(I5, Fraction(1, 1))
    assert not is_singular_value(I5, 0)
    assert is_singular_value(S4, Fraction(1, 3))
    hits = singular_scan(I5, [Fraction(2, 5), Fraction(1, 7)], 6)
    assert hits[Fraction(2, 5)] and not hits[Fraction(1, 7)]
    assert all(is_singular_value(S3, v) for v in singular_candidates(S3))


def test_jack():
    x = MPoly.gens(("x1", "x2", "x3"))
    for r in (1, 2, 3):
        assert jack_f(3, 2, r, 0) == x[1] ** r
    assert jack_is_singular(S3, 2)
    assert jack_is_singular(S3, 1)
    assert jack_is_singular(S4, 1)
    with pytest.raises(ValueError):
        jack_f(3, 4, 1, 0)


def test_q_family_s3():
    fam = q_family(S3, 3)
    assert fam.ok
    c = CPoly.c1()
    assert fam.steps[1].alpha == 2 - 3 * c
    assert fam.steps[0].sum_vanishes and fam.steps[1].sum_vanishes
    e3 = deformed_invariant(S3, 3).polynomial
    assert all(proportional(q, e3) for q in fam.steps[2].q)


def test_generation():
    I3 = build_group("dihedral", 3)
    assert all(generation_check(I3, Fraction(1, 7), n) for n in range(7))
    assert all(generation_check(S3, Fraction(1, 5), n) for n in range(7))
    assert generation_check(S4, Fraction(1, 5), 0)


def test_hilbert_tables():
    for m in (3, 4, 6):
        G = build_group("dihedral", m)
        rows = hilbert_table(G, Fraction(1, 9), "quasiharmonic", 2 * m + 1)
        assert all(r.matches for r in rows)
        assert [r.degree for r in rows if r.multiplicities["1"]] == list(range(0, 2 * m + 2, m))
        assert all(r.multiplicities["1"] <= 1 for r in rows)
    c0 = regular_probes(S4, 1)[0]
    rows = hilbert_table(S4, c0, "truncated", 6, 2)
    # 1 / ((1 - t^2)(1 - t^3)(1 - t^4))
    assert [r.multiplicities["1"] for r in rows] == [1, 0, 1, 1, 2, 1, 3]
    assert all(r.matches for r in rows)
    assert mutdef_multiplicity(S4, 5) == 1
    row5 = hilbert_table(S4, c0, "quasiharmonic", 5)[5]
    assert row5.multiplicities["V"] == 1
