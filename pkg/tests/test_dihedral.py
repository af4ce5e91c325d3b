from fractions import Fraction

import pytest

from quasiharm.dihedral import (
    Q_poly,
    R_explicit,
    R_recursive,
    charpoly_closed,
    charpoly_minors,
    check_rho_family,
    check_s_family,
    ideal_graded,
    is_singular_const,
    laplace,
    laplace_descent_check,
    laplace_descent_expected,
    multz_identity,
    multzzbar_check,
    q_membership,
    qh_basis_dihedral,
    qh_generators,
    regular_probes,
    rho,
    rho_bar,
    s_poly,
    singular_degrees,
    swap,
)
from quasiharm.dunkl import dihedral_F, dihedral_Y, dihedral_Ybar
from quasiharm.frobenius import from_divided
from quasiharm.linsolve import ExactMatrix, rank
from quasiharm.ring import CPoly, MPoly, proportional

V = ("z", "zb")
z, zb = MPoly.gens(V)
c = CPoly.c1()
C0 = Fraction(1, 7)


def _independent(polys):
    mons = sorted({e for p in polys for e in p.terms})
    return rank(ExactMatrix([[p.coeff(e) for e in mons] for p in polys], len(mons))) == len(polys)


def test_rho_small_degrees():
    for m in (3, 4, 7):
        for n in range(m):
            assert rho(m, n) == z ** n
    assert rho(3, 3) == MPoly(V, {(3, 0): c - 1, (0, 3): -c})
    assert rho_bar(3, 3) == swap(rho(3, 3))


def test_rho_actions_m3():
    assert dihedral_Y(3, c, rho(3, 3)) == rho(3, 2).scale(3 * (2 * c - 1))
    assert not dihedral_Ybar(3, c, rho(3, 3))


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_rho_family(m):
    for n in range(0, 3 * m + 1):
        res = check_rho_family(m, n)
        assert res["recursive"] and res["residue_alternating"] and res["quasiharmonic"]
        if n:
            assert res["Y_law"] and res["Ybar_law"]
        # the literal residue sign is constant in p and misses the odd-m alternation
        assert res["residue"] == (m % 2 == 0 or n < m)


def test_recursive_matches_explicit():
    assert R_recursive(5, 12) == R_explicit(5, 12)


def test_qh_basis():
    b = qh_basis_dihedral(3, 4)
    assert proportional(b[0], z * rho(3, 3)) and proportional(b[1], zb * rho_bar(3, 3))
    for m in (3, 4, 5):
        for n in range(1, 3 * m + 1):
            basis = qh_basis_dihedral(m, n)
            assert all(not dihedral_F(m, c, p) for p in basis)
            assert all(isinstance(v, (Fraction, CPoly)) for p in basis for v in p.terms.values())
            for c0 in (Fraction(0), Fraction(n // m, 2), Fraction(1, 2), C0):
                ev = qh_basis_dihedral(m, n, c0)
                assert _independent(ev)
                assert all(not dihedral_F(m, c0, p) for p in ev)
    at0 = qh_basis_dihedral(4, 6, 0)
    assert _independent(at0 + [z ** 6]) is False and _independent(at0 + [zb ** 6]) is False


def test_s_family_start():
    for n in (1, 2):
        assert proportional(s_poly(4, n, Fraction(1, 3), Fraction(2, 5)), z ** n)
    # in degree 3 the zb^2 z term survives unless c1 = c2, since F(z^3) = 2(c1 - c2) zb
    assert proportional(s_poly(4, 3, Fraction(2, 5), Fraction(2, 5)), z ** 3)
    assert not proportional(s_poly(4, 3, Fraction(1, 3), Fraction(2, 5)), z ** 3)
    assert not dihedral_Ybar(4, (CPoly.c1(), CPoly.c2()), s_poly(4, 3))


@pytest.mark.parametrize("m", [4, 6])
def test_s_family_checks(m):
    for n in range(1, 2 * m + 1):
        res = check_s_family(m, n)
        assert res["quasiharmonic"] and res["kernel"] and res["Ybar_law"]
        # S_1 = (c1 + c2) z is a rescaled start, so only n >= 2 follows the Y law
        assert res["Y_law"] == (n >= 2)


@pytest.mark.parametrize("m", [4, 6])
def test_s_specializes_to_r(m):
    for n in range(1, 9):
        S = s_poly(m, n).map_coeffs(lambda v: v.compose(c, c) if isinstance(v, CPoly) else v)
        assert proportional(S, R_explicit(m, n)) == (n % m != 0)


def test_singular_constants():
    assert is_singular_const(5, Fraction(2, 5))
    assert is_singular_const(4, Fraction(1, 2))
    assert not is_singular_const(4, Fraction(1, 1))
    assert not is_singular_const(3, 0)
    assert singular_degrees(4, Fraction(1, 2)) == [2, 4]
    assert singular_degrees(5, Fraction(2, 5)) == [2]
    assert singular_degrees(5, Fraction(1, 7)) == []
    probes = regular_probes(4, 5, 1)
    assert len(probes) == 5 and not any(is_singular_const(4, v) for v in probes)


def test_quotient_algebra():
    Q = ideal_graded(3, 2, C0)
    assert Q.dims == [1, 2, 3, 2, 1] and Q.total_dim == 9
    assert Q.socle_degree == 4 and Q.socle_dim == 1 and Q.is_symmetric()
    big = ideal_graded(3, 2, C0, cap=7)
    assert big.dims == Q.dims
    assert big.ideal.quotient_dim(5) == 0 and big.ideal.quotient_dim(6) == 0
    for m in (3, 4):
        for n in (2, 3, 4):
            assert multzzbar_check(m, n, C0)


def test_multz_identity():
    for m in (3, 4, 5, 6):
        for n in range(m, 3 * m + 2):
            assert multz_identity(m, n)
            assert multz_identity(m, n, "literal") == (m % 2 == 0 or n < m)


def test_q_membership():
    res = q_membership(3, 1, 0, Fraction(3, 11))
    assert res["zr_zbr_Qq"] and res["z2r_Qq"]
    assert Q_poly(3, 1, Fraction(3, 11)) == MPoly(V, {(6, 0): Fraction(-8, 11), (3, 3): Fraction(-3, 11)})
    assert q_membership(3, 2, 1, -1)["zeros"]
    assert not any(Q_poly(4, 2, 0).terms.values())
    assert q_membership(4, 2, 1, 0)["zr_zbr_Qq"]
    for m in (3, 4):
        for q in (1, 2, 3):
            for r in range(m):
                got = [q_membership(m, q, r, cc)["monom"] for cc in range(1, q + 1)]
                assert all(got[1:])
                # c = 1 fails for r = 0, and for q = 1 unless r = m - 1
                assert got[0] == (r == m - 1 or (q >= 2 and r >= 1))


def test_charpoly_closed_forms():
    for n in (1, 2):
        assert proportional(charpoly_closed(3, n), (z * zb) ** n)
    want = from_divided(V, {(3, 3): 1 - c, (6, 0): -c, (0, 6): -c})
    assert proportional(charpoly_closed(3, 3), want)
    for n in (3, 5, 8):
        assert proportional(charpoly_closed(4, n, 0), (z * zb) ** n)


@pytest.mark.parametrize("m", [3, 4])
def test_charpoly_matches_minors(m):
    for n in range(1, 2 * m + 3):
        assert proportional(charpoly_closed(m, n, C0), charpoly_minors(m, n, C0))


def test_laplace_descent():
    assert laplace(z ** 3 * zb ** 3) == (z * zb) ** 2 * -9
    for m in (3, 4):
        for c0 in (C0, Fraction(-3, 11)):
            for n in range(1, 2 * m + 3):
                expected = laplace_descent_expected(m, n, c0)
                assert laplace_descent_check(m, n, c0, "signed") == expected
                literal = laplace_descent_check(m, n, c0)
                # with Delta = -d^2/dz dzb the cleared forms descend with -1 when m does not divide n
                assert literal == (expected if n % m == 0 else -1)
    assert laplace_descent_check(3, 3, Fraction(2, 7)) == Fraction(2, 7) - 1


def test_generators_are_quasiharmonic():
    for R in qh_generators(4, 5, C0):
        assert not dihedral_F(4, C0, R) and R.degree() == 5
