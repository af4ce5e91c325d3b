import random
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quasiharm.coxeter import build_group
from quasiharm.dunkl import DunklContext
from quasiharm.frobenius import minors_matrix
from quasiharm.linsolve import (
    ExactMatrix,
    block_kernel_basis,
    fraction_free_eliminate,
    kernel_basis,
    rank,
    rank_over_parameters,
    restrict_to_line,
    seeded_rationals,
    substitute_matrix,
)
from quasiharm.quasiharmonic import invariant_operator, operator_matrix, space_matrix
from quasiharm.ring import CPoly, MPoly

c = CPoly.c1()


def _zero(v):
    return all(x == 0 for x in v)


def test_kernel_trivial_cases():
    eye = ExactMatrix([[Fraction(int(i == j)) for j in range(3)] for i in range(3)])
    assert kernel_basis(eye) == []
    assert len(kernel_basis(ExactMatrix([[0, 0, 0], [0, 0, 0]]))) == 3


def test_dihedral_nabla_kernel_symbolic():
    G = build_group("dihedral", 3)
    ctx = DunklContext.symbolic(G)
    cols = [MPoly(G.vars, {e: 1}) for e in G.monomial_basis(3)]
    M = operator_matrix([invariant_operator(ctx, 0)], G.vars, cols)
    assert len(kernel_basis(M)) == 2
    for v in seeded_rationals(5, 7):
        assert len(kernel_basis(substitute_matrix(M, v))) == 2


def test_exceptional_values_s4():
    S4 = build_group("symmetric", 4)
    M3, cols3 = space_matrix(S4, "symbolic", 3)
    loc = rank_over_parameters(M3)
    assert len(cols3) - loc.generic_rank == 6
    assert sorted(loc.values) == [Fraction(1, 4), Fraction(1, 2)]
    assert all(len(cols3) - r == 7 for _, r in loc.confirmed_values)
    M4, cols4 = space_matrix(S4, "symbolic", 4)
    loc = rank_over_parameters(M4)
    assert len(cols4) - loc.generic_rank == 6
    assert sorted(loc.values) == [Fraction(1, 3), Fraction(1, 2), Fraction(3, 4)]
    assert all(len(cols4) - r == 9 for _, r in loc.confirmed_values)


def test_diag_locus():
    loc = rank_over_parameters(ExactMatrix([[c, CPoly.const(0)], [CPoly.const(0), CPoly.const(1)]]))
    assert loc.generic_rank == 2
    assert loc.confirmed_values == [(0, 1)]


def test_two_parameter_line():
    c1, c2 = CPoly.c1(), CPoly.c2()
    M = ExactMatrix([[c1 + c2 - 1, CPoly.const(0)], [CPoly.const(0), c1 - c2]])
    # along c2 = -c1 + 1 the first entry vanishes identically
    assert rank_over_parameters(restrict_to_line(M, Fraction(-1), Fraction(1))).generic_rank == 1
    loc = rank_over_parameters(restrict_to_line(M, Fraction(0), Fraction(1, 3)))
    assert loc.generic_rank == 2 and sorted(loc.values) == [Fraction(1, 3), Fraction(2, 3)]


def test_bareiss_determinants():
    assert fraction_free_eliminate(ExactMatrix([[2, 0], [0, 3]])).determinant(2) == 6
    e = fraction_free_eliminate(ExactMatrix([[c, CPoly.const(1)], [CPoly.const(1), c]]))
    assert e.determinant(2) == c * c - 1


def test_minors_matrix_rank():
    V = ("z", "zb")
    z, zb = MPoly.gens(V)
    U = minors_matrix(z ** 3, zb ** 3)
    assert (U.nrows, U.ncols) == (4, 5) and rank(U) == 4
    U = minors_matrix(z ** 4, zb ** 4)
    assert (U.nrows, U.ncols) == (6, 7) and rank(U) == 6
    full = sympy.Matrix(U.rows)
    assert any(full[:, [j for j in range(7) if j != i]].det() != 0 for i in range(7))


def test_seeded_rationals_reproducible():
    a = seeded_rationals(10, 99)
    assert a == seeded_rationals(10, 99)
    assert len(set(a)) == 10
    assert all(abs(v.numerator) <= 50 and v.denominator <= 50 for v in a)
    assert Fraction(0) not in seeded_rationals(30, 1, exclude=[0])


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda k: st.lists(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=k, max_size=k),
                       min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):
    M = ExactMatrix(rows)
    assert rank(M) == sympy.Matrix(rows).rank()
    ker = kernel_basis(M)
    assert len(ker) == M.ncols - rank(M)
    for v in ker:
        assert _zero(M.matvec(v))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_block_kernel_matches_dense(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    rows = [[Fraction(rng.choice([0, 0, 0, 1, -2, 3])) for _ in range(n)] for _ in range(rng.randint(1, 7))]
    M = ExactMatrix(rows)
    blk = block_kernel_basis(M)
    assert len(blk) == len(kernel_basis(M))
    for v in blk:
        assert _zero(M.matvec(v))
