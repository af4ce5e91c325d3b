"""Standard Frobenius algebras: characteristic polynomials and graded dimensions.

A graded quotient A = Q[x]/J with one-dimensional top piece A_N is encoded by
a degree-N form p_A that annihilates J_N under the apolar pairing
<y^(a), x^b> = delta_{ab}, where y^(a) = y^a / a! is a divided power.
Forms are stored with ordinary coefficients and converted on demand.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .coxeter import GroupModel
from .linsolve import ExactMatrix, fraction_free_eliminate, kernel_basis, rank
from .ring import CycloElem, MPoly, monomials


def _efact(e: Sequence[int]) -> int:
    return prod(factorial(a) for a in e)


def to_divided(p: MPoly) -> dict:
    """Coefficients u_e with p = sum u_e x^(e)."""
    return {e: v * _efact(e) for e, v in p.terms.items()}


def from_divided(vars, coeffs: dict) -> MPoly:
    """The form sum u_e x^(e) with ordinary coefficients."""
    return MPoly(vars, {tuple(e): v * Fraction(1, _efact(e)) for e, v in coeffs.items() if v})


def apolar_pairing(p: MPoly, q: MPoly):
    u = to_divided(p)
    tot = 0
    for e, v in q.terms.items():
        if e in u:
            tot = tot + u[e] * v
    return tot


def hilbert_factor(degrees: Sequence[int], nvars: int) -> list[int]:
    """Coefficients of prod (1 - t^d) / (1 - t)^nvars, a polynomial for nvars = #degrees."""
    top = sum(d - 1 for d in degrees)
    s = [0] * (top + 1)
    s[0] = 1
    for d in degrees:
        new = [0] * (top + 1)
        for i, x in enumerate(s):
            if x:
                for j in range(d):
                    if i + j <= top:
                        new[i + j] += x
        s = new
    return s


# ---------------------------------------------------------------------------

@dataclass
class FrobeniusData:
    rank: int
    socle_degree: int
    charpoly: MPoly
    dims: list

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_symmetric(self) -> bool:
        return self.dims == self.dims[::-1]


class IdealDegrees:
    """Degreewise spans of a homogeneous ideal given by generators."""

    def __init__(self, generators: Sequence[MPoly], vars=None):
        gens = [g for g in generators if g]
        if not gens:
            raise ValueError("need at least one nonzero generator")
        self.vars = tuple(vars) if vars is not None else gens[0].vars
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError("generators must be homogeneous")
        self.generators = gens
        self._cache: dict = {}

    def component(self, k: int):
        """(monomials of degree k, echelon rows spanning J_k, pivot columns)."""
        if k in self._cache:
            return self._cache[k]
        nv = len(self.vars)
        mons = monomials(nv, k)
        idx = {e: i for i, e in enumerate(mons)}
        rows = []
        for g in self.generators:
            d = g.degree()
            if d > k:
                continue
            for mult in monomials(nv, k - d):
                row = [0] * len(mons)
                for e, v in g.terms.items():
                    row[idx[tuple(a + b for a, b in zip(e, mult))]] = v
                rows.append(row)
        if rows:
            el = fraction_free_eliminate(ExactMatrix(rows, len(mons)))
            basis = el.rows[: el.rank]
            pcols = el.pivot_cols
        else:
            basis, pcols = [], []
        self._cache[k] = (mons, basis, pcols)
        return self._cache[k]

    def quotient_dim(self, k: int) -> int:
        mons, basis, _ = self.component(k)
        return len(mons) - len(basis)

    def contains(self, p: MPoly) -> bool:
        if not p:
            return True
        if not p.is_homogeneous():
            return all(self.contains(p.homogeneous_part(d)) for d in {sum(e) for e in p.terms})
        k = p.degree()
        mons, basis, _ = self.component(k)
        if not basis:
            return False
        row = [p.coeff(e) for e in mons]
        return rank(ExactMatrix(basis + [row], len(mons))) == len(basis)

    def graded_dims(self, cap: int) -> list[int]:
        """Quotient dims up to the first vanishing degree (error past cap)."""
        dims = []
        for k in range(cap + 1):
            d = self.quotient_dim(k)
            if d == 0:
                return dims
            dims.append(d)
        raise ArithmeticError(f"quotient still nonzero in degree {cap}; not finite-dimensional below the cap")


def charpoly_from_ideal(generators: Sequence[MPoly], vars=None, cap: int | None = None) -> FrobeniusData:
    """Characteristic form of Q[x]/J and its graded dims.

    When the top piece is not one-dimensional a ValueError is raised; when
    lower degrees carry a radical for the multiplication pairing, the
    returned dims are those of the quotient by that radical.
    """
    ideal = IdealDegrees(generators, vars)
    nv = len(ideal.vars)
    if cap is None:
        cap = sum(g.degree() - 1 for g in ideal.generators) + 1 if len(ideal.generators) == nv else 64
    dims = ideal.graded_dims(cap)
    N = len(dims) - 1
    mons, basis, _ = ideal.component(N)
    if dims[N] != 1:
        raise ValueError(f"top quotient degree {N} has dimension {dims[N]}; not standard Frobenius")
    if basis:
        ker = kernel_basis(ExactMatrix(basis, len(mons)))
    else:
        ker = [[1]]
    if len(ker) != 1:
        raise ValueError("annihilator of the top ideal component is not one-dimensional")
    p = from_divided(ideal.vars, {e: v for e, v in zip(mons, ker[0]) if v})
    p = _normalize(p)
    fdims = derivative_span_dims(p)
    return FrobeniusData(nv, N, p, fdims)


def _normalize(p: MPoly) -> MPoly:
    from .ring import normalize_rational
    return normalize_rational(p)


# ---------------------------------------------------------------------------
# derivative spans and Hankel matrices

def derivatives(p: MPoly, order: int) -> list[MPoly]:
    """All partial derivatives of the given order."""
    out = []
    for e in monomials(len(p.vars), order):
        q = p
        for i, a in enumerate(e):
            for _ in range(a):
                if not q:
                    break
                q = q.diff(i)
        if q:
            out.append(q)
    return out


def _span_rank(polys: Sequence[MPoly]) -> int:
    polys = [q for q in polys if q]
    if not polys:
        return 0
    mons = sorted({e for q in polys for e in q.terms}, reverse=True)
    return rank(ExactMatrix([[q.coeff(e) for e in mons] for q in polys], len(mons)))


def graded_dims_from_charpoly(p: MPoly, k: int) -> int:
    """dim A_k = rank of the span of order-(N-k) partial derivatives of p."""
    N = p.degree()
    if not 0 <= k <= N:
        raise ValueError("k out of range")
    return _span_rank(derivatives(p, N - k))


def derivative_span_dims(p: MPoly) -> list[int]:
    return [graded_dims_from_charpoly(p, k) for k in range(p.degree() + 1)]


def essentially_dependent(p: MPoly) -> bool:
    """First partials linearly independent (p uses every variable)."""
    return _span_rank(derivatives(p, 1)) == len(p.vars)


def binary_divided_coeffs(p: MPoly) -> list:
    """c_i with p = sum c_i x1^(i) x2^(N-i)."""
    if len(p.vars) != 2:
        raise ValueError("binary form expected")
    N = p.degree()
    u = to_divided(p)
    return [u.get((i, N - i), 0) for i in range(N + 1)]


def hankel_matrix(p: MPoly, k: int) -> ExactMatrix:
    c = binary_divided_coeffs(p)
    N = len(c) - 1
    return ExactMatrix([[c[i + j] for j in range(N - k + 1)] for i in range(k + 1)], N - k + 1)


def hankel_rank(p: MPoly, k: int) -> int:
    return rank(hankel_matrix(p, k))


# ---------------------------------------------------------------------------
# rank-2 minors construction

def _binary_coeffs(R: MPoly, deg: int) -> list:
    return [R.coeff((i, deg - i)) for i in range(deg + 1)]


def _det(rows: list) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    el = fraction_free_eliminate(ExactMatrix(rows, n))
    return el.determinant(n)


def resultant(R1: MPoly, R2: MPoly):
    """Sylvester resultant of two binary forms of equal degree."""
    d = R1.degree()
    if R2.degree() != d:
        raise ValueError("forms of equal degree expected")
    a, b = _binary_coeffs(R1, d), _binary_coeffs(R2, d)
    size = 2 * d
    rows = []
    for coeffs in (a, b):
        for s in range(d):
            row = [0] * size
            for i, x in enumerate(coeffs):
                row[s + i] = x
            rows.append(row)
    return _det(rows)


def minors_matrix(R1: MPoly, R2: MPoly) -> ExactMatrix:
    """2n x (2n+1) matrix of shifted coefficients of R1 then R2 (degree n+1)."""
    d = R1.degree()
    n = d - 1
    a, b = _binary_coeffs(R1, d), _binary_coeffs(R2, d)
    rows = []
    for coeffs in (a, b):
        for s in range(n):
            row = [0] * (2 * n + 1)
            for i, x in enumerate(coeffs):
                row[s + i] = x
            rows.append(row)
    return ExactMatrix(rows, 2 * n + 1)


def charpoly_rank2_minors(R1: MPoly, R2: MPoly) -> MPoly:
    """p_A = sum u_i x1^(i) x2^(2n-i), u_i the signed maximal minors."""
    if len(R1.vars) != 2 or R1.vars != R2.vars:
        raise ValueError("binary forms in the same two variables expected")
    if not (R1.is_homogeneous() and R2.is_homogeneous()) or R1.degree() != R2.degree():
        raise ValueError("generators must be binary forms of the same degree")
    if not resultant(R1, R2):
        raise ValueError("generators are not coprime (resultant vanishes)")
    U = minors_matrix(R1, R2)
    n2 = U.ncols - 1
    u = {}
    for i in range(n2 + 1):
        v = _det(U.delete_column(i).rows)
        if v:
            u[(i, n2 - i)] = v if i % 2 == 0 else -v
    return from_divided(R1.vars, u)


# ---------------------------------------------------------------------------
# products and restriction

def product_charpolys(pA: MPoly, pB: MPoly, mode: str = "internal") -> MPoly:
    if mode == "internal":
        if pA.vars != pB.vars:
            raise ValueError("internal product needs identical variables")
        return pA * pB
    if mode == "tensor":
        clash = set(pA.vars) & set(pB.vars)
        bvars = tuple(f"{v}'" if v in clash else v for v in pB.vars)
        vars = tuple(pA.vars) + bvars
        a = MPoly(vars, {e + (0,) * len(bvars): v for e, v in pA.terms.items()})
        b = MPoly(vars, {(0,) * len(pA.vars) + e: v for e, v in pB.terms.items()})
        return a * b
    raise ValueError(f"unknown mode {mode!r}")


def restrict(p: MPoly, basis: Sequence[Sequence], names: Sequence[str] | None = None) -> MPoly:
    """p restricted to span(basis), in coordinates t1..tk along the basis."""
    k = len(basis)
    names = tuple(names) if names else tuple(f"t{i + 1}" for i in range(k))
    ts = MPoly.gens(names)
    bindings = {}
    for i, v in enumerate(p.vars):
        img = MPoly(names)
        for j in range(k):
            if basis[j][i]:
                img = img + ts[j].scale(Fraction(basis[j][i]))
        bindings[v] = img
    out = p.substitute(bindings, names)
    if not out:
        raise ValueError("restriction vanishes identically")
    return out


# ---------------------------------------------------------------------------
# coinvariants and a fixed corpus of complete intersections

def root_product(group: GroupModel) -> MPoly:
    """Product of all reflection roots, with rational coefficients."""
    p = MPoly.const(group.vars, 1)
    for s in group.reflections:
        p = p * s.root_poly(group.vars)
    out = {}
    for e, v in p.terms.items():
        if isinstance(v, CycloElem):
            if not v.is_rational():
                raise ArithmeticError("root product is not rational")
            v = v.rational_part()
        if v:
            out[e] = v
    return MPoly(p.vars, out)


def invariant_gram(group: GroupModel) -> list:
    """Gram matrix of a W-invariant bilinear form on the coordinate functions."""
    k = len(group.vars)
    if group.kind == "dihedral":
        return [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    # v_i = x_i - x_n: <v_i, v_j> = delta_ij + 1
    return [[Fraction(1 + (i == j)) for j in range(k)] for i in range(k)]


def dual_to_primal(group: GroupModel, p: MPoly) -> MPoly:
    """Transport a form on the dual space to the coordinate side via the invariant form."""
    G = invariant_gram(group)
    k = len(G)
    inv = _invert(G)
    gens = MPoly.gens(group.vars)
    bindings = {}
    for a, name in enumerate(p.vars):
        img = MPoly(group.vars)
        for j in range(k):
            if inv[a][j]:
                img = img + gens[j].scale(inv[a][j])
        bindings[name] = img
    return p.substitute(bindings, group.vars)


def _invert(G: list) -> list:
    from .linsolve import rref
    k = len(G)
    aug = ExactMatrix([list(G[i]) + [Fraction(int(i == j)) for j in range(k)] for i in range(k)], 2 * k)
    A, pcols = rref(aug)
    if pcols[:k] != list(range(k)):
        raise ArithmeticError("singular Gram matrix")
    return [row[k:] for row in A[:k]]


def coinvariant_data(group: GroupModel) -> FrobeniusData:
    return charpoly_from_ideal(group.invariant_generators, group.vars)


@dataclass
class CorpusEntry:
    name: str
    generators: list
    degrees: list
    group: GroupModel | None = None


def complete_intersection_corpus() -> list[CorpusEntry]:
    """Fixed complete intersections: coinvariants and hand-picked forms."""
    from .coxeter import build_group
    out = []
    for kind, size in (("symmetric", 3), ("symmetric", 4), ("dihedral", 3), ("dihedral", 4), ("dihedral", 5), ("dihedral", 6)):
        G = build_group(kind, size)
        out.append(CorpusEntry(f"coinvariants {G.name}", list(G.invariant_generators), list(G.exponents), G))
    x, y = MPoly.gens(("x1", "x2"))
    out.append(CorpusEntry("monomial (3,4)", [x ** 3, y ** 4], [3, 4]))
    out.append(CorpusEntry("binary (2,2)", [x ** 2 + y ** 2, x * y], [2, 2]))
    out.append(CorpusEntry("binary (3,3)", [x ** 3 - x * y ** 2 + y ** 3, x ** 2 * y + 2 * x * y ** 2], [3, 3]))
    out.append(CorpusEntry("binary (2,5)", [x ** 2 - 3 * x * y, y ** 5 + x ** 4 * y], [2, 5]))
    u, v, w = MPoly.gens(("x1", "x2", "x3"))
    out.append(CorpusEntry("monomial (2,2,3)", [u ** 2, v ** 2, w ** 3], [2, 2, 3]))
    out.append(CorpusEntry("ternary (2,2,2)", [u ** 2 + v * w, v ** 2 + u * w, w ** 2 + u * v.scale(2)], [2, 2, 2]))
    return out


def corpus_checks(entry: CorpusEntry) -> dict:
    """Degree, dimension, Hilbert factor, derivative-span and Hankel checks for one entry."""
    gens = entry.generators
    vars = gens[0].vars
    data = charpoly_from_ideal(gens, vars)
    ideal_dims = IdealDegrees(gens, vars).graded_dims(sum(d - 1 for d in entry.degrees) + 1)
    out = {
        "socle_degree": data.socle_degree == sum(d - 1 for d in entry.degrees),
        "total_dim": data.total_dim == prod(entry.degrees),
        "hilbert_factor": ideal_dims == hilbert_factor(entry.degrees, len(vars)),
        "derivative_spans": data.dims == ideal_dims,
        "essential": essentially_dependent(data.charpoly),
    }
    if len(vars) == 2:
        N = data.socle_degree
        out["hankel"] = all(hankel_rank(data.charpoly, k) == ideal_dims[k] for k in range(N + 1))
    if entry.group is not None:
        from .ring import proportional
        out["root_product"] = proportional(dual_to_primal(entry.group, data.charpoly), root_product(entry.group))
    return {"flags": out, "dims": ideal_dims, "charpoly": data.charpoly}
