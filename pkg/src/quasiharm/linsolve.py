"""Exact linear algebra: fraction-free elimination, kernels, parameter loci."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ring import CPoly, CycloElem, RatFunc, cpoly_gcd, is_scalar, rational_roots

DEFAULT_SEED = 20240611


class ExactMatrix:
    """Dense rectangular matrix over a single exact domain."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.ncols = ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    def map(self, f) -> "ExactMatrix":
        return ExactMatrix([[f(x) for x in r] for r in self.rows], self.ncols)

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column mismatch")
        return ExactMatrix(self.rows + other.rows, self.ncols)

    def matvec(self, v: Sequence):
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def delete_column(self, j: int) -> "ExactMatrix":
        return ExactMatrix([r[:j] + r[j + 1:] for r in self.rows], self.ncols - 1)

    def domain(self) -> str:
        kinds = set()
        for r in self.rows:
            for x in r:
                if isinstance(x, CPoly):
                    kinds.add("poly")
                elif isinstance(x, RatFunc):
                    kinds.add("ratfunc")
                elif isinstance(x, CycloElem):
                    kinds.add("cyclo")
        if "ratfunc" in kinds:
            return "ratfunc"
        if "cyclo" in kinds:
            return "cyclo"
        if "poly" in kinds:
            return "poly"
        return "rat"

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"


def _exdiv(a, b):
    if isinstance(b, CPoly):
        if b.is_constant():
            b = b.constant_value()
        else:
            return CPoly.lift(a).exact_div(b)
    if isinstance(a, CPoly):
        return a * (Fraction(1) / Fraction(b))
    return a / b


@dataclass
class Elimination:
    rows: list
    pivot_cols: list
    pivots: list
    sign: int = 1

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def determinant(self, n: int):
        """Determinant of the (square) input, from the last pivot."""
        if self.rank < n:
            return 0
        return self.pivots[-1] * self.sign


def fraction_free_eliminate(M: ExactMatrix, reduced: bool = False) -> Elimination:
    """Bareiss elimination over an integral domain (Q or Q[c1, c2]).

    With ``reduced`` the rows above each pivot are cleared as well; then every
    pivot ends up equal to the last leading minor and all entries stay in the
    domain (fraction-free Gauss-Jordan).
    """
    A = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    prev = 1
    r = 0
    sign = 1
    pcols: list[int] = []
    pivs: list = []
    for col in range(nc):
        if r >= nr:
            break
        i0 = next((i for i in range(r, nr) if A[i][col]), None)
        if i0 is None:
            continue
        if i0 != r:
            A[r], A[i0] = A[i0], A[r]
            sign = -sign
        p = A[r][col]
        prow = A[r]
        targets = range(nr) if reduced else range(r + 1, nr)
        for i in targets:
            if i == r:
                continue
            row = A[i]
            a = row[col]
            for j in range(nc):
                if j == col:
                    continue
                x = row[j]
                y = prow[j]
                if not x and not (a and y):
                    continue
                v = p * x
                if a and y:
                    v = v - a * y
                row[j] = _exdiv(v, prev) if v else 0
            row[col] = 0
        if reduced:
            for k, c in enumerate(pcols):
                A_row = A[k]
                # diagonal entries of earlier pivot rows were rescaled above
                pivs[k] = A_row[c]
        prev = p
        pcols.append(col)
        pivs.append(p)
        r += 1
    return Elimination(A, pcols, pivs, sign)


def _gauss_field(M: ExactMatrix):
    """Reduced row echelon form over a field (Q, Q(c), cyclotomic)."""
    A = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    r = 0
    pcols = []
    for col in range(nc):
        if r >= nr:
            break
        i0 = next((i for i in range(r, nr) if A[i][col]), None)
        if i0 is None:
            continue
        A[r], A[i0] = A[i0], A[r]
        p = A[r][col]
        inv = _inverse(p)
        A[r] = [x * inv if x else 0 for x in A[r]]
        prow = A[r]
        for i in range(nr):
            if i != r and A[i][col]:
                a = A[i][col]
                A[i] = [x - a * y if y else x for x, y in zip(A[i], prow)]
        pcols.append(col)
        r += 1
    return A, pcols


def _inverse(p):
    if isinstance(p, CycloElem):
        return p.inverse()
    if isinstance(p, RatFunc):
        return 1 / p
    return Fraction(1) / p


def rank(M: ExactMatrix) -> int:
    d = M.domain()
    if d == "poly":
        return fraction_free_eliminate(M).rank
    if d == "rat":
        return fraction_free_eliminate(M).rank
    return len(_gauss_field(M)[1])


def rref(M: ExactMatrix):
    """Reduced echelon rows and pivot columns over a field domain."""
    return _gauss_field(M)


def kernel_basis(M: ExactMatrix) -> list[list]:
    """Basis of the right kernel.

    Over fields the vectors are echelon-normalized (entry 1 at their free
    coordinate). Over Q[c1, c2] the vectors are polynomial and primitive.
    """
    d = M.domain()
    nc = M.ncols
    if d == "poly":
        el = fraction_free_eliminate(M, reduced=True)
        free = [j for j in range(nc) if j not in el.pivot_cols]
        if not el.pivot_cols:
            return [[1 if j == f else 0 for j in range(nc)] for f in free]
        det = el.pivots[-1]
        out = []
        for f in free:
            v: list = [0] * nc
            v[f] = det
            for k, c in enumerate(el.pivot_cols):
                x = el.rows[k][f]
                v[c] = -x if x else 0
            out.append(_primitive_vector(v))
        return out
    A, pcols = _gauss_field(M)
    free = [j for j in range(nc) if j not in pcols]
    out = []
    for f in free:
        v = [0] * nc
        v[f] = 1
        for k, c in enumerate(pcols):
            x = A[k][f]
            v[c] = -x if x else 0
        out.append(v)
    return out


def _primitive_vector(v: list) -> list:
    polys = [CPoly.lift(x) for x in v if x]
    g = polys[0]
    for p in polys[1:]:
        if g.is_constant():
            break
        g = cpoly_gcd(g, p)
    if not g.is_constant():
        v = [CPoly.lift(x).exact_div(g) if x else 0 for x in v]
    lead = next(CPoly.lift(x) for x in v if x)
    cont = Fraction(0)
    from math import gcd

    num, den = 0, 1
    for x in v:
        if x:
            for a in CPoly.lift(x).terms.values():
                num = gcd(num, a.numerator)
                den = den * a.denominator // gcd(den, a.denominator)
    cont = Fraction(num, den)
    if lead.lc() < 0:
        cont = -cont
    return [CPoly.lift(x) * (1 / cont) if x else 0 for x in v]


def substitute_matrix(M: ExactMatrix, c1=0, c2=0) -> ExactMatrix:
    def ev(x):
        if isinstance(x, (CPoly, RatFunc)):
            return Fraction(x.evaluate(c1, c2))
        if isinstance(x, CycloElem):
            return CycloElem(x.m, [ev(a) for a in x.coeffs])
        return x
    return M.map(ev)


@dataclass
class ExceptionalLocus:
    generic_rank: int
    defect_polynomial: CPoly
    confirmed_values: list = field(default_factory=list)  # (value, rank)
    unevaluated_factors: list = field(default_factory=list)

    @property
    def values(self) -> list[Fraction]:
        return [v for v, _ in self.confirmed_values]


def rank_over_parameters(M: ExactMatrix, param: int = 0) -> ExceptionalLocus:
    """Generic rank over Q(c) and the rational values of c where it drops.

    Every nonzero maximal minor vanishes at a rank-drop value; the defect
    polynomial is the gcd of a few such minors, and each rational root is
    confirmed by substituting and recomputing the rank.
    """
    Mp = M.map(lambda x: CPoly.lift(x) if is_scalar(x) else x)
    el = fraction_free_eliminate(Mp)
    r = el.rank
    if r == 0:
        return ExceptionalLocus(0, CPoly.const(1))
    minors = [CPoly.lift(el.pivots[-1])]
    for variant in (_reverse_cols(Mp), _reverse_rows(Mp)):
        e2 = fraction_free_eliminate(variant)
        minors.append(CPoly.lift(e2.pivots[-1]))
    defect = minors[0]
    for mnr in minors[1:]:
        defect = cpoly_gcd(defect, mnr)
    defect = defect.primitive() if not defect.is_constant() else CPoly.const(1)
    confirmed = []
    leftover = defect
    for root in rational_roots(defect):
        c1, c2 = (root, 0) if param == 0 else (0, root)
        rk = rank(substitute_matrix(M, c1, c2))
        lin = CPoly.c1() - root if param == 0 else CPoly.c2() - root
        while lin.divides(leftover):
            leftover = leftover.exact_div(lin)
        if rk < r:
            confirmed.append((root, rk))
    unev = [] if leftover.is_constant() else [leftover.primitive().to_text()]
    return ExceptionalLocus(r, defect, confirmed, unev)


def _reverse_cols(M: ExactMatrix) -> ExactMatrix:
    return ExactMatrix([list(reversed(r)) for r in M.rows], M.ncols)


def _reverse_rows(M: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(list(reversed(M.rows)), M.ncols)


def restrict_to_line(M: ExactMatrix, a: Fraction, b: Fraction) -> ExactMatrix:
    """Two-parameter matrix restricted to c2 = a*c1 + b (entries in c1 only)."""
    line = CPoly.c1() * a + b

    def sub(x):
        if isinstance(x, CPoly):
            return x.compose(CPoly.c1(), line)
        return x
    return M.map(sub)


def seeded_rationals(count: int, seed: int = DEFAULT_SEED, exclude: Sequence = (), bound: int = 50) -> list[Fraction]:
    """Reproducible probe values p/q with |p| <= bound and 1 <= q <= bound."""
    rng = random.Random(seed)
    excl = {Fraction(x) for x in exclude}
    out: list[Fraction] = []
    while len(out) < count:
        v = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if v in excl or v in out:
            continue
        out.append(v)
    return out


def block_kernel_basis(M: ExactMatrix) -> list[list]:
    """Kernel basis computed per connected block of the nonzero pattern.

    Rows and columns sharing a nonzero entry are linked; each component is
    solved on its own, which keeps symbolic eliminations small whenever the
    operator respects a grading (e.g. rotation eigenspaces).
    """
    nc = M.ncols
    parent = list(range(nc))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    row_cols = []
    for r in M.rows:
        cols = [j for j, x in enumerate(r) if x]
        row_cols.append(cols)
        for j in cols[1:]:
            ra, rb = find(cols[0]), find(j)
            if ra != rb:
                parent[rb] = ra
    comps: dict = {}
    for j in range(nc):
        comps.setdefault(find(j), []).append(j)
    out = []
    for cols in sorted(comps.values()):
        cset = set(cols)
        rows = [[M.rows[i][j] for j in cols] for i, rc in enumerate(row_cols) if rc and rc[0] in cset]
        if not rows:
            vecs = [[1 if k == t else 0 for k in range(len(cols))] for t in range(len(cols))]
        else:
            vecs = kernel_basis(ExactMatrix(rows, len(cols)))
        for v in vecs:
            full = [0] * nc
            for j, x in zip(cols, v):
                full[j] = x
            out.append(full)
    return out
