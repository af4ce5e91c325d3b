"""Harmonic, quasiharmonic and truncated spaces and the objects built from them.

Parameter values ``c`` are accepted in several spellings:

* a rational (``Fraction``, ``int`` or a string such as ``"1/3"``), used for
  every reflection class;
* a tuple with one entry per class (two-class dihedral groups);
* ``"symbolic"`` for a single indeterminate c1, ``"symbolic2"`` for (c1, c2);
* a ``CPoly`` or a tuple of them.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Callable, Sequence

from .coxeter import GroupModel, partition_label, sym_char
from .dunkl import DunklContext, dihedral_F, dihedral_Y, dihedral_Ybar, nabla
from .linsolve import (
    DEFAULT_SEED,
    ExactMatrix,
    ExceptionalLocus,
    block_kernel_basis,
    fraction_free_eliminate,
    rank,
    rank_over_parameters,
    rref,
    seeded_rationals,
)
from .ring import (
    CPoly,
    CycloElem,
    MPoly,
    RatFunc,
    binom_param,
    monomials,
    normalize_content,
    normalize_rational,
    parse_poly,
    proportional,
    ratio,
)

Operator = Callable[[MPoly], MPoly]

# ---------------------------------------------------------------------------
# parameters and contexts

_ctx_cache: dict = {}
_ctx_lock = threading.Lock()


def resolve_c(group: GroupModel, c) -> tuple:
    """Normalize any accepted spelling of c to one value per class."""
    if c is None or c == "symbolic":
        vals: tuple = (CPoly.c1(),)
    elif c == "symbolic2":
        vals = (CPoly.c1(), CPoly.c2()) if group.class_count == 2 else (CPoly.c1(),)
    elif isinstance(c, (tuple, list)):
        vals = tuple(_one(x) for x in c)
    else:
        vals = (_one(c),)
    if len(vals) == 1 and group.class_count == 2:
        vals = (vals[0], vals[0])
    if len(vals) != group.class_count:
        raise ValueError(f"{group.name} takes {group.class_count} parameter value(s)")
    return vals


def _one(x):
    if isinstance(x, (CPoly, Fraction)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"unsupported parameter value {x!r}")


def context(group: GroupModel, c) -> DunklContext:
    vals = resolve_c(group, c)
    key = (group.kind, group.size, tuple(str(v) for v in vals))
    with _ctx_lock:
        ctx = _ctx_cache.get(key)
    if ctx is None:
        ctx = DunklContext(group, vals)
        with _ctx_lock:
            ctx = _ctx_cache.setdefault(key, ctx)
    return ctx


def is_symbolic(c) -> bool:
    if isinstance(c, str):
        return c.startswith("symbolic")
    if isinstance(c, (tuple, list)):
        return any(isinstance(x, CPoly) for x in c)
    return c is None or isinstance(c, CPoly)


def dihedral_param(ctx: DunklContext):
    """The c argument expected by the dihedral closed forms."""
    if ctx.group.class_count == 1 or ctx.c[0] == ctx.c[1]:
        return ctx.c[0]
    return tuple(ctx.c)


def parameter_point(c) -> tuple[Fraction, Fraction]:
    """(c1, c2) for evaluating symbolic results at a rational value."""
    if isinstance(c, (tuple, list)):
        a = _one(c[0])
        b = _one(c[1]) if len(c) > 1 else a
        return a, b
    v = _one(c)
    return v, v


# ---------------------------------------------------------------------------
# operators

def invariant_operator(ctx: DunklContext, index: int) -> Operator:
    """nabla of the index-th basic invariant (dihedral: closed forms)."""
    G = ctx.group
    if G.kind == "dihedral":
        m = G.size
        cc = dihedral_param(ctx)
        if index == 0:
            return lambda p: dihedral_F(m, cc, p)
        sign = -1 if m % 2 else 1

        def top(p: MPoly) -> MPoly:
            a = p
            b = p
            for _ in range(m):
                a = dihedral_Y(m, cc, a) if a else a
                b = dihedral_Ybar(m, cc, b) if b else b
            return a + b.scale(sign)
        return top
    f = G.dual_invariants[index]
    return lambda p: nabla(ctx, f, p)


def coordinate_operators(ctx: DunklContext) -> list[Operator]:
    """Dunkl operators along each coordinate direction."""
    G = ctx.group
    if G.kind == "dihedral":
        m = G.size
        cc = dihedral_param(ctx)
        return [lambda p: dihedral_Y(m, cc, p), lambda p: dihedral_Ybar(m, cc, p)]
    return [(lambda p, d=d: ctx.apply(d, p)) for d in range(len(G.directions))]


def dual_monomial_operator(ctx: DunklContext, e: tuple) -> Operator:
    """nabla of a monomial in the dual variables."""
    G = ctx.group
    if G.kind == "dihedral":
        ops = coordinate_operators(ctx)

        def apply(p: MPoly) -> MPoly:
            for d, k in enumerate(e):
                for _ in range(k):
                    if not p:
                        return p
                    p = ops[d](p)
            return p
        return apply
    mono = MPoly(G.dual_vars, {tuple(e): 1})
    return lambda p: nabla(ctx, mono, p)


def kind_bound(group: GroupModel, kind: str, d: int | None = None) -> int:
    """Generators of degree strictly below the bound are imposed."""
    if kind == "harmonic":
        return group.h + 1
    if kind == "quasiharmonic":
        return group.h
    if kind == "truncated":
        if d is None:
            raise ValueError("truncated spaces need a degree bound d")
        return d
    raise ValueError(f"unknown kind {kind!r}")


def operator_matrix(ops: Sequence[Operator], vars, columns: Sequence[MPoly]) -> ExactMatrix:
    """Stack the coefficient vectors of op(col) for every op into one matrix."""
    row_index: dict = {}
    entries: list[dict] = []
    for j, col in enumerate(columns):
        for k, op in enumerate(ops):
            img = op(col)
            for e, v in img.terms.items():
                key = (k, e)
                if key not in row_index:
                    row_index[key] = len(row_index)
                    entries.append({})
                entries[row_index[key]][j] = v
    nc = len(columns)
    rows = [[r.get(j, 0) for j in range(nc)] for r in entries]
    return ExactMatrix(rows, nc)


def _combine(vars, columns: Sequence[MPoly], vec: Sequence) -> MPoly:
    out = MPoly(vars)
    for col, x in zip(columns, vec):
        if x:
            out = out + col.scale(x)
    return out


# ---------------------------------------------------------------------------
# spaces

@dataclass
class QHSpace:
    group: GroupModel
    c: tuple
    degree: int
    basis: list
    kind: str = "quasiharmonic"
    bound: int | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def evaluate(self, c1, c2=None) -> list[MPoly]:
        c2 = c1 if c2 is None else c2
        return [b.eval_params(Fraction(c1), Fraction(c2)) for b in self.basis]

    def contains(self, p: MPoly) -> bool:
        """Whether p lies in the span (rational coefficients only)."""
        if not p:
            return True
        mons = sorted({e for b in self.basis for e in b.terms} | set(p.terms), reverse=True)
        M = ExactMatrix([[b.coeff(e) for e in mons] for b in self.basis], len(mons))
        M2 = ExactMatrix(M.rows + [[p.coeff(e) for e in mons]], len(mons))
        return rank(M2) == rank(M)


def space_matrix(group: GroupModel, c, n: int, kind: str = "quasiharmonic", d: int | None = None) -> tuple[ExactMatrix, list]:
    """Stacked operator matrix on the degree-n monomials, and those monomials."""
    ctx = context(group, c)
    bound = kind_bound(group, kind, d)
    ops = [invariant_operator(ctx, i) for i, dj in enumerate(group.exponents) if dj < bound]
    mons = group.monomial_basis(n)
    cols = [MPoly(group.vars, {e: 1}) for e in mons]
    return operator_matrix(ops, group.vars, cols), cols


def qh_space(group: GroupModel, c, n: int, kind: str = "quasiharmonic", d: int | None = None) -> QHSpace:
    """Common kernel of the invariant Dunkl operators below the kind's bound."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    M, cols = space_matrix(group, c, n, kind, d)
    vecs = block_kernel_basis(M)
    basis = [_combine(group.vars, cols, v) for v in vecs]
    return QHSpace(group, resolve_c(group, c), n, basis, kind, kind_bound(group, kind, d))


def generic_dimension(group: GroupModel, n: int, kind: str = "quasiharmonic", d: int | None = None) -> int:
    return qh_space(group, "symbolic", n, kind, d).dim


# ---------------------------------------------------------------------------
# deformed invariants

@dataclass
class DeformedInvariant:
    group: GroupModel
    degree: int
    polynomial: MPoly
    coords: dict  # generator exponent tuple -> coefficient
    c: tuple
    content_normalized: bool = True

    def evaluate(self, c1, c2=None) -> "DeformedInvariant":
        c2 = c1 if c2 is None else c2
        ev = lambda v: Fraction(v.evaluate(c1, c2)) if isinstance(v, (CPoly, RatFunc)) else v
        return DeformedInvariant(
            self.group, self.degree, self.polynomial.eval_params(Fraction(c1), Fraction(c2)),
            {k: ev(v) for k, v in self.coords.items()}, (Fraction(c1), Fraction(c2)), False)

    def as_generator_polynomial(self, names: Sequence[str] | None = None) -> MPoly:
        """The invariant written in the basic invariants (default names g1..gl)."""
        names = tuple(names) if names else tuple(f"g{i + 1}" for i in range(self.group.rank))
        return MPoly(names, {k: v for k, v in self.coords.items() if v})

    def generator_form(self, names: Sequence[str] | None = None) -> MPoly:
        """as_generator_polynomial with primitive content and a fixed sign."""
        p = self.as_generator_polynomial(names)
        if any(isinstance(v, (CPoly, RatFunc)) for v in p.terms.values()):
            return normalize_content(p)
        return normalize_rational(p)


def deformed_invariant(group: GroupModel, d: int, c="symbolic") -> DeformedInvariant:
    """The invariant of degree d killed by the invariant Dunkl operators of
    lower degree (degrees beyond h only see generators below h)."""
    if d not in group.exponents and d % group.h:
        raise ValueError(f"degree {d} is neither a basic degree nor a multiple of h={group.h}")
    ctx = context(group, c)
    bound = min(d, group.h)
    ops = [invariant_operator(ctx, i) for i, dj in enumerate(group.exponents) if dj < bound]
    exps = group.invariant_exponents(d)
    cols = group.invariant_basis(d)
    if ops:
        M = operator_matrix(ops, group.vars, cols)
        vecs = block_kernel_basis(M) if M.nrows else [[1 if i == j else 0 for i in range(len(cols))] for j in range(len(cols))]
    else:
        vecs = [[1 if i == j else 0 for i in range(len(cols))] for j in range(len(cols))]
    if len(vecs) != 1:
        raise ArithmeticError(f"invariant space in degree {d} has dimension {len(vecs)}, expected 1")
    v = vecs[0]
    raw = _combine(group.vars, cols, v)
    symbolic = any(isinstance(x, CPoly) for x in ctx.c)
    poly = normalize_content(raw) if symbolic else normalize_rational(raw)
    if symbolic:
        poly = MPoly(poly.vars, {e: (x.constant_value() if isinstance(x, CPoly) and x.is_constant() else x) for e, x in poly.terms.items()})
    s = ratio(poly, raw)
    if isinstance(s, RatFunc):
        s = s.as_cpoly() if s.is_poly() else s
    coords = {}
    for e, x in zip(exps, v):
        if x:
            y = x * s
            if isinstance(y, RatFunc) and y.is_poly():
                y = y.as_cpoly()
            if isinstance(y, CPoly) and y.is_constant():
                y = y.constant_value()
            coords[tuple(e)] = y
    return DeformedInvariant(group, d, poly, coords, ctx.c)


def reference_invariant(group: GroupModel, d: int, two_class: bool = False) -> MPoly | None:
    """Known closed form of the deformed invariant of degree d, or None.

    Symmetric groups: a polynomial in the basic invariants g1, g2, ...
    (g_i of degree i + 1).  Dihedral groups: a polynomial in z, zb.
    """
    if group.kind == "symmetric":
        n = group.size
        names = tuple(f"g{i + 1}" for i in range(group.rank))
        if d in (2, 3) and d <= n:
            return MPoly(names, {tuple(int(j == d - 2) for j in range(group.rank)): 1})
        if d == 4 and n >= 4:
            text = f"{Fraction((n - 2) * (n - 3), 2)}*(1 - {n}*c1)*g1^2 + ({n * n * (n - 1)}*c1 - {n * (n + 1)})*g3"
        elif d == 5 and n >= 5:
            text = f"{(n - 3) * (n - 4)}*(1 - {n}*c1)*g1*g2 + ({n * n * (n - 1)}*c1 - {n * (n + 5)})*g4"
        elif d == 8 and n == 4:
            text = ("(16*c1^2 - 32*c1 + 27)*g1^4 - 24*(16*c1^2 - 40*c1 + 29)*g1^2*g3"
                    " - 24*(12*c1 - 13)*g1*g2^2 + 48*(12*c1 - 13)*(4*c1 - 5)*g3^2")
        else:
            return None
        return parse_poly(text, names, params=True)
    m = group.size
    if d == 2:
        return parse_poly("z*zb", group.vars)
    if d == m:
        if two_class:
            if m % 2:
                raise ValueError("two-class parameters need even m")
            sign = "-" if (m // 2) % 2 else "+"
            return parse_poly(f"(c1 + c2 - 1)*(z^{m} + zb^{m}) {sign} 2*(c2 - c1)*z^{m // 2}*zb^{m // 2}",
                              group.vars, params=True)
        sign = "-" if m % 2 else "+"
        return parse_poly(f"z^{m} {sign} zb^{m}", group.vars)
    return None


def matches_reference(inv: DeformedInvariant, two_class: bool = False) -> bool | None:
    """Up-to-scalar agreement with the closed form (None when there is none)."""
    ref = reference_invariant(inv.group, inv.degree, two_class)
    if ref is None:
        return None
    mine = inv.as_generator_polynomial() if inv.group.kind == "symmetric" else inv.polynomial
    mine = MPoly(mine.vars, {e: CPoly.lift(v) for e, v in mine.terms.items()})
    ref = MPoly(ref.vars, {e: CPoly.lift(v) for e, v in ref.terms.items()})
    return proportional(mine, ref)


def exceptional_locus(group: GroupModel, n: int, kind: str = "quasiharmonic", d: int | None = None) -> ExceptionalLocus:
    """Generic rank of the defining operator matrix and its rational drop values."""
    M, _ = space_matrix(group, "symbolic", n, kind, d)
    return rank_over_parameters(M)


def is_invariant(group: GroupModel, p: MPoly) -> bool:
    return all(s.act(p) == p for s in group.reflections)


def algebraic_independence_check(invariants: Sequence[DeformedInvariant], c0=None, seed: int = DEFAULT_SEED) -> bool:
    """Full-rank Jacobian in the basic-invariant coordinates at a random point."""
    if not invariants:
        return True
    G = invariants[0].group
    ell = G.rank
    if len(invariants) != ell:
        return False
    polys = []
    for inv in invariants:
        if c0 is not None:
            c1, c2 = parameter_point(c0)
            inv = inv.evaluate(c1, c2)
        polys.append(inv.as_generator_polynomial())
    point = seeded_rationals(ell, seed)
    rows = []
    for p in polys:
        if any(isinstance(v, (CPoly, RatFunc)) for v in p.terms.values()):
            raise ValueError("evaluate symbolic invariants (pass c0) before the check")
        row = []
        for j in range(ell):
            dp = p.diff(j)
            val = Fraction(0)
            for e, v in dp.terms.items():
                t = Fraction(v)
                for x, k in zip(point, e):
                    t *= x ** k
                val += t
            row.append(val)
        rows.append(row)
    return rank(ExactMatrix(rows, ell)) == ell


# ---------------------------------------------------------------------------
# group elements and isotypic projection

def permutation_action(group: GroupModel, perm: Sequence[int], p: MPoly) -> MPoly:
    """x_i -> x_perm(i) (0-based perm of 0..n-1) in the difference coordinates."""
    n = group.size
    gens = MPoly.gens(group.vars)
    zero = MPoly(group.vars)

    def x(i):
        return gens[i] if i < n - 1 else zero
    bindings = {group.vars[k]: x(perm[k]) - x(perm[n - 1]) for k in range(n - 1)}
    return p.substitute(bindings)


def _cycle_type(perm: Sequence[int]) -> tuple:
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        j, k = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


def _independent(vars, polys: Sequence[MPoly]) -> list[MPoly]:
    polys = [p for p in polys if p]
    if not polys:
        return []
    mons = sorted({e for p in polys for e in p.terms}, reverse=True)
    M = ExactMatrix([[p.coeff(e) for e in mons] for p in polys], len(mons))
    if M.domain() == "poly":
        el = fraction_free_eliminate(M)
        rows = el.rows[: el.rank]
        return [normalize_content(MPoly(vars, {mons[j]: x for j, x in enumerate(r) if x})) for r in rows]
    A, pcols = rref(M)
    return [MPoly(vars, {mons[j]: x for j, x in enumerate(r) if x}) for r in A[: len(pcols)]]


def _rationalize_poly(p: MPoly) -> MPoly:
    out = {}
    for e, v in p.terms.items():
        if isinstance(v, CycloElem):
            if not v.is_rational():
                raise ArithmeticError("projection left irrational coefficients")
            v = v.rational_part()
        if v:
            out[e] = v
    return MPoly(p.vars, out)


def project_isotypic(group: GroupModel, label: str, polys: Sequence[MPoly]) -> list[MPoly]:
    """Images of polys under the (unnormalized) isotypic projector."""
    label = group.alias(label)
    out = []
    if group.kind == "dihedral" and label.startswith("Z"):
        m, k = group.size, int(label[1:])
        keep = {k % m, (-k) % m}
        for p in polys:
            out.append(MPoly(p.vars, {e: v for e, v in p.terms.items() if (e[0] - e[1]) % m in keep}))
        return out
    if group.kind == "dihedral":
        classes = group.element_classes()
        for p in polys:
            acc = MPoly(p.vars)
            for _, act, chars in classes:
                ch = chars[label]
                if ch:
                    acc = acc + act(p).scale(ch)
            out.append(_rationalize_poly(acc))
        return out
    lam = next(tuple(int(x) for x in label.strip("[]").split(",")) for lab, _ in group.irreducibles() if lab == label)
    n = group.size
    perms = list(itertools.permutations(range(n)))
    for p in polys:
        acc = MPoly(p.vars)
        for perm in perms:
            ch = sym_char(lam, _cycle_type(perm))
            if ch:
                acc = acc + permutation_action(group, perm, p).scale(ch)
        out.append(acc)
    return out


def _probe_value(group: GroupModel, c, seed: int = DEFAULT_SEED) -> tuple[Fraction, Fraction]:
    vals = resolve_c(group, c)
    if not any(isinstance(v, CPoly) for v in vals):
        return parameter_point(vals)
    a, b = seeded_rationals(2, seed)
    return (a, b) if any(isinstance(v, CPoly) and v.uses_c2() for v in vals) else (a, a)


def multiplicities(space: QHSpace, seed: int = DEFAULT_SEED) -> dict:
    """Irreducible multiplicities of a space (symbolic spaces at a probe value)."""
    G = space.group
    basis = space.basis
    if any(isinstance(v, CPoly) for v in space.c):
        c1, c2 = _probe_value(G, space.c, seed)
        basis = space.evaluate(c1, c2)
        if len(_independent(G.vars, basis)) != space.dim:
            raise ArithmeticError("probe value is special for this space; choose another seed")
    return G.decompose_module(basis)


def isotypic_component(group: GroupModel, c, n: int, target: str = "V", space: QHSpace | None = None) -> list[MPoly]:
    """Basis of the unique copy of ``target`` inside QH_n^(c)."""
    space = space or qh_space(group, c, n)
    label = group.alias(target)
    mult = multiplicities(space).get(label, 0)
    if mult == 0:
        return []
    if mult > 1:
        raise ValueError(f"{label} occurs {mult} times in degree {n}; unsupported")
    return _independent(group.vars, project_isotypic(group, label, space.basis))


# ---------------------------------------------------------------------------
# singular vectors and Jack-type polynomials

def singular_vectors(group: GroupModel, c0, n: int) -> list[MPoly]:
    """Basis of the degree-n polynomials killed by every coordinate Dunkl operator."""
    ctx = context(group, c0)
    cols = [MPoly(group.vars, {e: 1}) for e in group.monomial_basis(n)]
    M = operator_matrix(coordinate_operators(ctx), group.vars, cols)
    if not M.nrows:
        return cols if n > 0 else []
    return [_combine(group.vars, cols, v) for v in block_kernel_basis(M)]


def jack_f(n_vars: int, i: int, r: int, c) -> MPoly:
    """[u^r] of prod_j (1 - x_j u)^c / (1 - x_i u) in the variables x1..xn."""
    if not 1 <= i <= n_vars:
        raise ValueError("index out of range")
    c = CPoly.c1() if c is None or c == "symbolic" else (c if isinstance(c, CPoly) else _one(c))
    vars = tuple(f"x{k}" for k in range(1, n_vars + 1))
    xs = MPoly.gens(vars)
    # series as list of homogeneous pieces, truncated at u^r
    series = [MPoly.const(vars, 1)] + [MPoly(vars)] * r
    for j in range(n_vars):
        factor = [(xs[j] ** k).scale(binom_param(c, k) * (-1) ** k) for k in range(r + 1)]
        series = _series_mul(series, factor, r)
    geo = [xs[i - 1] ** k for k in range(r + 1)]
    return _series_mul(series, geo, r)[r]


def _series_mul(a: list, b: list, r: int) -> list:
    out = [MPoly(a[0].vars) for _ in range(r + 1)]
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(r + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + x * b[j]
    return out


def translation_project(group: GroupModel, f: MPoly) -> MPoly:
    """f(x - mean(x)) written in the difference coordinates of S_n."""
    n = group.size
    gens = MPoly.gens(group.vars)
    mean = MPoly(group.vars)
    for g in gens:
        mean = mean + g
    mean = mean.scale(Fraction(1, n))
    bindings = {}
    for k, name in enumerate(f.vars):
        bindings[name] = (gens[k] if k < n - 1 else MPoly(group.vars)) - mean
    return f.substitute(bindings, group.vars)


def jack_is_singular(group: GroupModel, r: int, i: int = 1) -> bool:
    """Whether the centered jack_f of degree r at c = r/n is killed by every coordinate operator."""
    n = group.size
    c0 = Fraction(r, n)
    f = translation_project(group, jack_f(n, i, r, c0))
    if not f:
        return False
    return all(not op(f) for op in coordinate_operators(context(group, c0)))


def generator_names(group: GroupModel) -> tuple[str, ...]:
    """Readable names e_d for the basic invariants, in exponent order."""
    return tuple(f"e{d}" for d in group.exponents)


def is_singular_value(group: GroupModel, c) -> bool:
    """Known singular constants: k/d for a basic degree d with d not dividing k, c > 0.

    For dihedral groups this adds l + 1/2 (covered by d = 2).
    """
    c = Fraction(c)
    if c <= 0:
        return False
    return any((c * d).denominator == 1 and (c * d).numerator % d for d in group.exponents)


def regular_probes(group: GroupModel, count: int, seed: int = DEFAULT_SEED, exclude: Sequence = ()) -> list[Fraction]:
    """Seeded rational probes avoiding the known singular constants and ``exclude``."""
    out: list[Fraction] = []
    s = seed
    while len(out) < count:
        for v in seeded_rationals(count * 3, s, exclude):
            if not is_singular_value(group, v) and v not in out:
                out.append(v)
                if len(out) == count:
                    break
        s += 1
    return out


def singular_candidates(group: GroupModel, kmax: int | None = None) -> list[Fraction]:
    """Positive constants k/d (d a basic degree, d not dividing k, k <= kmax)."""
    kmax = 2 * group.h if kmax is None else kmax
    vals = {Fraction(k, d) for d in group.exponents for k in range(1, kmax + 1) if k % d}
    return sorted(vals)


def singular_scan(group: GroupModel, values: Sequence, degmax: int) -> dict:
    """For each c, the degrees 1..degmax carrying singular vectors and their dimensions."""
    out = {}
    for c0 in values:
        c0 = Fraction(c0)
        hits = []
        for n in range(1, degmax + 1):
            k = len(singular_vectors(group, c0, n))
            if k:
                hits.append((n, k))
        out[c0] = hits
    return out


# ---------------------------------------------------------------------------
# the S_n family q_{i,r}

@dataclass
class QStep:
    r: int
    q: list  # q_{1,r}, ..., q_{n,r}
    alpha: object  # r - n c
    raw_factor: object  # nabla_{x_n} q_{n,r} / q_{n,r-1} before rescaling
    verified: bool
    sum_vanishes: bool | None


@dataclass
class QFamily:
    group: GroupModel
    c: object
    steps: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.verified and s.sum_vanishes is not False for s in self.steps)


def _scale_poly(p: MPoly, s) -> MPoly:
    out = p.scale(s)
    return MPoly(out.vars, {e: _simplify(v) for e, v in out.terms.items()})


def _simplify(v):
    if isinstance(v, RatFunc) and v.is_poly():
        v = v.as_cpoly()
    if isinstance(v, CPoly) and v.is_constant():
        v = v.constant_value()
    return v


def q_family(group: GroupModel, r_max: int, c="symbolic") -> QFamily:
    """Build q_{i,r} for r = 1..r_max and normalize to alpha_r = r - n c."""
    if group.kind != "symmetric":
        raise ValueError("the q-family is defined for symmetric groups")
    n = group.size
    ctx = context(group, c)
    cval = ctx.c[0]
    fam = QFamily(group, cval)
    one = MPoly.const(group.vars, 1)
    prev = [one] * n
    sub_perms = [p + (n - 1,) for p in itertools.permutations(range(n - 1))]
    for r in range(1, r_max + 1):
        if r % n == 0:
            qn = deformed_invariant(group, r, ctx.c).polynomial
        else:
            comp = isotypic_component(group, ctx.c, r, "V")
            if not comp:
                raise ArithmeticError(f"no defining module in degree {r}")
            qn = None
            for b in comp:
                acc = MPoly(group.vars)
                for perm in sub_perms:
                    acc = acc + permutation_action(group, perm, b)
                if acc:
                    qn = acc
                    break
            if qn is None:
                raise ArithmeticError("no S_{n-1}-invariant vector in the defining copy")
        image = ctx.apply(n - 1, qn)
        beta = ratio(image, prev[n - 1])
        if beta is None or not beta:
            raise ArithmeticError(f"normalization impossible at r={r}")
        alpha = cval * (-n) + r
        qn = _scale_poly(qn, _simplify(RatFunc.lift(alpha) / RatFunc.lift(beta)) if isinstance(beta, (CPoly, RatFunc)) or isinstance(alpha, CPoly) else Fraction(alpha) / beta)
        if r % n == 0:
            qs = [qn] * n
        else:
            qs = [group.transposition(i, n).act(qn) for i in range(1, n)] + [qn]
        verified = all(_diff_zero(ctx.apply(i, qs[i]), prev[i].scale(alpha)) for i in range(n))
        total = None
        if r % n:
            acc = MPoly(group.vars)
            for q in qs:
                acc = acc + q
            total = not any(_simplify(v) for v in acc.terms.values())
        fam.steps.append(QStep(r, qs, _simplify(alpha), _simplify(beta), verified, total))
        prev = qs
    return fam


def _diff_zero(a: MPoly, b: MPoly) -> bool:
    d = a - b
    return not any(_simplify(v) for v in d.terms.values())


# ---------------------------------------------------------------------------
# generation by the top-degree invariants

def _diff_op(f: MPoly, p: MPoly) -> MPoly:
    """f(d/dw) applied to p (both in the same variables)."""
    out = MPoly(p.vars)
    for e, v in f.terms.items():
        cur = p
        for k, a in enumerate(e):
            for _ in range(a):
                if not cur:
                    break
                cur = cur.diff(k)
        if cur:
            out = out + cur.scale(v)
    return out


def classical_dual_harmonics(group: GroupModel, degree: int) -> list[MPoly]:
    """Dual polynomials killed by f(d/dy) for all basic invariants f (c = 0)."""
    vars = group.dual_vars
    ops = list(group.dual_invariants)
    if group.kind == "symmetric":
        ops = [MPoly(vars, {tuple(1 if j == i else 0 for j in range(len(vars))): 1 for i in range(len(vars))})] + ops
    cols = [MPoly(vars, {e: 1}) for e in monomials(len(vars), degree)]
    M = operator_matrix([(lambda p, f=f: _diff_op(f, p)) for f in ops], vars, cols)
    if not M.nrows:
        return cols
    return [_combine(vars, cols, v) for v in block_kernel_basis(M)]


def top_invariant(group: GroupModel, k: int, c0) -> MPoly:
    """e_{kh} at a rational c0, falling back to the specialized symbolic one."""
    try:
        return deformed_invariant(group, k * group.h, c0).polynomial
    except ArithmeticError:
        c1, c2 = parameter_point(c0)
        return deformed_invariant(group, k * group.h, "symbolic").polynomial.eval_params(c1, c2)


def generation_check(group: GroupModel, c0, n: int) -> bool:
    """Whether the derivatives of e_{kh} by dual harmonics span QH_n^(c0)."""
    if n == 0:
        return True
    ctx = context(group, c0)
    space = qh_space(group, c0, n)
    top_harm = sum(d - 1 for d in group.exponents)
    images = []
    k = max(1, ceil(n / group.h))
    while k * group.h - n <= top_harm:
        e = top_invariant(group, k, c0)
        for p in classical_dual_harmonics(group, k * group.h - n):
            acc = MPoly(group.vars)
            for mono, v in p.terms.items():
                acc = acc + dual_monomial_operator(ctx, mono)(e).scale(v)
            images.append(acc)
        k += 1
    span = _independent(group.vars, images)
    if len(span) != space.dim:
        return False
    return all(space.contains(p) for p in span)


# ---------------------------------------------------------------------------
# Hilbert series and character tables

def _series(num_degrees: Sequence[int], den_degrees: Sequence[int], nmax: int, ell: int = 0) -> list[int]:
    """Coefficients of prod(1 - t^a) / (prod(1 - t^b) (1 - t)^ell)."""
    s = [0] * (nmax + 1)
    s[0] = 1
    for a in num_degrees:
        s = [s[i] - (s[i - a] if i >= a else 0) for i in range(nmax + 1)]
    for b in list(den_degrees) + [1] * ell:
        for i in range(b, nmax + 1):
            s[i] += s[i - b]
    return s


def predicted_series(group: GroupModel, kind: str, nmax: int, d: int | None = None) -> dict:
    """Closed-form dimension, trivial and defining multiplicity series."""
    bound = kind_bound(group, kind, d)
    imposed = [dj for dj in group.exponents if dj < bound]
    free = [dj for dj in group.exponents if dj >= bound]
    dims = _series(imposed, [], nmax, group.rank)
    triv = _series([], free, nmax)
    base = _series([], free, nmax)
    std = [0] * (nmax + 1)
    for dj in group.exponents:
        for i in range(dj - 1, nmax + 1):
            std[i] += base[i - dj + 1]
    return {"dim": dims, "1": triv, "V": std}


def mutdef_multiplicity(group: GroupModel, r: int) -> int:
    """[V : QH_r] for regular c, r >= 1, from the residue of r mod h."""
    h = group.h
    hits = [dj for dj in group.exponents if (dj - 1) % h == r % h]
    return len(hits)


@dataclass
class HilbertRow:
    degree: int
    dim: int
    multiplicities: dict
    predicted_dim: int
    predicted_trivial: int
    predicted_defining: int

    @property
    def matches(self) -> bool:
        return (self.dim == self.predicted_dim
                and self.multiplicities.get("1", 0) == self.predicted_trivial
                and self.multiplicities.get("V", 0) == self.predicted_defining)


def hilbert_table(group: GroupModel, c, kind: str = "quasiharmonic", n_max: int = 8, d: int | None = None) -> list[HilbertRow]:
    """Dimensions and multiplicities per degree next to the closed forms."""
    pred = predicted_series(group, kind, n_max, d)
    triv, std = group.alias("1"), group.alias("V")
    rows = []
    for n in range(n_max + 1):
        sp = qh_space(group, c, n, kind, d)
        mult = multiplicities(sp)
        named = dict(mult)
        named["1"] = mult.get(triv, 0)
        named["V"] = mult.get(std, 0)
        rows.append(HilbertRow(n, sp.dim, named, pred["dim"][n], pred["1"][n], pred["V"][n]))
    return rows
