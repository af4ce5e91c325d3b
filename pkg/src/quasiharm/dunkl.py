"""Dunkl operators: generic reflection sums, dihedral closed forms, sl2 triple."""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

from .coxeter import GroupModel
from .ring import CPoly, CycloElem, MPoly, is_scalar


class DunklContext:
    """A group together with a parameter value per reflection class.

    ``c`` entries may be rationals or ``CPoly`` (symbolic c1, c2).
    """

    def __init__(self, group: GroupModel, c: Sequence):
        c = tuple(Fraction(x) if isinstance(x, int) else x for x in c)
        if len(c) == 1 and group.class_count == 2:
            c = (c[0], c[0])
        if len(c) != group.class_count:
            raise ValueError(f"{group.name} needs {group.class_count} parameter value(s)")
        self.group = group
        self.c = c
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def symbolic(cls, group: GroupModel, two_class: bool = True) -> "DunklContext":
        if group.class_count == 2 and two_class:
            return cls(group, (CPoly.c1(), CPoly.c2()))
        return cls(group, (CPoly.c1(),) * group.class_count)

    def is_symbolic(self) -> bool:
        return any(isinstance(x, CPoly) for x in self.c)

    def abs_c(self):
        """|c| = (2/l) * sum over reflections of c(s)."""
        tot = 0
        for s in self.group.reflections:
            tot = tot + self.c[s.class_index]
        return tot * Fraction(2, self.group.rank)

    def key(self):
        return (self.group.kind, self.group.size, tuple(str(x) for x in self.c))

    # single-direction operator on a monomial -------------------------
    def _apply_mono(self, d, e: tuple) -> MPoly:
        ck = (d, e)
        r = self._cache.get(ck)
        if r is not None:
            return r
        G = self.group
        vars = G.vars
        y = G.directions[d] if isinstance(d, int) else d
        mono = MPoly(vars, {e: 1})
        res = MPoly(vars)
        for k, yk in enumerate(y):
            if yk and e[k]:
                res = res + mono.diff(k).scale(yk)
        by_class: list = [MPoly(vars) for _ in range(G.class_count)]
        for s in G.reflections:
            pair = 0
            for yk, ak in zip(y, s.root):
                if yk and ak:
                    pair = pair + yk * ak
            if not pair:
                continue
            by_class[s.class_index] = by_class[s.class_index] + reflection_difference(s, e, vars).scale(pair)
        for ci, part in enumerate(by_class):
            if part:
                res = res - _rationalize(part).scale(self.c[ci])
        with self._lock:
            self._cache[ck] = res
        return res

    def apply(self, d, q: MPoly) -> MPoly:
        out = MPoly(self.group.vars)
        for e, v in q.terms.items():
            out = out + self._apply_mono(d, e).scale(v)
        return out


_diff_lock = threading.Lock()


def reflection_difference(s, e: tuple, vars) -> MPoly:
    """(x^e - s(x^e)) / alpha_s, by exact division."""
    cache = s._cache
    key = ("D", e)
    r = cache.get(key)
    if r is None:
        mono = MPoly(vars, {e: 1})
        num = mono - s.act_monomial(e)
        r = num.exact_divide(s.root_poly(vars)) if num else MPoly(vars)
        with _diff_lock:
            cache[key] = r
    return r


def _rationalize(p: MPoly) -> MPoly:
    if all(not isinstance(v, CycloElem) or v.is_rational() for v in p.terms.values()):
        return MPoly(p.vars, {e: (v.rational_part() if isinstance(v, CycloElem) else v) for e, v in p.terms.items()})
    return p


def dunkl_apply(ctx: DunklContext, y, q: MPoly) -> MPoly:
    """Dunkl operator along direction y (index into group.directions or a vector)."""
    if not isinstance(y, int):
        y = tuple(y)
    return ctx.apply(y, q)


def nabla(ctx: DunklContext, p: MPoly, q: MPoly) -> MPoly:
    """Action of a polynomial p in the dual variables via commuting Dunkl operators."""
    G = ctx.group
    if p.vars != G.dual_vars:
        raise ValueError(f"dual polynomial must be in {G.dual_vars}")
    out = MPoly(G.vars)
    for e, v in p.terms.items():
        cur = q
        for d, k in enumerate(e):
            for _ in range(k):
                if not cur:
                    break
                cur = ctx.apply(d, cur)
        if cur:
            out = out + cur.scale(v)
    return out


def pairing(ctx: DunklContext, p: MPoly, q: MPoly):
    """<p, q>_c: zero unless degrees match, else the constant of nabla_p(q)."""
    if not p or not q:
        return 0
    if not (p.is_homogeneous() and q.is_homogeneous()) or p.degree() != q.degree():
        return 0
    r = nabla(ctx, p, q)
    return r.coeff((0,) * len(q.vars))


# ---------------------------------------------------------------------------
# dihedral closed forms (rational coefficients)

def _split_c(m: int, c):
    if isinstance(c, (tuple, list)):
        if len(c) == 1:
            return c[0], None
        if m % 2:
            raise ValueError("two-class parameters need even m")
        c1, c2 = c
        return c1, c2
    return c, None


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _swap(p: MPoly) -> MPoly:
    return MPoly(p.vars, {(e[1], e[0]): v for e, v in p.terms.items()})


def _y_mono(m: int, c1, c2, a: int, b: int) -> dict:
    out: dict = {}

    def add(e, v):
        if v:
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)

    if a:
        add((a - 1, b), Fraction(a))
    if c2 is None:
        if a >= b:
            for k in range(0, (a - b - 1) // m + 1 if a - b - 1 >= 0 else 0):
                add((a - m * k - 1, b + m * k), -m * _sign(m * k) * c1)
        else:
            for k in range(1, (b - a) // m + 1):
                add((a + m * k - 1, b - m * k), m * _sign(m * k) * c1)
    else:
        h = m // 2
        if a >= b:
            top = (2 * (a - b - 1)) // m if a - b - 1 >= 0 else -1
            for k in range(0, top + 1):
                coef = _sign(k) * c1 + c2
                add((a - 1 - h * k, b + h * k), -h * _sign(h * k) * coef)
        else:
            for k in range(1, (2 * (b - a)) // m + 1):
                coef = _sign(k) * c1 + c2
                add((a - 1 + h * k, b - h * k), h * _sign(h * k) * coef)
    return out


def dihedral_Y(m: int, c, p: MPoly) -> MPoly:
    """Closed-form Dunkl operator along d/dz on C[z, zb].

    ``c`` is a single value (one class) or a pair (c1, c2) for even m.
    """
    c1, c2 = _split_c(m, c)
    out = MPoly(p.vars)
    for (a, b), v in p.terms.items():
        out = out + MPoly(p.vars, _y_mono(m, c1, c2, a, b)).scale(v)
    return out


def dihedral_Ybar(m: int, c, p: MPoly) -> MPoly:
    return _swap(dihedral_Y(m, c, _swap(p)))


def _f_mono(m: int, c1, c2, a: int, b: int) -> dict:
    if a < b:
        return {(e[1], e[0]): v for e, v in _f_mono(m, c1, c2, b, a).items()}
    out: dict = {}

    def add(e, v):
        if v:
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)

    if c2 is None:
        if b:
            add((a - 1, b - 1), (m * c1 - a) * b)
        for k in range(1, (a - b) // m + 1):
            if b + m * k - 1 >= 0:
                add((a - m * k - 1, b + m * k - 1), -m * _sign(m * k) * (a - b - m * k) * c1)
    else:
        h = m // 2
        if b:
            add((a - 1, b - 1), ((c1 + c2) * h - a) * b)
        for k in range(1, (2 * (a - b)) // m + 1):
            coef = _sign(k) * c1 + c2
            add((a - 1 - h * k, b - 1 + h * k), -h * _sign(h * k) * (a - b - h * k) * coef)
    return out


def dihedral_F(m: int, c, p: MPoly) -> MPoly:
    """Closed form of F = -nabla_{e2} on C[z, zb]."""
    c1, c2 = _split_c(m, c)
    out = MPoly(p.vars)
    for (a, b), v in p.terms.items():
        out = out + MPoly(p.vars, _f_mono(m, c1, c2, a, b)).scale(v)
    return out


def _mc(m: int, c):
    c1, c2 = _split_c(m, c)
    if c2 is None:
        return c1 * m
    return (c1 + c2) * Fraction(m, 2)


def sl2_triple(m: int, c):
    """Operators (E, F, H): multiplication by z*zb, F = -nabla_{e2}, and the
    shifted Euler operator (degree + 1 - m c)."""
    mc = _mc(m, c)

    def E(p: MPoly) -> MPoly:
        z, zb = MPoly.gens(p.vars)
        return p * (z * zb)

    def F(p: MPoly) -> MPoly:
        return dihedral_F(m, c, p)

    def H(p: MPoly) -> MPoly:
        return MPoly(p.vars, {e: v * (1 - mc + sum(e)) for e, v in p.terms.items()})

    return E, F, H


def commutator(A, B, p: MPoly) -> MPoly:
    return A(B(p)) - B(A(p))


def closed_form_mismatches(m: int, c, degmax: int) -> list[tuple[str, tuple]]:
    """Monomials of degree <= degmax where Y, Ybar or F differ from the reflection sums."""
    from .coxeter import build_group
    G = build_group("dihedral", m)
    vals = tuple(c) if isinstance(c, (tuple, list)) else (c,)
    ctx = DunklContext(G, vals)
    cc = c if isinstance(c, (tuple, list)) and len(c) == 2 and c[0] != c[1] else vals[0]
    e2 = G.dual_invariants[0]
    bad = []
    for d in range(degmax + 1):
        for a in range(d + 1):
            p = MPoly(G.vars, {(a, d - a): 1})
            if ctx.apply(0, p) != dihedral_Y(m, cc, p):
                bad.append(("Y", (a, d - a)))
            if ctx.apply(1, p) != dihedral_Ybar(m, cc, p):
                bad.append(("Ybar", (a, d - a)))
            if nabla(ctx, e2, p).scale(-1) != dihedral_F(m, cc, p):
                bad.append(("F", (a, d - a)))
    return bad


def sl2_mismatches(m: int, c, degmax: int) -> list[tuple[str, tuple]]:
    """Monomials of degree <= degmax violating [E,F]=H, [H,E]=2E or [H,F]=-2F."""
    E, F, H = sl2_triple(m, c)
    bad = []
    for d in range(degmax + 1):
        for a in range(d + 1):
            p = MPoly(("z", "zb"), {(a, d - a): 1})
            if commutator(E, F, p) != H(p):
                bad.append(("EF", (a, d - a)))
            if commutator(H, E, p) != E(p).scale(2):
                bad.append(("HE", (a, d - a)))
            if commutator(H, F, p) != F(p).scale(-2):
                bad.append(("HF", (a, d - a)))
    return bad
