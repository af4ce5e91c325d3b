"""Symmetric and dihedral reflection groups acting on polynomials.

S_n acts on translation-invariant polynomials, written in the difference
coordinates v_i = x_i - x_n (so x_n = 0). I2(m) acts on C[z, zb] with
s_j(z) = -zeta^j zb and s_j(zb) = -zeta^-j z.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Sequence

from .linsolve import ExactMatrix, rref
from .ring import CycloElem, MPoly, monomials


@dataclass(frozen=True, eq=False)
class Reflection:
    id: int
    label: str
    root: tuple            # coefficients of the root as a linear form in the group variables
    coroot: tuple          # <linear form, coroot> for each variable
    class_index: int
    images: tuple          # image of each variable (linear MPoly)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def root_poly(self, vars) -> MPoly:
        n = len(vars)
        return MPoly(vars, {tuple(int(i == k) for i in range(n)): a for k, a in enumerate(self.root) if a})

    def act_monomial(self, e: tuple) -> MPoly:
        r = self._cache.get(e)
        if r is None:
            vars = self.images[0].vars
            r = MPoly.const(vars, 1)
            for img, k in zip(self.images, e):
                if k:
                    r = r * img ** k
            self._cache[e] = r
        return r

    def act(self, p: MPoly) -> MPoly:
        out = MPoly(p.vars)
        for e, v in p.terms.items():
            out = out + self.act_monomial(e).scale(v)
        return out


class GroupModel:
    """A realized finite reflection group (S_n or I2(m))."""

    def __init__(self, kind: str, size: int):
        if kind not in ("symmetric", "dihedral"):
            raise ValueError(f"unsupported group kind {kind!r}")
        self.kind = kind
        self.size = size
        if kind == "symmetric":
            if size < 2:
                raise ValueError("S_n needs n >= 2")
            self._build_symmetric(size)
        else:
            if size < 3:
                raise ValueError("I2(m) needs m >= 3")
            self._build_dihedral(size)
        self.h = self.exponents[-1]
        self.rank = len(self.vars)

    # construction ---------------------------------------------------
    def _build_symmetric(self, n: int):
        vars = tuple(f"v{i}" for i in range(1, n))
        self.vars = vars
        self.cyclo = None
        self.name = f"S{n}"
        gens = MPoly.gens(vars)

        def x(i):  # ambient coordinate x_i in v-coordinates, 1-based
            return gens[i - 1] if i < n else MPoly(vars)

        refl = []
        self._transposition_index = {}
        for i, j in combinations(range(1, n + 1), 2):
            # (i j) swaps x_i, x_j; v_k = x_k - x_n
            def img(k, i=i, j=j):
                perm = {i: j, j: i}
                a = perm.get(k, k)
                b = perm.get(n, n)
                return x(a) - x(b)
            images = tuple(img(k) for k in range(1, n))
            root_poly = x(i) - x(j)
            root = tuple(root_poly.coeff(tuple(int(t == k) for t in range(n - 1))) for k in range(n - 1))
            coroot = tuple(
                Fraction((gens[k] - images[k]).exact_divide(root_poly).coeff((0,) * (n - 1)))
                if gens[k] != images[k] else Fraction(0)
                for k in range(n - 1)
            )
            self._transposition_index[(i, j)] = len(refl)
            refl.append(Reflection(len(refl), f"({i} {j})", root, coroot, 0, images))
        self.reflections = refl
        self.class_count = 1
        self.exponents = tuple(range(2, n + 1))
        # centered coordinates y_i = x_i - mean(x)
        mean = sum((x(i) for i in range(1, n + 1)), MPoly(vars)).scale(Fraction(1, n))
        ys = [x(i) - mean for i in range(1, n + 1)]
        self.invariant_generators = tuple(_elementary(ys, k, vars) for k in self.exponents)
        self.dual_vars = tuple(f"y{i}" for i in range(1, n + 1))
        ygens = MPoly.gens(self.dual_vars)
        self.dual_invariants = tuple(_elementary(list(ygens), k, self.dual_vars) for k in self.exponents)
        # derivative direction of the ambient d/dx_i in v-coordinates
        dirs = []
        for i in range(1, n + 1):
            if i < n:
                dirs.append(tuple(Fraction(int(k == i - 1)) for k in range(n - 1)))
            else:
                dirs.append(tuple(Fraction(-1) for _ in range(n - 1)))
        self.directions = tuple(dirs)

    def _build_dihedral(self, m: int):
        vars = ("z", "zb")
        self.vars = vars
        self.cyclo = m
        self.name = f"I2({m})"
        refl = []
        for j in range(m):
            zj = CycloElem.zeta(m, j)
            zmj = CycloElem.zeta(m, -j)
            images = (MPoly(vars, {(0, 1): -zj}), MPoly(vars, {(1, 0): -zmj}))
            root = (CycloElem.scalar(m, 1), zj)
            coroot = (CycloElem.scalar(m, 1), zmj)
            # c1 sits on the odd reflections; this is the labeling under which the
            # two-class closed forms agree with the reflection sum
            cls = ((j + 1) % 2) if m % 2 == 0 else 0
            refl.append(_DihedralReflection(j, f"s{j}", root, coroot, cls, images, m=m))
        self.reflections = refl
        self.class_count = 2 if m % 2 == 0 else 1
        self.exponents = (2, m)
        z, zb = MPoly.gens(vars)
        sign = (-1) ** m
        self.invariant_generators = (z * zb, z ** m + zb ** m * sign)
        self.dual_vars = ("w", "wb")
        w, wb = MPoly.gens(self.dual_vars)
        self.dual_invariants = (w * wb, w ** m + wb ** m * sign)
        self.directions = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))

    # basic data -----------------------------------------------------
    def __repr__(self):
        return f"GroupModel({self.name})"

    @property
    def order(self) -> int:
        return factorial(self.size) if self.kind == "symmetric" else 2 * self.size

    def gens(self) -> tuple:
        return MPoly.gens(self.vars)

    def monomial_basis(self, d: int) -> list:
        return monomials(len(self.vars), d)

    def transposition(self, i: int, j: int) -> Reflection:
        if i > j:
            i, j = j, i
        return self.reflections[self._transposition_index[(i, j)]]

    # action ---------------------------------------------------------
    def act(self, word: Sequence[int], p: MPoly) -> MPoly:
        """Apply the product of reflections in ``word`` (rightmost first)."""
        for k in reversed(list(word)):
            p = self.reflections[k].act(p)
        return p

    def invariant_basis(self, k: int) -> list:
        """Monomials in the invariant generators of total degree k."""
        out = []
        for exps in _weighted_compositions(self.exponents, k):
            p = MPoly.const(self.vars, 1)
            for g, a in zip(self.invariant_generators, exps):
                if a:
                    p = p * g ** a
            out.append(p)
        return out

    def invariant_exponents(self, k: int) -> list:
        return _weighted_compositions(self.exponents, k)

    # representation theory -----------------------------------------
    def irreducibles(self) -> list:
        """(label, dimension) for every irreducible representation."""
        if self.kind == "symmetric":
            return [(partition_label(lam), sym_char(lam, (1,) * self.size)) for lam in partitions(self.size)]
        m = self.size
        out = [("1", 1), ("eps", 1)]
        if m % 2 == 0:
            out += [("mu1", 1), ("mu2", 1)]
        out += [(f"Z{k}", 2) for k in range(1, (m + 1) // 2) if 2 * k < m]
        return out

    def alias(self, label: str) -> str:
        """Common names: 1, eps, V (defining), V*eps; otherwise unchanged."""
        if self.kind == "dihedral":
            return {"V": "Z1"}.get(label, label)
        n = self.size
        table = {
            "1": (n,),
            "eps": (1,) * n,
            "V": (n - 1, 1),
            "V*eps": (2,) + (1,) * (n - 2),
        }
        if label in table:
            return partition_label(table[label])
        return label

    def element_classes(self) -> list:
        """(weight, action callable, {irrep label: character value}) per class."""
        return _class_data(self)

    def decompose_module(self, basis: Sequence[MPoly]) -> dict:
        """Multiplicity of each irreducible in the span of ``basis``.

        The span must be stable under every reflection; this is checked.
        Coefficients must be rational (evaluate parameters first).
        """
        basis = [b for b in basis]
        if not basis:
            return {lab: 0 for lab, _ in self.irreducibles()}
        mons = sorted({e for b in basis for e in b.terms}, reverse=True)
        A, pcols = rref(ExactMatrix([[b.coeff(e) for e in mons] for b in basis]))
        rows = A[: len(pcols)]
        ech = [MPoly(self.vars, {mons[j]: x for j, x in enumerate(r) if x}) for r in rows]
        piv = [mons[c] for c in pcols]

        def coords(p: MPoly):
            cs = [p.coeff(e) for e in piv]
            resid = p
            for cf, b in zip(cs, ech):
                if cf:
                    resid = resid - b.scale(cf)
            if resid:
                raise ValueError("span is not stable under the group")
            return cs

        for r in self.reflections:
            for b in ech:
                coords(r.act(b))
        mult = {}
        traces = []
        for weight, action, chars in self.element_classes():
            tr = 0
            for i, b in enumerate(ech):
                cf = action(b).coeff(piv[i])
                tr = tr + cf
            traces.append((weight, tr, chars))
        for lab, dim in self.irreducibles():
            tot = 0
            for weight, tr, chars in traces:
                ch = chars[lab]
                if isinstance(ch, CycloElem):
                    ch = ch.conj()
                tot = tot + tr * ch * weight
            if isinstance(tot, CycloElem):
                tot = tot.rational_part()
            val = Fraction(tot) / self.order
            if val.denominator != 1 or val < 0:
                raise ArithmeticError(f"non-integral multiplicity {val} for {lab}")
            mult[lab] = int(val)
        if sum(mult[lab] * dim for lab, dim in self.irreducibles()) != len(ech):
            raise ArithmeticError("character inner products do not add up to the dimension")
        return mult


class _DihedralReflection(Reflection):
    def __init__(self, *args, m: int):
        super().__init__(*args)
        object.__setattr__(self, "m", m)

    def act_monomial(self, e):
        r = self._cache.get(e)
        if r is None:
            a, b = e
            coef = CycloElem.zeta(self.m, self.id * (a - b)) * ((-1) ** (a + b))
            r = MPoly(("z", "zb"), {(b, a): coef})
            self._cache[e] = r
        return r


def _elementary(xs: list, k: int, vars) -> MPoly:
    tot = MPoly(vars)
    for combo in combinations(xs, k):
        t = MPoly.const(vars, 1)
        for f in combo:
            t = t * f
        tot = tot + t
    return tot


def _weighted_compositions(weights: Sequence[int], k: int) -> list:
    """Exponent tuples a with sum a_i * w_i = k, in descending lex order."""
    if not weights:
        return [()] if k == 0 else []
    w = weights[0]
    out = []
    for a in range(k // w, -1, -1):
        for rest in _weighted_compositions(weights[1:], k - a * w):
            out.append((a,) + rest)
    return out


# ---------------------------------------------------------------------------
# symmetric group characters (Murnaghan-Nakayama)

def partitions(n: int, maxpart: int | None = None) -> list:
    if maxpart is None:
        maxpart = n
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - k, k):
            out.append((k,) + rest)
    return out


def partition_label(lam) -> str:
    return "[" + ",".join(str(x) for x in lam) + "]"


@lru_cache(maxsize=None)
def sym_char(lam: tuple, mu: tuple) -> int:
    """Character of the irreducible S_n-module lam at cycle type mu."""
    if not mu:
        return 1 if sum(lam) == 0 else 0
    k, rest = mu[0], mu[1:]
    L = len(lam)
    beta = [lam[i] + (L - 1 - i) for i in range(L)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        between = sum(1 for x in beta if nb < x < b)
        newb = sorted((bset - {b}) | {nb}, reverse=True)
        newlam = tuple(x for x in (newb[i] - (L - 1 - i) for i in range(L)) if x > 0)
        total += (-1) ** between * sym_char(newlam, rest)
    return total


def _class_size(n: int, mu: tuple) -> int:
    z = 1
    counts: dict = {}
    for p in mu:
        counts[p] = counts.get(p, 0) + 1
    for p, c in counts.items():
        z *= p ** c * factorial(c)
    return factorial(n) // z


_class_cache: dict = {}
_class_lock = threading.Lock()


def _class_data(G: GroupModel) -> list:
    key = (G.kind, G.size)
    with _class_lock:
        if key in _class_cache:
            return _class_cache[key]
    out = []
    if G.kind == "symmetric":
        n = G.size
        labs = [(partition_label(lam), lam) for lam in partitions(n)]
        for mu in partitions(n):
            word = []
            start = 1
            for part in mu:
                for t in range(start, start + part - 1):
                    word.append(G._transposition_index[(t, t + 1)])
                start += part
            chars = {lab: sym_char(lam, mu) for lab, lam in labs}
            out.append((_class_size(n, mu), (lambda p, w=tuple(word): G.act(w, p)), chars))
    else:
        m = G.size
        irr = G.irreducibles()
        for t in range(m):
            chars = {}
            for lab, _ in irr:
                if lab == "1" or lab == "eps":
                    chars[lab] = 1
                elif lab in ("mu1", "mu2"):
                    chars[lab] = (-1) ** t
                else:
                    k = int(lab[1:])
                    chars[lab] = CycloElem.zeta(m, k * t) + CycloElem.zeta(m, -k * t)
            out.append((1, (lambda p, t=t: rotate(p, m, t)), chars))
        for j in range(m):
            chars = {}
            for lab, _ in irr:
                if lab == "1":
                    chars[lab] = 1
                elif lab == "eps":
                    chars[lab] = -1
                elif lab == "mu1":
                    chars[lab] = (-1) ** j
                elif lab == "mu2":
                    chars[lab] = -((-1) ** j)
                else:
                    chars[lab] = 0
            out.append((1, (lambda p, j=j: G.reflections[j].act(p)), chars))
    with _class_lock:
        _class_cache[key] = out
    return out


def rotate(p: MPoly, m: int, t: int) -> MPoly:
    """gamma^t with gamma = s0 s1: P(z, zb) -> P(zeta^t z, zeta^-t zb)."""
    return MPoly(p.vars, {e: CycloElem.zeta(m, t * (e[0] - e[1])) * v for e, v in p.terms.items()})


_group_cache: dict = {}
_group_lock = threading.Lock()


def build_group(kind: str, size: int) -> GroupModel:
    """Memoized GroupModel constructor (``kind`` is 'symmetric' or 'dihedral')."""
    key = (kind, size)
    with _group_lock:
        g = _group_cache.get(key)
    if g is None:
        g = GroupModel(kind, size)
        with _group_lock:
            _group_cache.setdefault(key, g)
            g = _group_cache[key]
    return g


def parse_group(desc: str) -> GroupModel:
    """'Sn:4' or 'I2:5'."""
    try:
        kind, size = desc.split(":")
        size = int(size)
    except ValueError:
        raise ValueError(f"bad group descriptor {desc!r}") from None
    if kind.lower() in ("sn", "s", "a"):
        return build_group("symmetric", size)
    if kind.lower() in ("i2", "i"):
        return build_group("dihedral", size)
    raise ValueError(f"unsupported group kind {kind!r}")
