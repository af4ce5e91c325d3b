"""Exact coefficient domains and sparse multivariate polynomials.

Coefficient ladder (promotion is always explicit):

* ``Fraction`` -- the rationals (aliased ``Rat``)
* ``CPoly`` -- polynomials in the parameters ``c1``, ``c2`` over the rationals
* ``RatFunc`` -- reduced quotients of two ``CPoly``
* ``CycloElem`` -- residues modulo the m-th cyclotomic polynomial, with
  coefficients in either the rationals or ``CPoly``

``MPoly`` holds a map from exponent vectors to coefficients of any of these.
Plain ints and Fractions are treated as scalars of every domain.

>>> z, zb = MPoly.gens(("z", "zb"))
>>> str(z * zb)
'z*zb'
>>> c = CPoly.c1()
>>> p = (c - 1) * z**3 - c * zb**3
>>> str(p)
'(c1-1)*z^3 - c1*zb^3'
>>> parse_poly(str(p), ("z", "zb")) == p
True
"""
from __future__ import annotations

import json
import re
import threading
from fractions import Fraction
from math import gcd as igcd
from typing import Callable, Iterable, Sequence

Rat = Fraction
PARAMS = ("c1", "c2")
NEG_INF = float("-inf")
"""Degree of the zero polynomial."""

Exp = tuple


def _grlex_key(e: Sequence[int]):
    return (sum(e), tuple(e))


def monomials(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree d, in descending term order."""
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - a):
            out.append((a,) + rest)
    return out


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction))


# ---------------------------------------------------------------------------
# dense univariate helpers over Q (lists, low degree first)

def _utrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _uadd(a, b):
    n = max(len(a), len(b))
    return _utrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _usub(a, b):
    n = max(len(a), len(b))
    return _utrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _umul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _utrim(out)


def _udivmod(a, b):
    a = list(a)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    while len(a) >= len(b) and a:
        f = a[-1] / lb
        s = len(a) - len(b)
        q[s] = f
        for i, y in enumerate(b):
            a[s + i] -= f * y
        _utrim(a)
    return _utrim(q), a


def _ugcd(a, b):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        a, b = b, _udivmod(a, b)[1]
    if not a:
        return []
    lc = Fraction(a[-1])
    return [Fraction(x) / lc for x in a]


# ---------------------------------------------------------------------------

class CPoly:
    """Polynomial in the parameters c1, c2 with rational coefficients.

    Terms are stored as ``{(a1, a2): Fraction}`` without zero entries.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: dict | None = None):
        t = {}
        if terms:
            for e, v in terms.items():
                if v:
                    t[(int(e[0]), int(e[1]))] = Fraction(v)
        self._t = t
        self._hash = None

    @classmethod
    def const(cls, v) -> "CPoly":
        return cls({(0, 0): v})

    @classmethod
    def c1(cls) -> "CPoly":
        return cls({(1, 0): 1})

    @classmethod
    def c2(cls) -> "CPoly":
        return cls({(0, 1): 1})

    @classmethod
    def lift(cls, x) -> "CPoly":
        if isinstance(x, CPoly):
            return x
        if is_scalar(x):
            return cls.const(x)
        raise TypeError(f"cannot lift {type(x).__name__} to CPoly")

    @property
    def terms(self) -> dict:
        return self._t

    def items(self):
        return sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __bool__(self):
        return bool(self._t)

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, CPoly):
            return self._t == other._t
        if is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and (0, 0) in self._t)

    def constant_value(self) -> Fraction:
        return self._t.get((0, 0), Fraction(0))

    def uses_c2(self) -> bool:
        return any(e[1] for e in self._t)

    def degree(self):
        return max((e[0] + e[1] for e in self._t), default=NEG_INF)

    def deg_in(self, i: int) -> int:
        return max((e[i] for e in self._t), default=-1)

    def leading(self):
        e = max(self._t, key=_grlex_key)
        return e, self._t[e]

    def lc(self) -> Fraction:
        return self.leading()[1] if self._t else Fraction(0)

    # arithmetic ------------------------------------------------------
    def __add__(self, other):
        if is_scalar(other):
            other = CPoly.const(other)
        elif not isinstance(other, CPoly):
            return NotImplemented
        t = dict(self._t)
        for e, v in other._t.items():
            w = t.get(e, 0) + v
            if w:
                t[e] = w
            else:
                t.pop(e, None)
        r = CPoly()
        r._t = t
        return r

    __radd__ = __add__

    def __neg__(self):
        r = CPoly()
        r._t = {e: -v for e, v in self._t.items()}
        return r

    def __sub__(self, other):
        if is_scalar(other) or isinstance(other, CPoly):
            return self + (-CPoly.lift(other))
        return NotImplemented

    def __rsub__(self, other):
        if is_scalar(other):
            return CPoly.const(other) - self
        return NotImplemented

    def __mul__(self, other):
        if is_scalar(other):
            if not other:
                return CPoly()
            r = CPoly()
            r._t = {e: v * other for e, v in self._t.items()}
            return r
        if not isinstance(other, CPoly):
            return NotImplemented
        t: dict = {}
        for e1, v1 in self._t.items():
            for e2, v2 in other._t.items():
                e = (e1[0] + e2[0], e1[1] + e2[1])
                t[e] = t.get(e, 0) + v1 * v2
        return CPoly(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_scalar(other):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, CPoly):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, k: int):
        r = CPoly.const(1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def exact_div(self, d: "CPoly") -> "CPoly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        d = CPoly.lift(d)
        if not d:
            raise ZeroDivisionError("CPoly division by zero")
        if d.is_constant():
            return self * (1 / d.constant_value())
        (d1, d2), dc = d.leading()
        rem = self
        q: dict = {}
        while rem:
            (a1, a2), ac = rem.leading()
            if a1 < d1 or a2 < d2:
                raise ArithmeticError("inexact CPoly division")
            e = (a1 - d1, a2 - d2)
            f = ac / dc
            q[e] = q.get(e, 0) + f
            rem = rem - CPoly({e: f}) * d
        return CPoly(q)

    def divides(self, p: "CPoly") -> bool:
        try:
            CPoly.lift(p).exact_div(self)
            return True
        except ArithmeticError:
            return False

    # evaluation ------------------------------------------------------
    def evaluate(self, c1=0, c2=0):
        """Value at (c1, c2); the values may be any ring elements."""
        tot = 0
        p1: dict = {}
        p2: dict = {}
        for (a, b), v in self._t.items():
            x = p1.get(a)
            if x is None:
                x = p1[a] = c1 ** a if a else 1
            y = p2.get(b)
            if y is None:
                y = p2[b] = c2 ** b if b else 1
            tot = tot + v * x * y
        return tot

    def subs(self, c1=None, c2=None) -> "CPoly":
        """Partial substitution of rational values."""
        t: dict = {}
        for (a, b), v in self._t.items():
            if c1 is not None:
                v = v * Fraction(c1) ** a
                a = 0
            if c2 is not None:
                v = v * Fraction(c2) ** b
                b = 0
            t[(a, b)] = t.get((a, b), 0) + v
        return CPoly(t)

    def compose(self, c1: "CPoly", c2: "CPoly") -> "CPoly":
        return CPoly.lift(self.evaluate(CPoly.lift(c1), CPoly.lift(c2)))

    # univariate view -------------------------------------------------
    def to_univariate(self, i: int = 0) -> list:
        """Dense coefficient list in parameter i (other one must be absent)."""
        out: list = []
        for e, v in self._t.items():
            if e[1 - i]:
                raise ValueError("polynomial involves both parameters")
            k = e[i]
            while len(out) <= k:
                out.append(Fraction(0))
            out[k] += v
        return _utrim(out)

    @classmethod
    def from_univariate(cls, coeffs: Sequence, i: int = 0) -> "CPoly":
        return cls({((k, 0) if i == 0 else (0, k)): v for k, v in enumerate(coeffs)})

    def content(self) -> Fraction:
        """Positive rational g with self/g having coprime integer coefficients."""
        if not self._t:
            return Fraction(0)
        num = 0
        den = 1
        for v in self._t.values():
            num = igcd(num, v.numerator)
            den = den * v.denominator // igcd(den, v.denominator)
        return Fraction(num, den)

    def primitive(self) -> "CPoly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if not self._t:
            return self
        g = self.content()
        if self.lc() < 0:
            g = -g
        return self * (1 / g)

    def monic(self) -> "CPoly":
        return self * (1 / self.lc()) if self._t else self

    def gcd(self, other: "CPoly") -> "CPoly":
        return cpoly_gcd(self, CPoly.lift(other))

    def diff(self, i: int) -> "CPoly":
        t = {}
        for e, v in self._t.items():
            if e[i]:
                ne = (e[0] - 1, e[1]) if i == 0 else (e[0], e[1] - 1)
                t[ne] = v * e[i]
        return CPoly(t)

    # text ------------------------------------------------------------
    def to_text(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for e, v in self.items():
            mon = _mono_text(PARAMS, e)
            parts.append(_term_text(v, mon, first=not parts, spaced=False))
        return "".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"CPoly({self.to_text()})"


def _bivariate_rows(p: CPoly) -> list:
    """p as a list (index = power of c1) of dense c2-polynomials."""
    rows: list = []
    for (a, b), v in p.terms.items():
        while len(rows) <= a:
            rows.append([])
        r = rows[a]
        while len(r) <= b:
            r.append(Fraction(0))
        r[b] += v
    return [_utrim(r) for r in rows]


def _from_rows(rows) -> CPoly:
    t = {}
    for a, r in enumerate(rows):
        for b, v in enumerate(r):
            if v:
                t[(a, b)] = v
    return CPoly(t)


def _rows_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _rows_content(a):
    g: list = []
    for r in a:
        if r:
            g = _ugcd(g, r) if g else _ugcd(r, r)
    return g


def _rows_pp(a):
    g = _rows_content(a)
    return [(_udivmod(r, g)[0] if r else []) for r in a]


def _rows_prem(a, b):
    a = [list(r) for r in a]
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        s = len(a) - 1 - db
        a = [_umul(r, lb) for r in a]
        for i, r in enumerate(b):
            a[s + i] = _usub(a[s + i], _umul(r, la))
        _rows_trim(a)
    return a


def cpoly_gcd(a: CPoly, b: CPoly) -> CPoly:
    """Monic gcd over Q[c1, c2] (primitive remainder sequence in c1 over Q[c2])."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return CPoly.const(1)
    if not a.uses_c2() and not b.uses_c2():
        return CPoly.from_univariate(_ugcd(a.to_univariate(0), b.to_univariate(0)), 0)
    A, B = _bivariate_rows(a), _bivariate_rows(b)
    g_cont = _ugcd(_rows_content(A), _rows_content(B))
    A, B = _rows_pp(A), _rows_pp(B)
    if len(A) < len(B):
        A, B = B, A
    while B and len(B) > 1:
        R = _rows_trim(_rows_prem(A, B))
        A = B
        B = _rows_pp(R) if R else R
    if B:  # degree 0 in c1: the primitive gcd is trivial
        A = [[Fraction(1)]]
    G = _rows_pp(A)
    res = _from_rows([_umul(r, g_cont) for r in G])
    return res.monic()


def rational_roots(p: CPoly) -> list[Fraction]:
    """Distinct rational roots of a univariate parameter polynomial."""
    co = p.to_univariate(0) if not p.uses_c2() else p.to_univariate(1)
    return _urational_roots(co)


def _urational_roots(co) -> list[Fraction]:
    co = _utrim([Fraction(x) for x in co])
    if len(co) <= 1:
        return []
    # square-free part keeps the search small
    d = _utrim([co[i] * i for i in range(1, len(co))])
    g = _ugcd(co, d)
    if len(g) > 1:
        co = _udivmod(co, g)[0]
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(v.numerator, v.denominator) for v in reversed(co)], x, domain="QQ")
    roots = []
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -b / a
            roots.append(Fraction(int(r.p), int(r.q)))
    return sorted(set(roots))


# ---------------------------------------------------------------------------

class RatFunc:
    """Reduced quotient num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = CPoly.lift(num)
        den = CPoly.const(1) if den is None else CPoly.lift(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if not num:
                den = CPoly.const(1)
            elif not den.is_constant():
                g = cpoly_gcd(num, den)
                if not g.is_constant():
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc()
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def lift(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(CPoly.lift(x), None, _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, CPoly)) or is_scalar(other):
            o = RatFunc.lift(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        try:
            o = RatFunc.lift(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RatFunc.lift(other))

    def __rsub__(self, other):
        return RatFunc.lift(other) - self

    def __mul__(self, other):
        try:
            o = RatFunc.lift(other)
        except TypeError:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.lift(other)
        if not o:
            raise ZeroDivisionError("RatFunc division by zero")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.lift(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def as_cpoly(self) -> CPoly:
        if not self.is_poly():
            raise ArithmeticError("rational function is not a polynomial")
        return self.num * (1 / self.den.constant_value())

    def evaluate(self, c1=0, c2=0) -> Fraction:
        d = self.den.evaluate(c1, c2)
        if not d:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at c1={c1}, c2={c2}")
        return Fraction(self.num.evaluate(c1, c2)) / d

    def to_text(self) -> str:
        if self.den == 1:
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"RatFunc({self.to_text()})"


# ---------------------------------------------------------------------------

_cyclo_cache: dict[int, tuple[int, ...]] = {}
_cyclo_lock = threading.Lock()


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (low degree first) of the m-th cyclotomic polynomial.

    Computed by dividing t^m - 1 by the cyclotomic polynomials of the proper
    divisors of m.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if m < 1:
        raise ValueError("m must be positive")
    with _cyclo_lock:
        if m in _cyclo_cache:
            return _cyclo_cache[m]
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            q, r = _udivmod(num, [Fraction(x) for x in cyclotomic_polynomial(d)])
            if r:
                raise ArithmeticError("cyclotomic division not exact")
            num = q
    res = tuple(int(x) for x in num)
    with _cyclo_lock:
        _cyclo_cache[m] = res
    return res


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class CycloElem:
    """Element of K(zeta_m) with zeta_m = exp(2 pi i / m), K = Q or Q[c1, c2].

    ``coeffs[k]`` is the coefficient of zeta^k, k < phi(m).
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Sequence):
        n = euler_phi(m)
        cs = list(coeffs)
        if len(cs) > n:
            cs = _cyclo_reduce(m, cs)
        cs = cs + [0] * (n - len(cs))
        self.m = m
        self.coeffs = tuple(Fraction(x) if isinstance(x, int) else x for x in cs)

    @classmethod
    def zeta(cls, m: int, j: int = 1) -> "CycloElem":
        j %= m
        cs = [0] * (j + 1)
        cs[j] = 1
        return cls(m, cs)

    @classmethod
    def scalar(cls, m: int, v) -> "CycloElem":
        return cls(m, [v])

    def __bool__(self):
        return any(bool(x) for x in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.m == other.m and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        if is_scalar(other) or isinstance(other, CPoly):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def _other(self, o):
        if isinstance(o, CycloElem):
            if o.m != self.m:
                raise ValueError("cyclotomic order mismatch")
            return o
        if is_scalar(o) or isinstance(o, CPoly):
            return CycloElem(self.m, [o])
        return None

    def __add__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return CycloElem(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.m, [-a for a in self.coeffs])

    def __sub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return CycloElem(self.m, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if is_scalar(o) or isinstance(o, CPoly):
            return CycloElem(self.m, [a * o for a in self.coeffs])
        if not isinstance(o, CycloElem):
            return NotImplemented
        if o.m != self.m:
            raise ValueError("cyclotomic order mismatch")
        prod: list = [0] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] = prod[i + j] + a * b
        return CycloElem(self.m, _cyclo_reduce(self.m, prod))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = CycloElem(self.m, [1])
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def inverse(self) -> "CycloElem":
        """Inverse in Q(zeta_m); rational coefficients only."""
        if not all(is_scalar(x) for x in self.coeffs):
            raise TypeError("inverse only defined over the rationals")
        phi = [Fraction(x) for x in cyclotomic_polynomial(self.m)]
        a = _utrim([Fraction(x) for x in self.coeffs])
        if not a:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid: s*a + t*phi = g
        r0, r1 = phi, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _udivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _usub(s0, _umul(q, s1))
        if len(r0) != 1:
            raise ArithmeticError("element not invertible")
        return CycloElem(self.m, [x / r0[0] for x in s0])

    def __truediv__(self, o):
        if is_scalar(o):
            return self * (Fraction(1) / Fraction(o))
        if isinstance(o, CycloElem):
            return self * o.inverse()
        return NotImplemented

    def conj(self) -> "CycloElem":
        """Image under zeta -> zeta^{-1}."""
        return self.galois(-1)

    def galois(self, k: int) -> "CycloElem":
        out = CycloElem(self.m, [0])
        for j, a in enumerate(self.coeffs):
            if a:
                out = out + CycloElem.zeta(self.m, j * k) * a
        return out

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self):
        if not self.is_rational():
            raise ArithmeticError("cyclotomic element is not rational")
        return self.coeffs[0]

    def to_text(self) -> str:
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if not a:
                continue
            mon = "" if k == 0 else ("zeta" if k == 1 else f"zeta^{k}")
            parts.append(_term_text(a, mon, first=not parts, spaced=False))
        return "".join(parts) if parts else "0"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"CycloElem({self.m}: {self.to_text()})"


def _cyclo_reduce(m: int, cs: list) -> list:
    phi = cyclotomic_polynomial(m)
    n = len(phi) - 1
    cs = list(cs)
    for k in range(len(cs) - 1, n - 1, -1):
        a = cs[k]
        if not a:
            continue
        cs[k] = 0
        # t^k = t^{k-n} * t^n, t^n = -(phi_0 + ... + phi_{n-1} t^{n-1})
        for i in range(n):
            if phi[i]:
                cs[k - n + i] = cs[k - n + i] - a * phi[i]
    return cs[:n]


# ---------------------------------------------------------------------------

def coeff_div(a, b):
    """Exact division of coefficient a by coefficient b."""
    if is_scalar(b):
        if isinstance(a, (CPoly, RatFunc, CycloElem)):
            return a * (Fraction(1) / Fraction(b))
        return Fraction(a) / Fraction(b)
    if isinstance(b, CycloElem):
        return a * b.inverse()
    if isinstance(b, CPoly):
        if is_scalar(a):
            if b.is_constant():
                return Fraction(a) / b.constant_value()
            raise ArithmeticError("inexact coefficient division")
        return CPoly.lift(a).exact_div(b)
    if isinstance(b, RatFunc):
        return RatFunc.lift(a) / b
    raise TypeError(f"unsupported coefficient {type(b).__name__}")


class MPoly:
    """Sparse polynomial in named variables with exact coefficients."""

    __slots__ = ("vars", "_t")

    def __init__(self, vars: Sequence[str], terms: dict | None = None):
        self.vars = tuple(vars)
        t = {}
        if terms:
            k = len(self.vars)
            for e, v in terms.items():
                if v:
                    e = tuple(e)
                    if len(e) != k:
                        raise ValueError("exponent length does not match variables")
                    t[e] = Fraction(v) if isinstance(v, int) else v
        self._t = t

    @classmethod
    def _raw(cls, vars, t):
        r = cls.__new__(cls)
        r.vars = vars
        r._t = t
        return r

    @classmethod
    def gens(cls, vars: Sequence[str]) -> tuple["MPoly", ...]:
        vars = tuple(vars)
        n = len(vars)
        return tuple(cls(vars, {tuple(int(i == j) for j in range(n)): 1}) for i in range(n))

    @classmethod
    def const(cls, vars: Sequence[str], c) -> "MPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def monomial(cls, vars: Sequence[str], exp: Sequence[int], c=1) -> "MPoly":
        return cls(vars, {tuple(exp): c})

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MPoly":
        return cls(vars)

    @property
    def terms(self) -> dict:
        return self._t

    def items(self):
        """(exponent, coefficient) pairs in descending term order."""
        return sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def coeff(self, exp: Sequence[int]):
        return self._t.get(tuple(exp), 0)

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if self.vars != other.vars or len(self._t) != len(other._t):
                return False
            for e, v in self._t.items():
                w = other._t.get(e)
                if w is None or not (v == w):
                    return False
            return True
        if is_scalar(other) or isinstance(other, (CPoly, RatFunc, CycloElem)):
            return self == MPoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset((e, hash(v)) for e, v in self._t.items())))

    def _check(self, other: "MPoly"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            if is_scalar(other) or isinstance(other, (CPoly, RatFunc, CycloElem)):
                other = MPoly.const(self.vars, other)
            else:
                return NotImplemented
        self._check(other)
        t = dict(self._t)
        for e, v in other._t.items():
            w = t.get(e)
            w = v if w is None else w + v
            if w:
                t[e] = w
            else:
                t.pop(e, None)
        return MPoly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.vars, {e: -v for e, v in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, MPoly):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MPoly":
        if not c:
            return MPoly._raw(self.vars, {})
        t = {}
        for e, v in self._t.items():
            w = v * c
            if w:
                t[e] = w
        return MPoly._raw(self.vars, t)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if is_scalar(other) or isinstance(other, (CPoly, RatFunc, CycloElem)):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        t: dict = {}
        for e1, v1 in self._t.items():
            for e2, v2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                w = t.get(e)
                t[e] = v1 * v2 if w is None else w + v1 * v2
        return MPoly._raw(self.vars, {e: v for e, v in t.items() if v})

    def __rmul__(self, other):
        if is_scalar(other) or isinstance(other, (CPoly, RatFunc, CycloElem)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        r = MPoly.const(self.vars, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            return self.exact_divide(other)
        return MPoly._raw(self.vars, {e: coeff_div(v, other) for e, v in self._t.items()})

    # structure -------------------------------------------------------
    def degree(self):
        return max((sum(e) for e in self._t), default=NEG_INF)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._t}) <= 1

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly._raw(self.vars, {e: v for e, v in self._t.items() if sum(e) == d})

    def lead(self):
        e = max(self._t, key=_grlex_key)
        return e, self._t[e]

    def lc(self):
        return self.lead()[1]

    def diff(self, i: int) -> "MPoly":
        if isinstance(i, str):
            i = self.vars.index(i)
        t = {}
        for e, v in self._t.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = v * e[i]
        return MPoly._raw(self.vars, t)

    def map_coeffs(self, f: Callable) -> "MPoly":
        return MPoly(self.vars, {e: f(v) for e, v in self._t.items()})

    def eval_params(self, c1=0, c2=0) -> "MPoly":
        """Apply the evaluation homomorphism on parameter coefficients."""
        def ev(v):
            if isinstance(v, (CPoly, RatFunc)):
                return v.evaluate(c1, c2)
            if isinstance(v, CycloElem):
                return CycloElem(v.m, [ev(x) for x in v.coeffs])
            return v
        return self.map_coeffs(ev)

    def rename(self, vars: Sequence[str]) -> "MPoly":
        if len(vars) != len(self.vars):
            raise ValueError("rename must keep the variable count")
        return MPoly._raw(tuple(vars), dict(self._t))

    def substitute(self, bindings: dict, vars: Sequence[str] | None = None) -> "MPoly":
        """Replace variables by polynomials (in ``vars``, default: own vars)."""
        out_vars = tuple(vars) if vars is not None else self.vars
        for k in bindings:
            if k not in self.vars:
                raise KeyError(f"unknown variable {k}")
        images = []
        for i, name in enumerate(self.vars):
            if name in bindings:
                b = bindings[name]
                if not isinstance(b, MPoly):
                    b = MPoly.const(out_vars, b)
                if b.vars != out_vars:
                    raise ValueError("binding variables mismatch")
                images.append(b)
            else:
                if name not in out_vars:
                    raise KeyError(f"variable {name} left unbound")
                images.append(MPoly.gens(out_vars)[out_vars.index(name)])
        powcache: list[dict] = [dict() for _ in images]

        def pw(i, k):
            c = powcache[i]
            if k not in c:
                c[k] = images[i] ** k
            return c[k]

        res = MPoly(out_vars)
        for e, v in self._t.items():
            term = MPoly.const(out_vars, v)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            res = res + term
        return res

    def exact_divide(self, d: "MPoly") -> "MPoly":
        """Quotient q with q*d == self; raises ArithmeticError when inexact."""
        self._check(d)
        if not d:
            raise ZeroDivisionError("division by zero polynomial")
        de, dc = d.lead()
        rem = self
        q: dict = {}
        while rem:
            e, c = rem.lead()
            if any(a < b for a, b in zip(e, de)):
                raise ArithmeticError("inexact polynomial division")
            qe = tuple(a - b for a, b in zip(e, de))
            f = coeff_div(c, dc)
            q[qe] = f
            rem = rem - MPoly._raw(self.vars, {qe: f}) * d
        return MPoly(self.vars, q)

    def coeff_vector(self, basis: Sequence[Sequence[int]]) -> list:
        return [self._t.get(tuple(e), 0) for e in basis]

    # text ------------------------------------------------------------
    def to_text(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for e, v in self.items():
            parts.append(_term_text(v, _mono_text(self.vars, e), first=not parts, spaced=True))
        return "".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MPoly[{','.join(self.vars)}]({self.to_text()})"


def _mono_text(vars, e) -> str:
    out = []
    for name, k in zip(vars, e):
        if k == 1:
            out.append(name)
        elif k:
            out.append(f"{name}^{k}")
    return "*".join(out)


def _frac_text(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _coeff_atom(v) -> tuple[bool, str, bool]:
    """(negative, text of |v|, needs parentheses when multiplied)."""
    if is_scalar(v):
        v = Fraction(v)
        return v < 0, _frac_text(abs(v)), False
    if isinstance(v, CPoly):
        if len(v.terms) == 1:
            e, a = next(iter(v.terms.items()))
            neg = a < 0
            inner = (-v if neg else v).to_text()
            return neg, inner, e != (0, 0) and abs(a) != 1 and False
        return False, v.to_text(), True
    txt = v.to_text()
    return False, txt, True


def _term_text(v, mon: str, first: bool, spaced: bool) -> str:
    neg, body, paren = _coeff_atom(v)
    if paren:
        body = f"({body})"
    if mon:
        if body == "1":
            s = mon
        else:
            s = f"{body}*{mon}"
    else:
        s = body
    if first:
        return f"-{s}" if neg else s
    if spaced:
        return f" - {s}" if neg else f" + {s}"
    return f"-{s}" if neg else f"+{s}"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(s: str) -> list:
    toks = []
    for num, name, op in _TOKEN.findall(s):
        if num:
            toks.append(("num", int(num)))
        elif name:
            toks.append(("name", name))
        elif op.strip():
            toks.append(("op", op))
    return toks


class _Parser:
    # polynomials over all symbols as {sorted tuple of (name, power): Fraction}
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        r = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"unexpected token {self.peek()}")
        return r

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        acc = _pmul({(): Fraction(sign)}, self.term())
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = _padd(acc, t if op == "+" else _pmul({(): Fraction(-1)}, t))
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.factor()
            if op == "*":
                acc = _pmul(acc, f)
            else:
                if set(f) - {()}:
                    raise ValueError("division by a non-constant")
                acc = _pmul(acc, {(): 1 / f[()]})
        return acc

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return _pmul({(): Fraction(-1)}, self.factor())
        b = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, k = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            r = {(): Fraction(1)}
            for _ in range(k):
                r = _pmul(r, b)
            return r
        return b

    def base(self):
        kind, v = self.take()
        if kind == "num":
            return {(): Fraction(v)}
        if kind == "name":
            return {((v, 1),): Fraction(1)}
        if v == "(":
            r = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing ')'")
            return r
        raise ValueError(f"unexpected token {v!r}")


def _mono_mul(a, b):
    d = dict(a)
    for n, k in b:
        d[n] = d.get(n, 0) + k
    return tuple(sorted(d.items()))


def _padd(a, b):
    r = dict(a)
    for k, v in b.items():
        w = r.get(k, 0) + v
        if w:
            r[k] = w
        else:
            r.pop(k, None)
    return r


def _pmul(a, b):
    r: dict = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = _mono_mul(k1, k2)
            r[k] = r.get(k, 0) + v1 * v2
    return {k: v for k, v in r.items() if v}


def parse_poly(text: str, vars: Sequence[str] | None = None, params: bool | None = None) -> MPoly:
    """Parse the canonical text form. Symbols c1, c2 become parameter coefficients."""
    flat = _Parser(text).parse()
    names = []
    for mono in flat:
        for n, _ in mono:
            if n not in PARAMS and n not in names:
                names.append(n)
    if vars is None:
        vars = tuple(names)
    vars = tuple(vars)
    unknown = [n for n in names if n not in vars]
    if unknown:
        raise ValueError(f"unknown variables {unknown}")
    has_params = any(n in PARAMS for mono in flat for n, _ in mono)
    use_c = has_params if params is None else params
    terms: dict = {}
    for mono, v in flat.items():
        d = dict(mono)
        e = tuple(d.get(n, 0) for n in vars)
        pe = (d.get("c1", 0), d.get("c2", 0))
        if use_c:
            terms[e] = terms.get(e, CPoly()) + CPoly({pe: v})
        else:
            if pe != (0, 0):
                raise ValueError("parameters present but params=False")
            terms[e] = terms.get(e, 0) + v
    return MPoly(vars, terms)


def parse_cpoly(text: str) -> CPoly:
    p = parse_poly(text, (), params=True)
    return CPoly.lift(p.coeff(())) if p else CPoly()


# ---------------------------------------------------------------------------
# structured form

def _coeff_to_obj(v):
    if is_scalar(v):
        v = Fraction(v)
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, CPoly):
        return {
            "vars": list(PARAMS),
            "terms": [{"exp": list(e), "coeff": _coeff_to_obj(a)} for e, a in v.items()],
        }
    if isinstance(v, RatFunc):
        return {"ratfunc": {"num": _coeff_to_obj(v.num), "den": _coeff_to_obj(v.den)}}
    if isinstance(v, CycloElem):
        return {"cyclo": v.m, "coeffs": [_coeff_to_obj(a) for a in v.coeffs]}
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _coeff_from_obj(o):
    if "num" in o and "den" in o and not isinstance(o["num"], dict):
        return Fraction(int(o["num"]), int(o["den"]))
    if "ratfunc" in o:
        return RatFunc(_coeff_from_obj(o["ratfunc"]["num"]), _coeff_from_obj(o["ratfunc"]["den"]))
    if "cyclo" in o:
        return CycloElem(int(o["cyclo"]), [_coeff_from_obj(a) for a in o["coeffs"]])
    if "terms" in o:
        return CPoly({tuple(t["exp"]): _coeff_from_obj(t["coeff"]) for t in o["terms"]})
    raise ValueError("malformed coefficient object")


def to_structured(p: MPoly) -> dict:
    return {
        "vars": list(p.vars),
        "terms": [{"exp": list(e), "coeff": _coeff_to_obj(v)} for e, v in p.items()],
    }


def from_structured(o: dict) -> MPoly:
    return MPoly(o["vars"], {tuple(t["exp"]): _coeff_from_obj(t["coeff"]) for t in o["terms"]})


def dumps(p: MPoly) -> str:
    return json.dumps(to_structured(p), sort_keys=True, separators=(",", ":"))


def loads(s: str) -> MPoly:
    return from_structured(json.loads(s))


# ---------------------------------------------------------------------------
# small helpers shared by other modules

def falling(c, k: int):
    """c (c-1) ... (c-k); equals 1 for k = -1."""
    r = CPoly.const(1) if isinstance(c, CPoly) else Fraction(1)
    for i in range(k + 1):
        r = r * (c - i)
    return r


def binom_param(c, k: int):
    """Generalized binomial coefficient C(c, k) for a parameter value c."""
    r = CPoly.const(1) if isinstance(c, CPoly) else Fraction(1)
    for i in range(k):
        r = r * (c - i)
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return r * Fraction(1, fact)


def proportional(p: MPoly, q: MPoly) -> bool:
    """Whether p and q agree up to a nonzero scalar (cross-multiplication)."""
    if not p or not q:
        return not p and not q
    if set(p.terms) != set(q.terms):
        return False
    e = max(p.terms, key=_grlex_key)
    a, b = p.terms[e], q.terms[e]
    return p.scale(b) == q.scale(a)


def ratio(p: MPoly, q: MPoly):
    """The scalar s with p == s*q, or None. Coefficients must form a field."""
    if not q:
        return None
    if not p:
        return Fraction(0)
    if not proportional(p, q):
        return None
    e = max(q.terms, key=_grlex_key)
    return coeff_div(p.terms[e], q.terms[e]) if not isinstance(q.terms[e], CPoly) else RatFunc(p.terms[e], q.terms[e])


def clear_to_cpoly(p: MPoly) -> MPoly:
    """Scale a RatFunc- or Fraction-coefficient polynomial to coprime CPoly coefficients."""
    if not p:
        return p
    dens = []
    for v in p.terms.values():
        if isinstance(v, RatFunc):
            dens.append(v.den)
    lcm = CPoly.const(1)
    for d in dens:
        g = cpoly_gcd(lcm, d)
        lcm = (lcm * d).exact_div(g)
    out = {}
    for e, v in p.terms.items():
        if isinstance(v, RatFunc):
            out[e] = (v.num * lcm).exact_div(v.den)
        else:
            out[e] = CPoly.lift(v) * lcm
    return normalize_content(MPoly(p.vars, out))


def normalize_content(p: MPoly) -> MPoly:
    """Divide CPoly coefficients by their common gcd and rational content; the
    leading coefficient is made to have positive leading coefficient."""
    if not p:
        return p
    vals = [CPoly.lift(v) for v in p.terms.values()]
    g = vals[0]
    for v in vals[1:]:
        if g.is_constant():
            break
        g = cpoly_gcd(g, v)
    if not g.is_constant():
        vals_t = {e: CPoly.lift(v).exact_div(g) for e, v in p.terms.items()}
    else:
        vals_t = {e: CPoly.lift(v) for e, v in p.terms.items()}
    num = 0
    den = 1
    for v in vals_t.values():
        for a in v.terms.values():
            num = igcd(num, a.numerator)
            den = den * a.denominator // igcd(den, a.denominator)
    s = Fraction(den, num)
    lead = max(vals_t, key=_grlex_key)
    if vals_t[lead].lc() < 0:
        s = -s
    return MPoly(p.vars, {e: v * s for e, v in vals_t.items()})


def normalize_rational(p: MPoly) -> MPoly:
    """Scale a rational-coefficient polynomial to coprime integers, positive lead."""
    if not p:
        return p
    num = 0
    den = 1
    for a in p.terms.values():
        a = Fraction(a)
        num = igcd(num, a.numerator)
        den = den * a.denominator // igcd(den, a.denominator)
    s = Fraction(den, num)
    if p.lc() < 0:
        s = -s
    return p.scale(s)


def poly_from_scalars(vars: Sequence[str], basis: Sequence[Sequence[int]], vec: Iterable) -> MPoly:
    return MPoly(vars, {tuple(e): v for e, v in zip(basis, vec)})
