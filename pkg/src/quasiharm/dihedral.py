"""Explicit quasiharmonic families of I2(m) and the quotient algebras they define.

Notation: lam(c, k) = c (c - 1) ... (c - k), lam(c, -1) = 1, and for
n >= 0 we write n = m q + r with 0 <= r < m (two-class: n = (m/2) q + r).
Bars denote the swap z <-> zb.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .dunkl import dihedral_F, dihedral_Y, dihedral_Ybar
from .frobenius import IdealDegrees, charpoly_rank2_minors, from_divided
from .linsolve import ExactMatrix, kernel_basis, seeded_rationals
from .ring import CPoly, MPoly, RatFunc, binom_param, falling

VARS = ("z", "zb")


def lam(c, k: int):
    return falling(c, k)


def swap(p: MPoly) -> MPoly:
    return MPoly(p.vars, {(e[1], e[0]): v for e, v in p.terms.items()})


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def _param(c):
    if c is None or c == "symbolic":
        return CPoly.c1()
    if isinstance(c, (CPoly, Fraction)):
        return c
    return Fraction(c)


def _is_symbolic(c) -> bool:
    return isinstance(c, CPoly)


def _eval(p: MPoly, c) -> MPoly:
    return p if _is_symbolic(c) else p.eval_params(c, c)


def _mono(a: int, b: int, v=1) -> MPoly:
    return MPoly(VARS, {(a, b): v})


# ---------------------------------------------------------------------------
# the rho / R family (one class)

def R_explicit(m: int, n: int, c="symbolic") -> MPoly:
    """sum_p (-1)^{mp} C(q,p) lam_{q-p}(c) lam_{p-1}(c) z^{n-mp} zb^{mp}."""
    c = _param(c)
    q = n // m
    out = MPoly(VARS)
    for p in range(q + 1):
        coef = lam(c, q - p) * lam(c, p - 1) * (comb(q, p) * _sgn(m * p))
        out = out + _mono(n - m * p, m * p, coef)
    return out


def rho(m: int, n: int, c="symbolic") -> MPoly:
    """rho_{n,c} = R_{n,c} / lam_{[q/2]}(c) (exact over Q[c])."""
    c = _param(c)
    d = lam(CPoly.c1(), (n // m) // 2)
    R = R_explicit(m, n)
    p = MPoly(VARS, {e: CPoly.lift(v).exact_div(d) for e, v in R.terms.items()})
    return _eval(_strip(p), c)


def rho_bar(m: int, n: int, c="symbolic") -> MPoly:
    return swap(rho(m, n, c))


_R_memo: dict = {}


def R_recursive(m: int, n: int) -> MPoly:
    """R_n from R_0 = c: z R_{n-1} when r != 0, else
    (c - q) z R_{n-1} + (-1)^{mq} c zb Rbar_{n-1}."""
    key = (m, n)
    if key in _R_memo:
        return _R_memo[key]
    c = CPoly.c1()
    if n == 0:
        out = MPoly.const(VARS, c)
    else:
        q, r = divmod(n, m)
        prev = R_recursive(m, n - 1)
        z, zb = MPoly.gens(VARS)
        if r:
            out = z * prev
        else:
            out = (z * prev).scale(c - q) + (zb * swap(prev)).scale(c * _sgn(m * q))
    _R_memo[key] = out
    return out


def R_residue(m: int, n: int, sign_convention: str = "literal") -> MPoly:
    """c q! z^r Res_{w=0} (1 + A/w)^c (1 + B/w)^{c-1} w^{q-1} dw by series expansion.

    ``literal``: A = (-zb)^m, B = (-z)^m.  ``alternating``: A = (-zb)^m,
    B = z^m, which carries the (-1)^{mp} pattern of the explicit sum for
    odd m as well.
    """
    c = CPoly.c1()
    q, r = divmod(n, m)
    z, zb = MPoly.gens(VARS)
    A = (-zb) ** m
    B = (-z) ** m if sign_convention == "literal" else z ** m
    # coefficients of w^{-i}, i = 0..q
    s1 = [(A ** i).scale(binom_param(c, i)) for i in range(q + 1)]
    s2 = [(B ** j).scale(binom_param(c - 1, j)) for j in range(q + 1)]
    res = MPoly(VARS)
    for i in range(q + 1):
        res = res + s1[i] * s2[q - i]
    return (z ** r * res).scale(c * factorial(q))


def _strip(p: MPoly) -> MPoly:
    return MPoly(p.vars, {e: (v.constant_value() if isinstance(v, CPoly) and v.is_constant() else v) for e, v in p.terms.items()})


def rho_action_expected(m: int, n: int, c="symbolic") -> tuple:
    """(scalar for Y(rho_n) in terms of rho_{n-1}, scalar for Ybar(rho_n))."""
    c = _param(c)
    q, r = divmod(n, m)
    if r:
        a = c * (-m) + n
    elif q % 2:
        a = (c * 2 - q) * (m * q)
    else:
        a = Fraction(2 * m * q)
    return a, 0


def check_rho_family(m: int, n: int) -> dict:
    """Three constructions of R agree; rho obeys the Y / Ybar laws; F(rho) = 0."""
    c = CPoly.c1()
    Re = R_explicit(m, n)
    out = {
        "recursive": R_recursive(m, n) == Re,
        "residue": R_residue(m, n) == Re,
        "residue_alternating": R_residue(m, n, "alternating") == Re,
    }
    p = rho(m, n)
    out["quasiharmonic"] = not dihedral_F(m, c, p)
    if n >= 1:
        a, _ = rho_action_expected(m, n)
        out["Y_law"] = dihedral_Y(m, c, p) == rho(m, n - 1).scale(a)
        out["Ybar_law"] = not dihedral_Ybar(m, c, p)
    return out


def qh_basis_dihedral(m: int, n: int, c="symbolic") -> list[MPoly]:
    """Basis of QH_n valid for every constant c.

    {rho, rho_bar} unless n = m q with q odd; then, with s = (-1)^{mq},
    {rho - s rho_bar, (rho + s rho_bar) / (2c - q)}.  For odd m this is
    {rho + rho_bar, (rho - rho_bar) / (2c - q)}.
    """
    c = _param(c)
    q, r = divmod(n, m)
    p = rho(m, n)
    pb = swap(p)
    if n == 0:
        basis = [p]
    elif r or q % 2 == 0:
        basis = [p, pb]
    else:
        s = _sgn(m * q)
        d = CPoly.c1() * 2 - q
        num = p + pb.scale(s)
        try:
            second = MPoly(VARS, {e: CPoly.lift(v).exact_div(d) for e, v in num.terms.items()})
        except ArithmeticError:
            raise ArithmeticError(f"rho + s rho_bar is not divisible by 2c - {q} (m={m}, n={n})") from None
        basis = [p - pb.scale(s), second]
    return [_eval(_strip(b), c) for b in basis]


# ---------------------------------------------------------------------------
# the two-class family S (m even)

def _two(c1, c2):
    c1 = CPoly.c1() if c1 is None else (c1 if isinstance(c1, CPoly) else Fraction(c1))
    c2 = CPoly.c2() if c2 is None else (c2 if isinstance(c2, CPoly) else Fraction(c2))
    return c1, c2


_S_memo: dict = {}


def s_poly(m: int, n: int, c1=None, c2=None) -> MPoly:
    """S_{n,c} by the two-class recursion, started from S_1 = (c1 + c2) z.

    Defaults are symbolic c1, c2; rational values are substituted at the end.
    """
    if m % 2:
        raise ValueError("the two-class family needs even m")
    key = (m, n)
    if key not in _S_memo:
        _S_memo[key] = _s_build(m, n)
    p = _S_memo[key]
    if c1 is None and c2 is None:
        return p
    a, b = _two(c1, c2)
    if isinstance(a, CPoly) or isinstance(b, CPoly):
        return MPoly(VARS, {e: CPoly.lift(v).compose(CPoly.lift(a), CPoly.lift(b)) for e, v in p.terms.items()})
    return p.eval_params(a, b)


def _s_build(m: int, n: int) -> MPoly:
    c1, c2 = CPoly.c1(), CPoly.c2()
    z, zb = MPoly.gens(VARS)
    if n == 0:
        return MPoly.const(VARS, 1)
    if n == 1:
        return z.scale(c1 + c2)
    prev = s_poly(m, n - 1)
    h = m // 2
    q, r = divmod(n - 1, h)
    if r:
        return z * prev
    coef = (c1 * _sgn(q) + c2) * _sgn(h * q)
    return (z * prev).scale(c1 + c2 - q) + (z * swap(prev)).scale(coef)


def s_from_kernel(m: int, n: int) -> MPoly:
    """S_n from its defining properties: the zeta^n eigenvector of gamma in
    QH_n with leading coefficient lam_{[2(n-1)/m]}(c1 + c2) and no zb^n term."""
    from .coxeter import build_group
    from .quasiharmonic import qh_space

    G = build_group("dihedral", m)
    sp = qh_space(G, "symbolic2", n)
    keep = [e for e in G.monomial_basis(n) if (e[0] - e[1] - n) % m == 0]
    cols = len(sp.basis)
    # combinations of the basis supported on the eigenspace, without a zb^n term
    others = [e for e in G.monomial_basis(n) if e not in keep]
    rows = [[b.coeff(e) for b in sp.basis] for e in others]
    if (0, n) in keep:
        rows.append([b.coeff((0, n)) for b in sp.basis])
    ker = kernel_basis(ExactMatrix(rows, cols))
    if len(ker) != 1:
        raise ArithmeticError(f"normalizing conditions leave {len(ker)} solutions")
    x = ker[0]
    p = MPoly(VARS)
    for xi, b in zip(x, sp.basis):
        if xi:
            p = p + b.scale(xi)
    target = lam(CPoly.c1() + CPoly.c2(), (2 * (n - 1)) // m)
    s = RatFunc(target, CPoly.lift(p.coeff((n, 0))))
    out = {}
    for e, v in p.terms.items():
        w = RatFunc.lift(v) * s
        if not w.is_poly():
            raise ArithmeticError("normalized S is not polynomial")
        out[e] = w.as_cpoly()
    return MPoly(VARS, out)


def check_s_family(m: int, n: int) -> dict:
    """Recursion vs kernel definition, F(S) = 0, and the Y / Ybar laws."""
    c1, c2 = CPoly.c1(), CPoly.c2()
    S = s_poly(m, n)
    out = {"quasiharmonic": not dihedral_F(m, (c1, c2), S), "zb_free": not S.coeff((0, n)) or n == 0}
    if n >= 1:
        out["kernel"] = S == s_from_kernel(m, n)
        h = m // 2
        q, r = divmod(n, h)
        base = c1 * (-h) - c2 * h + n
        Sp = s_poly(m, n - 1)
        if r != 1:
            expect_y = Sp.scale(base)
        else:
            expect_y = (Sp.scale(c1 + c2 - q) + swap(Sp).scale((c1 * _sgn(q) + c2) * _sgn(h * q))).scale(base)
        out["Y_law"] = dihedral_Y(m, (c1, c2), S) == expect_y
        if r:
            expect_yb = MPoly(VARS)
        else:
            expect_yb = swap(Sp).scale((c1 * _sgn(q) + c2) * (_sgn(h * q) * h))
        out["Ybar_law"] = dihedral_Ybar(m, (c1, c2), S) == expect_yb
    return out


# ---------------------------------------------------------------------------
# quotient algebras P_{n,c} = C[z, zb] / J_{n+1,c}

def is_singular_const(m: int, c) -> bool:
    """Singular constant values: k/m with m not dividing k, or l + 1/2."""
    c = Fraction(c)
    if c <= 0:
        return False
    km = c * m
    if km.denominator == 1 and km.numerator % m:
        return True
    return (2 * c).denominator == 1 and (2 * c).numerator % 2 == 1


def singular_degrees(m: int, c) -> list[int]:
    """Degrees where singular vectors are predicted for a constant c."""
    c = Fraction(c)
    out = []
    km = c * m
    if c > 0 and km.denominator == 1 and km.numerator % m:
        out.append(km.numerator)
    if c > 0 and (2 * c).denominator == 1 and (2 * c).numerator % 2:
        out.append(m * (2 * c).numerator)
    return sorted(set(out))


def regular_probes(m: int, count: int, seed: int) -> list[Fraction]:
    """Seeded rationals avoiding the singular constants of I2(m)."""
    out: list[Fraction] = []
    s = seed
    while len(out) < count:
        for v in seeded_rationals(count * 3, s):
            if not is_singular_const(m, v) and v not in out:
                out.append(v)
                if len(out) == count:
                    break
        s += 1
    return out


def qh_generators(m: int, n: int, c0) -> list[MPoly]:
    """A basis of QH_n at a constant rational c0 or a pair (c1, c2)."""
    from .coxeter import build_group
    from .quasiharmonic import qh_space
    G = build_group("dihedral", m)
    return qh_space(G, c0, n).basis


@dataclass
class QuotientAlgebra:
    m: int
    n: int
    c: object
    dims: list
    generators: list
    ideal: IdealDegrees = field(repr=False, default=None)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def socle_degree(self) -> int:
        return len(self.dims) - 1

    @property
    def socle_dim(self) -> int:
        return self.dims[-1] if self.dims else 0

    def is_symmetric(self) -> bool:
        return self.dims == self.dims[::-1]


def ideal_graded(m: int, n: int, c0, cap: int | None = None) -> QuotientAlgebra:
    """Graded dims of C[z, zb] / J_{n+1,c0}, J generated by QH_{n+1}."""
    cap = 2 * n + 2 if cap is None else cap
    gens = qh_generators(m, n + 1, c0)
    ideal = IdealDegrees(gens, VARS)
    dims = ideal.graded_dims(cap)
    return QuotientAlgebra(m, n, c0, dims, gens, ideal)


def multzzbar_check(m: int, n: int, c0) -> bool:
    """z zb J_{n,c0} lies in J_{n+1,c0}, tested on every graded piece up to 2n."""
    small = IdealDegrees(qh_generators(m, n, c0), VARS)
    big = IdealDegrees(qh_generators(m, n + 1, c0), VARS)
    zzb = _mono(1, 1)
    for k in range(n, 2 * n + 1):
        mons, basis, _ = small.component(k)
        for row in basis:
            p = MPoly(VARS, {e: v for e, v in zip(mons, row) if v})
            if not big.contains(zzb * p):
                return False
    return True


# ---------------------------------------------------------------------------
# Q_k and ideal memberships

def Q_poly(m: int, k: int, c="symbolic") -> MPoly:
    c = _param(c)
    one = CPoly.const(1) if isinstance(c, CPoly) else Fraction(1)
    if k == 1:
        return _mono(2 * m, 0, c - 1) + _mono(m, m, c * _sgn(m))
    a = one
    for i in range(k + 1):
        a = a * (c - i)
    b = one
    for i in range(-1, k):
        b = b * (c + i)
    return _mono(2 * k * m, 0, a) + _mono(m * (k + 1), m * (k - 1), b * _sgn(m * k + m + k))


def multz_identity(m: int, n: int, sign_convention: str = "corrected") -> bool:
    """z^{mq} zb^r R_n as a combination of the Q_k.

    The Q_1 term carries (-1)^{m(q-1)} (``corrected``) or (-1)^{mq}
    (``literal``); the two differ only for odd m and odd m needs the former.
    """
    c = CPoly.c1()
    q, r = divmod(n, m)
    if q < 1:
        return True
    lhs = _mono(m * q, r) * R_explicit(m, n)
    zzb = _mono(1, 1)
    rhs = MPoly(VARS)
    for k in range(q - 1):
        coef = falling(c, k - 1) * (comb(q, k) * _sgn(m * k))
        rhs = rhs + (zzb ** (m * k + r) * Q_poly(m, q - k)).scale(coef)
    last = m * (q - 1) if sign_convention == "corrected" else m * q
    rhs = rhs + (zzb ** (m * (q - 1) + r) * Q_poly(m, 1)).scale(falling(c, q - 1) * _sgn(last))
    return lhs == rhs


def q_membership(m: int, q: int, r: int, c0) -> dict:
    """Membership tests in J_{n+1,c0} for n = m q + r."""
    n = m * q + r
    c0 = Fraction(c0)
    ideal = IdealDegrees(qh_generators(m, n + 1, c0), VARS)
    out = {"zr_zbr_Qq": ideal.contains(_mono(r, r) * Q_poly(m, q, c0)) if q >= 1 else True}
    if q >= 1:
        out["z2r_Qq"] = ideal.contains(_mono(2 * r, 0) * Q_poly(m, q, c0))
    if c0.denominator == 1 and -q + 1 <= c0 <= -1:
        out["zeros"] = ideal.contains(_mono(2 * n - r, r))
    if c0.denominator == 1 and 1 <= c0 <= q:
        out["monom"] = ideal.contains(_mono(n + m + r, n - m - r))
    return out


# ---------------------------------------------------------------------------
# characteristic polynomial

def charpoly_closed(m: int, n: int, c="symbolic", cleared: bool = True) -> MPoly:
    """The closed form of p_{2n,c} (ordinary coefficients).

    With ``cleared`` every term is multiplied by (1 - c)(2 - c)...(q - c).
    """
    c = _param(c)
    q = n // m
    one = CPoly.const(1) if isinstance(c, CPoly) else Fraction(1)
    terms: dict = {(n, n): one}
    for k in range(1, q + 1):
        rising = one
        for i in range(k):
            rising = rising * (c + i)
        if cleared:
            coef = rising
            for j in range(k + 1, q + 1):
                coef = coef * (-c + j)
        else:
            den = one
            for j in range(1, k + 1):
                den = den * (-c + j)
            coef = RatFunc(CPoly.lift(rising), CPoly.lift(den)) if isinstance(c, CPoly) else rising / den
        coef = coef * _sgn(m * k)
        for e in ((n - m * k, n + m * k), (n + m * k, n - m * k)):
            terms[e] = terms.get(e, 0) + coef
    if cleared:
        clear = one
        for j in range(1, q + 1):
            clear = clear * (-c + j)
        terms[(n, n)] = clear
    return _strip(from_divided(VARS, terms))


def laplace(p: MPoly) -> MPoly:
    """Delta = -d^2 / dz dzb."""
    return -(p.diff(0).diff(1))


def charpoly_minors(m: int, n: int, c0) -> MPoly:
    """p_{2n} from the minors of the degree-(n+1) generators
    (R_{n+1}, Rbar_{n+1} evaluated at c0)."""
    R = R_explicit(m, n + 1, c0)
    return charpoly_rank2_minors(R, swap(R))


def laplace_descent_check(m: int, n: int, c0, normalization: str = "cleared"):
    """Scalar a with Delta p_{2n} = a p_{2(n-1)}, or None if not proportional.

    ``cleared``: the closed form cleared by (1-c)...(q-c);
    ``signed``: the cleared form times (-1)^{n-q};
    ``minors``: the minors of (R_{n+1}, Rbar_{n+1}).
    """
    from .ring import ratio
    c0 = Fraction(c0)
    if normalization in ("cleared", "signed"):
        hi, lo = charpoly_closed(m, n, c0), charpoly_closed(m, n - 1, c0)
        if normalization == "signed":
            hi = hi.scale(_sgn(n - n // m))
            lo = lo.scale(_sgn(n - 1 - (n - 1) // m))
    elif normalization == "minors":
        hi, lo = charpoly_minors(m, n, c0), charpoly_minors(m, n - 1, c0)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    return ratio(laplace(hi), lo)


def laplace_descent_expected(m: int, n: int, c0) -> Fraction:
    """1 when m does not divide n, otherwise c0 - n/m."""
    q, r = divmod(n, m)
    return Fraction(1) if r else Fraction(c0) - q
