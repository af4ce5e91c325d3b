"""Named verification suites, one per acceptance criterion.

Each suite expands into a list of independent checks; every check calls
public library operations and turns their results into a CheckRecord.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

from ..coxeter import build_group
from ..dihedral import (
    charpoly_closed,
    check_rho_family,
    ideal_graded,
    laplace_descent_check,
    laplace_descent_expected,
    multzzbar_check,
    qh_generators,
    rho,
    s_poly,
    singular_degrees,
)
from ..dunkl import closed_form_mismatches, sl2_mismatches
from ..frobenius import (
    charpoly_rank2_minors,
    complete_intersection_corpus,
    corpus_checks,
)
from ..linsolve import DEFAULT_SEED, seeded_rationals
from ..quasiharmonic import (
    algebraic_independence_check,
    deformed_invariant,
    exceptional_locus,
    generation_check,
    hilbert_table,
    jack_f,
    jack_is_singular,
    matches_reference,
    mutdef_multiplicity,
    q_family,
    qh_space,
    regular_probes,
    singular_vectors,
    translation_project,
)
from ..ring import CPoly, MPoly, dumps, loads, parse_poly, proportional
from .report import CheckRecord, SuiteReport, render


@dataclass
class SuiteConfig:
    m: list | None = None
    n: list | None = None
    seed: int = DEFAULT_SEED
    workers: int = 1

    def as_dict(self) -> dict:
        out: dict = {}
        if self.m is not None:
            out["m"] = list(self.m)
        if self.n is not None:
            out["n"] = list(self.n)
        return out


Check = Callable[[], CheckRecord]


@dataclass
class Suite:
    name: str
    criterion: int
    title: str
    build: Callable[[SuiteConfig], list]


def _rec(cid: str, crit: int, ok: bool, **witness) -> CheckRecord:
    return CheckRecord(cid, f"criterion {crit}", "pass" if ok else "fail", witness)


def _ms(cfg: SuiteConfig, default: list) -> list:
    return list(cfg.m) if cfg.m is not None else list(default)


# ---------------------------------------------------------------------------
# 1: dihedral dimensions

def _dims_check(m: int, c, label: str, nmax: int) -> Check:
    def run():
        G = build_group("dihedral", m)
        dims = [qh_space(G, c, n).dim for n in range(nmax + 1)]
        ok = dims[0] == 1 and all(d == 2 for d in dims[1:])
        return _rec(f"I2({m})/c={label}", 1, ok, dims=dims)
    return run


def _suite_dims(cfg: SuiteConfig) -> list:
    out = []
    probes = seeded_rationals(10, cfg.seed)
    for m in _ms(cfg, [3, 4, 5, 6]):
        nmax = max(cfg.n) if cfg.n else 3 * m
        out.append(_dims_check(m, "symbolic", "symbolic", nmax))
        if m % 2 == 0:
            out.append(_dims_check(m, "symbolic2", "symbolic2", nmax))
        for c0 in probes:
            out.append(_dims_check(m, c0, str(c0), nmax))
    return out


# ---------------------------------------------------------------------------
# 2: S4 exceptional values

_S4_EXPECTED = {3: (6, {Fraction(1, 2): 7, Fraction(1, 4): 7}),
                4: (6, {Fraction(1, 3): 9, Fraction(1, 2): 9, Fraction(3, 4): 9})}


def _s4_check(n: int) -> Check:
    def run():
        G = build_group("symmetric", 4)
        L = exceptional_locus(G, n)
        ncols = len(G.monomial_basis(n))
        generic = ncols - L.generic_rank
        found = {v: ncols - r for v, r in L.confirmed_values}
        gen_exp, exc_exp = _S4_EXPECTED[n]
        ok = generic == gen_exp and found == exc_exp and not L.unevaluated_factors
        return _rec(f"S4/QH{n}", 2, ok, generic_dim=generic,
                    exceptional={str(k): v for k, v in sorted(found.items())},
                    unresolved=L.unevaluated_factors)
    return run


def _suite_s4(cfg: SuiteConfig) -> list:
    return [_s4_check(3), _s4_check(4)]


# ---------------------------------------------------------------------------
# 3: rho family

def _rho_check(m: int, n: int) -> Check:
    def run():
        flags = check_rho_family(m, n)
        need = ["recursive", "residue", "quasiharmonic"] + (["Y_law", "Ybar_law"] if n >= 1 else [])
        return _rec(f"I2({m})/n={n}", 3, all(flags[k] for k in need), **flags)
    return run


def _suite_rho(cfg: SuiteConfig) -> list:
    out = []
    for m in _ms(cfg, [3, 4, 5]):
        ns = cfg.n if cfg.n else range(0, 3 * m + 1)
        out.extend(_rho_check(m, n) for n in ns)
    return out


# ---------------------------------------------------------------------------
# 4: characteristic polynomial

def _minors_check(m: int, n: int, c0: Fraction) -> Check:
    def run():
        closed = charpoly_closed(m, n, c0)
        minors = charpoly_rank2_minors(*qh_generators(m, n + 1, c0))
        return _rec(f"minors/I2({m})/n={n}/c={c0}", 4, proportional(closed, minors))
    return run


def _laplace_check(m: int, n: int, c0: Fraction) -> Check:
    def run():
        a = laplace_descent_check(m, n, c0, "cleared")
        expected = laplace_descent_expected(m, n, c0)
        signed = laplace_descent_check(m, n, c0, "signed")
        return _rec(f"laplace/I2({m})/n={n}/c={c0}", 4, a == expected,
                    scalar=a, expected=expected, signed_scalar=signed)
    return run


def _suite_charpoly(cfg: SuiteConfig) -> list:
    out = []
    for m in _ms(cfg, [3, 4]):
        G = build_group("dihedral", m)
        probes = regular_probes(G, 3, cfg.seed)
        ns = cfg.n if cfg.n else range(1, 2 * m + 3)
        for c0 in probes:
            out.extend(_minors_check(m, n, c0) for n in ns)
        for c0 in probes:
            out.extend(_laplace_check(m, n, c0) for n in ns)
    return out


# ---------------------------------------------------------------------------
# 5: sl2 relations

def _sl2_check(m: int, c, label: str, degmax: int) -> Check:
    def run():
        bad = sl2_mismatches(m, c, degmax)
        return _rec(f"I2({m})/c={label}", 5, not bad, degmax=degmax, failures=[list(b) for b in bad[:5]])
    return run


def _suite_sl2(cfg: SuiteConfig) -> list:
    out = []
    degmax = max(cfg.n) if cfg.n else 12
    for m in _ms(cfg, [3, 4, 5, 6]):
        out.append(_sl2_check(m, CPoly.c1(), "symbolic", degmax))
        if m % 2 == 0:
            out.append(_sl2_check(m, (CPoly.c1(), CPoly.c2()), "symbolic2", degmax))
    return out


# ---------------------------------------------------------------------------
# 6: deformed invariants

def _inv_check(kind: str, size: int, d: int, two_class: bool = False) -> Check:
    def run():
        G = build_group(kind, size)
        inv = deformed_invariant(G, d, "symbolic2" if two_class else "symbolic")
        ok = matches_reference(inv, two_class)
        tag = "/two-class" if two_class else ""
        return _rec(f"{G.name}/e{d}{tag}", 6, bool(ok), invariant=inv.polynomial if kind == "dihedral" else inv.as_generator_polynomial())
    return run


def _independence_check(kind: str, size: int, seed: int) -> Check:
    def run():
        G = build_group(kind, size)
        c0 = regular_probes(G, 1, seed)[0]
        invs = [deformed_invariant(G, d, c0) for d in G.exponents]
        return _rec(f"{G.name}/independent/c={c0}", 6, algebraic_independence_check(invs))
    return run


def _suite_invariants(cfg: SuiteConfig) -> list:
    out = []
    for n in (3, 4, 5):
        out.extend(_inv_check("symmetric", n, d) for d in range(2, min(n, 5) + 1))
        out.append(_independence_check("symmetric", n, cfg.seed))
    out.append(_inv_check("symmetric", 4, 8))
    for m in _ms(cfg, [3, 4, 5, 6]):
        out.append(_inv_check("dihedral", m, 2))
        out.append(_inv_check("dihedral", m, m))
        if m % 2 == 0:
            out.append(_inv_check("dihedral", m, m, True))
        out.append(_independence_check("dihedral", m, cfg.seed))
    return out


# ---------------------------------------------------------------------------
# 7: closed-form Dunkl operators

def _closed_check(m: int, c, label: str, degmax: int) -> Check:
    def run():
        bad = closed_form_mismatches(m, c, degmax)
        return _rec(f"I2({m})/c={label}", 7, not bad, degmax=degmax, failures=[[b[0], list(b[1])] for b in bad[:5]])
    return run


def _suite_closed(cfg: SuiteConfig) -> list:
    out = []
    degmax = max(cfg.n) if cfg.n else 8
    for m in _ms(cfg, [3, 4, 5, 6]):
        out.append(_closed_check(m, CPoly.c1(), "symbolic", degmax))
        if m % 2 == 0:
            out.append(_closed_check(m, (CPoly.c1(), CPoly.c2()), "symbolic2", degmax))
    return out


# ---------------------------------------------------------------------------
# 8: singular values

def _dihedral_singular(m: int, c0: Fraction) -> Check:
    def run():
        G = build_group("dihedral", m)
        found = {d: len(singular_vectors(G, c0, d)) for d in singular_degrees(m, c0)}
        return _rec(f"I2({m})/c={c0}", 8, bool(found) and all(found.values()), degrees=found)
    return run


def _jack_check(n: int, r: int) -> Check:
    def run():
        G = build_group("symmetric", n)
        flags = [jack_is_singular(G, r, i) for i in range(1, n + 1)]
        return _rec(f"S{n}/jack/c={Fraction(r, n)}", 8, all(flags), per_index=flags)
    return run


def _suite_singular(cfg: SuiteConfig) -> list:
    out = []
    for m in _ms(cfg, [3, 4, 5]):
        vals = sorted({Fraction(k, m) for k in range(1, 2 * m + 1) if k % m} | {Fraction(1, 2), Fraction(3, 2)})
        out.extend(_dihedral_singular(m, c0) for c0 in vals)
    for n in (2, 3, 4):
        out.extend(_jack_check(n, r) for r in range(1, 6) if gcd(r, n) == 1)
    return out


# ---------------------------------------------------------------------------
# 9: Frobenius corpus

def _corpus_check(index: int) -> Check:
    def run():
        entry = complete_intersection_corpus()[index]
        res = corpus_checks(entry)
        return _rec(entry.name, 9, all(res["flags"].values()), dims=res["dims"], **res["flags"])
    return run


def _suite_frobenius(cfg: SuiteConfig) -> list:
    return [_corpus_check(i) for i in range(len(complete_intersection_corpus()))]


# ---------------------------------------------------------------------------
# 10: quotient algebras

def _quotient_check(m: int, n: int, c0: Fraction) -> Check:
    def run():
        Q = ideal_graded(m, n, c0)
        vanish = Q.ideal.quotient_dim(2 * n + 1) == 0 and Q.ideal.quotient_dim(2 * n + 2) == 0
        flags = {
            "symmetric": Q.is_symmetric(),
            "socle_one": Q.socle_dim == 1 and Q.socle_degree == 2 * n,
            "total": Q.total_dim == (n + 1) ** 2,
            "vanishing": vanish,
            "zzbar": multzzbar_check(m, n, c0),
        }
        return _rec(f"I2({m})/n={n}/c={c0}", 10, all(flags.values()), dims=Q.dims, **flags)
    return run


def _suite_quotient(cfg: SuiteConfig) -> list:
    out = []
    for m in _ms(cfg, [3, 4]):
        G = build_group("dihedral", m)
        ns = cfg.n if cfg.n else range(1, 9)
        for c0 in regular_probes(G, 3, cfg.seed):
            out.extend(_quotient_check(m, n, c0) for n in ns)
    return out


# ---------------------------------------------------------------------------
# 11: q-recursion

def _q_check(n: int, r_max: int) -> Check:
    def run():
        fam = q_family(build_group("symmetric", n), r_max)
        steps = {s.r: {"alpha": s.alpha, "verified": s.verified, "sum_zero": s.sum_vanishes} for s in fam.steps}
        return _rec(f"S{n}/r<={r_max}/c=symbolic", 11, fam.ok, steps=steps)
    return run


def _suite_q(cfg: SuiteConfig) -> list:
    rmax = max(cfg.n) if cfg.n else 5
    return [_q_check(3, rmax), _q_check(4, rmax)]


# ---------------------------------------------------------------------------
# 12: generation by top invariants

def _gen_check(kind: str, size: int, c0: Fraction, nmax: int) -> Check:
    def run():
        G = build_group(kind, size)
        flags = [generation_check(G, c0, n) for n in range(1, nmax + 1)]
        return _rec(f"{G.name}/c={c0}", 12, all(flags), per_degree=flags)
    return run


def _suite_generation(cfg: SuiteConfig) -> list:
    out = []
    for m in _ms(cfg, [3, 4, 5]):
        G = build_group("dihedral", m)
        out.extend(_gen_check("dihedral", m, c0, 2 * m) for c0 in regular_probes(G, 3, cfg.seed))
    G = build_group("symmetric", 3)
    out.extend(_gen_check("symmetric", 3, c0, 6) for c0 in regular_probes(G, 3, cfg.seed))
    return out


# ---------------------------------------------------------------------------
# 13: Hilbert and character tables

def _table_check(kind: str, size: int, c0: Fraction, tkind: str, d: int | None) -> Check:
    def run():
        G = build_group(kind, size)
        rows = hilbert_table(G, c0, tkind, 2 * G.h, d)
        ok = all(r.matches for r in rows)
        wit = {"dims": [r.dim for r in rows], "trivial": [r.multiplicities.get("1", 0) for r in rows],
               "defining": [r.multiplicities.get("V", 0) for r in rows]}
        if tkind == "quasiharmonic":
            mut = all(r.multiplicities.get("V", 0) == mutdef_multiplicity(G, r.degree) for r in rows if r.degree >= 1)
            ok = ok and mut
            wit["mutdef"] = mut
        tag = tkind if d is None else f"{tkind}(d={d})"
        return _rec(f"{G.name}/{tag}/c={c0}", 13, ok, **wit)
    return run


def _suite_hilbert(cfg: SuiteConfig) -> list:
    out = []
    groups = [("symmetric", 3), ("symmetric", 4)] + [("dihedral", m) for m in _ms(cfg, [3, 4, 5, 6])]
    for kind, size in groups:
        G = build_group(kind, size)
        c0 = regular_probes(G, 1, cfg.seed)[0]
        out.append(_table_check(kind, size, c0, "quasiharmonic", None))
        out.extend(_table_check(kind, size, c0, "truncated", d) for d in sorted(set(G.exponents)))
    return out


# ---------------------------------------------------------------------------
# 14: serialization

def _produced_polynomials(seed: int) -> dict:
    """A sweep over the polynomials produced by the other suites."""
    out: dict = {}
    for m in (3, 4, 5, 6):
        G = build_group("dihedral", m)
        for c in ["symbolic"] + (["symbolic2"] if m % 2 == 0 else []) + seeded_rationals(2, seed):
            for n in range(3 * m + 1):
                out.setdefault("qh", []).extend(qh_space(G, c, n).basis)
    for m in (3, 4, 5):
        for n in range(3 * m + 1):
            out.setdefault("rho", []).append(rho(m, n))
    for m in (4, 6):
        for n in range(1, 2 * m + 1):
            out.setdefault("s_family", []).append(s_poly(m, n))
    for m in (3, 4):
        G = build_group("dihedral", m)
        for c0 in regular_probes(G, 3, seed):
            for n in range(1, 2 * m + 3):
                out.setdefault("charpoly", []).append(charpoly_closed(m, n, c0))
                gens = qh_generators(m, n + 1, c0)
                out["charpoly"].append(charpoly_rank2_minors(*gens))
                out.setdefault("ideal_generators", []).extend(gens)
    for kind, size, degs in (("symmetric", 3, (2, 3)), ("symmetric", 4, (2, 3, 4, 8)), ("symmetric", 5, (2, 3, 4, 5)),
                             ("dihedral", 4, (2, 4)), ("dihedral", 5, (2, 5))):
        G = build_group(kind, size)
        for d in degs:
            inv = deformed_invariant(G, d)
            out.setdefault("invariants", []).extend([inv.polynomial, inv.as_generator_polynomial()])
    for n in (3, 4):
        fam = q_family(build_group("symmetric", n), 5)
        out.setdefault("q_family", []).extend(q for s in fam.steps for q in s.q)
    for entry in complete_intersection_corpus():
        out.setdefault("frobenius", []).append(corpus_checks(entry)["charpoly"])
        out["frobenius"].extend(entry.generators)
    for m in (3, 4, 5):
        G = build_group("dihedral", m)
        for k in (1, 2, m + 1):
            c0 = Fraction(k, m)
            for d in singular_degrees(m, c0):
                out.setdefault("singular", []).extend(singular_vectors(G, c0, d))
    for n, r in ((3, 2), (4, 3)):
        G = build_group("symmetric", n)
        f = jack_f(n, 1, r, Fraction(r, n))
        out.setdefault("jack", []).extend([f, translation_project(G, f)])
    return out


def _text_roundtrip_ok(p: MPoly) -> bool | None:
    """parse(render(p)) == p; None when coefficients have no text form."""
    if not all(isinstance(v, (int, Fraction, CPoly)) for v in p.terms.values()):
        return None
    params = any(isinstance(v, CPoly) for v in p.terms.values())
    return parse_poly(str(p), p.vars, params=params) == p


def _roundtrip_check(seed: int) -> Check:
    def run():
        polys = _produced_polynomials(seed)
        counts = {}
        ok = True
        for key, ps in polys.items():
            struct_ok = sum(loads(dumps(p)) == p for p in ps)
            text_n, text_ok = 0, 0
            for p in ps:
                t = _text_roundtrip_ok(p)
                if t is not None:
                    text_n += 1
                    text_ok += bool(t)
            counts[key] = {"count": len(ps), "structured_ok": struct_ok, "text_checked": text_n, "text_ok": text_ok}
            ok = ok and struct_ok == len(ps) and text_ok == text_n
        return _rec("roundtrip", 14, ok, families=counts)
    return run


def _stability_check(seed: int) -> Check:
    def run():
        cfg = SuiteConfig(m=[3, 4], seed=seed)
        same = {}
        for name in ("sl2", "frobenius", "charpoly"):
            a = run_suite(name, cfg)
            b = run_suite(name, SuiteConfig(m=[3, 4], seed=seed, workers=2))
            same[name] = all(render(a, f) == render(b, f) for f in ("text", "structured"))
        return _rec("byte-stable", 14, all(same.values()), suites=same)
    return run


def _suite_serialization(cfg: SuiteConfig) -> list:
    return [_roundtrip_check(cfg.seed), _stability_check(cfg.seed)]


# ---------------------------------------------------------------------------

SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("dihedral-core", 1, "dihedral quasiharmonic dimensions", _suite_dims),
    Suite("s4-tables", 2, "S4 exceptional parameter values", _suite_s4),
    Suite("rho-family", 3, "rho family constructions and action laws", _suite_rho),
    Suite("charpoly", 4, "characteristic polynomial and Laplace descent", _suite_charpoly),
    Suite("sl2", 5, "sl2 relations", _suite_sl2),
    Suite("invariants", 6, "deformed invariants", _suite_invariants),
    Suite("dunkl-closed-form", 7, "closed-form Dunkl operators", _suite_closed),
    Suite("singular", 8, "singular values", _suite_singular),
    Suite("frobenius", 9, "Frobenius corpus", _suite_frobenius),
    Suite("quotient", 10, "quotient algebras", _suite_quotient),
    Suite("q-recursion", 11, "q-recursion normalization", _suite_q),
    Suite("generation", 12, "generation by top invariants", _suite_generation),
    Suite("hilbert", 13, "Hilbert and character tables", _suite_hilbert),
    Suite("serialization", 14, "serialization and report stability", _suite_serialization),
]}

SUITE_BY_CRITERION = {s.criterion: s.name for s in SUITES.values()}


def _guard(check: Check, index: int) -> CheckRecord:
    try:
        return check()
    except Exception as exc:  # a crashing check is a failed check
        return CheckRecord(f"check-{index}", "error", "fail", {"error": f"{type(exc).__name__}: {exc}"})


def run_suite(name: str, config: SuiteConfig | None = None) -> SuiteReport:
    """Run a named suite; records keep the suite's declaration order."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    config = config or SuiteConfig()
    suite = SUITES[name]
    start = time.perf_counter()
    checks = suite.build(config)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_guard, checks, range(len(checks))))
    else:
        records = [_guard(c, i) for i, c in enumerate(checks)]
    rep = SuiteReport(name, suite.criterion, config.seed, config.as_dict(), records)
    rep.wall_clock = time.perf_counter() - start
    return rep
