"""Argument parsing and dispatch; every command forwards to library calls."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from ..coxeter import parse_group
from ..dihedral import (
    charpoly_closed,
    ideal_graded,
    qh_generators,
    rho,
    s_poly,
)
from ..frobenius import (
    charpoly_from_ideal,
    charpoly_rank2_minors,
    coinvariant_data,
    derivative_span_dims,
    dual_to_primal,
    root_product,
)
from ..linsolve import DEFAULT_SEED
from ..quasiharmonic import (
    deformed_invariant,
    generator_names,
    qh_space,
    singular_candidates,
    singular_scan,
)
from ..ring import parse_poly, proportional
from .report import render
from .suites import SUITE_BY_CRITERION, SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """'3..5', '4' or '3,5,6'."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                a, b = part.split("..")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad integer range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _value(text: str):
    if text == "symbolic":
        return "symbolic"
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad parameter value {text!r}") from None


def parse_c(args, default="symbolic"):
    """The c argument for the library from --c or --c1/--c2."""
    c1, c2 = getattr(args, "c1", None), getattr(args, "c2", None)
    if c1 is not None or c2 is not None:
        if c1 is None or c2 is None:
            raise UsageError("--c1 and --c2 must be given together")
        a, b = _value(c1), _value(c2)
        if a == "symbolic" and b == "symbolic":
            return "symbolic2"
        if "symbolic" in (a, b):
            raise UsageError("mixing symbolic and rational class parameters is not supported")
        return (a, b)
    c = getattr(args, "c", None)
    return default if c is None else _value(c)


def _c_label(c) -> str:
    if isinstance(c, tuple):
        return f"({c[0]}, {c[1]})"
    return str(c)


def _group(args):
    if not args.group:
        raise UsageError("--group is required (e.g. Sn:4 or I2:5)")
    try:
        return parse_group(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _need(args, name: str):
    v = getattr(args, name, None)
    if v is None:
        raise UsageError(f"--{name} is required")
    return v


def _poly_file(path: str) -> list:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    polys = []
    for ln in lines:
        ln = ln.split("#", 1)[0].strip()
        if ln:
            try:
                polys.append(parse_poly(ln))
            except ValueError as exc:
                raise UsageError(f"{path}: {exc}") from None
    if not polys:
        raise UsageError(f"{path}: no polynomials")
    names: list[str] = []
    for p in polys:
        names.extend(v for v in p.vars if v not in names)
    return [parse_poly(str(p), sorted(names)) for p in polys]


# ---------------------------------------------------------------------------
# commands

def cmd_qh(args):
    G = _group(args)
    c = parse_c(args)
    kind = args.kind
    if args.action == "dims":
        degmax = args.degmax if args.degmax is not None else 2 * G.h
        dims = [qh_space(G, c, n, kind, args.d).dim for n in range(degmax + 1)]
        return {"group": G.name, "c": _c_label(c), "kind": kind, "dims": dims}, EXIT_OK
    n = _need(args, "n")
    sp = qh_space(G, c, n, kind, args.d)
    return {"group": G.name, "c": _c_label(c), "kind": kind, "degree": n, "dim": sp.dim, "basis": sp.basis}, EXIT_OK


def cmd_invariants(args):
    G = _group(args)
    c = parse_c(args)
    d = args.degree if args.degree is not None else _need(args, "n")
    inv = deformed_invariant(G, d, c)
    return {
        "group": G.name,
        "c": _c_label(c),
        "degree": d,
        "generators": inv.generator_form(generator_names(G)),
        "polynomial": inv.polynomial,
    }, EXIT_OK


def cmd_singular(args):
    G = _group(args)
    degmax = args.degmax if args.degmax is not None else 2 * G.h
    if args.c is not None:
        c = _value(args.c)
        if c == "symbolic":
            raise UsageError("singular scan needs rational values of c")
        values = [c]
    else:
        values = singular_candidates(G)
    hits = singular_scan(G, values, degmax)
    table = {str(c): [{"degree": d, "dim": k} for d, k in h] for c, h in hits.items()}
    return {"group": G.name, "degmax": degmax, "singular": table}, EXIT_OK


def cmd_dihedral(args):
    m = _need(args, "m")
    n = _need(args, "n")
    if args.action == "rho":
        c = parse_c(args)
        return {"m": m, "n": n, "c": _c_label(c), "rho": rho(m, n, c)}, EXIT_OK
    if args.action == "s":
        c = parse_c(args, default="symbolic2")
        if c == "symbolic2" or c == "symbolic":
            p = s_poly(m, n)
        elif isinstance(c, tuple):
            p = s_poly(m, n, *c)
        else:
            p = s_poly(m, n, c, c)
        return {"m": m, "n": n, "c": _c_label(c), "S": p}, EXIT_OK
    c = parse_c(args)
    if args.action == "charpoly":
        closed = charpoly_closed(m, n, c)
        out = {"m": m, "n": n, "c": _c_label(c), "charpoly": closed}
        code = EXIT_OK
        if args.check_minors:
            if c == "symbolic":
                raise UsageError("--check-minors needs a rational --c")
            minors = charpoly_rank2_minors(*qh_generators(m, n + 1, c))
            ok = proportional(closed, minors)
            out["minors"] = minors
            out["proportional"] = ok
            code = EXIT_OK if ok else EXIT_FAIL
        return out, code
    if c == "symbolic":
        raise UsageError("quotient needs a rational --c")
    Q = ideal_graded(m, n, c)
    ok = Q.is_symmetric() and Q.socle_dim == 1 and Q.total_dim == (n + 1) ** 2
    return {"m": m, "n": n, "c": _c_label(c), "dims": Q.dims, "total": Q.total_dim,
            "generators": Q.generators, "standard": ok}, EXIT_OK


def cmd_frobenius(args):
    if args.action == "charpoly":
        gens = _poly_file(_need(args, "gens"))
        data = charpoly_from_ideal(gens)
        return {"charpoly": data.charpoly, "dims": data.dims, "socle_degree": data.socle_degree}, EXIT_OK
    if args.action == "dims":
        polys = _poly_file(_need(args, "charpoly"))
        if len(polys) != 1:
            raise UsageError("the charpoly file must hold exactly one form")
        return {"dims": derivative_span_dims(polys[0])}, EXIT_OK
    G = _group(args)
    data = coinvariant_data(G)
    ok = proportional(dual_to_primal(G, data.charpoly), root_product(G))
    return {"group": G.name, "charpoly": data.charpoly, "dims": data.dims,
            "proportional_to_root_product": ok}, EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args):
    names = []
    for s in args.suite:
        if s == "all":
            names.extend(SUITES)
        elif s.isdigit() and int(s) in SUITE_BY_CRITERION:
            names.append(SUITE_BY_CRITERION[int(s)])
        elif s in SUITES:
            names.append(s)
        else:
            raise UsageError(f"unknown suite {s!r}; known: {', '.join(SUITES)}, all")
    cfg = SuiteConfig(
        m=parse_range(args.m) if args.m else None,
        n=parse_range(args.n) if args.n else None,
        seed=args.seed,
        workers=args.workers,
    )
    reports = [run_suite(name, cfg) for name in names]
    return reports, EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, *, m_int: bool = False, n_int: bool = True) -> None:
    p.add_argument("--group", help="Sn:<n> or I2:<m>")
    if m_int:
        p.add_argument("--m", type=int)
    if n_int:
        p.add_argument("--n", type=int)
    p.add_argument("--c", help="rational value or 'symbolic'")
    p.add_argument("--c1", help="first class parameter (even m)")
    p.add_argument("--c2", help="second class parameter (even m)")
    p.add_argument("--degmax", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="quasiharm", description="Quasiharmonic polynomials and Dunkl operators.")
    top.add_argument("--format", choices=["text", "structured"], default="text")
    top.add_argument("--out", help="write output to PATH instead of stdout")
    top.add_argument("--timing", action="store_true", help="include wall-clock times in reports")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qh", help="quasiharmonic spaces")
    p.add_argument("action", choices=["dims", "basis"])
    _common(p)
    p.add_argument("--kind", choices=["quasiharmonic", "harmonic", "truncated"], default="quasiharmonic")
    p.add_argument("--d", type=int, help="degree bound for --kind truncated")

    p = sub.add_parser("invariants", help="deformed invariants")
    p.add_argument("action", choices=["deformed"])
    _common(p)
    p.add_argument("--degree", type=int)

    p = sub.add_parser("singular", help="singular parameter values")
    p.add_argument("action", choices=["scan"])
    _common(p)

    p = sub.add_parser("dihedral", help="explicit dihedral families")
    p.add_argument("action", choices=["rho", "s", "charpoly", "quotient"])
    _common(p, m_int=True)
    p.add_argument("--check-minors", action="store_true")

    p = sub.add_parser("frobenius", help="standard Frobenius algebras")
    p.add_argument("action", choices=["charpoly", "dims", "coinvariants"])
    _common(p, n_int=False)
    p.add_argument("--gens", help="file with one generator polynomial per line")
    p.add_argument("--charpoly", help="file with one characteristic form")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", nargs="+", help=f"one of: {', '.join(SUITES)}, all, or a criterion number")
    p.add_argument("--m", help="range such as 3..5")
    p.add_argument("--n", help="range such as 1..8")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    return top


COMMANDS = {
    "qh": cmd_qh,
    "invariants": cmd_invariants,
    "singular": cmd_singular,
    "dihedral": cmd_dihedral,
    "frobenius": cmd_frobenius,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        value, code = COMMANDS[args.command](args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if isinstance(value, list):
        data = b"".join(render(r, args.format, args.timing) for r in value)
    else:
        data = render(value, args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
