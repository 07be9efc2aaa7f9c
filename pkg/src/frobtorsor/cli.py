"""Command-line front end.

Every subcommand prints one JSON document (``--format json``, the default)
or a short human summary (``--format text``).  ``search`` prints one JSON
document per line as results arrive.  Exit status: 0 on success, 2 on bad
input, 1 for ``check --assert-saturated`` on a non-saturated torsor.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bertini, bounds, saturation
from .algebra import FieldSpec, MultiPoly, parse_poly
from .descent import (
    AlphaPowers,
    DescentMatrix,
    GL2Char2,
    MuP,
    NotInvertible,
    SL2Char2,
    SpecError,
    TorsorSpec,
    build,
    identity_matrix,
)
from .homsolver import solve_hom

FAMILY_NAMES = ("mu_p", "alpha", "gl2_char2", "sl2_char2")


class InputError(Exception):
    """Bad command-line input; reported with exit status 2."""


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _load_json(source: str):
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def _field(args) -> FieldSpec:
    return FieldSpec(args.p, args.e)


def parse_polys(texts: Sequence[str], field: FieldSpec, vars: Sequence[str] | None = None) -> list:
    """Parse several polynomial strings into one common ring."""
    if vars is None:
        names = set()
        for t in texts:
            names.update(parse_poly(t, field).support_vars())
        vars = tuple(sorted(names)) or ("x",)
    polys = [parse_poly(t, field, vars) for t in texts]
    laurent = tuple(any(f.laurent[i] for f in polys) for i in range(len(vars)))
    return [f.with_laurent(laurent) for f in polys]


def spec_from_args(args) -> TorsorSpec:
    if getattr(args, "spec", None):
        obj = _load_json(args.spec)
        if not isinstance(obj, dict):
            raise InputError("a spec must be a JSON object")
        return TorsorSpec.from_json(obj)
    family = args.family
    if family is None:
        raise InputError("give --spec or --family")
    field = _field(args)
    vars = tuple(args.vars.split(",")) if args.vars else None
    if family == "mu_p":
        if args.m is None:
            raise InputError("mu_p needs --m")
        return MuP(args.m, field, vars[0] if vars else "x")
    texts = args.f or []
    if family == "alpha":
        if not texts:
            raise InputError("alpha needs at least one --f polynomial")
        return AlphaPowers(tuple(parse_polys(texts, field, vars)))
    if len(texts) != 4:
        raise InputError(f"{family} needs exactly four --f entries (row by row)")
    polys = parse_polys(texts, field, vars)
    if family == "gl2_char2":
        if args.morphism:
            return GL2Char2.from_morphism(*polys)
        if args.m is None:
            raise InputError("gl2_char2 needs --m (or --morphism)")
        return GL2Char2(*polys, args.m)
    if args.morphism:
        return SL2Char2.from_morphism(*polys)
    return SL2Char2(*polys)


def _add_field_args(p):
    p.add_argument("--p", type=int, default=2, help="characteristic (default 2)")
    p.add_argument("--e", type=int, default=1, help="extension degree (default 1)")


def _add_spec_args(p):
    p.add_argument("--spec", help="torsor spec as JSON: a path, inline text, or - for stdin")
    p.add_argument("--family", choices=FAMILY_NAMES)
    _add_field_args(p)
    p.add_argument("--m", type=int, help="exponent m (mu_p, gl2_char2)")
    p.add_argument("--f", action="append", metavar="POLY",
                   help="polynomial, repeatable; four entries f11 f12 f21 f22 for GL2/SL2")
    p.add_argument("--vars", help="comma-separated variable names (default: those used)")
    p.add_argument("--morphism", action="store_true",
                   help="read the four entries as the classifying morphism instead of f")


def _add_format(p):
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobtorsor",
        description="Decide saturation of height-one torsors in characteristic p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="saturation verdict for a torsor")
    _add_spec_args(p)
    p.add_argument("--method", choices=saturation.METHODS, default="both")
    p.add_argument("--assert-saturated", action="store_true",
                   help="exit 1 if the torsor is not saturated")
    _add_format(p)

    p = sub.add_parser("homdim", help="dimension of the invariant sections")
    _add_spec_args(p)
    p.add_argument("--matrix", help="descent matrix JSON (path, inline, or -)")
    p.add_argument("--identity", type=int, metavar="SIZE", help="use the identity matrix")
    p.add_argument("--basis", action="store_true", help="also print a basis")
    _add_format(p)

    p = sub.add_parser("matrix", help="dump the descent matrix")
    _add_spec_args(p)
    p.add_argument("--squares", choices=("torsor", "display"), default="torsor",
                   help="GL2 only: square relation used in the expansion")
    _add_format(p)

    p = sub.add_parser("search", help="find saturated torsors")
    p.add_argument("--family", choices=("sl2_char2", "alpha"), required=True)
    _add_field_args(p)
    p.add_argument("--degree", type=int, required=True, help="degree bound")
    p.add_argument("--budget", type=int, help="stop after this many results")
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--seed", type=int, help="required in random mode")
    p.add_argument("--n", type=int, default=1, help="alpha: number of polynomials")
    p.add_argument("--nvars", type=int, default=1, help="alpha: number of variables")
    p.add_argument("--workers", type=int, help="worker processes")
    _add_format(p)

    p = sub.add_parser("bertini", help="reduce an alpha torsor over A^n by one dimension")
    _add_spec_args(p)
    p.add_argument("--to-line", action="store_true", help="repeat down to one variable")
    _add_format(p)

    p = sub.add_parser("bounds", help="cohomology shapes and the character embedding test")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--gamma", type=int, default=0, help="p-rank of the compactified curve")
    p.add_argument("--n", type=int, default=1, help="number of punctures")
    p.add_argument("--m", type=int, help="report H^1(U, mu_{p^m})")
    p.add_argument("--alpha-bound", type=int, help="report the H^1(A^1, alpha_p) basis up to this degree")
    p.add_argument("--orders", help="comma-separated cyclic factor orders of X(G); empty for trivial")
    _add_format(p)
    return parser


# --- subcommands --------------------------------------------------------------------


def cmd_check(args, out):
    spec = spec_from_args(args)
    v = saturation.verdict(spec, args.method)
    if args.format == "json":
        out.write(_dump(v.to_json()) + "\n")
    else:
        dim = "" if v.hom_dimension is None else f", hom dimension {v.hom_dimension}"
        note = f" ({v.image_note})" if v.image_note else ""
        out.write(f"{spec}: {'saturated' if v.saturated else 'not saturated'}{dim}{note}\n")
    if args.assert_saturated and not v.saturated:
        return 1
    return 0


def _matrix_from_args(args) -> DescentMatrix:
    if args.matrix:
        obj = _load_json(args.matrix)
        if not isinstance(obj, dict):
            raise InputError("a matrix must be a JSON object")
        return DescentMatrix.from_json(obj)
    if args.identity is not None:
        if args.identity < 1:
            raise InputError("--identity needs a positive size")
        return identity_matrix(args.identity, _field(args))
    return build(spec_from_args(args))


def cmd_homdim(args, out):
    sol = solve_hom(_matrix_from_args(args))
    if args.format == "json":
        out.write(_dump(sol.to_json(with_basis=args.basis)) + "\n")
    else:
        out.write(f"{sol.dimension}\n")
        if args.basis:
            for v in sol.basis:
                out.write(" ".join(str(c) for c in v) + "\n")
    return 0


def cmd_matrix(args, out):
    spec = spec_from_args(args)
    kwargs = {"squares": args.squares} if isinstance(spec, (GL2Char2, SL2Char2)) else {}
    A = build(spec, **kwargs)
    if args.format == "json":
        out.write(_dump(A.to_json()) + "\n")
    else:
        width = max(len(l) for l in A.row_labels)
        for label, row in zip(A.row_labels, A.entries):
            out.write(f"{label:>{width}} | " + " ; ".join(str(a) for a in row) + "\n")
    return 0


def cmd_search(args, out):
    found = saturation.search_saturated(
        args.family, args.degree, budget=args.budget, mode=args.mode, seed=args.seed,
        field=_field(args), n=args.n, nvars=args.nvars, workers=args.workers,
    )
    for spec in found:
        out.write((_dump(spec.to_json()) if args.format == "json" else str(spec)) + "\n")
    return 0


def cmd_bertini(args, out):
    spec = spec_from_args(args)
    if not isinstance(spec, AlphaPowers):
        raise InputError("bertini works on alpha specs only")
    steps = bertini.reduce_to_line(spec) if args.to_line else [bertini.reduce_torsor(spec)]
    if args.format == "json":
        if args.to_line:
            out.write(_dump({"format": 1, "steps": [s.to_json() for s in steps]}) + "\n")
        else:
            out.write(_dump(steps[0].to_json()) + "\n")
    else:
        for s in steps:
            pl = s.plan
            out.write(f"d={pl.d} M={pl.M} N={pl.N} {s.eliminated} = {s.immersion}\n")
            out.write(f"  -> {s.spec} (hom dimension {s.hom_dimension})\n")
    return 0


def cmd_bounds(args, out):
    curve = bounds.CurveData(args.p, args.gamma, args.n)
    result = {"format": 1, "curve": {"p": curve.p, "gamma": curve.gamma, "n": curve.n}}
    lines = []
    if args.m is not None:
        g = bounds.h1_mu(curve, args.m)
        result["h1_mu"] = g.to_json()
        lines.append(f"H^1(U, mu_{args.p}^{args.m}) = {g}")
    if args.alpha_bound is not None:
        ks = bounds.h1_alpha_exponents(args.p, args.alpha_bound)
        result["h1_alpha_basis"] = [f"t^{k}" for k in ks]
        lines.append("H^1(A^1, alpha_p) basis: " + (", ".join(f"t^{k}" for k in ks) or "(none)"))
    if args.orders is not None:
        try:
            orders = [int(o) for o in args.orders.split(",") if o.strip()]
        except ValueError:
            raise InputError(f"--orders must be comma-separated integers, got {args.orders!r}") from None
        X = bounds.CharacterGroup(args.p, tuple(orders))
        ok = bounds.embedding_check(X, curve)
        result["embedding"] = {"group": X.to_json(), "embeds": ok}
        lines.append(f"X(G) = {bounds.summarize(X)} embeds: {ok}")
    if len(result) == 2:
        result["rank"] = curve.rank
        lines.append(f"gamma + n - 1 = {curve.rank}")
    if args.format == "json":
        out.write(_dump(result) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return 0


COMMANDS = {
    "check": cmd_check,
    "homdim": cmd_homdim,
    "matrix": cmd_matrix,
    "search": cmd_search,
    "bertini": cmd_bertini,
    "bounds": cmd_bounds,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (InputError, SpecError, NotInvertible, ValueError, ArithmeticError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
