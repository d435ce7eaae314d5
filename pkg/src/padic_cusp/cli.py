"""Command line front end: ``padic-cusp <subcommand> ...``.

Exit codes: 0 on success, 1 on a computational error (the error class name is
printed) or a failed check, 2 on usage errors.  The resolved configuration is
echoed on stderr as ``# key = value`` lines.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import PadicCuspError

ENV_PRECISION = "PADIC_CUSP_PRECISION"
DEFAULT_PRECISION = 6


class UsageError(Exception):
    pass


def _fractions(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(t) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read {text!r} as rationals") from exc


def _default_precision() -> int:
    raw = os.environ.get(ENV_PRECISION)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{ENV_PRECISION} must be an integer, got {raw!r}")
    if value < 1:
        raise UsageError(f"{ENV_PRECISION} must be positive")
    return value


# subcommands ------------------------------------------------------------------

def cmd_apartment(args) -> tuple[str, int]:
    from .building import apartment_window
    from .root_data import build_root_system
    from .svg import apartment_svg

    rs = build_root_system(args.type)
    win = apartment_window(rs, Fraction(args.box))
    if args.format == "svg":
        return apartment_svg(win), 0
    lines = [f"type\t{rs.name}", f"box\t{args.box}", f"hyperplanes\t{len(win.hyperplanes)}",
             f"families\t{len({tuple(a) for a, _ in win.hyperplanes})}", f"chambers\t{len(win.chambers)}",
             f"vertices\t{len(win.vertices)}"]
    for alpha, k in win.hyperplanes:
        lines.append(f"wall\t{','.join(map(str, alpha))}\t{k}")
    return "\n".join(lines) + "\n", 0


def cmd_mp_table(args) -> tuple[str, int]:
    from .building import BTTriple, exponent_table, lie_exponent_table

    x = BTTriple(args.group, len(_fractions(args.x)), _fractions(args.x))
    lines = ["r\tkind\ttable"]
    for r in args.r.split(","):
        for kind, fn in (("group", exponent_table), ("lie", lie_exponent_table)):
            table = fn(x, r)
            lines.append(f"{r}\t{kind}\t" + ";".join(",".join(map(str, row)) for row in table))
    return "\n".join(lines) + "\n", 0


def cmd_tree(args) -> tuple[str, int]:
    from .building import sl2_tree
    from .svg import tree_svg

    ball = sl2_tree(args.q, args.depth)
    if args.format == "svg":
        return tree_svg(ball), 0
    return ball.describe() + "\n", 0


def _torus_from_args(args, precision):
    from .tori import TorusDescriptor

    if args.torus == "split":
        return TorusDescriptor.split(args.group, args.n, args.p, precision)
    if args.delta is None:
        raise UsageError("--delta is required for an elliptic torus")
    return TorusDescriptor.elliptic(args.group, args.p, args.delta, precision)


def cmd_generic_check(args) -> tuple[str, int]:
    from .genericity import is_generic_character
    from .yu import ReductiveGroup
    from .yu_config import character_from_spec

    torus = _torus_from_args(args, args.precision)
    group = ReductiveGroup(args.group, args.n, args.p, args.precision)
    theta = character_from_spec(args.character, torus, group)
    report = is_generic_character(theta, Fraction(args.depth) if args.depth else None)
    return "\n".join(report.lines()) + "\n", 0 if report.generic else 1


def cmd_weil(args) -> tuple[str, int]:
    from .heisenberg_weil import SymplecticSpace, heisenberg, verify_weil, weil

    space = SymplecticSpace.standard(args.p, args.dim)
    heis = heisenberg(space, 1)
    rep = weil(heis, enumerate_group=True)
    lines = ["key\tvalue", f"p\t{args.p}", f"dim\t{args.dim}", f"heisenberg_degree\t{heis.degree}",
             f"character_norm\t{heis.character_norm()}", f"group_order\t{rep.group.order}"]
    status = 0
    if args.verify:
        sample = None if args.pairs == 0 else args.pairs
        result = verify_weil(rep, sample, seed=args.seed)
        for k in ("elements", "pairs", "intertwining", "multiplicative"):
            lines.append(f"{k}\t{result[k]}")
        status = 0 if result["intertwining"] and result["multiplicative"] else 1
    return "\n".join(lines) + "\n", status


def _finite_group(name: str):
    from .finrep import FiniteGroup

    key = name.upper()
    if key.startswith("S") and key[1:].isdigit():
        return FiniteGroup.symmetric(int(key[1:]))
    if key.startswith("SL2F"):
        return FiniteGroup.sl2(int(key[4:]))
    if key.startswith("GL2F"):
        return FiniteGroup.gl2(int(key[4:]))
    raise UsageError(f"unknown finite group {name!r}; use Sn, SL2Fq or GL2Fq")


def cmd_finrep(args) -> tuple[str, int]:
    from .finrep import character_table, character_table_tsv, is_cuspidal

    G = _finite_group(args.group)
    table = character_table(G, seed=args.seed)
    out = character_table_tsv(G, table) + "\n"
    if args.cuspidal:
        out += "chi\tdegree\tcuspidal\n"
        for i, chi in enumerate(table):
            out += f"chi{i}\t{chi.degree}\t{is_cuspidal(chi)}\n"
    return out, 0


def cmd_yu_validate(args) -> tuple[str, int]:
    from .yu import datum_depth, validate_yu_datum
    from .yu_config import load_yu

    datum, _ = load_yu(args.source)
    report = validate_yu_datum(datum)
    lines = report.lines() + [f"depth\t{datum_depth(datum)}"]
    return "\n".join(lines) + "\n", 0 if report.valid else 1


def cmd_character(args) -> tuple[str, int]:
    from .characters import ToralElement, character_at_ts, finite_order_element
    from .tori import TorusDescriptor
    from .yu import ReductiveGroup, TameEllipticPair
    from .yu_config import character_from_spec

    torus = TorusDescriptor.elliptic(args.group, args.p, args.delta, args.precision)
    group = ReductiveGroup(args.group, 2, args.p, args.precision)
    pair = TameEllipticPair(torus, character_from_spec(args.character, torus, group))
    gammas = []
    for text in args.gamma:
        if text == "teichmuller":
            gammas.append((text, finite_order_element(torus)))
        else:
            a, b = _fractions(text)
            gammas.append((text, ToralElement(torus, torus.field(a, b))))
    eps = int(args.eps)
    lines = ["gamma\tsummands\tTheta"]
    for label, g in gammas:
        ev = character_at_ts(pair, g, eps_L=eps)
        parts = ";".join(f"{s.coset}:{s.value}" for s in ev.summands)
        lines.append(f"{label}\t{parts}\t{ev.value}")
    return "\n".join(lines) + "\n", 0


def cmd_real_character(args) -> tuple[str, int]:
    from .characters import real_ds_character, real_ds_character_exact, symmetric_power_trace

    lines = ["n\tangle\tvalue\tminus_weyl_formula"]
    if args.turns is not None:
        t = Fraction(args.turns)
        lines.append(f"{args.n}\t2pi*{t}\t{real_ds_character_exact(args.n, t)}\t{-symmetric_power_trace(args.n, t)}")
    else:
        import math
        v = real_ds_character(args.n, args.angle)
        oracle = -math.sin((args.n + 1) * args.angle) / math.sin(args.angle)
        lines.append(f"{args.n}\t{args.angle!r}\t{v:.12g}\t{oracle:.12g}")
    return "\n".join(lines) + "\n", 0


# parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        help=f"p-adic working precision (default ${ENV_PRECISION} or {DEFAULT_PRECISION})")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--format", choices=("text", "tsv", "svg"), default=None)
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="padic-cusp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("apartment", cmd_apartment, "apartment window of a root system (SVG or text)")
    sp.add_argument("type", help="Cartan type such as A1, A2, B2, G2")
    sp.add_argument("--box", default="2", help="half-width of the box in simple-coroot coordinates")

    sp = add("mp-table", cmd_mp_table, "Moy-Prasad exponent tables at a point")
    sp.add_argument("--group", default="SL", choices=("SL", "GL"))
    sp.add_argument("--x", default="0,0", help="point coordinates, e.g. 1/4,-1/4")
    sp.add_argument("--r", default="0,0+,1/2,1", help="comma-separated levels (r or r+)")

    sp = add("tree", cmd_tree, "ball in the Bruhat-Tits tree of SL2")
    sp.add_argument("--q", type=int, default=3)
    sp.add_argument("--depth", type=int, default=1)

    sp = add("generic-check", cmd_generic_check, "GE0-GE2 for a torus character")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--group", default="GL", choices=("SL", "GL"))
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--torus", default="split", choices=("split", "elliptic"))
    sp.add_argument("--delta", type=int, default=None)
    sp.add_argument("--character", required=True, help='character spec, e.g. "split exponents=1,0 c=3/7"')
    sp.add_argument("--depth", default=None)

    sp = add("weil", cmd_weil, "Heisenberg and Weil representations over F_p")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--pairs", type=int, default=0, help="sampled pairs for multiplicativity (0 = all)")

    sp = add("finrep", cmd_finrep, "character table of a finite group")
    sp.add_argument("--group", default="S4", help="Sn, SL2Fq or GL2Fq")
    sp.add_argument("--cuspidal", action="store_true")

    sp = add("yu-validate", cmd_yu_validate, "check the conditions on a Yu datum file")
    sp.add_argument("source", help="a .yu file or builtin:<name>")

    sp = add("character", cmd_character, "character at topologically semisimple torus elements")
    sp.add_argument("--p", type=int, default=7)
    sp.add_argument("--delta", type=int, default=3)
    sp.add_argument("--group", default="SL", choices=("SL", "GL"))
    sp.add_argument("--character", default="tame k=1")
    sp.add_argument("--gamma", action="append", default=None,
                    help="a,b for a + b*sqrt(delta), or 'teichmuller' (repeatable)")
    sp.add_argument("--eps", default="1", choices=("1", "-1"), help="epsilon factor input")

    sp = add("real-character", cmd_real_character, "discrete series character of SL2(R)")
    sp.add_argument("--n", type=int, required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--angle", type=float)
    group.add_argument("--turns", help="angle as a rational multiple of 2*pi (exact)")
    return parser


def _echo_config(args, stream):
    for key, value in sorted(vars(args).items()):
        if key == "func":
            continue
        stream.write(f"# {key} = {value}\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.precision is None:
            args.precision = _default_precision()
        if args.precision < 1:
            raise UsageError("--precision must be positive")
        if args.format is None:
            args.format = "svg" if args.command == "apartment" else "text"
        if args.command == "character" and not args.gamma:
            args.gamma = ["teichmuller"]
        _echo_config(args, sys.stderr)
        text, status = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except PadicCuspError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
