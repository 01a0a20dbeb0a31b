"""Command line entry point ``centerkit``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .report import EXIT_INPUT, EXIT_OK, EXIT_VERIFY


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors; exit code 2 is kept for failed checks
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--tolerance-accept", type=float, default=1e-8, help="relative |M1| at or below which it vanishes")
    p.add_argument("--tolerance-reject", type=float, default=1e-4, help="relative |M1| at or above which it is nonzero")
    p.add_argument("--seed", type=int, default=0, help="seed for anything random")
    p.add_argument("--output", "-o", default=None, help="output file or directory (default: stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="centerkit", description="Logarithmic foliations from line arrangements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for one arrangement")
    p.add_argument("arrangement")
    p.add_argument("--numeric-windings", action="store_true", help="also trace cycles numerically")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")

    p = sub.add_parser("orbit", parents=[common], help="orbit span against the winding annihilator")
    p.add_argument("arrangement")

    p = sub.add_parser("tangent", parents=[common], help="kernel/image of D tau and membership")
    p.add_argument("arrangement")
    p.add_argument("--omega1", help="form file to test for membership")

    p = sub.add_parser("melnikov", parents=[common], help="first Melnikov integral over a real oval")
    p.add_argument("arrangement")
    p.add_argument("--face", type=int, default=0)
    p.add_argument("--t", type=str, default=None, help="level value such as -1/100 (write --t=-1/100); default is half the critical value")
    p.add_argument("--omega1", required=True, help="form file")

    p = sub.add_parser("quadratic", parents=[common], help="Bautin generators of the quadratic normal form")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", nargs=6, metavar=("A", "B", "C", "A'", "B'", "C'"))
    g.add_argument("--verify", action="store_true", help="component containments and singular locus")
    p.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("local-model", parents=[common], help="monodromy steps of x^m y^n")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--state", nargs=4, type=int, metavar=("K", "L", "H", "S"))
    p.add_argument("--steps", type=int, default=None, help="default lcm(m, n)")

    p = sub.add_parser("render-graph", parents=[common], help="SVG of G or Gcheck")
    p.add_argument("arrangement")
    p.add_argument("svg", nargs="?", help="output path (same as --output)")
    p.add_argument("--model", choices=("G", "Gcheck"), default="Gcheck")

    p = sub.add_parser("corpus", parents=[common], help="analyze a directory or a seeded random corpus")
    p.add_argument("directory", nargs="?")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-degree", type=int, default=5)
    p.add_argument("--max-multiplicity", type=int, default=6)
    p.add_argument("--numeric-windings", action="store_true")
    return parser


def _cmd_analyze(args) -> int:
    from .report import analyze

    rep, code = analyze(io.load_arrangement(args.arrangement), args.numeric_windings, args.timings)
    io.write_json(rep, args.output)
    return code


def _cmd_orbit(args) -> int:
    from .fiber_graph import genus, h1_rank
    from .orbit import CoprimalityError, verify_orbit_theorem

    arr = io.load_arrangement(args.arrangement)
    try:
        rep = verify_orbit_theorem(arr)
    except CoprimalityError as exc:
        io.write_json({"b1": h1_rank(arr), "d": arr.d, "genus": genus(arr), "refused": str(exc)}, args.output)
        return EXIT_INPUT
    io.write_json(rep.to_json(), args.output)
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _cmd_tangent(args) -> int:
    from .tangent import LogParams, kernel_dimension, tangent_membership

    base = LogParams.from_arrangement(io.load_arrangement(args.arrangement))
    k = kernel_dimension(base)
    out = {
        "d": base.d,
        "kernel_dim": k.dimension,
        "image_dim": k.image_dimension,
        "form_space_dim": (base.d + 1) * (base.d + 2),
        "kernel_basis": [[str(x) for x in v] for v in k.basis],
    }
    if args.omega1:
        out["membership"] = tangent_membership(base, io.load_form(args.omega1)).to_json()
    io.write_json(out, args.output)
    return EXIT_OK if k.ok else EXIT_VERIFY


def _cmd_melnikov(args) -> int:
    from .melnikov import face_by_index, melnikov1, oval_window, verdict

    arr = io.load_arrangement(args.arrangement)
    face = face_by_index(arr, args.face)
    if args.t is None:
        lo, hi = oval_window(arr, face)
        t = (lo + hi) / 2
    else:
        t = float(Fraction(args.t))
    res = melnikov1(arr, face, io.load_form(args.omega1), t)
    out = res.to_json()
    out["verdict"] = verdict(res.value, res.scale, args.tolerance_accept, args.tolerance_reject)
    out["face"] = args.face
    out["t_sign_rule"] = "t has the sign of f inside the face"
    io.write_json(out, args.output)
    return EXIT_OK


def _cmd_quadratic(args) -> int:
    from . import quadratic_bautin as qb

    if args.verify:
        cont = qb.verify_component_containments(args.samples, args.seed)
        sing = qb.singular_locus_checks()
        io.write_json({"containments": cont.to_json(), "singular_locus": sing.to_json()}, args.output)
        return EXIT_OK if cont.ok and sing.ok else EXIT_VERIFY
    try:
        p = qb.QuadraticParams(*(Fraction(x) for x in args.point))
    except (ValueError, ZeroDivisionError) as exc:
        raise io.InputError(f"field point: {exc}") from None
    g = qb.bautin_generators(p)
    out = {
        "point": [str(x) for x in p.astuple()],
        "g2": str(g[0]),
        "g3": str(g[1]),
        "g4": str(g[2]),
        "components": sorted(qb.component_membership(p)),
        "exceptional_literal_reading": all(e == 0 for e in qb.exceptional_literal(*p.astuple())),
    }
    io.write_json(out, args.output)
    return EXIT_OK


def _cmd_local_model(args) -> int:
    from .local_model import StraightPathState, build, check_state, step_table

    model = build(args.m, args.n)
    state = StraightPathState(*args.state) if args.state else None
    if state is not None:
        try:
            check_state(model, state)
        except ValueError as exc:
            raise io.InputError(f"field state: {exc}") from None
    rows = step_table(model, state, args.steps)
    out = {
        "m": model.m,
        "n": model.n,
        "e": model.e,
        "p": model.p,
        "q": model.q,
        "a": model.a,
        "b": model.b,
        "lcm": model.lcm,
        "columns": ["step", "k", "l", "h", "s", "N"],
        "rows": [list(r) for r in rows],
    }
    io.write_json(out, args.output)
    return EXIT_OK


def _cmd_render(args) -> int:
    from .render import render_svg

    svg = render_svg(io.load_arrangement(args.arrangement), args.model)
    target = args.svg or args.output
    if target is None:
        sys.stdout.write(svg)
    else:
        Path(target).write_text(svg)
    return EXIT_OK


def _cmd_corpus(args) -> int:
    from .report import collect_cases, run_corpus, summary_table

    degrees = tuple(range(2, args.max_degree + 1))
    cases = collect_cases(args.directory, args.seed, args.count, degrees, args.max_multiplicity)
    summary, code = run_corpus(cases, args.output, args.numeric_windings)
    print(summary_table(summary))
    return code


COMMANDS = {
    "analyze": _cmd_analyze,
    "orbit": _cmd_orbit,
    "tangent": _cmd_tangent,
    "melnikov": _cmd_melnikov,
    "quadratic": _cmd_quadratic,
    "local-model": _cmd_local_model,
    "render-graph": _cmd_render,
    "corpus": _cmd_corpus,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except io.InputError as exc:
        print(f"centerkit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, IndexError) as exc:
        print(f"centerkit: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
