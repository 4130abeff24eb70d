"""Command-line interface.

One subcommand per batch operation: landscape construction and inversion,
distances, kernels, Gram matrices, averaging, reconstruction from an
average, family checking, generators, and grid export.  Numbers print as
exact rationals by default; pass ``--decimal [DIGITS]`` for decimal
output.  Exit codes: 0 success, 1 input validation error, 2 precondition
violation, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import analysis, benchgen, diagram, landscape, reconstruct, tropical
from .analysis import PoissonWeights, WeightSpec
from .errors import InputError, PreconditionError
from .rational import Rational, format_rational, parse_rational, rational_to_decimal

WEIGHTS_HELP = (
    "weight file: a `levels:` line with nonnegative rationals "
    "(or `levels: poisson NU`), optionally a `tfactor:` line with "
    "`t:v` breakpoints of a nonnegative piecewise-linear factor"
)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_diagram(path: str) -> diagram.PersistenceDiagram:
    return diagram.parse_diagram(_read(path))


def _load_landscape(path: str) -> landscape.Landscape:
    return landscape.parse_landscape(_read(path))


def _format_number(value, decimal: Optional[int]) -> str:
    if isinstance(value, float):
        return repr(value) if decimal is None else f"{value:.{decimal}g}"
    return format_rational(value) if decimal is None else rational_to_decimal(value, decimal)


def parse_weight_spec(text: str) -> WeightSpec:
    """Parse the weight file format described in ``--weights`` help."""
    levels = None
    tfactor = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if not sep or key not in ("levels", "tfactor"):
            raise InputError(f"line {lineno}: expected 'levels:' or 'tfactor:'")
        tokens = rest.split()
        try:
            if key == "levels":
                if tokens and tokens[0].lower() == "poisson":
                    if len(tokens) != 2:
                        raise InputError(f"line {lineno}: expected 'poisson NU'")
                    levels = PoissonWeights(float(tokens[1]))
                else:
                    levels = tuple(parse_rational(t) for t in tokens)
            else:
                bps = []
                for token in tokens:
                    t_txt, sep2, v_txt = token.partition(":")
                    if not sep2:
                        raise InputError(f"line {lineno}: malformed breakpoint {token!r}")
                    bps.append((parse_rational(t_txt), parse_rational(v_txt)))
                tfactor = landscape.PiecewiseLinearFunction(tuple(bps))
        except InputError:
            raise
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    if levels is None:
        raise InputError("weight file must contain a 'levels:' line")
    return WeightSpec(levels, tfactor)


def _kernel_from_args(args) -> "tuple[str, object]":
    if getattr(args, "nu", None) is not None:
        nu = args.nu
        return (f"poisson(nu={nu})",
                lambda a, b: analysis.poisson_kernel(nu, a, b))
    if getattr(args, "weights", None) is not None:
        spec = parse_weight_spec(_read(args.weights))
        return ("weighted",
                lambda a, b: analysis.weighted_inner_product(a, b, spec))
    return ("plain", analysis.inner_product)


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_landscape(args) -> int:
    l = landscape.landscape_of(_load_diagram(args.diagram))
    _emit(landscape.serialize_landscape(l), args.output)
    return 0


def _cmd_invert(args) -> int:
    d = landscape.diagram_of(_load_landscape(args.landscape))
    _emit(diagram.serialize_diagram(d), args.output)
    return 0


def _cmd_distance(args) -> int:
    p = math.inf if args.p == "inf" else int(args.p)
    l1, l2 = _load_landscape(args.first), _load_landscape(args.second)
    print(_format_number(analysis.p_distance(l1, l2, p), args.decimal))
    return 0


def _cmd_bottleneck(args) -> int:
    d1, d2 = _load_diagram(args.first), _load_diagram(args.second)
    print(_format_number(diagram.bottleneck_distance(d1, d2), args.decimal))
    return 0


def _cmd_kernel(args) -> int:
    _, kernel = _kernel_from_args(args)
    l1 = landscape.landscape_of(_load_diagram(args.first))
    l2 = landscape.landscape_of(_load_diagram(args.second))
    print(_format_number(kernel(l1, l2), args.decimal))
    return 0


def _cmd_gram(args) -> int:
    base = Path(args.manifest).parent
    paths = []
    for lineno, raw in enumerate(_read(args.manifest).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            paths.append(base / line)
    if not paths:
        raise InputError("manifest lists no diagram files")
    family = [diagram.parse_diagram(p.read_text(encoding="utf-8")) for p in paths]
    _, kernel = _kernel_from_args(args)
    matrix = analysis.gram_matrix(family, kernel)
    _emit(analysis.format_matrix_csv(matrix, exact=args.exact), args.output)
    return 0


def _cmd_average(args) -> int:
    lands = [landscape.landscape_of(_load_diagram(p)) for p in args.diagrams]
    _emit(landscape.serialize_landscape(landscape.average_of(lands)), args.output)
    return 0


def _cmd_reconstruct(args) -> int:
    avg = _load_landscape(args.landscape)
    recovered = reconstruct.reconstruct_from_average(avg)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, d in enumerate(recovered, start=1):
        name = f"component_{i}.dgm"
        (outdir / name).write_text(diagram.serialize_diagram(d), encoding="utf-8")
        entries.append({
            "file": name,
            "points": len(d),
            "min_birth": format_rational(d.points[0][0]),
        })
    manifest = {"verified": True, "components": entries}
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n",
                                          encoding="utf-8")
    print(f"recovered {len(recovered)} diagram(s) into {outdir} (verified exactly)")
    return 0


def _cmd_check(args) -> int:
    family = []
    ok = True
    for path in args.diagrams:
        family.append(_load_diagram(path))
    for path, d in zip(args.diagrams, family):
        generic = diagram.is_generic(d)
        connected = diagram.is_connected(d)
        ok = ok and generic and connected
        print(f"{path}: points={len(d)} generic={'yes' if generic else 'no'} "
              f"connected={'yes' if connected else 'no'}")
    report = reconstruct.is_arithmetically_independent(family)
    if report:
        print("family: arithmetically independent")
    else:
        ok = False
        print(f"family: NOT arithmetically independent - "
              f"condition ({report.condition}): {report.detail}")
    return 0 if ok else 2


def _cmd_gen_counterexample(args) -> int:
    d1, d2 = benchgen.counterexample_pair(args.n)
    for suffix, d in (("1", d1), ("2", d2)):
        Path(f"{args.output}_{suffix}.dgm").write_text(
            diagram.serialize_diagram(d), encoding="utf-8")
    print(f"wrote {args.output}_1.dgm and {args.output}_2.dgm "
          f"({len(d1)} and {len(d2)} points)")
    return 0


def _cmd_gen_random(args) -> int:
    d = benchgen.random_diagram(args.count, args.lo, args.hi, args.seed)
    _emit(diagram.serialize_diagram(d), args.output)
    return 0


def _cmd_gen_family(args) -> int:
    family = benchgen.random_independent_family(args.n, args.count, args.seed)
    names = []
    for i, d in enumerate(family, start=1):
        name = f"{args.output}_{i}.dgm"
        Path(name).write_text(diagram.serialize_diagram(d), encoding="utf-8")
        names.append(name)
    print("wrote " + ", ".join(names))
    return 0


def _cmd_grid(args) -> int:
    if args.tropical:
        required = {"kmax": args.kmax, "start": args.start, "eps": args.eps, "m": args.m}
        missing = [k for k, v in required.items() if v is None]
        if missing:
            raise InputError(f"--tropical grid needs --{', --'.join(missing)}")
        d = _load_diagram(args.input)
        matrix = tropical.feature_grid(d, args.kmax, args.start, args.eps, args.m)
    else:
        required = {"kmax": args.kmax, "tmin": args.tmin, "tmax": args.tmax,
                    "steps": args.steps}
        missing = [k for k, v in required.items() if v is None]
        if missing:
            raise InputError(f"landscape grid needs --{', --'.join(missing)}")
        l = _load_landscape(args.input)
        matrix = landscape.sample_grid(l, args.kmax, args.tmin, args.tmax, args.steps)
    _emit(analysis.format_matrix_csv(matrix, exact=args.exact), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_decimal(p: argparse.ArgumentParser) -> None:
    p.add_argument("--decimal", nargs="?", const=15, default=None, type=int,
                   metavar="DIGITS",
                   help="print decimals (default: exact rationals)")


def _add_kernel_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--nu", type=float, default=None,
                       help="Poisson-weighted kernel with this parameter")
    group.add_argument("--weights", default=None, metavar="FILE", help=WEIGHTS_HELP)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plsc",
        description="Exact persistence landscape toolkit: construction, "
                    "inversion, norms, kernels, tropical grids, and "
                    "reconstruction of diagram families from average "
                    "landscapes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("landscape", help="diagram file -> landscape file")
    p.add_argument("diagram")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_landscape)

    p = sub.add_parser("invert", help="landscape file -> diagram file")
    p.add_argument("landscape")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("distance", help="p-distance between two landscapes")
    p.add_argument("--p", default="inf", metavar="P",
                   help="positive integer or 'inf' (default)")
    p.add_argument("first")
    p.add_argument("second")
    _add_decimal(p)
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("bottleneck", help="bottleneck distance between two diagrams")
    p.add_argument("first")
    p.add_argument("second")
    _add_decimal(p)
    p.set_defaults(func=_cmd_bottleneck)

    p = sub.add_parser("kernel", help="landscape kernel of two diagrams")
    p.add_argument("first")
    p.add_argument("second")
    _add_kernel_flags(p)
    _add_decimal(p)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("gram", help="Gram matrix CSV for a manifest of diagram files")
    p.add_argument("manifest", help="text file listing diagram paths "
                                    "(relative to the manifest)")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--exact", action="store_true", help="emit p/q instead of decimals")
    _add_kernel_flags(p)
    p.set_defaults(func=_cmd_gram)

    p = sub.add_parser("average", help="average landscape of diagram files")
    p.add_argument("diagrams", nargs="+")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_average)

    p = sub.add_parser("reconstruct",
                       help="recover diagrams from an average landscape")
    p.add_argument("landscape")
    p.add_argument("--outdir", default=".",
                   help="directory for component_<i>.dgm and manifest.json")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("check", help="genericity/connectivity/independence report")
    p.add_argument("diagrams", nargs="+")
    p.set_defaults(func=_cmd_check)

    gen = sub.add_parser("gen", help="generators").add_subparsers(
        dest="generator", required=True)

    p = gen.add_parser("counterexample",
                       help="pair with sup landscape distance 1, bottleneck 2n+1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output", required=True, metavar="PREFIX")
    p.set_defaults(func=_cmd_gen_counterexample)

    p = gen.add_parser("random", help="random diagram on a rational grid")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--lo", type=parse_rational, required=True)
    p.add_argument("--hi", type=parse_rational, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen_random)

    p = gen.add_parser("family",
                       help="connected, arithmetically independent family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True, metavar="PREFIX")
    p.set_defaults(func=_cmd_gen_family)

    p = sub.add_parser("grid", help="landscape or tropical feature grid as CSV")
    p.add_argument("input", help="landscape file, or diagram file with --tropical")
    p.add_argument("--tropical", action="store_true",
                   help="evaluate max-plus features of a diagram instead")
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--tmin", type=parse_rational, default=None)
    p.add_argument("--tmax", type=parse_rational, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--start", type=parse_rational, default=None,
                   help="tropical grid origin")
    p.add_argument("--eps", type=parse_rational, default=None,
                   help="tropical grid step")
    p.add_argument("--m", type=int, default=None,
                   help="tropical grid half-width in steps (2m+1 columns)")
    p.add_argument("--exact", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_grid)

    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the exit code instead of raising."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors; remap to 1
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
