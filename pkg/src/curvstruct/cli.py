"""Command-line interface: ``curvstruct analyze|verify|crosscheck|eval|corpus``.

Exit codes: 0 success, 1 usage or parse error, 2 a verification failed,
3 degenerate input (identically singular metric, or a point on a pole).
"""

from __future__ import annotations

import argparse
import itertools
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus
from .checks import all_passed
from .curvature import compute_curvature
from .errors import CurvstructError, DegenerateMetricError, ManifestError, PoleError
from .manifest import load_manifest, manifest_metric
from .numeric import DEFAULT_STEP, DEFAULT_TOLERANCE, numeric_crosscheck
from .report import SELECTIONS, TENSOR_CHOICES, _independent, analyze, report_json, verify_suite

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_DEGENERATE = 0, 1, 2, 3

EVAL_TENSORS = {
    "metric": "symmetric", "christoffel": "christoffel", "riemann": "curvature", "ricci": "symmetric",
    "scalar": "scalar", "nabla_riemann": "nabla", "g_wedge_g": "curvature", "g_wedge_s": "curvature",
    "s_wedge_s": "curvature", "conformal": "curvature", "projective": "general",
    "concircular": "curvature", "conharmonic": "curvature",
}
_DERIVED = {"conformal": "C", "projective": "P", "concircular": "W", "conharmonic": "K"}


class UsageError(Exception):
    pass


def _manifest(arg: str):
    """A manifest path, or ``corpus:<name>`` for a bundled example."""
    if arg.startswith("corpus:"):
        name = arg.split(":", 1)[1]
        try:
            text = corpus.corpus_text(name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        from .manifest import parse_manifest

        return parse_manifest(text, f"{name}.tomlish")
    return load_manifest(Path(arg))


def _point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(v.strip()) for v in text.strip().strip("()").split(",") if v.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad point {text!r}; expected comma-separated rationals like 1,1/2,3") from None


# -- subcommands -------------------------------------------------------------

def cmd_analyze(args) -> int:
    manifest = _manifest(args.manifest)
    structures = args.structures.split(",") if args.structures else None
    try:
        analysis = analyze(manifest, structures, args.tensor, numeric=not args.no_numeric,
                           riemann_sign=-1 if args.flip_riemann_sign else 1, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        text = report_json(analysis)
        if args.json == "-":
            sys.stdout.write(text)
            return EXIT_OK
        Path(args.json).write_text(text)
    name = manifest.name or manifest.path or "manifest"
    print(f"{name}: n = {manifest.dimension}, scalar curvature {analysis.bundle.kappa}")
    for key, res in analysis.results.items():
        extra = ""
        if res.family is not None and res.holds and res.family.null_dimensions and any(res.family.null_dimensions):
            extra = f"  free parameters per direction {res.family.null_dimensions}"
        flags = ", ".join(f"{k}={v}" for k, v in res.flags.items())
        print(f"  {key:<15} {res.verdict:<12} {flags}{extra}")
    for c in analysis.theorems:
        print(f"  [{c.outcome}] {c.name}" + (f" ({c.detail})" if c.detail else ""))
    if analysis.excluded_loci:
        print("  excluded loci: " + "; ".join(f"{p} = 0" for p in analysis.excluded_loci))
    if analysis.numeric is not None:
        status = "pass" if analysis.numeric.passed else "FAIL"
        print(f"  numeric cross-check: {status} (max relative error {analysis.numeric.max_deviation:.3e})")
    failed = any(c.outcome == "fail" for c in analysis.theorems)
    if analysis.numeric is not None and not analysis.numeric.passed:
        failed = True
    return EXIT_FAILED if failed else EXIT_OK


def cmd_verify(args) -> int:
    manifest = _manifest(args.manifest)
    checks = verify_suite(manifest, -1 if args.flip_riemann_sign else 1)
    for c in checks:
        print(f"{c.outcome.upper():<14} {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    ok = all_passed(checks)
    print("all checks passed" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_crosscheck(args) -> int:
    manifest = _manifest(args.manifest)
    bundle = compute_curvature(manifest_metric(manifest))
    if args.point:
        points = [_point(p) for p in args.point]
        count = args.points or len(points)
    else:
        points = list(manifest.points)
        count = 5 if args.points is None else args.points
    try:
        result = numeric_crosscheck(bundle, points, count=count, step=args.step,
                                    tolerance=args.tol, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for p in result.points:
        print("point " + ", ".join(str(v) for v in p))
    for name, dev in sorted(result.deviations.items()):
        print(f"{name:<12} max relative error {dev:.3e}")
    print(f"{'pass' if result.passed else 'FAIL'} at tolerance {result.tolerance:.3e}, step {result.step:.3e}")
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_eval(args) -> int:
    manifest = _manifest(args.manifest)
    point = _point(args.point)
    if len(point) != manifest.dimension:
        raise UsageError(f"point has {len(point)} coordinates, expected {manifest.dimension}")
    bundle = compute_curvature(manifest_metric(manifest))
    name = args.tensor
    if name == "scalar":
        print(bundle.kappa.evaluate(point))
        return EXIT_OK
    if name == "metric":
        arr = bundle.g.comps
    elif name in _DERIVED:
        arr = bundle.derived(_DERIVED[name]).comps
    else:
        from .checks import golden_tensor

        arr = golden_tensor(bundle, name)
    kind = EVAL_TENSORS[name]
    for idx in itertools.product(range(arr.shape[0]), repeat=arr.ndim):
        if not args.all and not _independent(idx, kind):
            continue
        value = arr[idx].evaluate(point)
        if value != 0 or args.zeros:
            print(f"{','.join(str(i + 1) for i in idx)} = {value}")
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.action == "list":
        for name in corpus.corpus_names():
            m = corpus.load_corpus(name)
            print(f"{name:<15} n = {m.dimension}")
        return EXIT_OK
    if not args.name:
        raise UsageError("corpus show needs a name")
    try:
        sys.stdout.write(corpus.corpus_text(args.name))
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvstruct", description="Exact curvature and recurrent-structure analysis.")
    sub = parser.add_subparsers(dest="command", required=True)
    manifest_help = "manifest file, or corpus:<name> for a bundled example"

    p = sub.add_parser("analyze", help="compute curvature, detect structures, run theorem checks")
    p.add_argument("manifest", help=manifest_help)
    p.add_argument("--structures", help="comma-separated subset of " + ",".join(SELECTIONS))
    p.add_argument("--tensor", choices=TENSOR_CHOICES, default="r",
                   help="tensor tested for K/HGK/WGK/SGK/QGK and semisymmetry (default r)")
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    p.add_argument("--no-numeric", action="store_true", help="skip the floating-point cross-check")
    p.add_argument("--seed", type=int, default=0, help="seed for random cross-check points")
    p.add_argument("--flip-riemann-sign", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run the exact identity batteries and reference components")
    p.add_argument("manifest", help=manifest_help)
    p.add_argument("--flip-riemann-sign", action="store_true",
                   help="debug: negate the curvature tensor (reference checks should then fail)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("crosscheck", help="compare exact curvature with finite differences")
    p.add_argument("manifest", help=manifest_help)
    p.add_argument("--points", type=int, help="total number of points; manifest points are topped up with random ones (default 5)")
    p.add_argument("--point", action="append", help="explicit point, e.g. 1,1/2,1,1 (repeatable)")
    p.add_argument("--step", type=float, default=DEFAULT_STEP)
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("eval", help="exact tensor components at a rational point")
    p.add_argument("manifest", help=manifest_help)
    p.add_argument("--tensor", choices=sorted(EVAL_TENSORS), default="riemann")
    p.add_argument("--point", required=True, help="comma-separated rationals, e.g. 1,1,1,1")
    p.add_argument("--all", action="store_true", help="print every index, not one per symmetry class")
    p.add_argument("--zeros", action="store_true", help="include vanishing components")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("corpus", help="list or print the bundled example manifests")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (DegenerateMetricError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UsageError, ManifestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CurvstructError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
