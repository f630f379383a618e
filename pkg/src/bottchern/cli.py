"""Command-line front end: ``bottchern verify`` and ``bottchern compute``.

Exit status is 0 when every check passes, 1 when some check fails and 2 for
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from .scalars import format_rational
from .series import (
    SCHUR_BASIS_DEG3,
    ClassSeries,
    SplitBundleSpec,
    analytic_height,
    third_schur_coefficient,
    universal_R,
    universal_S,
)
from .suites import SUITES, ConfigError, Report, SuiteConfig, run_suite

__all__ = ["main", "parse_bundle_spec", "parse_range", "BundleSpecError", "format_report"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_ORDER = 8


class BundleSpecError(ValueError):
    pass


def parse_bundle_spec(text: str, base_dim: Optional[int]) -> SplitBundleSpec:
    """``"1,1"`` with base dimension 1 becomes ``O(1)+O(1)`` over ``P^1``."""
    if base_dim is None:
        raise BundleSpecError("missing --base-dim for the bundle spec")
    twists = []
    for token in text.split(","):
        try:
            twists.append(int(token.strip()))
        except ValueError:
            raise BundleSpecError(f"twist {token!r} is not an integer") from None
    if base_dim < 0:
        raise BundleSpecError(f"base dimension {base_dim} is negative")
    return SplitBundleSpec(tuple(twists), base_dim)


def parse_range(text: str) -> Tuple[int, int]:
    """``"3"`` or ``"2-4"`` as an inclusive range."""
    lo, sep, hi = text.partition("-")
    try:
        bounds = (int(lo), int(hi) if sep else int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}; expected N or N-M") from None
    if bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return bounds


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bottchern",
        description="Exact verification of Bott-Chern, Segre and secondary-class identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("--suite", default="bott-chern", choices=sorted(SUITES) + ["all"])
    v.add_argument("--rank", type=parse_range, default=(2, 3), help="rank or range, e.g. 3 or 2-4")
    v.add_argument("--base-dim", type=parse_range, default=(1, 2), help="base dimension or range")
    v.add_argument("--degree-max", type=int, default=3)
    v.add_argument("--trials", type=int, default=2)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--hermitian", action="store_true")
    v.add_argument("--coeff-bound", type=int, default=3, help="numerator/denominator bound; 0 gives flat data")
    v.add_argument("--non-normal-frame", action="store_true",
                   help="jets suite: perturb the frame off normal form (expected to fail)")
    v.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")
    v.add_argument("--format", choices=("text", "records"), default="text")
    v.add_argument("--config", help="flat key=value file with the same keys as the flags")

    c = sub.add_parser("compute", help="evaluate secondary classes, heights and the Schur coefficient")
    c.add_argument("what", choices=("s-class", "r-class", "height", "fl-coefficient"))
    c.add_argument("--rank", type=int, default=2)
    c.add_argument("--order", type=int, default=3, help="number of terms of S_t or R_t")
    c.add_argument("--twists", help="comma-separated twists a_1,..,a_r of O(a_1)+...+O(a_r)")
    c.add_argument("--base-dim", type=int)
    c.add_argument("--format", choices=("text", "records"), default="text")
    c.add_argument("--config", help="flat key=value file with the same keys as the flags")
    return parser


def _config_args(path: str) -> List[str]:
    """Turn ``key = value`` lines into flags; blank lines and ``#`` comments are skipped."""
    out: List[str] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip().replace("_", "-"), value.strip()
            if not sep or not key:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            if value.lower() in ("true", "yes", "on"):
                out.append(f"--{key}")
            elif value.lower() not in ("false", "no", "off"):
                out += [f"--{key}", value]
    return out


def _parse(argv: Sequence[str]) -> argparse.Namespace:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            extra = _config_args(args.config)
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        except ConfigError as exc:
            parser.error(str(exc))
        # file values first so that explicit flags win
        args = parser.parse_args([argv[0], *extra, *argv[1:]])
    return args


# -- verify -------------------------------------------------------------------------


def format_report(report: Report, fmt: str = "text", timing: bool = True) -> str:
    lines: List[str] = []
    if fmt == "records":
        lines.append(json.dumps({"config": report.config.as_dict()}, sort_keys=True))
        for res in report.results:
            lines.append(json.dumps(res.as_record(timing), sort_keys=True))
        summary = {
            "checks": len(report.results),
            "passed": sum(r.passed for r in report.results),
            "failed": sum(not r.passed for r in report.results),
        }
        if timing:
            summary["seconds"] = round(report.seconds, 6)
        lines.append(json.dumps({"summary": summary}, sort_keys=True))
        return "\n".join(lines) + "\n"

    for res in report.results:
        params = " ".join(f"{k}={res.params[k]}" for k in sorted(res.params))
        line = f"{'PASS' if res.passed else 'FAIL'}  {res.name}  [{params}]"
        if res.witness:
            line += f"  witness: {res.witness}"
        if res.detail:
            line += f"  ({res.detail})"
        lines.append(line)
    rows = report.summary()
    width = max([len(name) for name, _, _ in rows] + [5])
    lines.append("")
    lines.append(f"{'check':<{width}}  passed  failed")
    for name, p, f in rows:
        lines.append(f"{name:<{width}}  {p:>6}  {f:>6}")
    total = len(report.results)
    failed = sum(not r.passed for r in report.results)
    lines.append(f"{'total':<{width}}  {total - failed:>6}  {failed:>6}")
    if timing:
        lines.append(f"elapsed: {report.seconds:.3f} s")
    return "\n".join(lines) + "\n"


def _verify(args) -> int:
    cfg = SuiteConfig(
        suite=args.suite,
        ranks=args.rank,
        base_dims=args.base_dim,
        degree_max=args.degree_max,
        trials=args.trials,
        seed=args.seed,
        hermitian=args.hermitian,
        coeff_bound=args.coeff_bound,
        non_normal_frame=args.non_normal_frame,
    )
    try:
        cfg.validate()
    except ConfigError as exc:
        print(f"bottchern verify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(cfg)
    sys.stdout.write(format_report(report, args.format, timing=not args.no_timing))
    return EXIT_OK if report.passed else EXIT_FAIL


# -- compute ------------------------------------------------------------------------


def _series_lines(label: str, series: ClassSeries, order: int, fmt: str) -> List[str]:
    out = []
    for m in range(order):
        part = series.part(m)
        if fmt == "records":
            terms = sorted(part.terms.items(), key=lambda kv: tuple(-x for x in kv[0]))
            out.append(json.dumps({
                "class": label,
                "index": m + 1,
                "coefficients": [[part.format_monomial(e) or "1", format_rational(c)] for e, c in terms],
            }))
        else:
            out.append(f"{label}_{m + 1} = {part}")
    return out


def _compute(args) -> int:
    fmt = args.format
    if args.what in ("s-class", "r-class"):
        if not 2 <= args.rank <= 6:
            return _usage(f"rank {args.rank} must lie within 2-6")
        if not 1 <= args.order <= MAX_ORDER:
            return _usage(f"order {args.order} must lie within 1-{MAX_ORDER}")
        N = args.order - 1
        if args.what == "s-class":
            lines = _series_lines("S", universal_S(args.rank, N), args.order, fmt)
        else:
            lines = _series_lines("R", universal_R(args.rank, N), args.order, fmt)
    elif args.what == "height":
        if args.twists is None:
            return _usage("height needs --twists")
        try:
            spec = parse_bundle_spec(args.twists, args.base_dim)
        except BundleSpecError as exc:
            return _usage(str(exc))
        h = analytic_height(spec)
        if fmt == "records":
            lines = [json.dumps({"twists": list(spec.twists), "base_dim": spec.n, "height": format_rational(h)})]
        else:
            lines = [format_rational(h)]
    else:
        coeff, coords = third_schur_coefficient()
        if fmt == "records":
            lines = [json.dumps({
                "basis": list(SCHUR_BASIS_DEG3),
                "coordinates": [format_rational(x) for x in coords],
                "coefficient": format_rational(coeff),
            })]
        else:
            lines = [format_rational(coeff)]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _usage(message: str) -> int:
    print(f"bottchern compute: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parse(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "verify":
        return _verify(args)
    return _compute(args)


if __name__ == "__main__":
    sys.exit(main())
