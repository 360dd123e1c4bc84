"""Command-line front end.

Subcommands: transform (emit a Haar spectrum), norm (all three norms of a
function), netmax (rectangle maximal table), verify (single-function
checks), sweep (full verification report, optionally with figures).

Exit codes: 0 success, 1 validation/usage error (one-line diagnostic),
2 a mathematical check failed (the report is still written).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .grid import generate, is_monotone_nonincreasing, parse_family_spec
from .norms import (
    ExponentPair,
    compute_norm_report,
    net_maximal,
    parse_exponent,
)
from .serialize import canonical_json, netmax_csv, spectrum_csv, spectrum_json_dict
from .transform import haar_forward_2d
from .verify import (
    SweepConfig,
    check_endpoint_coeff_bound,
    check_theorem1,
    check_theorem2,
    parse_sweep_config,
    run_sweep,
)

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; this CLI reserves 2 for
    # failed mathematical checks, so usage errors map to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _emit(text: str, output: str | None):
    if output:
        path = Path(output)
        if path.parent != Path(""):
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _family_arg(parser: _Parser):
    parser.add_argument(
        "--family", required=True,
        help="family spec, e.g. 'tensor_power:alpha=0.25,beta=0.25,level=6'")


def _exponent_args(parser: _Parser):
    parser.add_argument("--p1", required=True, help="inner integrability exponent")
    parser.add_argument("--p2", required=True, help="outer integrability exponent")
    parser.add_argument("--q1", default="2", help="inner summability exponent or 'inf'")
    parser.add_argument("--q2", default="2", help="outer summability exponent or 'inf'")


def _build_parser() -> _Parser:
    parser = _Parser(prog="haarnet", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="Haar spectrum of a family function")
    _family_arg(p)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--output", default=None)

    p = sub.add_parser("norm", help="mixed, net and sequence norms")
    _family_arg(p)
    _exponent_args(p)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", default=None)

    p = sub.add_parser("netmax", help="rectangle maximal table")
    _family_arg(p)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", default=None)
    p.add_argument("--figure", default=None, help="also render a heatmap PNG here")

    p = sub.add_parser("verify", help="single-function theorem checks")
    _family_arg(p)
    _exponent_args(p)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", default=None)

    p = sub.add_parser("sweep", help="full verification sweep")
    p.add_argument("--config", default=None, help="TOML sweep configuration")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--output", default=None, help="report path (overrides config)")
    p.add_argument("--figures", default=None,
                   help="directory for report figures (overrides config)")
    return parser


def _parse_exponents(args) -> ExponentPair:
    return ExponentPair(
        parse_exponent(args.p1), parse_exponent(args.p2),
        parse_exponent(args.q1), parse_exponent(args.q2),
    )


def _cmd_transform(args) -> int:
    f = generate(parse_family_spec(args.family))
    spectrum = haar_forward_2d(f)
    if args.format == "csv":
        _emit(spectrum_csv(spectrum), args.output)
    else:
        _emit(canonical_json(spectrum_json_dict(spectrum)), args.output)
    return 0


def _cmd_norm(args) -> int:
    spec = parse_family_spec(args.family)
    f = generate(spec)
    report = compute_norm_report(f, _parse_exponents(args), spec.canonical(),
                                 threads=args.threads)
    _emit(canonical_json(report.to_dict()), args.output)
    return 0


def _cmd_netmax(args) -> int:
    spec = parse_family_spec(args.family)
    table = net_maximal(generate(spec), threads=args.threads)
    if args.format == "csv":
        _emit(netmax_csv(table), args.output)
    else:
        _emit(canonical_json({"level": table.level, "maxabs": table.maxabs,
                              "rows": [list(r) for r in table.records()]}),
              args.output)
    if args.figure:
        from .figures import render_netmax_figure

        render_netmax_figure(table, args.figure)
    return 0


def _cmd_verify(args) -> int:
    spec = parse_family_spec(args.family)
    f = generate(spec)
    e = _parse_exponents(args)
    fid = spec.canonical()
    spectrum = haar_forward_2d(f)
    table = net_maximal(f, threads=args.threads)
    records = [check_theorem1(f, e, table=table, spectrum=spectrum, family=fid)]
    checks = []
    coeff_ok = check_endpoint_coeff_bound(f, e, table=table, spectrum=spectrum)
    checks.append({"name": "endpoint_coeff_bound", "passed": coeff_ok,
                   "details": {"p": list(e.p)}})
    if is_monotone_nonincreasing(f):
        records.append(check_theorem2(f, e.p, spectrum=spectrum, family=fid))
    payload = {
        "records": [r.to_dict() for r in records],
        "checks": checks,
        "pass": coeff_ok,
    }
    _emit(canonical_json(payload), args.output)
    return 0 if coeff_ok else 2


def _cmd_sweep(args) -> int:
    if args.config:
        config = parse_sweep_config(Path(args.config).read_text(encoding="utf-8"))
    else:
        config = SweepConfig()
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.output is not None:
        overrides["output"] = args.output
    if args.figures is not None:
        overrides["figures"] = args.figures
    if overrides:
        config = SweepConfig(**{**config.__dict__, **overrides})

    report = run_sweep(config)
    text = canonical_json(report.to_dict())
    _emit(text, config.output or None)
    if config.figures:
        from .figures import render_report_figures

        render_report_figures(report.to_dict(), config.figures)
    return 0 if report.passed else 2


_COMMANDS = {
    "transform": _cmd_transform,
    "norm": _cmd_norm,
    "netmax": _cmd_netmax,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, IndexError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
