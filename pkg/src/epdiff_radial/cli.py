"""Command line interface.

Verbs:

* ``run <config>``      -- integrate a scenario, write its CSV output
* ``certify <config>``  -- print the blowup certificate only
* ``exact-hs <config>`` -- write the exact Hunter-Saxton solution table
* ``sweep <config> --param key --values v1,v2,...`` -- one run per value

Exit codes: 0 on completed/blowup_detected, 1 on config or I/O errors,
2 when the truncation guard trips.
"""

import argparse
import sys

from .certify import certify
from .scenario import parse_config, run_scenario, write_exact_hs_table


def _load_config(args):
    path = args.config_file or args.config
    if path is None:
        raise ValueError("a config path is required (positional or --config)")
    with open(path) as fh:
        return parse_config(fh.read())


def _add_common(sub):
    sub.add_argument("config_file", nargs="?", help="path to key=value config")
    sub.add_argument("--config", help="alternative way to pass the config path")
    sub.add_argument("--output", help="override the config's output path")
    sub.add_argument("--quiet", action="store_true", help="suppress progress lines")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="epdiff-radial",
        description="Lagrangian simulator for radial EPDiff equations",
    )
    subs = parser.add_subparsers(dest="verb", required=True)
    for verb in ("run", "certify", "exact-hs", "sweep"):
        sub = subs.add_parser(verb)
        _add_common(sub)
        if verb == "sweep":
            sub.add_argument("--param", required=True, help="config key to vary")
            sub.add_argument(
                "--values", required=True, help="comma-separated values"
            )
    return parser


def _cmd_run(args):
    config = _load_config(args)
    out = run_scenario(config, output_path=args.output, quiet=args.quiet)
    return out.exit_code


def _cmd_certify(args):
    from .scenario import _build

    config = _load_config(args)
    spec, grid, data = _build(config)
    cert = certify(spec, grid, data.omega0)
    report = cert.report()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(report + "\n")
    if not args.quiet:
        print(report)
    return 0 if cert.passed else 2


def _cmd_exact_hs(args):
    config = _load_config(args)
    write_exact_hs_table(config, output_path=args.output, quiet=args.quiet)
    return 0


def _cmd_sweep(args):
    import dataclasses

    config = _load_config(args)
    field_types = {f.name: f.type for f in dataclasses.fields(config)}
    if args.param not in field_types:
        raise ValueError(f"unknown sweep parameter {args.param!r}")
    caster = field_types[args.param]
    if isinstance(caster, str):  # stringified annotation
        caster = {"int": int, "float": float, "str": str}[caster]
    worst = 0
    for raw in args.values.split(","):
        value = caster(raw.strip())
        variant = dataclasses.replace(config, **{args.param: value})
        base = args.output or config.output
        stem, dot, ext = base.rpartition(".")
        suffix = f"{args.param}_{value}"
        path = f"{stem}__{suffix}.{ext}" if dot else f"{base}__{suffix}"
        out = run_scenario(variant.validate(), output_path=path, quiet=args.quiet)
        worst = max(worst, out.exit_code)
    return worst


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = {
        "run": _cmd_run,
        "certify": _cmd_certify,
        "exact-hs": _cmd_exact_hs,
        "sweep": _cmd_sweep,
    }[args.verb]
    try:
        return handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
