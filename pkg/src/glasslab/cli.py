"""Command line entry point: ``glasslab <experiment> --config cfg.json [--seed S] [--out DIR]``.

Exit status is 0 when every declared tolerance passes, 2 when one fails and
1 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from .experiments import EXPERIMENTS, ExperimentConfig, write_report

log = logging.getLogger("glasslab")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="glasslab", description=__doc__.splitlines()[0])
    parser.add_argument("experiment", choices=sorted(EXPERIMENTS))
    parser.add_argument("--config", required=True, help="path to the JSON experiment config")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--out", default=None, help="output directory (overrides output_dir)")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = ExperimentConfig.from_json(args.config)
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        out = args.out or cfg.output_dir
        if out is not None:
            cfg = replace(cfg, output_dir=out)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"glasslab: config error: {exc}", file=sys.stderr)
        return 1
    try:
        report = EXPERIMENTS[args.experiment](cfg)
    except ValueError as exc:
        print(f"glasslab: {exc}", file=sys.stderr)
        return 1
    if out is not None:
        path = write_report(report, out)
        log.info("wrote %s", path)
    else:
        sys.stdout.write(report.to_json())
    for c in report.checks:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"{status} {c['name']}: {c['value']} {c['comparison']} {c['threshold']}", file=sys.stderr)
    return 0 if report.passed else 2


if __name__ == "__main__":
    sys.exit(main())
