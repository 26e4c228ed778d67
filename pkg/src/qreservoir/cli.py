"""Command-line front end.

Subcommands::

    qreservoir coherence|decay-rate|concurrence|lbc  [--config F] [options]
    qreservoir figures <preset>                      [options]
    qreservoir verify    [--seed S] [--budget B]

Scenario subcommands run their default preset unless ``--config`` points at
a JSON scenario file; ``--t-max`` and ``--samples`` override either source.
Datasets are CSV, written to ``--out`` or stdout.  ``verify`` prints the
property report and exits nonzero on any failure.

Set ``QRESERVOIR_LOG`` (debug/info/warning/error) to control log verbosity.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import presets, scenario, verify

log = logging.getLogger("qreservoir")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON scenario config")
    parser.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    parser.add_argument("--t-max", type=float, dest="t_max", help="grid end, units 1/gamma0")
    parser.add_argument("--samples", type=int, help="number of grid samples")
    parser.add_argument(
        "--seed", type=int, help="accepted for uniformity; scenario datasets are deterministic"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qreservoir",
        description="Qubit coherence and entanglement in lossy Lorentzian reservoirs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for kind, command in (
        ("coherence", "coherence"),
        ("decay_rate", "decay-rate"),
        ("concurrence", "concurrence"),
        ("lbc", "lbc"),
    ):
        p = sub.add_parser(command, help=f"emit a {command} dataset")
        p.set_defaults(kind=kind)
        _add_common(p)

    p = sub.add_parser("figures", help="emit a named figure preset dataset")
    p.add_argument("preset", choices=sorted(presets.PRESETS))
    _add_common(p)

    p = sub.add_parser("verify", help="run the randomised property suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--budget", type=int, default=100, help="samples per property")
    p.add_argument("--out", metavar="PATH", help="report file (default stdout)")
    return parser


def _scenario_config(args) -> scenario.ScenarioConfig:
    if args.config:
        config = scenario.load_config(args.config)
        want = getattr(args, "kind", None)
        if want is not None and config.kind != want:
            raise scenario.ConfigError(
                f"kind: config file is {config.kind!r} but the subcommand expects {want!r}"
            )
    elif hasattr(args, "preset"):
        config = presets.PRESETS[args.preset]
    else:
        config = presets.PRESETS[presets.DEFAULT_PRESET[args.kind]]
    return scenario.with_overrides(config, t_max=args.t_max, samples=args.samples)


def _emit(data: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
        log.info("wrote %d bytes to %s", len(data), out)
    else:
        sys.stdout.buffer.write(data)


def main(argv=None) -> int:
    logging.basicConfig(
        level=getattr(logging, os.environ.get("QRESERVOIR_LOG", "warning").upper(), logging.WARNING)
    )
    args = build_parser().parse_args(argv)

    if args.command == "verify":
        report = verify.run_verify(seed=args.seed, budget=args.budget)
        _emit(report.render().encode() + b"\n", args.out)
        return 0 if report.passed else 1

    try:
        config = _scenario_config(args)
    except (scenario.ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    table = scenario.run_scenario(config)
    _emit(table.to_csv_bytes(), args.out or config.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
