"""Command-line interface: measure evaluation, sampling, comparison runs."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import experiment, measures, qstate, sampler
from .errors import BadIndices, EntanglementLabError, ParameterOutOfRange
from .selftest import run_selftest


def _parse_grid(text: str) -> np.ndarray:
    try:
        start, stop, step = (float(tok) for tok in text.split(":"))
    except ValueError:
        raise ValueError(f"grid must be START:STOP:STEP, got {text!r}")
    if step <= 0 or stop < start:
        raise ValueError(f"grid must be increasing, got {text!r}")
    count = int(round((stop - start) / step))
    return start + step * np.arange(count + 1)


def _state_from_args(args) -> list[qstate.DensityMatrix]:
    if args.input is not None:
        return qstate.load_states(args.input)
    if args.family == "singlet":
        return [qstate.singlet()]
    if args.param is None:
        raise ParameterOutOfRange(f"--family {args.family} requires --param")
    if args.family == "werner":
        return [qstate.werner_state(args.param)]
    return [qstate.pure_schmidt(args.param)]


def _cmd_measure(args) -> int:
    states = _state_from_args(args)
    print(measures.REPORT_CSV_HEADER)
    for rho in states:
        print(measures.report_csv_row(measures.measure_report(rho)))
    return 0


def _cmd_sample(args) -> int:
    rng = sampler.RngStream(args.seed)
    rhos = sampler.random_density_batch(rng, args.count)
    states = [qstate.density_from_matrix(m) for m in rhos]
    if args.out is None:
        print(qstate.CSV_HEADER)
        for rho in states:
            print(qstate.to_csv_row(rho))
    else:
        qstate.save_states(args.out, states)
        print(f"wrote {len(states)} states to {args.out}")
    return 0


def _cmd_compare(args) -> int:
    cfg = experiment.ExperimentConfig(
        seed=args.seed,
        n_pairs=args.pairs,
        s_bins=args.bins,
        threads=args.threads,
    )
    summary = experiment.run_experiment(cfg)
    paths = experiment.write_csvs(summary, args.out)
    print(
        f"p_entangled={summary.p_entangled:.6f} (se {summary.se_entangled:.6f})  "
        f"p_violation={summary.p_violation:.6f} (se {summary.se_violation:.6f})  "
        f"pairs={summary.n_pairs} drawn={summary.states_drawn}"
    )
    for name in sorted(paths):
        print(f"wrote {paths[name]}")
    return 0


def _cmd_werner_table(args) -> int:
    print("f,concurrence,e_formation,e_negative,e_sum")
    for f in _parse_grid(args.grid):
        report = measures.measure_report(qstate.werner_state(float(f)))
        row = (f, report.concurrence, report.e_formation, report.e_negative, report.e_sum)
        print(",".join(f"{v:.17g}" for v in row))
    return 0


def _cmd_selftest(_args) -> int:
    return 0 if run_selftest(verbose=True) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entlab",
        description="Two-qubit entanglement measures and Monte Carlo ordering comparison.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="print measure values for a state")
    p.add_argument("--family", choices=("werner", "pure", "singlet"))
    p.add_argument("--param", type=float, help="family parameter (F or alpha)")
    p.add_argument("--input", help="CSV file of serialized states")
    p.set_defaults(fn=_cmd_measure)

    p = sub.add_parser("sample", help="draw random states and dump them as CSV")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("compare", help="run the Monte Carlo ordering comparison")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pairs", type=int, required=True)
    p.add_argument("--bins", type=int, default=30)
    p.add_argument("--out", default=".", help="output directory for the CSV files")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("werner-table", help="analytic-family table over a parameter grid")
    p.add_argument("--grid", default="0.25:1.0:0.05", help="START:STOP:STEP (inclusive)")
    p.set_defaults(fn=_cmd_werner_table)

    p = sub.add_parser("selftest", help="run the module invariant suites")
    p.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "measure" and (args.input is None) == (args.family is None):
        parser.error("measure requires exactly one of --family or --input")
    try:
        return args.fn(args)
    except (ParameterOutOfRange, BadIndices, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EntanglementLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
