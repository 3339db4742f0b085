"""Command-line front end.

Subcommands: group-info, verify, entropy, husimi, channel, minimize, scan.
Reports go to stdout (JSON by default, CSV where tabular); diagnostics go
to stderr. Exit codes: 0 success, 1 verification failure, 2 input error.
Identical invocations (including --seed) produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .entropy import entropy_report, husimi, husimi_fast, measurement_channel
from .frames import CoherentFrame
from .groups import (
    FiniteAbelianGroup,
    Subgroup,
    all_subgroups,
    annihilator,
    is_corwin,
    parse_generators,
    parse_group,
    parse_point,
    subgroup_closure,
)
from .io import density_matrix_to_json, entropy_report_to_json, husimi_to_csv, load_state_file
from .minimize import MinimizerConfig, minimize, scan_fiducials
from .states import check_density_matrix, check_state_vector, pure_density, random_state_vector
from .verify import run_checks

__all__ = ["build_parser", "main"]


def _subgroup_from_args(group: FiniteAbelianGroup, text: str | None) -> Subgroup:
    if text is None:
        return Subgroup.whole(group)
    return subgroup_closure(group, parse_generators(group, text))


def _resolve_state(frame: CoherentFrame, text: str | None):
    """Parse a --state value into ("vector" | "density", array)."""
    if text is None:
        raise ValueError("--state is required for this subcommand")
    group = frame.group
    if text == "maximally_mixed":
        d = group.order
        return "density", np.eye(d, dtype=np.complex128) / d
    if text.startswith("coherent:"):
        z = parse_point(group, text[len("coherent:"):])
        return "vector", frame.state(z)
    if text.startswith("random:"):
        rng = np.random.default_rng(int(text[len("random:"):]))
        return "vector", random_state_vector(group.order, rng)
    kind, arr = load_state_file(text)
    if kind == "vector":
        check_state_vector(arr, dim=group.order, tol=1e-8)
    else:
        check_density_matrix(arr, dim=group.order)
    return kind, arr


def _state_density(frame: CoherentFrame, text: str | None) -> np.ndarray:
    kind, arr = _resolve_state(frame, text)
    return pure_density(arr) if kind == "vector" else arr


def cmd_group_info(args: argparse.Namespace) -> int:
    group = parse_group(args.group)
    subs = all_subgroups(group)
    rows = [
        {
            "elements": str(H),
            "order": H.order,
            "annihilator_order": annihilator(H).order,
            "corwin": is_corwin(H),
        }
        for H in subs
    ]
    if args.output == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["elements", "order", "annihilator_order", "corwin"])
        for row in rows:
            writer.writerow(
                [row["elements"], row["order"], row["annihilator_order"], row["corwin"]]
            )
        return 0
    payload = {
        "group": str(group),
        "order": group.order,
        "factors": list(group.orders),
        "dual": str(group),
        "subgroup_count": len(subs),
        "subgroups": rows,
    }
    print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    group = parse_group(args.group)
    subgroup = _subgroup_from_args(group, args.subgroup)
    results = run_checks(group, subgroup, seed=args.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{r.name:<{width}}  {status}  residual={r.residual:.3e}  tol={r.tolerance:.3e}"
        if r.note:
            line += f"  ({r.note})"
        print(line)
    failures = sum(not r.passed for r in results)
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def cmd_entropy(args: argparse.Namespace) -> int:
    group = parse_group(args.group)
    frame = CoherentFrame.vacuum(_subgroup_from_args(group, args.subgroup))
    rho = _state_density(frame, args.state)
    report = entropy_report(frame, rho, log_base=args.log_base)
    if args.output == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["wehrl", "von_neumann", "gap", "log_base"])
        writer.writerow(
            [repr(report.wehrl), repr(report.von_neumann), repr(report.gap), report.log_base]
        )
        return 0
    print(entropy_report_to_json(report))
    return 0


def cmd_husimi(args: argparse.Namespace) -> int:
    group = parse_group(args.group)
    frame = CoherentFrame.vacuum(_subgroup_from_args(group, args.subgroup))
    kind, arr = _resolve_state(frame, args.state)
    table = husimi_fast(frame, arr) if kind == "vector" else husimi(frame, arr)
    sys.stdout.write(husimi_to_csv(table))
    return 0


def cmd_channel(args: argparse.Namespace) -> int:
    group = parse_group(args.group)
    frame = CoherentFrame.vacuum(_subgroup_from_args(group, args.subgroup))
    rho = _state_density(frame, args.state)
    print(density_matrix_to_json(measurement_channel(frame, rho)))
    return 0


def cmd_minimize(args: argparse.Namespace) -> int:
    group = parse_group(args.group)
    subgroup = _subgroup_from_args(group, args.subgroup)
    config = MinimizerConfig(seed=args.seed)
    result = minimize(CoherentFrame.vacuum(subgroup), config)
    payload = {
        "group": str(group),
        "subgroup": str(subgroup),
        "fiducial_kind": "vacuum",
        "best_entropy": float(result.best_entropy),
        "overlap": float(result.nearest_overlap),
        "iterations": int(result.iterations),
        "seed": config.seed,
    }
    print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    group = parse_group(args.group)
    subgroup = _subgroup_from_args(group, args.subgroup)
    report = scan_fiducials(group, subgroup, config=MinimizerConfig(seed=args.seed))
    print(json.dumps(report, sort_keys=True))
    return 0


_COMMANDS = {
    "group-info": (cmd_group_info, "print group order, dual, and subgroup lattice"),
    "verify": (cmd_verify, "run the invariant suite for one (group, subgroup)"),
    "entropy": (cmd_entropy, "Wehrl and von Neumann entropies of a state"),
    "husimi": (cmd_husimi, "emit the Husimi table as CSV"),
    "channel": (cmd_channel, "apply the coherent-state measurement channel"),
    "minimize": (cmd_minimize, "search for the Wehrl entropy minimum"),
    "scan": (cmd_scan, "compare minima across vacuum and random fiducials"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wehrl",
        description="Weyl systems, coherent-state frames, and Wehrl entropy "
        "over finite abelian groups.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, (func, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--group", required=True, help="group spec, e.g. Z4 or Z2xZ2")
        p.add_argument(
            "--subgroup",
            default=None,
            help="generator list, e.g. '2' or '1,0;0,1'; default: the whole group",
        )
        p.add_argument(
            "--state",
            default=None,
            help="maximally_mixed | coherent:<g;lambda> | random:<seed> | file path",
        )
        p.add_argument("--log-base", dest="log_base", choices=("e", "2"), default="e")
        p.add_argument("--output", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already written its message
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
