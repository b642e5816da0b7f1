"""Batch front-end: scenario files in, reports and matrix exports out.

Subcommands: build | hierarchy | isocheck | limits | dlr.  Scenarios are
versioned JSON files; reports are JSON with sorted keys and round-trip
float formatting, so identical scenarios produce byte-identical output.
Diagnostics go to stderr.  Exit codes: 0 success, 2 validation error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import build_algebra, export_matrix_csv, export_matrix_json, matrix_entries
from .cells import state_space_from_json
from .errors import BudgetError, ValidationError
from .graphs import graph_from_json
from .limits import (
    TailCell,
    VolumeScheme,
    coefficient_sequence,
    low_temp_limit_algebras,
)
from .measures import dlr_check, measure_from_json
from .structure import build_hierarchy, iso_check, structure_counts

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Scenario:
    graph: object
    labels: tuple
    space: object
    measure: object
    hamiltonian: object
    raw: dict


def load_scenario(path) -> Scenario:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"scenario: cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"scenario: invalid JSON in {path}: {exc}") from None
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ValidationError("scenario.schema_version: expected 1")
    for key in ("graph", "states", "measure"):
        if key not in raw:
            raise ValidationError(f"scenario.{key}: missing")
    graph, labels = graph_from_json(raw["graph"])
    space = state_space_from_json(raw["states"])
    measure, hamiltonian = measure_from_json(raw["measure"], graph, space, labels)
    return Scenario(graph, labels, space, measure, hamiltonian, raw)


def _dump_json(payload, path, to_stdout: bool):
    text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if to_stdout:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_build(args) -> int:
    scenario = load_scenario(args.scenario)
    algebra = build_algebra(scenario.graph, scenario.space, scenario.measure)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    export_matrix_csv(algebra, out / "matrix.csv")
    export_matrix_json(algebra, out / "matrix.json")
    summary = {
        "schema_version": SCHEMA_VERSION,
        "vertices": scenario.graph.vertex_count,
        "states": scenario.space.k,
        "dimension": algebra.dimension,
        "nonzeros": sum(1 for _ in matrix_entries(algebra)),
    }
    _dump_json(summary, out / "build_summary.json", args.stdout)
    print(f"matrix exported to {out}", file=sys.stderr)
    return 0


def _hierarchy_payload(scenario) -> dict:
    algebra = build_algebra(scenario.graph, scenario.space, scenario.measure)
    hierarchy = build_hierarchy(algebra)
    levels = [
        [[algebra.pair_label(g) for g in block] for block in blocks]
        for blocks in hierarchy.levels
    ]
    try:
        counts = structure_counts(algebra)
        counts_payload = {
            "dimension": counts.dimension,
            "one_dimensional": counts.one_dimensional,
            "four_dimensional": counts.four_dimensional,
        }
    except ValidationError:
        counts_payload = None
    return {
        "schema_version": SCHEMA_VERSION,
        "level_count": hierarchy.level_count,
        "levels": levels,
        "counts": counts_payload,
        "flows": [[list(a), list(b)] for a, b in hierarchy.flows],
    }


def _hierarchy_text(payload) -> str:
    lines = [f"{payload['level_count']} levels"]
    for lvl in range(len(payload["levels"]) - 1, -1, -1):
        blocks = payload["levels"][lvl]
        lines.append(f"level {lvl}: {len(blocks)} block(s)")
        for block in blocks:
            lines.append("  " + " ".join(block))
    return "\n".join(lines) + "\n"


def cmd_hierarchy(args) -> int:
    scenario = load_scenario(args.scenario)
    payload = _hierarchy_payload(scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if not args.stdout:
        (out / "hierarchy.txt").write_text(_hierarchy_text(payload))
    _dump_json(payload, out / "hierarchy.json", args.stdout)
    return 0


def cmd_isocheck(args) -> int:
    first = load_scenario(args.scenario)
    second = load_scenario(args.scenario_b)
    left = build_algebra(first.graph, first.space, first.measure)
    right = build_algebra(second.graph, second.space, second.measure)
    report = iso_check(left, right)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "support_equal": report.support_equal,
        "skeleton_equal": report.skeleton_equal,
        "verdict": report.verdict,
    }
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _dump_json(payload, out / "isocheck.json", args.stdout)
    return 0


def _tail_cell_from_json(node) -> TailCell:
    if not isinstance(node, dict) or "tail" not in node:
        raise ValidationError("limits.pairs: each cell needs a tail state")
    pattern = []
    for entry in node.get("pattern", []):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ValidationError("limits.pairs.pattern: entries must be [site, state]")
        coord, state = entry
        key = int(coord) if isinstance(coord, (int, float)) else tuple(int(x) for x in coord)
        pattern.append((key, int(state)))
    return TailCell(int(node["tail"]), tuple(pattern))


def _tail_label(cell: TailCell) -> str:
    if not cell.pattern:
        return f"~{cell.tail}"
    inner = ",".join(
        (f"{c[0]}:{s}" if len(c) == 1 else f"{c}:{s}") for c, s in cell.pattern
    )
    return f"~{cell.tail}{{{inner}}}"


def _pair_label(pair) -> str:
    return f"({_tail_label(pair[0])},{_tail_label(pair[1])})"


def cmd_limits(args) -> int:
    try:
        with open(args.scenario) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"scenario: cannot read {args.scenario}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"scenario: invalid JSON: {exc}") from None
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ValidationError("scenario.schema_version: expected 1")
    spec = raw.get("limits")
    if not isinstance(spec, dict):
        raise ValidationError("scenario.limits: missing")
    for key in ("dimension", "states", "radii", "beta"):
        if key not in spec:
            raise ValidationError(f"scenario.limits.{key}: missing")
    scheme = VolumeScheme(
        int(spec["dimension"]),
        tuple(spec["radii"]),
        int(spec["states"]),
        float(spec.get("J", 1.0)),
        float(spec["beta"]),
    )
    pair_specs = spec.get("pairs", [])
    sequences = []
    for entry in pair_specs:
        phi = tuple(_tail_cell_from_json(c) for c in entry.get("phi", []))
        psi = tuple(_tail_cell_from_json(c) for c in entry.get("psi", []))
        if len(phi) != 2 or len(psi) != 2:
            raise ValidationError("limits.pairs: phi and psi each need two cells")
        seq = coefficient_sequence(scheme, phi, psi)
        sequences.append((phi, psi, seq))
    payload = {
        "schema_version": SCHEMA_VERSION,
        "dimension": scheme.dimension,
        "states": scheme.states,
        "coupling": scheme.coupling,
        "beta": scheme.beta,
        "radii": list(scheme.radii),
        "pairs": [
            {
                "phi": _pair_label(phi),
                "psi": _pair_label(psi),
                "values": list(seq.values),
                "limit_estimate": seq.limit_estimate,
                "converged": seq.converged,
            }
            for phi, psi, seq in sequences
        ],
    }
    if "low_temp" in spec:
        betas = spec["low_temp"].get("betas")
        if not isinstance(betas, list) or not betas:
            raise ValidationError("scenario.limits.low_temp.betas: nonempty list required")
        payload["low_temp"] = low_temp_limit_algebras(
            scheme.dimension, scheme.states, scheme.radii, betas, scheme.coupling
        )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = ["d,q,beta,radius,phi,psi,coefficient"]
    for phi, psi, seq in sequences:
        for radius, value in zip(seq.volumes, seq.values):
            rows.append(
                f"{scheme.dimension},{scheme.states},{scheme.beta!r},{radius},"
                f"{_pair_label(phi)},{_pair_label(psi)},{value!r}"
            )
    (out / "limits.csv").write_text("\n".join(rows) + "\n")
    _dump_json(payload, out / "limits.json", args.stdout)
    return 0


def cmd_dlr(args) -> int:
    scenario = load_scenario(args.scenario)
    if scenario.hamiltonian is None:
        raise ValidationError("measure: dlr requires a hamiltonian-based measure")
    raw_domain = [v for v in (args.domain or "").split(",") if v != ""]
    if not raw_domain:
        raise ValidationError("domain: at least one vertex required")
    domain = []
    for name in raw_domain:
        if name not in scenario.labels:
            raise ValidationError(f"domain: unknown vertex {name!r}")
        domain.append(scenario.labels.index(name))
    domain = sorted(set(domain))
    from itertools import product as iproduct

    k = scenario.space.k
    rows = []
    max_gap = 0.0
    for states in iproduct(range(1, k + 1), repeat=len(domain)):
        assignment = dict(zip(domain, states))
        result = dlr_check(scenario.hamiltonian, domain, assignment)
        max_gap = max(max_gap, result.gap)
        label = "(" + ",".join(scenario.space.label_of(s) for s in states) + ")"
        rows.append(
            {"assignment": label, "lhs": result.lhs, "rhs": result.rhs, "gap": result.gap}
        )
    payload = {
        "schema_version": SCHEMA_VERSION,
        "domain": [scenario.labels[v] for v in domain],
        "rows": rows,
        "max_gap": max_gap,
    }
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _dump_json(payload, out / "dlr.json", args.stdout)
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoalg",
        description="Evolution algebras from graphs, state spaces and Gibbs measures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument("--out", default=".", help="output directory (default: cwd)")
        p.add_argument(
            "--stdout", action="store_true", help="write the JSON report to stdout"
        )

    common(sub.add_parser("build", help="build and export the coefficient matrix"))
    common(sub.add_parser("hierarchy", help="level decomposition and counts"))
    iso = sub.add_parser("isocheck", help="compare two scenarios over one graph")
    common(iso)
    iso.add_argument("--scenario-b", required=True, help="second scenario JSON file")
    common(sub.add_parser("limits", help="finite-volume coefficient trends"))
    dlr = sub.add_parser("dlr", help="consistency gaps for a domain")
    common(dlr)
    dlr.add_argument("--domain", required=True, help="comma-separated vertex labels")
    return parser


_COMMANDS = {
    "build": cmd_build,
    "hierarchy": cmd_hierarchy,
    "isocheck": cmd_isocheck,
    "limits": cmd_limits,
    "dlr": cmd_dlr,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
