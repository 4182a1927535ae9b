"""Command-line front end.

Exit codes: 0 ok, 1 a report was refuted, 2 parse failure,
3 invariant violation, 4 precondition failure (e.g. disconnected input or
search timeout).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from . import __version__
from . import graph as gr
from .auteng import DEFAULT_BRUTE_CAP, SearchTimeout, automorphism_group, automorphism_group_brute
from .families import FamilySpecError, build, parse_spec
from .verify import (
    CHECKS,
    DEFAULT_FAMILY_CHECKS,
    TheoremViolation,
    VerifyReport,
    is_stable,
    johnson_neighbor_counts,
    stability_report,
    verify_family,
    xab_structure,
)

EXIT_OK, EXIT_REFUTED, EXIT_PARSE, EXIT_INVARIANT, EXIT_PRECONDITION = 0, 1, 2, 3, 4

EXTRA_CHECKS = ("stability", "johnson-neighbor-counts", "xab-dichotomy")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def load_graph(source: str) -> tuple[gr.Graph, str]:
    """Read a graph from a text/JSON file, or build it when ``source`` is a family spec."""
    if os.path.exists(source):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read {source}: {exc}", EXIT_PARSE)
        try:
            g = gr.from_json(text) if text.lstrip().startswith("{") else gr.from_text(text)
        except gr.GraphFormatError as exc:
            raise CliError(f"{source}: {exc}", EXIT_PARSE)
        return g, source
    try:
        spec = parse_spec(source)
    except FamilySpecError as exc:
        raise CliError(f"{source!r} is neither a graph file nor a family spec: {exc}", EXIT_PARSE)
    return build(spec), str(spec)


def _emit(data, fmt: str, text_lines) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        for line in text_lines:
            print(line)


# -- subcommands --------------------------------------------------------------

def cmd_family(args) -> int:
    try:
        spec = parse_spec(args.spec)
    except FamilySpecError as exc:
        raise CliError(str(exc), EXIT_PARSE)
    try:
        g = build(spec)
    except (ValueError, AssertionError) as exc:
        raise CliError(f"invariant violated while building {spec}: {exc}", EXIT_INVARIANT)
    body = gr.to_json(g) if args.format == "json" else gr.to_text(g)
    summary = [f"{spec}: {g.n} vertices, {g.m} edges"]
    if g.labels is not None and args.legend:
        summary += [f"{i} {label}" for i, label in enumerate(g.labels)]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
        print("\n".join(summary))
    else:
        sys.stdout.write(body)
        print("\n".join(summary), file=sys.stderr)
    return EXIT_OK


def cmd_aut(args) -> int:
    g, name = load_graph(args.graph)
    try:
        A = automorphism_group(g, timeout=args.timeout_secs)
    except SearchTimeout as exc:
        raise CliError(f"{name}: {exc}", EXIT_PRECONDITION)
    if args.brute_cap and g.n <= args.brute_cap:
        count = len(automorphism_group_brute(g, cap=args.brute_cap))
        if count != A.order:
            raise CliError(f"{name}: search order {A.order} != brute-force count {count}", EXIT_INVARIANT)
    data = A.to_json()
    data["instance"] = name
    lines = [f"instance {name}", f"order {A.order}"] + [" ".join(map(str, p.images)) for p in A.generators]
    _emit(data, args.format, lines)
    return EXIT_OK


def cmd_stability(args) -> int:
    g, name = load_graph(args.graph)
    if g.n == 0 or not gr.is_connected(g):
        raise CliError(f"{name}: stability needs a connected graph", EXIT_PRECONDITION)
    try:
        verdict = is_stable(g, timeout=args.timeout_secs)
    except SearchTimeout as exc:
        raise CliError(f"{name}: {exc}", EXIT_PRECONDITION)
    except TheoremViolation as exc:
        raise CliError(f"{name}: {exc}", EXIT_INVARIANT)
    data = verdict.to_json()
    data["instance"] = name
    lines = [f"{k} {data[k]}" for k in sorted(data)]
    _emit(data, args.format, lines)
    return EXIT_OK


def _flatten(report: VerifyReport, keep: set[str]) -> list[VerifyReport]:
    out = [replace(report, children=[])] if report.theorem_id in keep else []
    for child in report.children:
        out.extend(_flatten(child, keep))
    return out


def run_entry(entry: dict, brute_cap: int, timeout: float | None) -> list[VerifyReport]:
    """All reports for one config entry (family checks plus the extra ones)."""
    spec = parse_spec(entry["spec"])
    checks = set(entry.get("checks") or DEFAULT_FAMILY_CHECKS)
    reports: list[VerifyReport] = []
    family_checks = checks & set(DEFAULT_FAMILY_CHECKS)
    if family_checks or "expected_order" in entry:
        family_checks.add("aut-order")
        root = verify_family(spec, family_checks, entry.get("expected_order"), brute_cap, timeout)
        root.children = [c for c in root.children if c.theorem_id in family_checks]
        reports += _flatten(root, family_checks)
    if "stability" in checks:
        try:
            reports.append(stability_report(build(spec), str(spec), timeout))
        except SearchTimeout:
            reports.append(VerifyReport("stability", str(spec), "holds", "skipped", evidence={"reason": "timeout"}))
    if spec.kind == "Johnson":
        n, k = spec.params
        if "johnson-neighbor-counts" in checks:
            reports.append(johnson_neighbor_counts(n, k))
        if "xab-dichotomy" in checks:
            reports.append(xab_structure(n, k))
    return reports


def _run_entry_json(args):
    entry, brute_cap, timeout, timings = args
    return [r.to_json() for r in run_entry(entry, brute_cap, timeout)], timings


def load_config(path: str | None) -> list[dict]:
    if path is None:
        text = resources.files("vdgraph").joinpath("data/default_suite.json").read_text(encoding="utf-8")
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE)
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"config is not valid JSON: {exc}", EXIT_PARSE)
    if not isinstance(config, list):
        raise CliError("config must be a JSON list", EXIT_PARSE)
    known = set(DEFAULT_FAMILY_CHECKS) | set(EXTRA_CHECKS)
    for entry in config:
        if not isinstance(entry, dict) or "spec" not in entry:
            raise CliError(f"config entry without a spec: {entry!r}", EXIT_PARSE)
        try:
            parse_spec(entry["spec"])
        except FamilySpecError as exc:
            raise CliError(str(exc), EXIT_PARSE)
        unknown = set(entry.get("checks") or ()) - known
        if unknown:
            raise CliError(f"unknown checks {sorted(unknown)} for {entry['spec']}", EXIT_PARSE)
        if "expected_order" in entry:
            try:
                entry["expected_order"] = int(entry["expected_order"])
            except (TypeError, ValueError):
                raise CliError(f"bad expected_order for {entry['spec']}", EXIT_PARSE)
    return config


def cmd_suite(args) -> int:
    config = load_config(args.config)
    jobs = [(entry, args.brute_cap, args.timeout_secs, args.timings) for entry in config]
    results = []
    try:
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                batches = list(pool.map(_run_entry_json, jobs))
        else:
            batches = [_run_entry_json(j) for j in jobs]
    except TheoremViolation as exc:
        print(f"THEOREM VIOLATION: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    for batch, timings in batches:
        for r in batch:
            if not timings:
                r.pop("wall_time", None)
            results.append(r)
    results.sort(key=lambda r: (r["theorem_id"], r["instance"]))
    refuted = [r for r in results if r["conclusion_status"] == "refuted"]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(results, sort_keys=True, indent=2) + "\n")
    if args.format == "json" and not args.output:
        sys.stdout.write(json.dumps(results, sort_keys=True, indent=2) + "\n")
    else:
        for r in results:
            print(f"{r['conclusion_status']:9} {r['theorem_id']:24} {r['instance']}")
        print(f"{len(results)} reports, {len(refuted)} refuted")
    return EXIT_REFUTED if refuted else EXIT_OK


def cmd_checks(args) -> int:
    _emit(CHECKS, args.format, [f"{k:24} {v}" for k, v in sorted(CHECKS.items())])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vdgraph", description="Automorphism groups and stability of vd-graph families.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="json"):
        sp.add_argument("--format", choices=("text", "json"), default=fmt_default)
        sp.add_argument("--timeout-secs", type=float, default=None, help="per-instance search budget")
        sp.add_argument("--brute-cap", type=int, default=DEFAULT_BRUTE_CAP, help="max vertices for brute-force cross-checks (0 disables)")

    sp = sub.add_parser("family", help="build a family graph and write it")
    sp.add_argument("spec", help="e.g. johnson:5,2 or grassmann:2,4,2")
    sp.add_argument("-o", "--output")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--legend", action="store_true", help="print the vertex label legend")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("aut", help="automorphism group of a graph file or family spec")
    sp.add_argument("graph")
    common(sp)
    sp.set_defaults(func=cmd_aut)

    sp = sub.add_parser("stability", help="stability verdict of a connected graph")
    sp.add_argument("graph")
    common(sp)
    sp.set_defaults(func=cmd_stability)

    sp = sub.add_parser("suite", help="run the theorem checks listed in a config file")
    sp.add_argument("config", nargs="?", help="JSON list of {spec, checks[], expected_order}; default: bundled suite")
    sp.add_argument("-o", "--output")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timings", action="store_true", help="include wall times (output no longer byte-stable)")
    common(sp, fmt_default="text")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("checks", help="list check ids and what they certify")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_checks)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"vdgraph: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
