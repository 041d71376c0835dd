"""Command-line front end.

Pipeline: parse the instance (and optional tree decomposition), optionally
kernelize, solve, and print one machine-readable JSON object on stdout:

    {"answer": "yes"|"no", "solutions": [[ids], ...] | null,
     "diversity": int | null, "kernel": report | null,
     "tables": [{node, delta, states, tuples), ...] | null}

A short human summary goes to stderr.  Exit status: 0 yes, 1 no,
2 usage or input error.  The environment variable DIVERSEKIT_SEED is
reserved; every algorithm here is deterministic and ignores it.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cores import solve_diverse_vc, solve_diverse_vc_direct
from .decomposition import (find_vertex_cover, normalize, parse_td,
                            pd_from_vertex_cover, validate)
from .diversity import diversity
from .instances import (FAST, HS, KINDS, PLC, VC, ParseError, ProblemInstance,
                        parse_graph, parse_hypergraph, parse_points,
                        parse_tournament)
from .kernels import NoVerdict, diverse_kernel_transform, kernel_report, lossless_kernel
from .oracle import OracleGuardError, enumerate_solutions, find_diverse_tuple
from .report import emit_trace


class CliError(Exception):
    """Input or usage problem; maps to exit status 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diversekit",
        description="Find r mutually diverse solutions to subset-minimization "
                    "problems (vertex cover, hitting set, point line cover, "
                    "feedback arc set in tournaments).")
    parser.add_argument("input", help="instance file")
    parser.add_argument("--problem", required=True, choices=KINDS)
    parser.add_argument("--k", required=True, type=int, help="solution size budget")
    parser.add_argument("--r", type=int, default=1, help="number of solutions")
    parser.add_argument("--d", type=int, default=0, help="diversity target")
    parser.add_argument("--td", metavar="FILE",
                        help="tree decomposition in PACE .td format (vc only)")
    parser.add_argument("--mode", choices=("auto", "direct", "framework", "oracle"),
                        default="auto")
    parser.add_argument("--kernelize", action="store_true",
                        help="shrink the instance first and report the kernel")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--trace", metavar="FILE",
                        help="write per-node table sizes as CSV (and a PNG "
                             "figure next to it)")
    return parser


_PARSERS = {VC: parse_graph, HS: parse_hypergraph, PLC: parse_points,
            FAST: parse_tournament}
_WRAPPERS = {VC: ProblemInstance.vertex_cover, HS: ProblemInstance.hitting_set,
             PLC: ProblemInstance.point_line_cover,
             FAST: ProblemInstance.feedback_arc_set}


def load_instance(problem: str, path: str) -> ProblemInstance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    return _WRAPPERS[problem](_PARSERS[problem](text))


def _check_flags(args) -> None:
    if args.k < 0 or args.r < 1 or args.d < 0:
        raise CliError("need --k >= 0, --r >= 1, --d >= 0")
    if args.threads < 1:
        raise CliError("--threads must be at least 1")
    if args.mode == "direct" and args.problem != VC:
        raise CliError("--mode direct is only available for --problem vc")
    if args.mode == "framework" and args.problem != VC:
        raise CliError("--mode framework is only available for --problem vc: "
                       "the tree-decomposition cores cover vertex cover; other "
                       "problems are solved by kernelization plus exhaustive "
                       "search (--mode auto or oracle)")
    if args.td and args.problem != VC:
        raise CliError("--td applies only to graph problems (--problem vc)")
    if args.td and args.kernelize:
        raise CliError("--td describes the original graph; it cannot be "
                       "combined with --kernelize")


def _vc_decomposition(graph, k):
    cover = find_vertex_cover(graph, k)
    if cover is None:
        return None
    return normalize(graph, pd_from_vertex_cover(graph, cover))


def _solve_vc(instance, k, r, d, mode, args, output):
    graph = instance.payload
    if args.td:
        try:
            td_text = Path(args.td).read_text()
        except OSError as exc:
            raise CliError(f"cannot read {args.td}: {exc}") from exc
        dec = parse_td(td_text, graph)
        problems = validate(graph, dec)
        if problems:
            raise CliError("invalid tree decomposition: " + "; ".join(problems))
        dec = normalize(graph, dec)
    else:
        dec = _vc_decomposition(graph, k)
        if dec is None:
            return False, None, None
    if mode == "direct":
        decision, stats = solve_diverse_vc_direct(graph, dec, k, r, d)
        output["tables"] = [vars(s) for s in stats]
        _emit_trace(args, stats)
        return decision, None, None
    result = solve_diverse_vc(graph, dec, k, r, d, threads=args.threads)
    output["tables"] = [vars(s) for s in result.evaluation.stats]
    _emit_trace(args, result.evaluation.stats)
    if not result.decision:
        return False, None, None
    local_sets = result.solutions
    id_sets = [frozenset(instance.ids[v] for v in sol) for sol in local_sets]
    return True, id_sets, result.diversity


def _solve_oracle(instance, k, r, d):
    try:
        space = enumerate_solutions(instance, k)
        if not space.solutions:
            return False, None, None
        witness = find_diverse_tuple(space, r, d)
    except OracleGuardError as exc:
        raise CliError(f"instance too large for exhaustive mode: {exc}") from exc
    if witness is None:
        return False, None, None
    return True, list(witness), diversity(witness)


def _emit_trace(args, stats) -> None:
    if args.trace:
        emit_trace(stats, args.trace)


def run(args) -> int:
    _check_flags(args)
    instance = load_instance(args.problem, args.input)
    k, r, d = args.k, args.r, args.d
    output: dict = {"answer": None, "solutions": None, "diversity": None,
                    "kernel": None, "tables": None}

    kernelized = args.kernelize or (args.problem != VC and args.mode == "auto")
    solve_instance, solve_k, forced = instance, k, frozenset()
    if kernelized:
        kernel = lossless_kernel(instance, k)
        transformed = diverse_kernel_transform(instance, k, r, d, kernel)
        if isinstance(transformed, NoVerdict):
            output["answer"] = "no"
            output["kernel"] = kernel_report(transformed, instance.domain_size)
            _finish(output, args)
            return 1
        solve_instance = transformed.instance
        solve_k = transformed.k_reduced
        forced = frozenset(kernel.forced)
        output["kernel"] = kernel_report(kernel, instance.domain_size,
                                         solve_instance.domain_size)

    if args.problem == VC and args.mode in ("auto", "direct", "framework"):
        mode = "framework" if args.mode == "auto" else args.mode
        decision, id_sets, achieved = _solve_vc(solve_instance, solve_k, r, d,
                                                mode, args, output)
    else:
        decision, id_sets, achieved = _solve_oracle(solve_instance, solve_k, r, d)
        _emit_trace(args, [])

    if decision and id_sets is not None and forced:
        # Lift solutions of the reduced instance back to the original domain:
        # forced elements belong to every solution and add no diversity.
        id_sets = [frozenset(sol) | forced for sol in id_sets]
        achieved = diversity(id_sets)
    output["answer"] = "yes" if decision else "no"
    if decision and id_sets is not None:
        output["solutions"] = [sorted(sol) for sol in id_sets]
        output["diversity"] = achieved
    _finish(output, args)
    return 0 if decision else 1


def _finish(output: dict, args) -> None:
    print(json.dumps(output, sort_keys=True))
    answer = output["answer"]
    summary = f"{args.problem} k={args.k} r={args.r} d={args.d}: {answer}"
    if output["solutions"] is not None:
        summary += f" (diversity {output['diversity']})"
    print(summary, file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (CliError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
