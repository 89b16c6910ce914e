"""Command-line interface.

Exit codes: 0 success (including Unknown verdicts unless
``--require-decision``), 2 input format errors, 3 precondition
violations, 4 resource limits (size caps, exhausted enumeration
budgets), 5 Unknown verdict under ``--require-decision``.
"""

from __future__ import annotations

import argparse
import sys

from .census import CensusConfig, FILTERS, run_census
from .core import FormatError, PreconditionError, SizeLimitError, classify
from .criteria import (
    CRITERIA_ORDER,
    DecideConfig,
    TRANSFORM_RULES,
    UNKNOWN,
    decide,
)
from .fixtures import fixture, fixture_names
from .formats import (
    machine_to_dot,
    machine_to_json,
    machine_to_text,
    parse_machine,
)
from .helix import (
    cycle_lengths,
    cycle_profile,
    helix_graph,
    helix_to_dot,
    is_union_of_cycles,
    profile_to_csv,
)
from .minimize import is_md_trivial, md_reduce, minimize
from .semigroup import DEFAULT_BUDGET, DEFAULT_WORK_LIMIT
from .semigroup import FINITE as ENUM_FINITE
from .semigroup import enumerate_order, growth_series
from .transform import dual, inverse

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_PRECONDITION = 3
EXIT_LIMIT = 4
EXIT_UNDECIDED = 5


def _resolve_machine(text: str):
    """Fixture name, then file path, then inline encoding."""
    try:
        return fixture(text)
    except PreconditionError as exc:
        fixture_error = exc
    import os

    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as handle:
            return parse_machine(handle.read())
    stripped = text.lstrip()
    if stripped.startswith("mealy") or stripped.startswith("{"):
        return parse_machine(text)
    raise fixture_error


def _emit_machine(m, as_json: bool):
    print(machine_to_json(m) if as_json else machine_to_text(m))


def _cmd_classify(args) -> int:
    m = _resolve_machine(args.machine)
    flags = classify(m)
    print("states: %d" % m.q)
    print("letters: %d" % m.p)
    print("invertible: %s" % str(flags.invertible).lower())
    print("reversible: %s" % str(flags.reversible).lower())
    print("ir: %s" % str(flags.ir).lower())
    print("bireversible: %s" % str(flags.bireversible).lower())
    from .census import partition_class

    print("class: %s" % partition_class(m))
    print("md-trivial: %s" % str(is_md_trivial(m)).lower())
    return EXIT_OK


def _cmd_dual(args) -> int:
    _emit_machine(dual(_resolve_machine(args.machine)), args.json)
    return EXIT_OK


def _cmd_inverse(args) -> int:
    _emit_machine(inverse(_resolve_machine(args.machine)), args.json)
    return EXIT_OK


def _cmd_minimize(args) -> int:
    _emit_machine(minimize(_resolve_machine(args.machine)), args.json)
    return EXIT_OK


def _cmd_reduce(args) -> int:
    m = _resolve_machine(args.machine)
    reduced, trace = md_reduce(m)
    for step in trace.steps:
        print(
            "%s: %dx%d -> %dx%d"
            % (step.side, step.before[0], step.before[1], step.after[0], step.after[1])
        )
    _emit_machine(reduced, args.json)
    return EXIT_OK


def _cmd_helix(args) -> int:
    m = _resolve_machine(args.machine)
    if args.profile:
        profile = cycle_profile(m, args.max_n, args.max_k)
        sys.stdout.write(profile_to_csv(profile))
        return EXIT_OK
    graph = helix_graph(m, args.n, args.k)
    if args.dot:
        sys.stdout.write(helix_to_dot(graph))
        return EXIT_OK
    cycles = is_union_of_cycles(graph)
    print("nodes: %d" % graph.node_count())
    print("union of cycles: %s" % str(cycles).lower())
    if cycles:
        print("cycle lengths: %s" % ",".join(map(str, cycle_lengths(graph))))
    return EXIT_OK


def _cmd_order(args) -> int:
    m = _resolve_machine(args.machine)
    if args.growth is not None:
        series = growth_series(
            m,
            args.growth,
            mode=args.mode,
            budget=args.budget,
            work_limit=args.work_limit,
        )
        print("growth: %s" % ",".join(map(str, series)))
        return EXIT_OK
    result = enumerate_order(
        m, mode=args.mode, budget=args.budget, work_limit=args.work_limit
    )
    if result.status == ENUM_FINITE:
        print("order: %d" % result.order)
        return EXIT_OK
    print(
        "budget exceeded: %d elements, %d work units, longest word %d (%s)"
        % (
            result.elements_seen,
            result.work_used,
            result.max_word_length,
            result.limit,
        )
    )
    return EXIT_LIMIT


def _cmd_decide(args) -> int:
    m = _resolve_machine(args.machine)
    rules = frozenset(CRITERIA_ORDER) | frozenset(TRANSFORM_RULES)
    if args.rules:
        wanted = tuple(token.strip() for token in args.rules.split(",") if token.strip())
        known = set(CRITERIA_ORDER) | set(TRANSFORM_RULES)
        for token in wanted:
            if token not in known:
                raise PreconditionError(
                    "unknown rule %r (known: %s)" % (token, ",".join(sorted(known)))
                )
        rules = frozenset(wanted)
    config = DecideConfig(rules=rules, depth=args.depth, budget=args.budget)
    verdict = decide(m, config)
    print("decision: %s" % verdict.decision)
    print("trace: %s" % (" > ".join(verdict.trace) if verdict.trace else "-"))
    if verdict.detail:
        print("detail: %s" % verdict.detail)
    if verdict.decision == UNKNOWN and args.require_decision:
        return EXIT_UNDECIDED
    return EXIT_OK


def _cmd_census(args) -> int:
    config = CensusConfig(
        decide_depth=args.depth,
        jobs=args.jobs,
        ground_truth_budget=args.budget if args.ground_truth else None,
        ground_truth_work=args.work_limit,
    )
    report = run_census(args.q, args.p, args.filter, config)
    csv = report.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(csv)
    else:
        sys.stdout.write(csv)
    print(
        "census (%d,%d,%s): %d classes in %.2fs"
        % (report.q, report.p, report.filter, report.total(), report.elapsed),
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_fixture(args) -> int:
    if not args.name:
        for name in fixture_names():
            print(name)
        return EXIT_OK
    m = fixture(args.name)
    _emit_machine(m, args.json)
    return EXIT_OK


def _cmd_dot(args) -> int:
    sys.stdout.write(machine_to_dot(_resolve_machine(args.machine)))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mealyfin",
        description="Finiteness analysis for Mealy-automaton (semi)groups.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for randomized utilities (reserved; all commands are deterministic)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_machine(p):
        p.add_argument("machine", help="fixture name, file path, or inline encoding")

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit JSON instead of compact text")

    p = sub.add_parser("classify", help="structural flags, class tag, md-triviality")
    add_machine(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("dual", help="exchange states and letters")
    add_machine(p)
    add_json(p)
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("inverse", help="invert all output functions")
    add_machine(p)
    add_json(p)
    p.set_defaults(func=_cmd_inverse)

    p = sub.add_parser("minimize", help="quotient by behavior equivalence")
    add_machine(p)
    add_json(p)
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("reduce", help="alternate minimization of machine and dual")
    add_machine(p)
    add_json(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("helix", help="helix graph inspection")
    add_machine(p)
    p.add_argument("--n", type=int, default=1, help="state-word length")
    p.add_argument("--k", type=int, default=1, help="letter-word length")
    p.add_argument("--dot", action="store_true", help="emit the graph as DOT")
    p.add_argument(
        "--profile",
        action="store_true",
        help="emit the cycle-structure CSV over a grid of orders",
    )
    p.add_argument("--max-n", type=int, default=3, help="profile grid limit for n")
    p.add_argument("--max-k", type=int, default=3, help="profile grid limit for k")
    p.set_defaults(func=_cmd_helix)

    p = sub.add_parser("order", help="breadth-first (semi)group enumeration")
    add_machine(p)
    p.add_argument("--mode", choices=("semigroup", "group"), default="semigroup")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="element budget")
    p.add_argument(
        "--work-limit",
        type=int,
        default=DEFAULT_WORK_LIMIT,
        help="cap on composition work (product-machine nodes visited)",
    )
    p.add_argument(
        "--growth",
        type=int,
        default=None,
        metavar="N",
        help="print the sphere sizes for word lengths 1..N instead of the order",
    )
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("decide", help="run the decision procedure")
    add_machine(p)
    p.add_argument(
        "--rules",
        default="",
        help="comma-separated rule subset (default: all criteria and transforms)",
    )
    p.add_argument("--depth", type=int, default=3, help="transform recursion depth")
    p.add_argument(
        "--budget",
        type=int,
        default=None,
        help="enable the BFS rule with this element budget",
    )
    p.add_argument(
        "--require-decision",
        action="store_true",
        help="exit nonzero when the verdict is Unknown",
    )
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("census", help="exhaustive census over all classes")
    p.add_argument("--q", type=int, required=True, help="number of states")
    p.add_argument("--p", type=int, required=True, help="number of letters")
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument(
        "--ground-truth",
        action="store_true",
        help="add BFS ground-truth rows (small censuses only)",
    )
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--work-limit", type=int, default=20_000)
    p.add_argument("--out", default=None, help="write the CSV here instead of stdout")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("fixture", help="list fixtures or print one")
    p.add_argument("name", nargs="?", default=None)
    add_json(p)
    p.set_defaults(func=_cmd_fixture)

    p = sub.add_parser("dot", help="emit the machine as DOT")
    add_machine(p)
    p.set_defaults(func=_cmd_dot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print("format error: %s" % exc, file=sys.stderr)
        return EXIT_FORMAT
    except PreconditionError as exc:
        print("precondition violated: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    except SizeLimitError as exc:
        print("size limit: %s" % exc, file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
