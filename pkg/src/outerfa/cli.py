"""Command-line front end.

Every subcommand reads machines in the text format of `fileformat`, runs
one library operation, and emits a line-oriented `key: value` report (or
JSON with --json).  Exit codes classify failures: 2 for unparseable input,
3 for violated preconditions, 4 for exhausted budgets or size ceilings,
and 5 when `equiv` finds a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict

from .core import (
    MalformedAutomaton,
    NotApplicable,
    TwoWayAutomaton,
    accepts_oracle,
    all_words,
    alternating_accepts_oracle,
    classify,
    _normal_form_flags,
)
from .detsim import TooLarge, decide_det, dfa_state_bound, materialize_dfa
from .fileformat import FlavorMismatch, ParseError, parse, serialize
from .graphred import build_segment_graph, gap_decide, oafa_decide, segment_graph_to_dot
from .normalform import NotNormalForm, NotOuter, check_normal_form, normalize_oafa, normalize_onfa
from .reach import build_controller, reach
from .svfa import BudgetExceeded, svfa_decide, svfa_state_accounting

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4
EXIT_MISMATCH = 5

METHODS = ("oracle", "svfa", "divide", "gap", "agap")


def _load(path: str) -> TwoWayAutomaton:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())


def _check_word(automaton: TwoWayAutomaton, word: str) -> str:
    for letter in word:
        if letter not in automaton.alphabet:
            raise NotApplicable(f"letter {letter!r} is not in the machine's alphabet")
    return word


def _emit(pairs: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(pairs, indent=2, default=str))
    else:
        for key, value in pairs.items():
            if isinstance(value, bool):
                value = "true" if value else "false"
            print(f"{key}: {value}")


def _ensure_nondet_normal_form(automaton: TwoWayAutomaton) -> TwoWayAutomaton:
    if automaton.universal:
        raise NotApplicable("this method takes machines without universal states")
    if all(_normal_form_flags(automaton, alternating=False)):
        return automaton
    return normalize_onfa(automaton)


def _ensure_alt_normal_form(automaton: TwoWayAutomaton) -> TwoWayAutomaton:
    if all(_normal_form_flags(automaton, alternating=True)):
        return automaton
    return normalize_oafa(automaton)


def _decide(automaton: TwoWayAutomaton, word: str, method: str, budget: int):
    """Boolean acceptance through one of the decision pipelines."""
    extras: dict = {}
    if method == "oracle":
        if automaton.universal:
            return alternating_accepts_oracle(automaton, word), extras
        return accepts_oracle(automaton, word), extras
    if method == "agap":
        return oafa_decide(_ensure_alt_normal_form(automaton), word), extras
    machine = _ensure_nondet_normal_form(automaton)
    if method == "divide":
        return decide_det(machine, word), extras
    if method == "gap":
        return gap_decide(build_segment_graph(machine, word, alternating=False)), extras
    report = svfa_decide(machine, word, budget=budget)
    extras = {
        "accept_branch_exists": report.verdict_exists_yes,
        "reject_branch_exists": report.verdict_exists_no,
        "dont_know_branches": report.dont_know_count,
        "branches_explored": report.branches_explored,
        "all_halting": report.all_halting,
    }
    return report.verdict_exists_yes, extras


def _cmd_classify(args) -> int:
    report = classify(_load(args.file))
    _emit(asdict(report), args.json)
    return EXIT_OK


def _cmd_run(args) -> int:
    automaton = _load(args.file)
    word = _check_word(automaton, args.word)
    started = time.perf_counter()
    result, extras = _decide(automaton, word, args.method, args.budget)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    _emit({"result": result, **extras, "elapsed_ms": round(elapsed_ms, 3)}, args.json)
    return EXIT_OK


def _cmd_normalize(args) -> int:
    automaton = _load(args.file)
    if args.alternating:
        normalized = normalize_oafa(automaton)
    else:
        normalized = normalize_onfa(automaton)
    report = check_normal_form(normalized, alternating=args.alternating)
    document = serialize(normalized)
    if args.json:
        _emit({"machine": document, "report": asdict(report)}, True)
    else:
        sys.stdout.write(document)
        for key, value in asdict(report).items():
            print(f"# {key}: {value}")
    return EXIT_OK


def _state_id(automaton: TwoWayAutomaton, name: str) -> int:
    try:
        return automaton.state_names.index(name)
    except ValueError:
        raise NotApplicable(f"unknown state {name!r}") from None


def _cmd_reach(args) -> int:
    automaton = _load(args.file)
    word = _check_word(automaton, args.word)
    controller = build_controller(automaton)
    result = reach(automaton, word, _state_id(automaton, args.from_state),
                   _state_id(automaton, args.to_state), controller)
    payload = {"result": result, "controller_states": controller.state_count}
    if args.dump_controller and args.json:
        payload["controller"] = controller.dump()
    _emit(payload, args.json)
    if args.dump_controller and not args.json:
        print(controller.dump())
    return EXIT_OK


def _cmd_segment_graph(args) -> int:
    automaton = _load(args.file)
    word = _check_word(automaton, args.word)
    graph = build_segment_graph(automaton, word)
    dot = segment_graph_to_dot(graph)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(dot)
    payload = {
        "vertices": graph.n,
        "edges": len(graph.edges),
        "edge_list": " ".join(
            f"{graph.state_names[p]}->{graph.state_names[q]}" for (p, q) in sorted(graph.edges)),
    }
    if args.dot:
        payload["dot"] = args.dot
    _emit(payload, args.json)
    return EXIT_OK


def _cmd_complement(args) -> int:
    automaton = _load(args.file)
    word = _check_word(automaton, args.word)
    machine = _ensure_nondet_normal_form(automaton)
    report = svfa_decide(machine, word, budget=args.budget)
    _emit({"result": report.verdict_exists_no}, args.json)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    automaton = _load(args.file)
    normal = all(_normal_form_flags(automaton, alternating=bool(automaton.universal)))
    bound = dfa_state_bound(automaton.n, normal_form=normal)
    accounting = svfa_state_accounting(automaton.n)
    payload = {f"dfa_{k}": v for k, v in asdict(bound).items()}
    payload.update({f"svfa_{k}": v for k, v in asdict(accounting).items()})
    _emit(payload, args.json)
    return EXIT_OK


def _cmd_emit_dfa(args) -> int:
    automaton = _load(args.file)
    machine = _ensure_nondet_normal_form(automaton)
    result = materialize_dfa(machine, max_states=args.max_states)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(serialize(result))
    _emit({"states": result.n, "out": args.out}, args.json)
    return EXIT_OK


def _cmd_equiv(args) -> int:
    left = _load(args.file1)
    right = _load(args.file2)
    if left.alphabet != right.alphabet:
        raise NotApplicable("the two machines use different alphabets")

    def accepts(machine: TwoWayAutomaton, word: str) -> bool:
        if machine.universal:
            return alternating_accepts_oracle(machine, word)
        return accepts_oracle(machine, word)

    for word in all_words(left.alphabet, args.max_len):
        if accepts(left, word) != accepts(right, word):
            _emit({"equivalent": False, "counterexample": word}, args.json)
            return EXIT_MISMATCH
    _emit({"equivalent": True, "max_len": args.max_len}, args.json)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="outerfa",
        description="Toolkit for two-way automata whose choices happen only at the endmarkers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON instead of key: value lines")
        p.set_defaults(func=func)
        return p

    p = add("classify", _cmd_classify, "report where the machine uses choice")
    p.add_argument("file")

    p = add("run", _cmd_run, "decide one word with a chosen method")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--method", choices=METHODS, default="oracle")
    p.add_argument("--budget", type=int, default=10**6)

    p = add("normalize", _cmd_normalize, "convert into the structured normal form")
    p.add_argument("file")
    p.add_argument("--alternating", action="store_true")

    p = add("reach", _cmd_reach, "test for a segment between two states")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--from", dest="from_state", required=True)
    p.add_argument("--to", dest="to_state", required=True)
    p.add_argument("--dump-controller", action="store_true")

    p = add("segment-graph", _cmd_segment_graph, "build the per-word segment graph")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--dot")

    p = add("complement", _cmd_complement, "decide membership in the complement language")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--budget", type=int, default=10**6)

    p = add("bounds", _cmd_bounds, "state-count formulas for this machine's size")
    p.add_argument("file")

    p = add("emit-dfa", _cmd_emit_dfa, "materialize the simulating deterministic machine")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--max-states", type=int, default=10**6)

    p = add("equiv", _cmd_equiv, "brute-force language comparison up to a length")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--max-len", type=int, required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FlavorMismatch, MalformedAutomaton, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BudgetExceeded, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NotOuter, NotNormalForm, NotApplicable, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
