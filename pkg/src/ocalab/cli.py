"""Command-line front end.

Commands:

- ``validate <file.cma>``: structural + unitarity validation, "OK" or one
  diagnostic per line.
- ``run <file.cma|zoo-name> --input <word> [--sample --seed <u64>]``:
  exact verdict as lowest-terms rationals, or one sampled outcome.
- ``batch <file.cma|--zoo <name>> --problem <p> --max-n <n> --out <json>``:
  per-instance verdicts plus exact summary aggregates; exit 0 iff the
  machine's claimed bounds (when a zoo machine) hold over the batch.
- ``adversary <fool-xoreq|pump-u1bca|brute> <file.cma|zoo-name> ...``:
  constructive or empirical refutations as JSON.
- ``zoo <list|emit <name> [--out <file>]>``: stable machine registry.

Exit codes: 0 success, 1 I/O error, 2 validation/usage error, 3 search
exhausted without a finding.  JSON output is deterministic (sorted keys)
and all probabilities print as exact "p/q" strings.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import adversary as adversary_mod
from . import zoo as zoo_mod
from .classical import run as run_classical
from .classical import sample_run
from .core import CounterMachine, EngineError, Verdict
from .dsl import ParseError, emit, parse_with_diagnostics
from .problems import get_problem
from .quantum import run_quantum

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_EXHAUSTED = 3


def _fmt(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _verdict_fields(verdict: Verdict) -> dict[str, str]:
    return {
        "accept": _fmt(verdict.accept),
        "reject": _fmt(verdict.reject),
        "dontknow": _fmt(verdict.neutral),
    }


def _print_json(payload: object) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_machine(ref: str) -> tuple[CounterMachine, Optional[zoo_mod.ZooEntry]]:
    """Resolve a machine reference: a .cma path, or failing that a zoo name."""
    path = Path(ref)
    if path.exists():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise _CliError(f"cannot read {ref}: {exc}", EXIT_IO) from exc
        machine, diagnostics = parse_with_diagnostics(text)
        if machine is None:
            lines = "\n".join(str(d) for d in diagnostics)
            raise _CliError(lines, EXIT_INVALID)
        return machine, None
    try:
        entry = zoo_mod.get_entry(ref)
    except KeyError as exc:
        raise _CliError(
            f"{ref}: no such file and no such zoo machine", EXIT_IO
        ) from exc
    return entry.machine, entry


def _run_verdict(machine: CounterMachine, word: str) -> Verdict:
    if machine.mclass.quantum:
        return run_quantum(machine, word)
    return run_classical(machine, word)


def _cmd_validate(args: argparse.Namespace) -> int:
    path = Path(args.file)
    if not path.exists():
        print(f"{args.file}: no such file", file=sys.stderr)
        return EXIT_IO
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    machine, diagnostics = parse_with_diagnostics(text)
    if machine is None:
        for diagnostic in diagnostics:
            print(diagnostic)
        return EXIT_INVALID
    print("OK")
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    machine, _ = _load_machine(args.file)
    if args.sample:
        if machine.mclass.quantum:
            raise _CliError("--sample supports classical machines only", EXIT_INVALID)
        if args.seed is None:
            raise _CliError("--sample requires an explicit --seed", EXIT_INVALID)
        try:
            outcome = sample_run(machine, args.input, seed=args.seed)
        except EngineError as exc:
            raise _CliError(str(exc), EXIT_INVALID) from exc
        print(outcome)
        return EXIT_OK
    try:
        verdict = _run_verdict(machine, args.input)
    except EngineError as exc:
        raise _CliError(str(exc), EXIT_INVALID) from exc
    fields = _verdict_fields(verdict)
    print(f"accept={fields['accept']} reject={fields['reject']} dontknow={fields['dontknow']}")
    return EXIT_OK


def _cmd_batch(args: argparse.Namespace) -> int:
    if (args.file is None) == (args.zoo is None):
        raise _CliError("provide exactly one of <file.cma> or --zoo <name>", EXIT_INVALID)
    if args.zoo is not None:
        try:
            entry: Optional[zoo_mod.ZooEntry] = zoo_mod.get_entry(args.zoo)
        except KeyError as exc:
            raise _CliError(f"unknown zoo machine {args.zoo!r}", EXIT_INVALID) from exc
        machine = entry.machine
    else:
        machine, entry = _load_machine(args.file)
    problem_name = args.problem or (entry.problem if entry else None)
    if problem_name is None:
        raise _CliError("--problem is required for file machines", EXIT_INVALID)
    try:
        problem = get_problem(problem_name)
    except (KeyError, EngineError) as exc:
        raise _CliError(f"unknown problem {problem_name!r}", EXIT_INVALID) from exc

    try:
        instances = problem.generate(args.max_n)
    except (ValueError, EngineError) as exc:
        raise _CliError(str(exc), EXIT_INVALID) from exc

    records = []
    min_yes: Optional[Fraction] = None
    max_no: Optional[Fraction] = None
    max_dontknow = Fraction(0)
    worst: Optional[tuple[str, str]] = None
    try:
        for word, label in instances:
            verdict = _run_verdict(machine, word)
            records.append({"input": word, "label": label, **_verdict_fields(verdict)})
            max_dontknow = max(max_dontknow, verdict.neutral)
            if label == "yes" and (min_yes is None or verdict.accept < min_yes):
                min_yes = verdict.accept
                worst = (word, label)
            if label == "no" and (max_no is None or verdict.accept > max_no):
                max_no = verdict.accept
                if min_yes is None:
                    worst = (word, label)
    except EngineError as exc:
        raise _CliError(str(exc), EXIT_INVALID) from exc

    summary: dict[str, object] = {
        "min_accept_on_yes": None if min_yes is None else _fmt(min_yes),
        "max_accept_on_no": None if max_no is None else _fmt(max_no),
        "max_dontknow": _fmt(max_dontknow),
        "worst_case_instance": None
        if worst is None
        else {"input": worst[0], "label": worst[1]},
    }
    report = {
        "problem": problem_name,
        "machine": machine.name,
        "max_n": args.max_n,
        "instances": records,
        "summary": summary,
    }
    out_path = Path(args.out)
    try:
        out_path.write_text(
            json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
    except OSError as exc:
        raise _CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from exc

    if entry is not None:
        bounds = entry.claimed_bounds
        ok = (
            (min_yes is None or min_yes >= bounds.accept_on_yes_min)
            and (max_no is None or max_no <= bounds.accept_on_no_max)
            and max_dontknow <= bounds.dontknow_max
        )
        if not ok:
            print(
                f"claimed bounds violated for {entry.name}: "
                f"min accept on yes {None if min_yes is None else _fmt(min_yes)}, "
                f"max accept on no {None if max_no is None else _fmt(max_no)}, "
                f"max dontknow {_fmt(max_dontknow)}",
                file=sys.stderr,
            )
            return EXIT_INVALID
    return EXIT_OK


def _cmd_adversary(args: argparse.Namespace) -> int:
    machine, entry = _load_machine(args.file)
    try:
        if args.op == "fool-xoreq":
            pair = adversary_mod.fool_xoreq_d1ca(machine, n=args.max_n or 64)
            payload = dataclasses.asdict(pair)
            payload["collision"] = list(payload["collision"])
            payload["machine"] = machine.name
            _print_json(payload)
            return EXIT_OK
        if args.op == "pump-u1bca":
            refutation = adversary_mod.pump_u1bca(machine)
            payload = dataclasses.asdict(refutation)
            payload["final_config"] = list(payload["final_config"])
            payload["machine"] = machine.name
            _print_json(payload)
            return EXIT_OK
        # brute
        problem_name = args.problem or (entry.problem if entry else None)
        if problem_name is None:
            raise _CliError("brute needs --problem (or a zoo machine)", EXIT_INVALID)
        if args.max_n is None:
            raise _CliError("brute needs --max-n", EXIT_INVALID)
        rule = None
        if entry is not None:
            rule = adversary_mod.bounds_rule(
                entry.claimed_bounds, las_vegas=machine.mclass.las_vegas
            )
        result = adversary_mod.brute_refute(machine, problem_name, args.max_n, rule)
        if result is None:
            print(
                f"no refutation: {machine.name} is consistent with "
                f"{problem_name} up to {args.max_n}"
            )
            return EXIT_EXHAUSTED
        payload = {
            "input": result.word,
            "label": result.label,
            "reason": result.reason,
            "machine": machine.name,
            **_verdict_fields(result.verdict),
        }
        _print_json(payload)
        return EXIT_OK
    except EngineError as exc:
        raise _CliError(str(exc), EXIT_INVALID) from exc


def _cmd_zoo(args: argparse.Namespace) -> int:
    if args.zoo_op == "list":
        for name in zoo_mod.zoo_names():
            entry = zoo_mod.get_entry(name)
            print(f"{name}\t{entry.machine.mclass.tag}\t{entry.problem}")
        return EXIT_OK
    try:
        entry = zoo_mod.get_entry(args.name)
    except KeyError as exc:
        raise _CliError(f"unknown zoo machine {args.name!r}", EXIT_INVALID) from exc
    text = emit(entry.machine)
    if args.out is None:
        print(text, end="")
    else:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise _CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from exc
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ocalab",
        description="Exact simulation laboratory for one-way one-counter machines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate a .cma machine file")
    p_validate.add_argument("file")
    p_validate.set_defaults(func=_cmd_validate)

    p_run = sub.add_parser("run", help="run a machine on one input word")
    p_run.add_argument("file", help=".cma file or zoo machine name")
    p_run.add_argument("--input", required=True)
    p_run.add_argument("--sample", action="store_true", help="draw one outcome")
    p_run.add_argument("--seed", type=int, default=None, help="RNG seed for --sample")
    p_run.set_defaults(func=_cmd_run)

    p_batch = sub.add_parser("batch", help="run a machine over a problem's instances")
    p_batch.add_argument("file", nargs="?", default=None, help=".cma file")
    p_batch.add_argument("--zoo", default=None, help="zoo machine name")
    p_batch.add_argument("--problem", default=None)
    p_batch.add_argument("--max-n", type=int, required=True)
    p_batch.add_argument("--out", required=True, help="report JSON path")
    p_batch.set_defaults(func=_cmd_batch)

    p_adv = sub.add_parser("adversary", help="refutation procedures")
    p_adv.add_argument("op", choices=("fool-xoreq", "pump-u1bca", "brute"))
    p_adv.add_argument("file", help=".cma file or zoo machine name")
    p_adv.add_argument("--problem", default=None)
    p_adv.add_argument("--max-n", type=int, default=None)
    p_adv.set_defaults(func=_cmd_adversary)

    p_zoo = sub.add_parser("zoo", help="machine registry")
    zoo_sub = p_zoo.add_subparsers(dest="zoo_op", required=True)
    zoo_sub.add_parser("list", help="list stable machine names")
    p_emit = zoo_sub.add_parser("emit", help="write a zoo machine as .cma")
    p_emit.add_argument("name")
    p_emit.add_argument("--out", default=None)
    p_zoo.set_defaults(func=_cmd_zoo)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help; normalize.
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
