"""Exact forward simulation of the classical machine classes.

The engine pushes a finite rational distribution over configurations
(state, counter) through the framed input one symbol at a time.  Weights
are exact ``Fraction`` values, merged additively when paths meet, so the
final accept/reject/neutral masses are exact — no path enumeration and no
floating point.  The same propagation serves the deterministic,
probabilistic, Las Vegas and modal (existential / universal) classes;
only the reading of the final distribution differs.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CounterMachine,
    MachineClass,
    SimulationError,
    Verdict,
    status_of,
    tape_of,
)

Config = tuple[str, int]
ConfigDistribution = dict[Config, Fraction]


def initial_distribution(machine: CounterMachine) -> ConfigDistribution:
    """Point mass on (initial state, counter 0)."""
    return {(machine.initial, 0): Fraction(1)}


def _require_classical(machine: CounterMachine) -> None:
    if machine.mclass.quantum:
        raise SimulationError(
            f"machine {machine.name!r} is quantum; use the quantum engine"
        )


def step(
    machine: CounterMachine, dist: ConfigDistribution, symbol: str
) -> ConfigDistribution:
    """One exact evolution step of the distribution on one tape symbol."""
    _require_classical(machine)
    if symbol not in machine.tape_symbols:
        raise SimulationError(f"symbol {symbol!r} is not on this machine's tape")
    out: ConfigDistribution = {}
    for (state, counter), mass in dist.items():
        for target, delta, weight in machine.entries(state, symbol, status_of(counter)):
            key = (target, counter + delta)
            prev = out.get(key)
            out[key] = mass * weight if prev is None else prev + mass * weight
    return out


def verdict_of(machine: CounterMachine, dist: ConfigDistribution) -> Verdict:
    """Read the final distribution under the machine class's acceptance rule.

    Non-blind classes accept on the final state alone; blind classes
    additionally require counter zero (for both the accepting and the
    neutral outcome), with everything else rejecting.
    """
    blind = machine.mclass.blind
    las_vegas = machine.mclass.las_vegas
    accept = Fraction(0)
    neutral = Fraction(0)
    total = Fraction(0)
    for (state, counter), mass in dist.items():
        total += mass
        if state in machine.accepting and (not blind or counter == 0):
            accept += mass
        elif las_vegas and state in machine.neutral and (not blind or counter == 0):
            neutral += mass
    return Verdict(accept=accept, reject=total - accept - neutral, neutral=neutral)


@dataclass(frozen=True)
class RunTrace:
    """Outcome of a run, optionally keeping every intermediate distribution."""

    verdict: Verdict
    steps: int
    final: ConfigDistribution
    distributions: tuple[ConfigDistribution, ...] | None = None


def run_trace(
    machine: CounterMachine, word: str, keep_distributions: bool = False
) -> RunTrace:
    """Run on the framed input and keep the evolution details."""
    _require_classical(machine)
    dist = initial_distribution(machine)
    kept: list[ConfigDistribution] | None = [] if keep_distributions else None
    tape = tape_of(word, machine.alphabet)
    for symbol in tape:
        dist = step(machine, dist, symbol)
        if kept is not None:
            kept.append(dist)
    return RunTrace(
        verdict=verdict_of(machine, dist),
        steps=len(tape),
        final=dist,
        distributions=tuple(kept) if kept is not None else None,
    )


def run(machine: CounterMachine, word: str) -> Verdict:
    """Exact accept/reject/neutral masses of a run over the framed input."""
    return run_trace(machine, word).verdict


def decide_mode(machine: CounterMachine, word: str) -> bool:
    """Yes/no reading for the modal classes.

    Existential machines accept when any branch accepts (positive accept
    mass); universal machines accept only when every branch does (accept
    mass exactly 1).
    """
    if machine.mclass is MachineClass.N1BCA:
        return run(machine, word).accept > 0
    if machine.mclass is MachineClass.U1BCA:
        return run(machine, word).accept == 1
    raise SimulationError(
        f"decide_mode needs an existential or universal machine, got {machine.mclass.tag}"
    )


def sample_run(machine: CounterMachine, word: str, seed: int) -> str:
    """Draw one random path; returns "accept", "reject" or "dontknow".

    Sampling is exact: every branch point draws an integer below the common
    denominator of the branch weights, so the sampled path distribution
    matches the exact engine for any fixed-seed reproducible run.
    Deterministic machines are allowed (there is one path); quantum
    machines are not, since a single path has no outcome probability.
    """
    _require_classical(machine)
    rng = random.Random(seed)
    state, counter = machine.initial, 0
    for symbol in tape_of(word, machine.alphabet):
        row = machine.entries(state, symbol, status_of(counter))
        if len(row) == 1:
            target, delta, _ = row[0]
        else:
            weights = [w for _, _, w in row]
            denom = math.lcm(*(w.denominator for w in weights))
            draw = rng.randrange(denom)
            acc = 0
            target, delta = row[-1][0], row[-1][1]
            for branch_target, branch_delta, weight in row:
                acc += weight.numerator * (denom // weight.denominator)
                if draw < acc:
                    target, delta = branch_target, branch_delta
                    break
        state, counter = target, counter + delta
    blind = machine.mclass.blind
    if state in machine.accepting and (not blind or counter == 0):
        return "accept"
    if (
        machine.mclass.las_vegas
        and state in machine.neutral
        and (not blind or counter == 0)
    ):
        return "dontknow"
    return "reject"
