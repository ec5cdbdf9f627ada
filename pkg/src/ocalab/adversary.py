"""Adversary procedures that refute over-claimed machines.

Three constructive attacks plus an empirical scanner:

- ``analyze_cycle`` / ``sigma_partition``: the single-symbol cycle
  structure of a deterministic machine (entry, period, counter drift).
- ``fool_xoreq_d1ca``: for any deterministic counter machine over
  {0, #}, finds two block-count prefixes the machine cannot tell apart
  and completes them into a yes- and a no-instance of the XOR-EQ promise
  problem on which the machine necessarily answers identically.
- ``pump_u1bca``: for a universal blind machine claimed to accept the
  complement of (a^n b^n)*, either catches it accepting a member of
  (a^n b^n)* outright or pumps a rejecting path's first-block cycle into
  a rejected member of the complement.
- ``brute_refute``: scans a problem's instances in generator order and
  reports the first one where the machine's decision contradicts the
  label under a supplied (or class-default) decision rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .classical import run
from .core import (
    LEFT_END,
    NZ,
    RIGHT_END,
    CounterMachine,
    EngineError,
    SimulationError,
    Verdict,
    status_of,
    tape_of,
)
from .problems import NO, YES, classify_eqstar, classify_xoreq, generate, xoreq_word
from .quantum import run_quantum
from .zoo import ClaimedBounds

Config = tuple[str, int]

__all__ = [
    "BruteResult",
    "CycleProfile",
    "FoolingPair",
    "PumpRefutation",
    "SigmaClass",
    "analyze_cycle",
    "bounds_rule",
    "brute_refute",
    "default_rule",
    "exact_rule",
    "exists_rule",
    "fool_xoreq_d1ca",
    "forall_rule",
    "lv_rule",
    "pump_u1bca",
    "sigma_partition",
    "threshold_rule",
]


def _require_deterministic(machine: CounterMachine) -> None:
    if not machine.mclass.deterministic:
        raise EngineError(
            f"machine {machine.name!r} is {machine.mclass.value}; "
            "this procedure needs a deterministic machine"
        )


def _step_deterministic(machine: CounterMachine, config: Config, symbol: str) -> Config:
    entries = machine.entries(config[0], symbol, status_of(config[1]))
    target, delta, _weight = entries[0]
    return (target, config[1] + delta)


# ---------------------------------------------------------------------------
# Cycle analysis on a single repeated symbol.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleProfile:
    """Eventual cycle of a deterministic machine reading one symbol forever.

    After ``entry_steps`` symbols the machine enters a state cycle of
    length ``period``; each full turn of the cycle shifts the counter by
    exactly ``difference``.  Valid while the counter stays away from
    zero, which ``analyze_cycle`` checks over a 2|Q|-step horizon.
    """

    symbol: str
    start: Config
    entry_steps: int
    period: int
    difference: int
    cycle_states: tuple[str, ...]


def analyze_cycle(machine: CounterMachine, start: Config, symbol: str) -> CycleProfile:
    """Entry point, period and counter drift of the sigma-run from ``start``.

    Raises if the counter reaches zero within 2|Q| steps: then the
    zero/nonzero status interferes and no status-stable cycle is defined.
    """
    _require_deterministic(machine)
    if symbol not in machine.tape_symbols:
        raise SimulationError(f"symbol {symbol!r} is not on this machine's tape")
    horizon = 2 * len(machine.states)
    trail: list[Config] = [start]
    config = start
    for step in range(1, horizon + 1):
        config = _step_deterministic(machine, config, symbol)
        if config[1] == 0:
            raise SimulationError(
                f"counter reached zero at step {step} of the {symbol!r}-run; "
                "cycle profile undefined"
            )
        trail.append(config)

    first_index: dict[str, int] = {}
    entry = period = None
    for i, (state, _) in enumerate(trail):
        if state in first_index:
            entry = first_index[state]
            period = i - entry
            break
        first_index[state] = i
    if entry is None or period is None:  # unreachable: horizon > #states
        raise SimulationError("no state repetition found; horizon too short")

    difference = trail[entry + period][1] - trail[entry][1]
    cycle_states = tuple(state for state, _ in trail[entry : entry + period])

    # Re-simulation invariant: one more full turn of the cycle must
    # return to the same state with the same counter shift.
    check = trail[entry]
    for _ in range(period):
        check = _step_deterministic(machine, check, symbol)
    if check != (trail[entry][0], trail[entry][1] + difference):
        raise SimulationError("cycle re-simulation failed; machine is not deterministic")

    return CycleProfile(
        symbol=symbol,
        start=start,
        entry_steps=entry,
        period=period,
        difference=difference,
        cycle_states=cycle_states,
    )


@dataclass(frozen=True)
class SigmaClass:
    """States that fall into the same sigma-cycle, with its period and drift."""

    cycle: tuple[str, ...]
    period: int
    difference: int
    members: tuple[str, ...]


def sigma_partition(machine: CounterMachine, symbol: str) -> tuple[SigmaClass, ...]:
    """Partition the states by which sigma-cycle they eventually reach.

    Computed under the never-zero counter abstraction (status fixed to
    nonzero), so the per-state map is a plain functional graph; missing
    rows fall into the sink's self-loop like everywhere else.
    """
    _require_deterministic(machine)
    if symbol not in machine.tape_symbols:
        raise SimulationError(f"symbol {symbol!r} is not on this machine's tape")

    def step(state: str) -> tuple[str, int]:
        entries = machine.entries(state, symbol, NZ)
        target, delta, _weight = entries[0]
        return target, delta

    def find_cycle(state: str) -> tuple[str, ...]:
        seen: dict[str, int] = {}
        order: list[str] = []
        while state not in seen:
            seen[state] = len(order)
            order.append(state)
            state, _ = step(state)
        cycle = order[seen[state] :]
        pivot = cycle.index(min(cycle))
        return tuple(cycle[pivot:] + cycle[:pivot])

    classes: dict[tuple[str, ...], list[str]] = {}
    for state in machine.states:
        classes.setdefault(find_cycle(state), []).append(state)

    out = []
    for cycle in sorted(classes):
        difference = sum(step(state)[1] for state in cycle)
        out.append(
            SigmaClass(
                cycle=cycle,
                period=len(cycle),
                difference=difference,
                members=tuple(classes[cycle]),
            )
        )
    return tuple(out)


# ---------------------------------------------------------------------------
# Fooling-pair construction against deterministic machines on XOR-EQ.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FoolingPair:
    """Two XOR-EQ instances with opposite labels the machine cannot separate."""

    word_yes: str
    word_no: str
    prefix_yes: tuple[int, int]
    prefix_no: tuple[int, int]
    collision: Config
    case: str
    suffix: tuple[int, int, int, int, int, int]
    machine_accepts: bool


def _prefix_configs(
    machine: CounterMachine, bound: int
) -> list[tuple[tuple[int, int], Config]]:
    """Configurations after cent 0^a # 0^b #, enumerated by (b, a), even a, b."""
    after_cent = _step_deterministic(machine, (machine.initial, 0), LEFT_END)
    a_configs: list[tuple[int, Config]] = []
    config = after_cent
    for a in range(1, bound + 1):
        config = _step_deterministic(machine, config, "0")
        if a % 2 == 0:
            a_configs.append((a, _step_deterministic(machine, config, "#")))

    rows: dict[int, list[tuple[int, Config]]] = {}
    for a, start in a_configs:
        row: list[tuple[int, Config]] = []
        config = start
        for b in range(1, bound + 1):
            config = _step_deterministic(machine, config, "0")
            if b % 2 == 0:
                row.append((b, _step_deterministic(machine, config, "#")))
        rows[a] = row

    out: list[tuple[tuple[int, int], Config]] = []
    for b in range(2, bound + 1, 2):
        index = b // 2 - 1
        for a in range(2, bound + 1, 2):
            out.append(((a, b), rows[a][index][1]))
    return out


def _complete_case_a_differs(
    prefix_1: tuple[int, int], prefix_2: tuple[int, int], search: int
) -> Optional[tuple[int, int, int, int, int, int]]:
    (a, b), (a2, b2) = prefix_1, prefix_2
    c = a
    for l1 in range(search + 1):
        for l2 in range(search + 1):
            d = (b + b2 + a - a2) // 2 + (l1 - l2)
            if d < 2 or d % 2 or d == b or d == b2:
                continue
            kdiff = -(b - d + (l1 - l2))
            k1, k2 = (kdiff, 0) if kdiff >= 0 else (0, -kdiff)
            return (c, d, k1, k2, l1, l2)
    return None


def _complete_case_a_equal(
    prefix_1: tuple[int, int], prefix_2: tuple[int, int], search: int
) -> Optional[tuple[int, int, int, int, int, int]]:
    (a, b), (a2, b2) = prefix_1, prefix_2
    d = b
    for k1 in range(search + 1):
        for k2 in range(search + 1):
            c = (a + a2 + b - b2) // 2 + (k1 - k2)
            if c < 2 or c % 2 or c == a or c == a2:
                continue
            ldiff = -(a - c + (k1 - k2))
            l1, l2 = (ldiff, 0) if ldiff >= 0 else (0, -ldiff)
            return (c, d, k1, k2, l1, l2)
    return None


def fool_xoreq_d1ca(machine: CounterMachine, n: int = 64) -> FoolingPair:
    """Build two oppositely-labelled XOR-EQ instances the machine conflates.

    Distinct even prefixes 0^a # 0^b # outnumber the machine's reachable
    configurations quadratically, so two of them collide; the shared
    suffix is then chosen so that one completion satisfies exactly one
    block equality (a yes-instance) and the other none (a no-instance).
    The prefix bound grows automatically up to the ceiling ``n``.
    """
    _require_deterministic(machine)
    for symbol in ("0", "#"):
        if symbol not in machine.alphabet:
            raise EngineError(f"machine alphabet lacks {symbol!r}")

    bound = min(8, n)
    collision = None
    while True:
        seen: dict[Config, tuple[int, int]] = {}
        for prefix, config in _prefix_configs(machine, bound):
            if config in seen:
                collision = (seen[config], prefix, config)
                break
            seen[config] = prefix
        if collision is not None:
            break
        if bound >= n:
            raise SimulationError(
                f"no configuration collision among even prefixes up to {n}; "
                "is this really a finite-state counter machine?"
            )
        bound = min(2 * bound, n)

    prefix_1, prefix_2, config = collision
    if prefix_1[0] != prefix_2[0]:
        case = "a differs"
        suffix = _complete_case_a_differs(prefix_1, prefix_2, 2 * bound)
    else:
        case = "a equal"
        suffix = _complete_case_a_equal(prefix_1, prefix_2, 2 * bound)
    if suffix is None:  # unreachable: the search window always contains a fit
        raise SimulationError("no valid suffix found in the search window")

    c, d, k1, k2, l1, l2 = suffix
    word_yes = xoreq_word(prefix_1[0], prefix_1[1], c, d, k1, k2, l1, l2)
    word_no = xoreq_word(prefix_2[0], prefix_2[1], c, d, k1, k2, l1, l2)

    if classify_xoreq(word_yes) != YES or classify_xoreq(word_no) != NO:
        raise SimulationError("constructed pair failed oracle self-verification")
    verdict_yes = run(machine, word_yes)
    verdict_no = run(machine, word_no)
    if verdict_yes != verdict_no:
        raise SimulationError("constructed pair failed verdict self-verification")

    return FoolingPair(
        word_yes=word_yes,
        word_no=word_no,
        prefix_yes=prefix_1,
        prefix_no=prefix_2,
        collision=config,
        case=case,
        suffix=suffix,
        machine_accepts=verdict_yes.accept == 1,
    )


# ---------------------------------------------------------------------------
# Pumping attack against universal blind machines on the complement of EQ*.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PumpRefutation:
    """Evidence that a universal blind machine fails the complement of EQ*.

    ``kind`` is "accepts-member" when the machine accepts the base word
    (a member of (a^n b^n)*, hence outside the claimed language) and
    "pumped-reject" when pumping a rejecting path's first-block cycle
    yields ``witness_word`` outside (a^n b^n)* that the machine rejects.
    """

    kind: str
    base_word: str
    witness_word: str
    repeated_state: str
    pump_gap: int
    final_config: Config
    detail: str


def _first_block_length(word: str) -> int:
    length = 0
    for ch in word:
        if ch != "a":
            break
        length += 1
    return length


def _find_rejecting_path(
    machine: CounterMachine, tape: tuple[str, ...], node_budget: int
) -> Optional[tuple[tuple[int, ...], list[Config]]]:
    """Depth-first search for one path ending outside accept-with-zero."""
    sys_stack: list[tuple[Config, int, tuple[int, ...]]] = [
        ((machine.initial, 0), 0, ())
    ]
    visited = 0
    while sys_stack:
        config, pos, choices = sys_stack.pop()
        visited += 1
        if visited > node_budget:
            raise SimulationError(f"path search exceeded the node budget {node_budget}")
        if pos == len(tape):
            state, counter = config
            if not (state in machine.accepting and counter == 0):
                return choices, _replay(machine, tape, choices)
            continue
        entries = machine.entries(config[0], tape[pos], status_of(config[1]))
        for index in range(len(entries) - 1, -1, -1):
            target, delta, _weight = entries[index]
            sys_stack.append(
                ((target, config[1] + delta), pos + 1, choices + (index,))
            )
    return None


def _replay(
    machine: CounterMachine, tape: tuple[str, ...], choices: tuple[int, ...]
) -> list[Config]:
    trail = [(machine.initial, 0)]
    config = trail[0]
    for symbol, choice in zip(tape, choices):
        entries = machine.entries(config[0], symbol, status_of(config[1]))
        if choice >= len(entries):
            raise SimulationError("replayed path left the transition table")
        target, delta, _weight = entries[choice]
        config = (target, config[1] + delta)
        trail.append(config)
    return trail


def pump_u1bca(
    machine: CounterMachine, word: Optional[str] = None, node_budget: int = 10**6
) -> PumpRefutation:
    """Refute a universal blind machine claimed to accept the complement of EQ*.

    On a member word a^n1 b^n1 ... with n1 > |Q|: if the machine accepts
    it, that acceptance is already a misclassification.  Otherwise some
    path rejects; its first a-block revisits a state, and inserting that
    state cycle once and twice yields two longer first blocks (both words
    now members of the complement) whose replayed final counters differ
    by the cycle's drift — at least one still rejects, so the machine
    rejects a word it claims to accept.
    """
    if machine.mclass.value != "u1bca":
        raise EngineError(
            f"machine {machine.name!r} is {machine.mclass.value}; expected u1bca"
        )
    n_states = len(machine.states)
    if word is None:
        n1 = n_states + 1
        word = "a" * n1 + "b" * n1
    else:
        if not classify_eqstar(word):
            raise EngineError("base word must be a member of (a^n b^n)*")
        n1 = _first_block_length(word)
        if n1 <= n_states:
            raise EngineError("base word's first a-block must exceed the state count")

    verdict = run(machine, word)
    if verdict.accept == 1:
        return PumpRefutation(
            kind="accepts-member",
            base_word=word,
            witness_word=word,
            repeated_state=machine.initial,
            pump_gap=0,
            final_config=(machine.initial, 0),
            detail="machine accepts a member of (a^n b^n)*, which lies outside "
            "the complement it claims to accept",
        )

    tape = tape_of(word, machine.alphabet)
    found = _find_rejecting_path(machine, tape, node_budget)
    if found is None:  # unreachable: accept < 1 means some path rejects
        raise SimulationError("verdict says reject but no rejecting path was found")
    choices, trail = found

    # trail[1 + j] is the configuration after the left endmarker and j a's.
    seen: dict[str, int] = {}
    repeat = None
    for j in range(n1 + 1):
        state = trail[1 + j][0]
        if state in seen:
            repeat = (seen[state], j, state)
            break
        seen[state] = j
    if repeat is None:  # unreachable: n1 exceeds the state count
        raise SimulationError("no repeated state in the first block")
    i, j, state = repeat
    gap = j - i
    segment = choices[1 + i : 1 + j]

    rest_choices = choices[1 + j :]
    base_final = trail[-1]
    candidates = []
    for copies in (1, 2):
        pumped_word = "a" * (n1 + copies * gap) + word[n1:]
        pumped_choices = choices[: 1 + j] + segment * copies + rest_choices
        pumped_trail = _replay(
            machine, tape_of(pumped_word, machine.alphabet), pumped_choices
        )
        candidates.append((pumped_word, pumped_trail[-1]))

    witness = None
    for pumped_word, final in candidates:
        state_f, counter_f = final
        if not (state_f in machine.accepting and counter_f == 0):
            witness = (pumped_word, final)
            break
    if witness is None:  # unreachable: the two pumped counters cannot both be 0
        raise SimulationError("both pumped paths accept; drift analysis violated")

    pumped_word, final = witness
    if classify_eqstar(pumped_word):
        raise SimulationError("pumped word failed oracle self-verification")
    if run(machine, pumped_word).accept == 1:
        raise SimulationError("pumped word failed engine self-verification")

    return PumpRefutation(
        kind="pumped-reject",
        base_word=word,
        witness_word=pumped_word,
        repeated_state=state,
        pump_gap=gap,
        final_config=final,
        detail="a rejecting path pumped through the first-block cycle rejects "
        "a member of the complement of (a^n b^n)*",
    )


# ---------------------------------------------------------------------------
# Brute-force empirical refuter.
# ---------------------------------------------------------------------------

Rule = Callable[[str, Verdict], Optional[str]]


def exact_rule() -> Rule:
    """Zero-error rule: accept probability must be exactly 1 on yes, 0 on no."""

    def rule(label: str, verdict: Verdict) -> Optional[str]:
        if label == YES and verdict.accept != 1:
            return f"expected accept=1 on a yes-instance, got {verdict.accept}"
        if label == NO and verdict.accept != 0:
            return f"expected accept=0 on a no-instance, got {verdict.accept}"
        return None

    return rule


def threshold_rule(theta: Fraction = Fraction(1, 2)) -> Rule:
    """Cut rule: decide yes exactly when accept probability exceeds theta."""

    def rule(label: str, verdict: Verdict) -> Optional[str]:
        decided_yes = verdict.accept > theta
        if label == YES and not decided_yes:
            return f"accept {verdict.accept} <= {theta} on a yes-instance"
        if label == NO and decided_yes:
            return f"accept {verdict.accept} > {theta} on a no-instance"
        return None

    return rule


def exists_rule() -> Rule:
    """Nondeterministic mode: yes iff any accepting path exists."""

    def rule(label: str, verdict: Verdict) -> Optional[str]:
        decided_yes = verdict.accept > 0
        if label == YES and not decided_yes:
            return "no accepting path on a yes-instance"
        if label == NO and decided_yes:
            return f"accepting path (mass {verdict.accept}) on a no-instance"
        return None

    return rule


def forall_rule() -> Rule:
    """Universal mode: yes iff every path accepts."""

    def rule(label: str, verdict: Verdict) -> Optional[str]:
        decided_yes = verdict.accept == 1
        if label == YES and not decided_yes:
            return f"rejecting path (accept mass {verdict.accept}) on a yes-instance"
        if label == NO and decided_yes:
            return "all paths accept on a no-instance"
        return None

    return rule


def lv_rule() -> Rule:
    """Las Vegas soundness: never accept a no-instance or reject a yes-instance."""

    def rule(label: str, verdict: Verdict) -> Optional[str]:
        if verdict.accept > 0 and verdict.reject > 0:
            return "both accept and reject have positive probability"
        if label == YES and verdict.reject > 0:
            return f"reject probability {verdict.reject} on a yes-instance"
        if label == NO and verdict.accept > 0:
            return f"accept probability {verdict.accept} on a no-instance"
        return None

    return rule


def bounds_rule(bounds: ClaimedBounds, las_vegas: bool = False) -> Rule:
    """Hold a machine to its claimed exact bounds (plus LV soundness)."""

    def rule(label: str, verdict: Verdict) -> Optional[str]:
        if verdict.neutral > bounds.dontknow_max:
            return (
                f"dontknow {verdict.neutral} exceeds bound {bounds.dontknow_max}"
            )
        if las_vegas and verdict.accept > 0 and verdict.reject > 0:
            return "both accept and reject have positive probability"
        if label == YES:
            if verdict.accept < bounds.accept_on_yes_min:
                return (
                    f"accept {verdict.accept} below claimed yes-bound "
                    f"{bounds.accept_on_yes_min}"
                )
            if las_vegas and verdict.reject > 0:
                return f"reject probability {verdict.reject} on a yes-instance"
        if label == NO:
            if verdict.accept > bounds.accept_on_no_max:
                return (
                    f"accept {verdict.accept} above claimed no-bound "
                    f"{bounds.accept_on_no_max}"
                )
        return None

    return rule


def default_rule(machine: CounterMachine) -> Rule:
    """The natural decision rule for the machine's class."""
    mclass = machine.mclass
    if mclass.deterministic or mclass.quantum:
        return exact_rule()
    if mclass.las_vegas:
        return lv_rule()
    if mclass.value == "n1bca":
        return exists_rule()
    if mclass.value == "u1bca":
        return forall_rule()
    return threshold_rule()


@dataclass(frozen=True)
class BruteResult:
    """First instance on which the machine's decision contradicts the label."""

    word: str
    label: str
    verdict: Verdict
    reason: str


def brute_refute(
    machine: CounterMachine,
    problem: str,
    n: int,
    rule: Optional[Rule] = None,
) -> Optional[BruteResult]:
    """Scan generate(problem, n) in order; first contradiction or None."""
    if rule is None:
        rule = default_rule(machine)
    engine = run_quantum if machine.mclass.quantum else run
    for word, label in generate(problem, n):
        verdict = engine(machine, word)
        reason = rule(label, verdict)
        if reason is not None:
            return BruteResult(word=word, label=label, verdict=verdict, reason=reason)
    return None
