"""Shared model types for one-way one-counter machines.

A machine reads its input once, left to right, framed by endmarkers: the
tape for input ``w`` is ``LEFT_END + w + RIGHT_END``.  A configuration is a
pair (state, counter) with the counter ranging over all integers.  The only
thing a machine may observe about the counter is its *status*: ``Z`` when
the counter is exactly zero, ``NZ`` otherwise.  Blind machine classes may
not even observe that much: their transition tables are required to be
identical on both statuses.

Transition tables are total by convention rather than by storage: any
(state, symbol, status) triple without an explicit row falls into an
implicit absorbing sink state that loops forever without moving the
counter and never accepts.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .amplitudes import AMP_ONE, Amplitude

LEFT_END = "¢"
RIGHT_END = "$"
ENDMARKERS = (LEFT_END, RIGHT_END)

Z = "Z"
NZ = "NZ"
STATUSES = (Z, NZ)

SINK = "<sink>"

State = str
Symbol = str
Status = str
Weight = Union[Fraction, Amplitude]
TransKey = tuple[State, Symbol, Status]
TransEntry = tuple[State, int, Weight]
TransTable = dict[TransKey, tuple[TransEntry, ...]]


def status_of(counter: int) -> Status:
    """Status of a counter value: ``Z`` iff it is exactly zero."""
    return Z if counter == 0 else NZ


class EngineError(Exception):
    """Base class for everything this package raises on purpose."""


class SimulationError(EngineError):
    """A run could not be carried out (wrong machine class, bad input...)."""


class MachineClass(enum.Enum):
    """The machine classes the laboratory knows how to simulate."""

    D1CA = "d1ca"
    D1BCA = "d1bca"
    P1CA = "p1ca"
    P1BCA = "p1bca"
    N1BCA = "n1bca"
    U1BCA = "u1bca"
    Q1CA = "q1ca"
    LV_P1CA = "lv-p1ca"
    LV_P1BCA = "lv-p1bca"

    @property
    def tag(self) -> str:
        return self.value

    @property
    def blind(self) -> bool:
        """Blind machines accept only with counter zero and cannot branch on status."""
        return self in (
            MachineClass.D1BCA,
            MachineClass.P1BCA,
            MachineClass.N1BCA,
            MachineClass.U1BCA,
            MachineClass.LV_P1BCA,
        )

    @property
    def deterministic(self) -> bool:
        return self in (MachineClass.D1CA, MachineClass.D1BCA)

    @property
    def quantum(self) -> bool:
        return self is MachineClass.Q1CA

    @property
    def las_vegas(self) -> bool:
        return self in (MachineClass.LV_P1CA, MachineClass.LV_P1BCA)

    @property
    def modal(self) -> bool:
        """Classes whose verdict is a yes/no over branch existence, not a probability."""
        return self in (MachineClass.N1BCA, MachineClass.U1BCA)

    @property
    def probabilistic(self) -> bool:
        """Classes whose branch weights are probabilities (summing to one)."""
        return not (self.deterministic or self.quantum)

    @classmethod
    def from_tag(cls, tag: str) -> "MachineClass":
        for mc in cls:
            if mc.value == tag:
                return mc
        raise ValueError(f"unknown machine class tag: {tag!r}")


def _one_for(mclass: MachineClass) -> Weight:
    return AMP_ONE if mclass.quantum else Fraction(1)


@dataclass(frozen=True)
class Verdict:
    """Exact outcome distribution of a run: accept / reject / neutral mass.

    Non-Las-Vegas machines always report zero neutral mass.  For the modal
    classes the fields still sum to one but carry branch mass rather than
    probability; their yes/no reading lives in :func:`ocalab.classical.decide`.
    """

    accept: Fraction
    reject: Fraction
    neutral: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for part in (self.accept, self.reject, self.neutral):
            if not isinstance(part, Fraction):
                raise TypeError("Verdict fields must be exact Fractions")
            if part < 0 or part > 1:
                raise ValueError(f"verdict mass out of range: {part}")
        if self.accept + self.reject + self.neutral != 1:
            raise ValueError(
                "verdict masses must sum to 1, got "
                f"{self.accept} + {self.reject} + {self.neutral}"
            )


@dataclass(frozen=True, eq=False)
class CounterMachine:
    """A one-way one-counter machine of any supported class.

    ``transitions`` maps (state, symbol, status) to a tuple of
    (next_state, counter_delta, weight) branches.  Weights are exact
    ``Fraction`` probabilities for classical machines and exact
    ``Amplitude`` ring elements for quantum ones.  Missing keys mean the
    implicit sink; use :meth:`entries` to read the table totally.
    """

    name: str
    mclass: MachineClass
    alphabet: tuple[Symbol, ...]
    states: tuple[State, ...]
    initial: State
    accepting: frozenset[State]
    transitions: TransTable
    neutral: frozenset[State] = field(default_factory=frozenset)
    max_step: int = 1

    def entries(self, state: State, symbol: Symbol, status: Status) -> tuple[TransEntry, ...]:
        """Total transition lookup; unlisted triples drop into the sink."""
        if state == SINK:
            return ((SINK, 0, _one_for(self.mclass)),)
        row = self.transitions.get((state, symbol, status))
        if row is None:
            return ((SINK, 0, _one_for(self.mclass)),)
        return row

    @property
    def tape_symbols(self) -> tuple[Symbol, ...]:
        return self.alphabet + ENDMARKERS

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CounterMachine):
            return NotImplemented
        return (
            self.name == other.name
            and self.mclass == other.mclass
            and self.alphabet == other.alphabet
            and self.states == other.states
            and self.initial == other.initial
            and self.accepting == other.accepting
            and self.neutral == other.neutral
            and self.max_step == other.max_step
            and self.transitions == other.transitions
        )

    def __hash__(self) -> int:
        return hash((self.name, self.mclass, self.alphabet, self.states))


@dataclass(frozen=True)
class Violation:
    """One well-formedness problem found by :func:`validate_machine`."""

    code: str
    message: str
    key: TransKey | None = None

    def __str__(self) -> str:
        if self.key is None:
            return f"[{self.code}] {self.message}"
        state, symbol, status = self.key
        return f"[{self.code}] ({state}, {symbol}, {status}): {self.message}"


def _check_weight_type(machine: CounterMachine, entry: TransEntry) -> str | None:
    _, _, weight = entry
    if machine.mclass.quantum:
        if not isinstance(weight, Amplitude):
            return "quantum transitions need Amplitude weights"
    else:
        if not isinstance(weight, Fraction):
            return "classical transitions need Fraction weights"
        if weight <= 0 or weight > 1:
            return f"classical weight must lie in (0, 1], got {weight}"
    return None


def validate_machine(machine: CounterMachine, check_unitary: bool = True) -> list[Violation]:
    """Check well-formedness; returns a list of violations (empty == valid).

    Structural checks cover state/symbol membership, counter step bounds,
    per-key weight discipline (single weight-1 branch for deterministic
    classes, exact sum 1 for probabilistic ones), blindness (identical rows
    on both statuses) and the accepting/neutral state sets.  For quantum
    machines, if the table is otherwise sound and ``check_unitary`` is set,
    the per-symbol evolution operators are additionally checked to be
    unitary on a window of counter values wide enough to be conclusive.
    """
    out: list[Violation] = []
    states = set(machine.states)
    symbols = set(machine.alphabet)

    if not machine.states:
        out.append(Violation("states-empty", "machine has no states"))
    if len(states) != len(machine.states):
        out.append(Violation("states-dup", "duplicate state names"))
    if len(symbols) != len(machine.alphabet):
        out.append(Violation("alphabet-dup", "duplicate alphabet symbols"))
    for sym in machine.alphabet:
        if sym in ENDMARKERS:
            out.append(Violation("alphabet-endmarker", f"alphabet may not contain {sym!r}"))
        if not sym:
            out.append(Violation("alphabet-empty-symbol", "empty string is not a symbol"))
    if SINK in states:
        out.append(Violation("states-sink", f"state name {SINK!r} is reserved"))
    if machine.initial not in states:
        out.append(Violation("initial-unknown", f"initial state {machine.initial!r} not in states"))
    for q in machine.accepting:
        if q not in states:
            out.append(Violation("accepting-unknown", f"accepting state {q!r} not in states"))
    for q in machine.neutral:
        if q not in states:
            out.append(Violation("neutral-unknown", f"neutral state {q!r} not in states"))
    if machine.neutral and not machine.mclass.las_vegas:
        out.append(
            Violation(
                "neutral-class",
                f"class {machine.mclass.tag} does not use neutral states",
            )
        )
    if machine.mclass.las_vegas and machine.neutral & machine.accepting:
        out.append(
            Violation("neutral-overlap", "neutral and accepting state sets must be disjoint")
        )
    if machine.max_step < 1:
        out.append(Violation("max-step", f"max_step must be >= 1, got {machine.max_step}"))

    tape = symbols | set(ENDMARKERS)
    structurally_ok = not out

    for key in sorted(machine.transitions):
        state, symbol, status = key
        row = machine.transitions[key]
        if state not in states:
            out.append(Violation("key-state", f"unknown source state {state!r}", key))
        if symbol not in tape:
            out.append(Violation("key-symbol", f"unknown symbol {symbol!r}", key))
        if status not in STATUSES:
            out.append(Violation("key-status", f"status must be Z or NZ, got {status!r}", key))
        if not row:
            out.append(Violation("row-empty", "transition row has no branches", key))
            continue
        seen_targets: set[tuple[State, int]] = set()
        for entry in row:
            target, delta, _weight = entry
            if target not in states:
                out.append(Violation("target-state", f"unknown target state {target!r}", key))
            if abs(delta) > machine.max_step:
                out.append(
                    Violation(
                        "delta-range",
                        f"counter step {delta} exceeds max_step {machine.max_step}",
                        key,
                    )
                )
            problem = _check_weight_type(machine, entry)
            if problem is not None:
                out.append(Violation("weight", problem, key))
            if (target, delta) in seen_targets:
                out.append(
                    Violation(
                        "branch-dup",
                        f"duplicate branch to ({target!r}, {delta:+d})",
                        key,
                    )
                )
            seen_targets.add((target, delta))
        if machine.mclass.deterministic:
            if len(row) != 1:
                out.append(
                    Violation("det-branching", "deterministic machines need exactly one branch", key)
                )
            elif isinstance(row[0][2], Fraction) and row[0][2] != 1:
                out.append(
                    Violation("det-weight", f"deterministic branch weight must be 1, got {row[0][2]}", key)
                )
        elif machine.mclass.probabilistic:
            weights = [w for _, _, w in row if isinstance(w, Fraction)]
            if len(weights) == len(row) and sum(weights) != 1:
                out.append(
                    Violation(
                        "prob-sum",
                        f"branch probabilities must sum to 1, got {sum(weights)}",
                        key,
                    )
                )

    if machine.mclass.blind:
        keys = {(state, symbol) for state, symbol, _ in machine.transitions}
        for state, symbol in sorted(keys):
            z_row = machine.transitions.get((state, symbol, Z))
            nz_row = machine.transitions.get((state, symbol, NZ))
            if z_row != nz_row:
                out.append(
                    Violation(
                        "blind-status",
                        "blind machine must have identical rows for Z and NZ",
                        (state, symbol, Z),
                    )
                )

    if machine.mclass.quantum and check_unitary and structurally_ok and not out:
        from .quantum import check_unitarity

        report = check_unitarity(machine)
        for viol in report.as_violations():
            out.append(viol)

    return out


def require_valid(machine: CounterMachine, check_unitary: bool = True) -> None:
    """Raise :class:`SimulationError` if the machine is not well formed."""
    violations = validate_machine(machine, check_unitary=check_unitary)
    if violations:
        summary = "; ".join(str(v) for v in violations[:5])
        if len(violations) > 5:
            summary += f" (and {len(violations) - 5} more)"
        raise SimulationError(f"machine {machine.name!r} is not well formed: {summary}")


def tape_of(word: Iterable[Symbol] | str, alphabet: Iterable[Symbol]) -> list[Symbol]:
    """Build the framed tape ``[LEFT_END, *word, RIGHT_END]`` for a word.

    Accepts either a plain string (split into characters) or an iterable of
    symbols, and checks every symbol against the alphabet.
    """
    symbols = list(word)
    allowed = set(alphabet)
    for sym in symbols:
        if sym in ENDMARKERS:
            raise SimulationError(f"input may not contain the endmarker {sym!r}")
        if sym not in allowed:
            raise SimulationError(f"input symbol {sym!r} is not in the machine alphabet")
    return [LEFT_END, *symbols, RIGHT_END]


def mass_of(weights: Mapping[State, Fraction], chosen: frozenset[State]) -> Fraction:
    """Total weight carried by a set of states in a state-indexed mapping."""
    return sum((weights[q] for q in weights.keys() & chosen), Fraction(0))
