"""Exact simulation of quantum counter machines.

A state vector is a finite map from configurations (state, counter) to
nonzero amplitudes in Q(sqrt2)+i*Q(sqrt2).  Evolution applies the
per-symbol operator U_sigma defined by the transition table, pruning
exact zeros so destructive interference truly removes configurations.
Measurement happens once, after the right endmarker: the accept
probability is the squared norm of the projection onto the accepting
states.  All arithmetic is exact; a square-root component surviving into
a final probability is reported as a hard error, never rounded away.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .amplitudes import AMP_ONE, Amplitude
from .core import (
    SINK,
    CounterMachine,
    MachineClass,
    SimulationError,
    Verdict,
    Violation,
    status_of,
    tape_of,
)

Config = tuple[str, int]
StateVector = dict[Config, Amplitude]


class MeasurementError(SimulationError):
    """A final probability failed an exactness check (bad norm or sqrt2 residue)."""


def _require_quantum(machine: CounterMachine) -> None:
    if machine.mclass is not MachineClass.Q1CA:
        raise SimulationError(
            f"machine {machine.name!r} is classical; use the classical engine"
        )


def initial_vector(machine: CounterMachine) -> StateVector:
    return {(machine.initial, 0): AMP_ONE}


def evolve(machine: CounterMachine, psi: StateVector, symbol: str) -> StateVector:
    """Apply the per-symbol evolution operator; exact zeros are pruned."""
    _require_quantum(machine)
    if symbol not in machine.tape_symbols:
        raise SimulationError(f"symbol {symbol!r} is not on this machine's tape")
    out: StateVector = {}
    for (state, counter), amp in psi.items():
        for target, delta, weight in machine.entries(state, symbol, status_of(counter)):
            key = (target, counter + delta)
            prev = out.get(key)
            out[key] = amp * weight if prev is None else prev + amp * weight
    return {key: amp for key, amp in out.items() if not amp.is_zero()}


def norm_squared(psi: StateVector) -> tuple[Fraction, Fraction]:
    """Squared norm as (rational, sqrt2-coefficient) in Q(sqrt2)."""
    rat = Fraction(0)
    s2 = Fraction(0)
    for amp in psi.values():
        part_rat, part_s2 = amp.abs2()
        rat += part_rat
        s2 += part_s2
    return rat, s2


def measure(machine: CounterMachine, psi: StateVector) -> Verdict:
    """Project the final vector onto accepting states; exact Born rule.

    The machine class observes only the final state, so every counter
    value contributes.  Both the total norm and the accepting mass must
    come out as plain rationals (sqrt2 components cancel for any machine
    whose operators are unitary); a residue is raised, not rounded.
    """
    accept_rat = Fraction(0)
    accept_s2 = Fraction(0)
    total_rat = Fraction(0)
    total_s2 = Fraction(0)
    for (state, _counter), amp in psi.items():
        part_rat, part_s2 = amp.abs2()
        total_rat += part_rat
        total_s2 += part_s2
        if state in machine.accepting:
            accept_rat += part_rat
            accept_s2 += part_s2
    if total_s2 != 0 or total_rat != 1:
        raise MeasurementError(
            f"state vector norm^2 is {total_rat} + {total_s2}*sqrt2, expected exactly 1"
        )
    if accept_s2 != 0:
        raise MeasurementError(
            f"accept probability has sqrt2 residue {accept_s2}; machine is malformed"
        )
    return Verdict(accept=accept_rat, reject=1 - accept_rat)


def run_quantum(machine: CounterMachine, word: str) -> Verdict:
    """Evolve through the framed input, then measure once."""
    _require_quantum(machine)
    psi = initial_vector(machine)
    for symbol in tape_of(word, machine.alphabet):
        psi = evolve(machine, psi, symbol)
    return measure(machine, psi)


PairEntry = tuple[str, Config, Config, Amplitude]


@dataclass(frozen=True)
class UnitarityReport:
    """Orthonormality failures of the per-symbol operators.

    ``isometry_violations`` holds column pairs (source configurations)
    whose images fail orthonormality; ``coisometry_violations`` holds the
    same for rows (target configurations).  Each entry records the symbol,
    the two configurations and the offending inner product (for a pair of
    equal configurations the product should be 1, otherwise 0).
    """

    isometry_violations: tuple[PairEntry, ...] = field(default_factory=tuple)
    coisometry_violations: tuple[PairEntry, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.isometry_violations and not self.coisometry_violations

    def as_violations(self) -> list[Violation]:
        out: list[Violation] = []
        for kind, entries in (
            ("unitary-isometry", self.isometry_violations),
            ("unitary-coisometry", self.coisometry_violations),
        ):
            for symbol, config_a, config_b, product in entries:
                state_a, counter_a = config_a
                key = None
                if kind == "unitary-isometry" and state_a != SINK:
                    key = (state_a, symbol, status_of(counter_a))
                out.append(
                    Violation(
                        kind,
                        f"on {symbol!r}, configurations {config_a} and {config_b} "
                        f"give inner product {product!r}",
                        key,
                    )
                )
        return out


def _gram_violations(
    symbol: str,
    vectors: dict[Config, dict[Config, Amplitude]],
    keys: list[Config],
) -> list[PairEntry]:
    """Orthonormality failures among ``vectors[key]`` for ``key`` in ``keys``.

    Two vectors have a nonzero inner product only if they share a support
    configuration, so the Gram matrix is accumulated through shared-support
    buckets instead of all-pairs products; the result is identical.
    """
    index = {key: i for i, key in enumerate(keys)}
    buckets: dict[Config, list[tuple[Config, Amplitude]]] = {}
    for key in keys:
        for support, amp in vectors.get(key, {}).items():
            buckets.setdefault(support, []).append((key, amp))

    gram: dict[tuple[Config, Config], Amplitude] = {}
    zero = Amplitude()
    for entries in buckets.values():
        for i, (key_a, amp_a) in enumerate(entries):
            conj_a = amp_a.conjugate()
            for key_b, amp_b in entries[i:]:
                # <a|b> with the conjugate on the first argument; pairs are
                # stored with the lower declaration index first.
                if index[key_a] <= index[key_b]:
                    pair, term = (key_a, key_b), conj_a * amp_b
                else:
                    pair, term = (key_b, key_a), amp_b.conjugate() * amp_a
                prev = gram.get(pair)
                gram[pair] = term if prev is None else prev + term

    violations: list[PairEntry] = []
    for key in keys:
        if gram.pop((key, key), zero) != AMP_ONE:
            product = _gram_recompute(vectors.get(key, {}), vectors.get(key, {}))
            violations.append((symbol, key, key, product))
    for (key_a, key_b), product in gram.items():
        if not product.is_zero():
            violations.append((symbol, key_a, key_b, product))
    violations.sort(key=lambda entry: (index[entry[1]], index[entry[2]]))
    return violations


def _gram_recompute(
    vec_a: dict[Config, Amplitude], vec_b: dict[Config, Amplitude]
) -> Amplitude:
    total = Amplitude()
    for key, amp_a in vec_a.items():
        amp_b = vec_b.get(key)
        if amp_b is not None:
            total = total + amp_a.conjugate() * amp_b
    return total


def check_unitarity(machine: CounterMachine) -> UnitarityReport:
    """Check every per-symbol operator on a conclusive finite window.

    Transitions see the counter only through its zero/nonzero status, so
    the operator acts identically on all counter values of the same sign
    away from zero.  Checking column pairs with both counters in
    {-2m..2m} therefore covers every distinct (status, status, offset)
    combination — columns further apart than 2m cannot overlap — and
    likewise for rows.  Columns are built from sources in {-3m..3m} so
    that rows over the window see all of their mass.  The implicit sink
    state takes part like any other state.
    """
    _require_quantum(machine)
    m = machine.max_step
    window = range(-2 * m, 2 * m + 1)
    source_window = range(-3 * m, 3 * m + 1)
    states = list(machine.states)
    if SINK not in states:
        states.append(SINK)

    isometry: list[PairEntry] = []
    coisometry: list[PairEntry] = []
    for symbol in machine.tape_symbols:
        columns: dict[Config, dict[Config, Amplitude]] = {}
        for state in states:
            for counter in source_window:
                column: dict[Config, Amplitude] = {}
                for target, delta, weight in machine.entries(
                    state, symbol, status_of(counter)
                ):
                    key = (target, counter + delta)
                    prev = column.get(key)
                    value = weight if prev is None else prev + weight
                    column[key] = value
                columns[(state, counter)] = {
                    key: amp for key, amp in column.items() if not amp.is_zero()
                }

        window_sources = [
            (state, counter) for state in states for counter in window
        ]
        isometry.extend(_gram_violations(symbol, columns, window_sources))

        rows: dict[Config, dict[Config, Amplitude]] = {}
        for source, column in columns.items():
            for target, amp in column.items():
                if -2 * m <= target[1] <= 2 * m:
                    rows.setdefault(target, {})[source] = amp
        window_targets = [
            (state, counter) for state in states for counter in window
        ]
        coisometry.extend(_gram_violations(symbol, rows, window_targets))

    return UnitarityReport(tuple(isometry), tuple(coisometry))
