"""Factory zoo of concrete counter machines with claimed bounds.

Each factory builds one machine family from scratch as an explicit
transition table; ``get_entry`` resolves stable (possibly parametrized)
names to a machine bundled with the promise problem it targets and the
exact probability bounds it claims there.  The acceptance suite holds
every entry to its claimed bounds.
"""
from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass
from fractions import Fraction

from .amplitudes import AMP_HALF, AMP_INV_SQRT2, AMP_ONE
from .core import (
    LEFT_END,
    NZ,
    RIGHT_END,
    Z,
    CounterMachine,
    EngineError,
    MachineClass,
    TransEntry,
    TransTable,
)

__all__ = [
    "ClaimedBounds",
    "ZooEntry",
    "as_quantum",
    "build_eq3_p1bca",
    "build_eqstar_complement_d1ca",
    "build_eqstar_p1bca",
    "build_l_p1ca",
    "build_m1",
    "build_m2",
    "build_onenone_lv",
    "build_onenone_lv_t",
    "build_xoreq_q1ca",
    "get_entry",
    "list_entries",
    "zoo_names",
]


@dataclass(frozen=True)
class ClaimedBounds:
    """Exact probability bounds a machine claims on its problem.

    ``accept_on_yes_min`` lower-bounds the accept probability on every
    yes-instance, ``accept_on_no_max`` upper-bounds it on every
    no-instance, and ``dontknow_max`` upper-bounds the neutral mass on
    both sides.
    """

    accept_on_yes_min: Fraction
    accept_on_no_max: Fraction
    dontknow_max: Fraction


@dataclass(frozen=True)
class ZooEntry:
    """A named machine, the problem it targets, and its claimed bounds."""

    name: str
    machine: CounterMachine
    problem: str
    claimed_bounds: ClaimedBounds
    note: str


def _both(
    table: TransTable, state: str, symbol: str, entries: tuple[TransEntry, ...]
) -> None:
    # Identical rows under both counter statuses.
    table[(state, symbol, Z)] = entries
    table[(state, symbol, NZ)] = entries


# ---------------------------------------------------------------------------
# M1 / M2: deterministic single-comparison machines over {0, #}.
#
# Inputs of interest have eight 0-blocks separated by seven #:
# blocks 1..8 are read in phases 1..8.  M1 compares blocks 1 and 3 by
# counting +1 per 0 in phase 1 and -1 in phase 3; at the third # it reads
# the counter status (zero iff the blocks matched) into its track bit,
# then adds the phase-5 block and subtracts the phase-6 block with a sign
# keyed to that bit.  M2 does the same for blocks 2 and 4 with the
# phase-7/8 blocks.  Both start on track "q"; the primed builders start
# on track "p", which inverts the final answer.
# ---------------------------------------------------------------------------


def _build_comparator(name: str, *, use_m2_layout: bool, initial: str) -> CounterMachine:
    states = tuple(f"q{i}" for i in range(1, 9)) + tuple(f"p{i}" for i in range(1, 9))
    table: TransTable = {}
    if use_m2_layout:
        plus_phase, minus_phase, decide_phase = 2, 4, 4
        keyed = {7: {"q": -1, "p": +1}, 8: {"q": +1, "p": -1}}
    else:
        plus_phase, minus_phase, decide_phase = 1, 3, 3
        keyed = {5: {"q": -1, "p": +1}, 6: {"q": +1, "p": -1}}

    for track in ("q", "p"):
        for phase in range(1, 9):
            state = f"{track}{phase}"
            if phase == plus_phase:
                delta = +1
            elif phase == minus_phase:
                delta = -1
            else:
                delta = keyed.get(phase, {}).get(track, 0)
            _both(table, state, "0", ((state, delta, Fraction(1)),))
            _both(table, state, LEFT_END, ((state, 0, Fraction(1)),))
            _both(table, state, RIGHT_END, ((state, 0, Fraction(1)),))
            nxt = 1 if phase == 8 else phase + 1
            if phase == decide_phase:
                flipped = "p" if track == "q" else "q"
                table[(state, "#", Z)] = ((f"{track}{nxt}", 0, Fraction(1)),)
                table[(state, "#", NZ)] = ((f"{flipped}{nxt}", 0, Fraction(1)),)
            else:
                _both(table, state, "#", ((f"{track}{nxt}", 0, Fraction(1)),))

    return CounterMachine(
        name=name,
        mclass=MachineClass.D1CA,
        alphabet=("0", "#"),
        states=states,
        initial=initial,
        accepting=frozenset({"q8"}),
        transitions=table,
        max_step=1,
    )


def build_m1(*, primed: bool = False) -> CounterMachine:
    """Deterministic comparator of 0-blocks 1 and 3 (counter bias: blocks 5-6).

    Accepts exactly the well-formed eight-block inputs whose first and
    third blocks have equal length; starting primed inverts the answer.
    On promise instances its final counter equals the shared promise
    value, matching :func:`build_m2`.
    """
    name = "m1-primed" if primed else "m1"
    return _build_comparator(name, use_m2_layout=False, initial="p1" if primed else "q1")


def build_m2(*, primed: bool = False) -> CounterMachine:
    """Deterministic comparator of 0-blocks 2 and 4 (counter bias: blocks 7-8)."""
    name = "m2-primed" if primed else "m2"
    return _build_comparator(name, use_m2_layout=True, initial="p1" if primed else "q1")


def as_quantum(machine: CounterMachine) -> CounterMachine:
    """Reinterpret a deterministic machine as a quantum one, weight 1 per edge.

    Only meaningful when the table is a reversible permutation of
    configurations (validate/check_unitarity will flag anything else).
    """
    if not machine.mclass.deterministic:
        raise EngineError(
            f"machine {machine.name!r} is not deterministic; cannot lift weights"
        )
    table: TransTable = {}
    for key, row in machine.transitions.items():
        table[key] = tuple((target, delta, AMP_ONE) for target, delta, _ in row)
    return dataclasses.replace(
        machine,
        name=machine.name + "-q",
        mclass=MachineClass.Q1CA,
        transitions=table,
    )


# ---------------------------------------------------------------------------
# xoreq-q1ca: exact quantum machine for the XOR-EQ promise problem.
#
# Architecture: the left endmarker seeds an equal superposition of two
# branches (amplitudes ±1/2 over branch × track).  Branch 1's counter
# accumulates the first comparison's promise quantity, branch 2's the
# second, so on promise instances both branches reach the right endmarker
# at the same counter value.  Both branches carry the same two mod-M
# registers (r for blocks 1/3, l for blocks 2/4); identical bookkeeping on
# both branches keeps the branches interferable.  Each branch flips its
# track qubit at its decision # iff its register reads zero, i.e. iff its
# block pair matched (exactly, whenever unequal compared blocks differ by
# a non-multiple of M; with even block lengths the first aliased
# difference is 2M).  The right endmarker interferes the branches: the
# accept amplitude is proportional to the difference of the two flip
# signs, so exactly the XOR of the two equalities is accepted, with
# probability exactly 1 or 0.
# ---------------------------------------------------------------------------


def _xoreq_run_state(branch: int, track: str, phase: int, r: int, l: int) -> str:
    return f"b{branch}{track}{phase}_r{r}_l{l}"


def _xoreq_final_state(kind: str, track: str, r: int, l: int) -> str:
    return f"{kind}{track}_r{r}_l{l}"


def build_xoreq_q1ca(modulus: int = 5) -> CounterMachine:
    """Exact quantum machine for XOR-EQ on blocks that differ by < 2·modulus.

    ``modulus`` must be odd and at least 3: compared blocks are even, so
    an odd modulus first aliases an unequal pair at difference 2·modulus,
    giving exact verdicts on every promise instance whose compared blocks
    differ by less than that (the default covers all blocks up to length
    8 apart, far beyond the desk-scale grid).
    """
    if modulus < 3 or modulus % 2 == 0:
        raise ValueError("modulus must be odd and >= 3")
    mod = modulus
    residues = range(mod)

    run_states = [
        _xoreq_run_state(branch, track, phase, r, l)
        for branch in (1, 2)
        for track in ("u", "p")
        for phase in range(1, 9)
        for r in residues
        for l in residues
    ]
    final_states = [
        _xoreq_final_state(kind, track, r, l)
        for kind in ("acc", "rej")
        for track in ("u", "p")
        for r in residues
        for l in residues
    ]
    states = ("q0", *run_states, *final_states)
    accepting = frozenset(
        _xoreq_final_state("acc", track, r, l)
        for track in ("u", "p")
        for r in residues
        for l in residues
    )

    table: TransTable = {}
    half, minus_half = AMP_HALF, -AMP_HALF
    isq, minus_isq = AMP_INV_SQRT2, -AMP_INV_SQRT2

    # Left endmarker: orthonormal 5x5 block seeding branch x track from q0;
    # the remaining columns complete the block unitarily and are never
    # reached on well-formed runs.
    seed_a = _xoreq_run_state(1, "u", 1, 0, 0)
    seed_b = _xoreq_run_state(1, "p", 1, 0, 0)
    seed_c = _xoreq_run_state(2, "u", 1, 0, 0)
    seed_d = _xoreq_run_state(2, "p", 1, 0, 0)
    seed_block = {
        "q0": ((seed_a, half), (seed_b, minus_half), (seed_c, half), (seed_d, minus_half)),
        seed_a: ((seed_a, half), (seed_b, half), (seed_c, half), (seed_d, half)),
        seed_b: ((seed_a, half), (seed_b, minus_half), (seed_c, minus_half), (seed_d, half)),
        seed_c: ((seed_a, half), (seed_b, half), (seed_c, minus_half), (seed_d, minus_half)),
        seed_d: (("q0", AMP_ONE),),
    }
    for state in states:
        row = seed_block.get(state)
        if row is None:
            _both(table, state, LEFT_END, ((state, 0, AMP_ONE),))
        else:
            _both(table, state, LEFT_END, tuple((t, 0, a) for t, a in row))

    for branch in (1, 2):
        for track in ("u", "p"):
            for phase in range(1, 9):
                for r in residues:
                    for l in residues:
                        state = _xoreq_run_state(branch, track, phase, r, l)

                        # '0': registers advance identically on both
                        # branches; the counter advances on this branch's
                        # own blocks only.
                        r2, l2 = r, l
                        if phase == 1:
                            r2 = (r + 1) % mod
                        elif phase == 2:
                            l2 = (l + 1) % mod
                        elif phase == 3:
                            r2 = (r - 1) % mod
                        elif phase == 4:
                            l2 = (l - 1) % mod
                        delta = 0
                        if branch == 1:
                            if phase == 1:
                                delta = +1
                            elif phase == 3:
                                delta = -1
                            elif phase == 5:
                                delta = +1 if r != 0 else -1
                            elif phase == 6:
                                delta = -1 if r != 0 else +1
                        else:
                            if phase == 2:
                                delta = +1
                            elif phase == 4:
                                delta = -1
                            elif phase == 7:
                                delta = +1 if l != 0 else -1
                            elif phase == 8:
                                delta = -1 if l != 0 else +1
                        target = _xoreq_run_state(branch, track, phase, r2, l2)
                        _both(table, state, "0", ((target, delta, AMP_ONE),))

                        # '#': advance the phase; at this branch's decision
                        # boundary, flip the track iff the register is zero
                        # (i.e. the compared blocks matched).
                        nxt = 1 if phase == 8 else phase + 1
                        flip = (branch == 1 and phase == 3 and r == 0) or (
                            branch == 2 and phase == 4 and l == 0
                        )
                        track2 = ("p" if track == "u" else "u") if flip else track
                        target = _xoreq_run_state(branch, track2, nxt, r, l)
                        _both(table, state, "#", ((target, 0, AMP_ONE),))

                        # '$': phases 1..7 idle; phase 8 interferes the two
                        # branches into accept/reject states.
                        if phase != 8:
                            _both(table, state, RIGHT_END, ((state, 0, AMP_ONE),))

    for track in ("u", "p"):
        for r in residues:
            for l in residues:
                out1 = _xoreq_run_state(1, track, 8, r, l)
                out2 = _xoreq_run_state(2, track, 8, r, l)
                acc = _xoreq_final_state("acc", track, r, l)
                rej = _xoreq_final_state("rej", track, r, l)
                _both(table, out1, RIGHT_END, ((rej, 0, isq), (acc, 0, isq)))
                _both(table, out2, RIGHT_END, ((rej, 0, isq), (acc, 0, minus_isq)))
                _both(table, acc, RIGHT_END, ((out1, 0, isq), (out2, 0, minus_isq)))
                _both(table, rej, RIGHT_END, ((out1, 0, isq), (out2, 0, isq)))

    for state in ("q0", *final_states):
        _both(table, state, "0", ((state, 0, AMP_ONE),))
        _both(table, state, "#", ((state, 0, AMP_ONE),))
    _both(table, "q0", RIGHT_END, (("q0", 0, AMP_ONE),))

    name = "xoreq-q1ca" if mod == 5 else f"xoreq-q1ca-mod{mod}"
    return CounterMachine(
        name=name,
        mclass=MachineClass.Q1CA,
        alphabet=("0", "#"),
        states=states,
        initial="q0",
        accepting=accepting,
        transitions=table,
        max_step=1,
    )


# ---------------------------------------------------------------------------
# onenone-lv: Las Vegas machine for the ONE/NONE block-pattern problem.
#
# At each block it samples one of the three letter pairs uniformly and
# compares their counts with the counter; a zero counter at the block's
# first d means the sampled pair matched.  In an odd block a match proves
# the yes-pattern (the promise makes any matched pair in an odd block a
# witness), in an even block the no-pattern; a non-match drains the
# counter during the d-run and passes to the next block undecided.  Each
# block decides with probability exactly 1/3, independently, and never
# wrongly, so over t pairs the machine answers with probability
# 1-(2/3)^t and otherwise says dontknow (neutral state ``edone``).
# ---------------------------------------------------------------------------

_PAIRS = (("a", "b"), ("b", "c"), ("c", "a"))


def _pair_name(pair: tuple[str, str]) -> str:
    return pair[0] + pair[1]


def build_onenone_lv() -> CounterMachine:
    third = Fraction(1, 3)
    one = Fraction(1)
    states = ["start"]
    for parity in ("o", "e"):
        for pair in _PAIRS:
            for sign in ("p", "m"):
                states.append(f"{parity}cmp_{_pair_name(pair)}_{sign}")
        for sign in ("p", "m"):
            states.append(f"{parity}drain_{sign}")
        states.append(f"{parity}done")
    states += ["acc", "rej"]

    table: TransTable = {}

    def split_row(parity: str, symbol: str) -> tuple[TransEntry, ...]:
        # Uniform choice of comparison pair entering a block whose first
        # letter is `symbol`; the letter's counter effect is applied here.
        out = []
        for pair in _PAIRS:
            delta = (symbol == pair[0]) - (symbol == pair[1])
            sign = "p" if delta >= 0 else "m"
            out.append((f"{parity}cmp_{_pair_name(pair)}_{sign}", delta, third))
        return tuple(out)

    _both(table, "start", LEFT_END, (("start", 0, one),))
    for symbol in "abc":
        table[("start", symbol, Z)] = split_row("o", symbol)

    for parity in ("o", "e"):
        decided, drained = ("acc", "odrain") if parity == "o" else ("rej", "edrain")
        for pair in _PAIRS:
            for sign in ("p", "m"):
                state = f"{parity}cmp_{_pair_name(pair)}_{sign}"
                for symbol in "abc":
                    delta = (symbol == pair[0]) - (symbol == pair[1])
                    if delta == 0:
                        table[(state, symbol, Z)] = ((state, 0, one),)
                        table[(state, symbol, NZ)] = ((state, 0, one),)
                    else:
                        # The counter cannot change sign without passing
                        # through zero, so the sign tag only updates at Z.
                        sign_z = "p" if delta > 0 else "m"
                        table[(state, symbol, Z)] = (
                            (f"{parity}cmp_{_pair_name(pair)}_{sign_z}", delta, one),
                        )
                        table[(state, symbol, NZ)] = ((state, delta, one),)
                table[(state, "d", Z)] = ((decided, 0, one),)
                away = -1 if sign == "p" else +1
                table[(state, "d", NZ)] = ((f"{drained}_{sign}", away, one),)

        for sign in ("p", "m"):
            state = f"{drained}_{sign}"
            away = -1 if sign == "p" else +1
            table[(state, "d", NZ)] = ((state, away, one),)
            table[(state, "d", Z)] = ((f"{parity}done", 0, one),)
            table[(state, RIGHT_END, Z)] = ((f"{parity}done", 0, one),)
            # The drain can end exactly at the block boundary; entering the
            # next block behaves like the parity's done state.
            next_parity = "e" if parity == "o" else "o"
            for symbol in "abc":
                table[(state, symbol, Z)] = split_row(next_parity, symbol)

        done = f"{parity}done"
        _both(table, done, "d", ((done, 0, one),))
        _both(table, done, RIGHT_END, ((done, 0, one),))
        _both(table, done, LEFT_END, ((done, 0, one),))
        next_parity = "e" if parity == "o" else "o"
        for symbol in "abc":
            table[(done, symbol, Z)] = split_row(next_parity, symbol)

    for state in ("acc", "rej"):
        for symbol in ("a", "b", "c", "d", LEFT_END, RIGHT_END):
            _both(table, state, symbol, ((state, 0, one),))

    return CounterMachine(
        name="onenone-lv",
        mclass=MachineClass.LV_P1CA,
        alphabet=("a", "b", "c", "d"),
        states=tuple(states),
        initial="start",
        accepting=frozenset({"acc"}),
        transitions=table,
        neutral=frozenset({"edone"}),
        max_step=1,
    )


def build_onenone_lv_t(t: int) -> CounterMachine:
    """The same machine, named for the t-pair slice of the problem."""
    if t < 1:
        raise ValueError("t must be >= 1")
    machine = build_onenone_lv()
    if t == 1:
        return machine
    return dataclasses.replace(machine, name=f"onenone-lv-t{t}")


# ---------------------------------------------------------------------------
# eq-star-p1bca: blind probabilistic machine for EQ* = { a^n b^n }*.
# ---------------------------------------------------------------------------


def build_eqstar_p1bca(k: int) -> CounterMachine:
    """Blind k-branch verifier: members accept with 1, others with <= 1/k.

    Each branch scales the current block comparison by its own secret
    coefficient; a member zeroes every branch's counter, while a length
    mismatch survives as a nonzero counter in all but at most one branch.
    The bound is attained (exactly 1/k) on the family a^1 b^2 a^2 b^1.
    """
    if not 2 <= k <= 9:
        raise ValueError("k must be in 2..9")
    kth = Fraction(1, k)
    one = Fraction(1)
    a_states = tuple(f"a{i}" for i in range(1, k + 1))
    b_states = tuple(f"b{i}" for i in range(1, k + 1))
    split = tuple((f"a{i}", i, kth) for i in range(1, k + 1))

    table: TransTable = {}
    _both(table, "start", LEFT_END, (("start", 0, one),))
    _both(table, "start", "a", split)
    _both(table, "start", RIGHT_END, (("start", 0, one),))
    for i in range(1, k + 1):
        _both(table, f"a{i}", "a", ((f"a{i}", i, one),))
        _both(table, f"a{i}", "b", ((f"b{i}", -i, one),))
        _both(table, f"b{i}", "b", ((f"b{i}", -i, one),))
        _both(table, f"b{i}", "a", split)
        _both(table, f"b{i}", RIGHT_END, ((f"b{i}", 0, one),))

    return CounterMachine(
        name=f"eq-star-p1bca-k{k}",
        mclass=MachineClass.P1BCA,
        alphabet=("a", "b"),
        states=("start",) + a_states + b_states,
        initial="start",
        accepting=frozenset({"start", *b_states}),
        transitions=table,
        max_step=k,
    )


# ---------------------------------------------------------------------------
# eq3-p1bca: blind probabilistic machine for { c^n d^n e^n }.
# ---------------------------------------------------------------------------


def build_eq3_p1bca(k: int) -> CounterMachine:
    """Blind k-branch verifier for c^x d^y e^z with x = y = z.

    Branch i drives the counter to i(x-y) + (y-z); the branches agree on
    zero exactly on members, and at most one branch can cancel otherwise,
    so non-members accept with probability at most 1/k.
    """
    if not 2 <= k <= 9:
        raise ValueError("k must be in 2..9")
    kth = Fraction(1, k)
    one = Fraction(1)
    states = ["start"]
    for letter in "cde":
        states += [f"{letter}{i}" for i in range(1, k + 1)]

    table: TransTable = {}
    _both(table, "start", LEFT_END, tuple((f"c{i}", 0, kth) for i in range(1, k + 1)))
    _both(table, "start", RIGHT_END, (("start", 0, one),))
    for i in range(1, k + 1):
        _both(table, f"c{i}", "c", ((f"c{i}", i, one),))
        _both(table, f"c{i}", "d", ((f"d{i}", 1 - i, one),))
        _both(table, f"c{i}", "e", ((f"e{i}", -1, one),))
        _both(table, f"d{i}", "d", ((f"d{i}", 1 - i, one),))
        _both(table, f"d{i}", "e", ((f"e{i}", -1, one),))
        _both(table, f"e{i}", "e", ((f"e{i}", -1, one),))
        for letter in "cde":
            _both(table, f"{letter}{i}", RIGHT_END, ((f"{letter}{i}", 0, one),))

    return CounterMachine(
        name=f"eq3-p1bca-k{k}",
        mclass=MachineClass.P1BCA,
        alphabet=("c", "d", "e"),
        states=tuple(states),
        initial="start",
        accepting=frozenset(states),
        transitions=table,
        max_step=k,
    )


# ---------------------------------------------------------------------------
# eq-star-complement-d1ca: deterministic machine for the complement of EQ*.
# ---------------------------------------------------------------------------


def build_eqstar_complement_d1ca() -> CounterMachine:
    """Deterministic acceptor of the strings over {a,b} NOT of the form (a^n b^n)*.

    Tracks the current block with the counter and jumps to the accepting
    trap ``bad`` at the first structural violation; well-formed inputs
    end in ``done`` (or ``start`` for the empty word) and are rejected.
    """
    one = Fraction(1)
    table: TransTable = {}
    _both(table, "start", LEFT_END, (("start", 0, one),))
    _both(table, "start", "a", (("inA", +1, one),))
    _both(table, "start", "b", (("bad", 0, one),))
    _both(table, "start", RIGHT_END, (("start", 0, one),))
    _both(table, "inA", "a", (("inA", +1, one),))
    _both(table, "inA", "b", (("inB", -1, one),))
    _both(table, "inA", RIGHT_END, (("bad", 0, one),))
    table[("inB", "b", NZ)] = (("inB", -1, one),)
    table[("inB", "b", Z)] = (("bad", 0, one),)
    table[("inB", "a", Z)] = (("inA", +1, one),)
    table[("inB", "a", NZ)] = (("bad", 0, one),)
    table[("inB", RIGHT_END, Z)] = (("done", 0, one),)
    table[("inB", RIGHT_END, NZ)] = (("bad", 0, one),)
    for symbol in ("a", "b", RIGHT_END):
        _both(table, "bad", symbol, (("bad", 0, one),))

    return CounterMachine(
        name="eq-star-complement-d1ca",
        mclass=MachineClass.D1CA,
        alphabet=("a", "b"),
        states=("start", "inA", "inB", "bad", "done"),
        initial="start",
        accepting=frozenset({"bad"}),
        transitions=table,
        max_step=1,
    )


# ---------------------------------------------------------------------------
# lang-L-p1ca: one machine for the union language
#   L = (complement of EQ* over {a,b})  ∪  { c^n d^n e^n }  (so also ε).
# ---------------------------------------------------------------------------


def build_l_p1ca(k: int) -> CounterMachine:
    """Probabilistic machine for the two-fragment union language.

    The first input letter routes to a deterministic complement-of-EQ*
    component (over {a,b}) or to a k-branch equality component (over
    {c,d,e}); the empty word is accepted outright.  Members accept with
    probability 1, non-members with at most 1/k.
    """
    if not 2 <= k <= 9:
        raise ValueError("k must be in 2..9")
    kth = Fraction(1, k)
    one = Fraction(1)
    states = ["Lstart", "Ca", "Cb", "Cbad", "Cdone"]
    for letter in "cde":
        states += [f"E{letter}{i}" for i in range(1, k + 1)]
    states += ["eqOK", "eqBad", "Lacc"]

    table: TransTable = {}
    _both(table, "Lstart", LEFT_END, (("Lstart", 0, one),))
    _both(table, "Lstart", RIGHT_END, (("Lacc", 0, one),))
    _both(table, "Lstart", "a", (("Ca", +1, one),))
    _both(table, "Lstart", "b", (("Cbad", 0, one),))
    _both(table, "Lstart", "c", tuple((f"Ec{i}", i, kth) for i in range(1, k + 1)))
    _both(table, "Lstart", "d", (("eqBad", 0, one),))
    _both(table, "Lstart", "e", (("eqBad", 0, one),))

    _both(table, "Ca", "a", (("Ca", +1, one),))
    _both(table, "Ca", "b", (("Cb", -1, one),))
    _both(table, "Ca", RIGHT_END, (("Cbad", 0, one),))
    table[("Cb", "b", NZ)] = (("Cb", -1, one),)
    table[("Cb", "b", Z)] = (("Cbad", 0, one),)
    table[("Cb", "a", Z)] = (("Ca", +1, one),)
    table[("Cb", "a", NZ)] = (("Cbad", 0, one),)
    table[("Cb", RIGHT_END, Z)] = (("Cdone", 0, one),)
    table[("Cb", RIGHT_END, NZ)] = (("Cbad", 0, one),)
    for symbol in ("a", "b", RIGHT_END):
        _both(table, "Cbad", symbol, (("Cbad", 0, one),))

    for i in range(1, k + 1):
        _both(table, f"Ec{i}", "c", ((f"Ec{i}", i, one),))
        _both(table, f"Ec{i}", "d", ((f"Ed{i}", 1 - i, one),))
        _both(table, f"Ec{i}", "e", ((f"Ee{i}", -1, one),))
        _both(table, f"Ed{i}", "d", ((f"Ed{i}", 1 - i, one),))
        _both(table, f"Ed{i}", "e", ((f"Ee{i}", -1, one),))
        _both(table, f"Ee{i}", "e", ((f"Ee{i}", -1, one),))
        _both(table, f"Ec{i}", RIGHT_END, (("eqBad", 0, one),))
        _both(table, f"Ed{i}", RIGHT_END, (("eqBad", 0, one),))
        table[(f"Ee{i}", RIGHT_END, Z)] = (("eqOK", 0, one),)
        table[(f"Ee{i}", RIGHT_END, NZ)] = (("eqBad", 0, one),)

    return CounterMachine(
        name=f"lang-L-p1ca-k{k}",
        mclass=MachineClass.P1CA,
        alphabet=("a", "b", "c", "d", "e"),
        states=tuple(states),
        initial="Lstart",
        accepting=frozenset({"Lacc", "Cbad", "eqOK"}),
        transitions=table,
        max_step=k,
    )


# ---------------------------------------------------------------------------
# Registry.
# ---------------------------------------------------------------------------

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _onenone_bounds(t: int) -> ClaimedBounds:
    residual = Fraction(2, 3) ** t
    return ClaimedBounds(
        accept_on_yes_min=1 - residual,
        accept_on_no_max=_ZERO,
        dontknow_max=residual,
    )


def _entry(name: str) -> ZooEntry:
    if name in ("m1", "m2"):
        machine = build_m1() if name == "m1" else build_m2()
        which = "first and third" if name == "m1" else "second and fourth"
        return ZooEntry(
            name=name,
            machine=machine,
            problem="xor-eq",
            claimed_bounds=ClaimedBounds(_ZERO, _ONE, _ZERO),
            note=f"deterministic comparator of the {which} 0-blocks; "
            "solves only half of XOR-EQ (vacuous bounds)",
        )
    if name == "xoreq-q1ca":
        return ZooEntry(
            name=name,
            machine=build_xoreq_q1ca(),
            problem="xor-eq",
            claimed_bounds=ClaimedBounds(_ONE, _ZERO, _ZERO),
            note="exact quantum XOR of two block equalities",
        )
    match = re.fullmatch(r"onenone-lv(?:-t(\d+))?", name)
    if match:
        t = int(match.group(1)) if match.group(1) else 1
        return ZooEntry(
            name=name,
            machine=build_onenone_lv_t(t),
            problem=f"one-none-t{t}",
            claimed_bounds=_onenone_bounds(t),
            note=f"Las Vegas block-pattern decider, {t} pair(s): "
            "answers with probability 1-(2/3)^t, never wrongly",
        )
    match = re.fullmatch(r"eq-star-p1bca-k(\d+)", name)
    if match:
        k = int(match.group(1))
        return ZooEntry(
            name=name,
            machine=build_eqstar_p1bca(k),
            problem="eq-star",
            claimed_bounds=ClaimedBounds(_ONE, Fraction(1, k), _ZERO),
            note="blind one-sided verifier of (a^n b^n)*",
        )
    match = re.fullmatch(r"eq3-p1bca-k(\d+)", name)
    if match:
        k = int(match.group(1))
        return ZooEntry(
            name=name,
            machine=build_eq3_p1bca(k),
            problem="eq3",
            claimed_bounds=ClaimedBounds(_ONE, Fraction(1, k), _ZERO),
            note="blind one-sided verifier of c^n d^n e^n",
        )
    if name == "eq-star-complement-d1ca":
        return ZooEntry(
            name=name,
            machine=build_eqstar_complement_d1ca(),
            problem="eq-star-complement",
            claimed_bounds=ClaimedBounds(_ONE, _ZERO, _ZERO),
            note="deterministic acceptor of the complement of (a^n b^n)*",
        )
    match = re.fullmatch(r"lang-L-p1ca-k(\d+)", name)
    if match:
        k = int(match.group(1))
        return ZooEntry(
            name=name,
            machine=build_l_p1ca(k),
            problem="lang-L",
            claimed_bounds=ClaimedBounds(_ONE, Fraction(1, k), _ZERO),
            note="one-sided verifier of the two-fragment union language",
        )
    raise KeyError(f"unknown zoo name {name!r}")


_REPRESENTATIVES = (
    "m1",
    "m2",
    "xoreq-q1ca",
    "onenone-lv",
    "onenone-lv-t2",
    "eq-star-p1bca-k3",
    "eq3-p1bca-k4",
    "eq-star-complement-d1ca",
    "lang-L-p1ca-k3",
)

_CACHE: dict[str, ZooEntry] = {}


def get_entry(name: str) -> ZooEntry:
    """Resolve a stable zoo name (parametrized names like ...-k3, ...-t2 allowed)."""
    entry = _CACHE.get(name)
    if entry is None:
        entry = _entry(name)
        _CACHE[name] = entry
    return entry


def zoo_names() -> tuple[str, ...]:
    """The registry's nine representative names, one per family."""
    return _REPRESENTATIVES


def list_entries() -> list[ZooEntry]:
    return [get_entry(name) for name in _REPRESENTATIVES]
