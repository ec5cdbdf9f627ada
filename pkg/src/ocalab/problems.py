"""Membership oracles and bounded instance generators.

Every machine in the zoo targets one of the problems defined here.  The
oracles are plain string scans, written independently of any machine so
the test suite can check constructions against ground truth.  Language
problems label every string yes/no; promise problems additionally return
``outside_promise`` for strings the machines are never asked about.

Generators enumerate bounded instance sets deterministically (and
duplicate-free), so batch reports and refutation scans are reproducible.
Each generator documents its enumeration domain; they are exhaustive over
that domain, which for the structured problems is a tuple/block space
rather than the set of all strings.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

from .core import EngineError

YES = "yes"
NO = "no"
OUTSIDE = "outside_promise"

DEFAULT_CEILING = 24

Instance = tuple[str, str]


@dataclass(frozen=True)
class PromiseProblem:
    """A named problem: oracle plus bounded deterministic generator."""

    name: str
    alphabet: tuple[str, ...]
    classify: Callable[[str], str]
    generate: Callable[[int], list[Instance]]


def _check_ceiling(n: int, ceiling: int = DEFAULT_CEILING) -> None:
    if n < 0:
        raise EngineError(f"size bound must be nonnegative, got {n}")
    if n > ceiling:
        raise EngineError(f"size bound {n} exceeds the configured ceiling {ceiling}")


# ---------------------------------------------------------------------------
# XOR-EQ: eight 0-blocks separated by #, promise ties the offset blocks to
# the two comparisons so exactly-counter-matched interference is possible.
# ---------------------------------------------------------------------------

XOREQ_ALPHABET = ("0", "#")


def xoreq_word(a: int, b: int, c: int, d: int, k1: int, k2: int, l1: int, l2: int) -> str:
    """Build the 8-block input string for a tuple of block lengths."""
    blocks = (a, b, c, d, k1, k2, l1, l2)
    if any(x < 0 for x in blocks):
        raise EngineError("block lengths must be nonnegative")
    return "#".join("0" * x for x in blocks)


def xoreq_blocks(word: str) -> tuple[int, ...] | None:
    """Recover the eight block lengths, or None if the shape is wrong."""
    parts = word.split("#")
    if len(parts) != 8 or any(part.strip("0") for part in parts):
        return None
    return tuple(len(part) for part in parts)


def classify_xoreq(word: str) -> str:
    """Oracle for the XOR of the two equality comparisons.

    The promise requires the shape above, the four compared numbers even
    and positive, and the displayed relation between the comparisons and
    the offset blocks; the offsets may be zero.
    """
    blocks = xoreq_blocks(word)
    if blocks is None:
        return OUTSIDE
    a, b, c, d, k1, k2, l1, l2 = blocks
    if any(x <= 0 or x % 2 for x in (a, b, c, d)):
        return OUTSIDE
    left = a - c + (-1 if a == c else 1) * (k1 - k2)
    right = b - d + (-1 if b == d else 1) * (l1 - l2)
    if left != right:
        return OUTSIDE
    return YES if (a == c) != (b == d) else NO


def _gen_xoreq(n: int) -> list[Instance]:
    """All promised tuples with a,b,c,d even in [2, n] and offsets in [0, 4]."""
    _check_ceiling(n)
    sizes = range(2, n + 1, 2)
    offsets = range(0, 5)
    out: list[Instance] = []
    for a, b, c, d in product(sizes, repeat=4):
        for k1, k2, l1, l2 in product(offsets, repeat=4):
            word = xoreq_word(a, b, c, d, k1, k2, l1, l2)
            label = classify_xoreq(word)
            if label != OUTSIDE:
                out.append((word, label))
    return out


# ---------------------------------------------------------------------------
# ONE / NONE block classification over {a,b,c} and the alternating promise.
# ---------------------------------------------------------------------------


def _pair_equalities(u: str) -> int:
    counts = (u.count("a"), u.count("b"), u.count("c"))
    return sum(
        counts[i] == counts[j] for i, j in ((0, 1), (1, 2), (2, 0))
    )


def classify_one(u: str) -> bool:
    """Exactly one of the three unordered symbol-count pairs is equal."""
    if set(u) - {"a", "b", "c"}:
        return False
    return _pair_equalities(u) == 1


def classify_none(u: str) -> bool:
    """No two of the three symbol counts are equal."""
    if set(u) - {"a", "b", "c"}:
        return False
    return _pair_equalities(u) == 0


_RUN_RE = re.compile(r"([abc]+)(d+)")


def classify_onenone_t(word: str, t: int) -> str:
    """Oracle for the alternating ONE/NONE promise with 2t blocks.

    The word must decompose as exactly 2t blocks u·y with u over {a,b,c}
    nonempty, y a run of d at least as long as u.  Odd blocks ONE and even
    blocks NONE is a yes; swapped is a no; anything else is outside.
    """
    if t < 1:
        raise EngineError(f"t must be positive, got {t}")
    pos = 0
    kinds: list[str] = []
    for match in _RUN_RE.finditer(word):
        if match.start() != pos:
            return OUTSIDE
        pos = match.end()
        u, y = match.group(1), match.group(2)
        if len(y) < len(u):
            return OUTSIDE
        if classify_one(u):
            kinds.append("one")
        elif classify_none(u):
            kinds.append("none")
        else:
            return OUTSIDE
    if pos != len(word) or len(kinds) != 2 * t:
        return OUTSIDE
    if kinds == ["one", "none"] * t:
        return YES
    if kinds == ["none", "one"] * t:
        return NO
    return OUTSIDE


def _strings_over(symbols: str, max_len: int) -> Iterator[str]:
    for length in range(max_len + 1):
        for tup in product(symbols, repeat=length):
            yield "".join(tup)


def _one_vocab(max_len: int) -> list[str]:
    return [u for u in _strings_over("abc", max_len) if u and classify_one(u)]


def _none_vocab(max_len: int) -> list[str]:
    return [u for u in _strings_over("abc", max_len) if u and classify_none(u)]


# Per-t enumeration vocabularies.  The instance count for the full
# u-length-4 vocabulary grows as (75*42)^t, so for t >= 2 the generator
# uses smaller length caps (t=2) and one canonical NONE representative per
# count pattern (t=3) to keep exhaustive runs tractable.
def _canonical_none_reps() -> list[str]:
    reps: dict[tuple[int, int, int], str] = {}
    for u in _none_vocab(3):
        key = (u.count("a"), u.count("b"), u.count("c"))
        reps.setdefault(key, u)
    return sorted(reps.values())


_ONENONE_VOCAB: dict[int, tuple[list[str], list[str]]] = {}


def _onenone_vocab(t: int) -> tuple[list[str], list[str]]:
    if t not in _ONENONE_VOCAB:
        if t == 1:
            _ONENONE_VOCAB[t] = (_one_vocab(4), _none_vocab(4))
        elif t == 2:
            _ONENONE_VOCAB[t] = (_one_vocab(2), _none_vocab(3))
        else:
            _ONENONE_VOCAB[t] = (_one_vocab(1), _canonical_none_reps())
    return _ONENONE_VOCAB[t]


def _gen_onenone(t: int, n: int) -> list[Instance]:
    """Alternating-block instances with minimal d-runs (|y| = |u|).

    Enumerates every block tuple over the per-t vocabulary whose total
    length fits within n, yes and no shapes both.
    """
    _check_ceiling(n, ceiling=200)
    ones, nones = _onenone_vocab(t)
    out: list[Instance] = []
    for label, first, second in ((YES, ones, nones), (NO, nones, ones)):
        for blocks in product(*([first, second] * t)):
            word = "".join(u + "d" * len(u) for u in blocks)
            if len(word) <= n:
                out.append((word, label))
    return out


# ---------------------------------------------------------------------------
# Equality-block languages over {a,b} and {c,d,e}, and their composite.
# ---------------------------------------------------------------------------


def classify_eqstar(word: str) -> bool:
    """Member of the closure of {a^n b^n | n > 0} (empty string included)."""
    if set(word) - {"a", "b"}:
        return False
    pos = 0
    while pos < len(word):
        a_run = 0
        while pos < len(word) and word[pos] == "a":
            a_run += 1
            pos += 1
        b_run = 0
        while pos < len(word) and word[pos] == "b":
            b_run += 1
            pos += 1
        if a_run == 0 or a_run != b_run:
            return False
    return True


def classify_eqstar_complement(word: str) -> bool:
    """Member of the complement, within strings over {a,b}."""
    if set(word) - {"a", "b"}:
        return False
    return not classify_eqstar(word)


def classify_eq3(word: str) -> bool:
    """Member of {c^n d^n e^n | n >= 0}."""
    if set(word) - {"c", "d", "e"}:
        return False
    n, rem = divmod(len(word), 3)
    return rem == 0 and word == "c" * n + "d" * n + "e" * n


def classify_L(word: str) -> bool:
    """Union language: complement blocks over {a,b}, or a c^n d^n e^n string.

    The empty string belongs to both constituents.  Strings mixing the two
    alphabets belong to neither.
    """
    if word == "":
        return True
    chars = set(word)
    if chars <= {"a", "b"}:
        return classify_eqstar_complement(word)
    if chars <= {"c", "d", "e"}:
        return classify_eq3(word)
    return False


def _bool_problem(classify: Callable[[str], bool]) -> Callable[[str], str]:
    def wrapped(word: str) -> str:
        return YES if classify(word) else NO

    return wrapped


def _gen_over(symbols: str, classify: Callable[[str], bool]) -> Callable[[int], list[Instance]]:
    def gen(n: int) -> list[Instance]:
        _check_ceiling(n, ceiling=16)
        return [(w, YES if classify(w) else NO) for w in _strings_over(symbols, n)]

    return gen


def _gen_L(n: int) -> list[Instance]:
    """Empty string plus both pure-alphabet fragments up to length n."""
    _check_ceiling(n, ceiling=16)
    out: list[Instance] = [("", YES)]
    for symbols in ("ab", "cde"):
        for w in _strings_over(symbols, n):
            if w:
                out.append((w, YES if classify_L(w) else NO))
    return out


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_ONENONE_NAME = re.compile(r"one-none-t([1-9]\d*)$")


def _problems() -> dict[str, PromiseProblem]:
    out = {
        "xor-eq": PromiseProblem("xor-eq", XOREQ_ALPHABET, classify_xoreq, _gen_xoreq),
        "eq-star": PromiseProblem(
            "eq-star", ("a", "b"), _bool_problem(classify_eqstar), _gen_over("ab", classify_eqstar)
        ),
        "eq-star-complement": PromiseProblem(
            "eq-star-complement",
            ("a", "b"),
            _bool_problem(classify_eqstar_complement),
            _gen_over("ab", classify_eqstar_complement),
        ),
        "eq3": PromiseProblem(
            "eq3", ("c", "d", "e"), _bool_problem(classify_eq3), _gen_over("cde", classify_eq3)
        ),
        "lang-L": PromiseProblem(
            "lang-L", ("a", "b", "c", "d", "e"), _bool_problem(classify_L), _gen_L
        ),
    }
    return out


def get_problem(name: str) -> PromiseProblem:
    """Look up a problem by its stable name (``one-none-t<t>`` is parametric)."""
    if name == "one-none":
        name = "one-none-t1"
    match = _ONENONE_NAME.match(name)
    if match:
        t = int(match.group(1))
        return PromiseProblem(
            name,
            ("a", "b", "c", "d"),
            lambda w, _t=t: classify_onenone_t(w, _t),
            lambda n, _t=t: _gen_onenone(_t, n),
        )
    table = _problems()
    if name not in table:
        raise EngineError(f"unknown problem name: {name!r}")
    return table[name]


def list_problems() -> list[str]:
    """Stable names; the parametric family is listed at its default t."""
    return ["xor-eq", "one-none-t1", "one-none-t2", "one-none-t3",
            "eq-star", "eq-star-complement", "eq3", "lang-L"]


def generate(name: str, n: int) -> list[Instance]:
    """Labeled, duplicate-free, deterministically ordered instance list."""
    return get_problem(name).generate(n)
