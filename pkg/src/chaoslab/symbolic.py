"""Eventually periodic points of the one-sided binary shift.

A point ``a = a0 a1 a2 ...`` is stored as a finite preperiod followed by a
cycle repeated forever. Every constructor canonicalizes, so two words denote
the same infinite string iff they compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import InvalidInputError

__all__ = [
    "EPWord",
    "canonicalize",
    "shift",
    "shift_n",
    "metric",
    "truncate_to_periodic",
    "period_of",
    "parse_word",
    "format_word",
    "ZERO",
    "ONE",
]


def _primitive_root(cycle: tuple[int, ...]) -> tuple[int, ...]:
    n = len(cycle)
    for d in range(1, n):
        if n % d == 0 and cycle == cycle[:d] * (n // d):
            return cycle[:d]
    return cycle


def _as_bits(bits: Iterable[int], what: str) -> tuple[int, ...]:
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise InvalidInputError(f"{what} must contain only bits 0/1, got {out!r}")
    return out


@dataclass(frozen=True)
class EPWord:
    """Infinite binary string ``preperiod . cycle cycle cycle ...``.

    Build instances with :func:`canonicalize` (or ``EPWord.of``); the raw
    constructor trusts its arguments to be canonical already.
    """

    preperiod: tuple[int, ...]
    cycle: tuple[int, ...]

    @classmethod
    def of(cls, preperiod: Sequence[int] = (), cycle: Sequence[int] = (0,)) -> "EPWord":
        return canonicalize(preperiod, cycle)

    def bit(self, i: int) -> int:
        if i < 0:
            raise InvalidInputError("bit index must be non-negative")
        m = len(self.preperiod)
        if i < m:
            return self.preperiod[i]
        return self.cycle[(i - m) % len(self.cycle)]

    def prefix(self, n: int) -> tuple[int, ...]:
        """First ``n`` bits."""
        return tuple(self.bit(i) for i in range(n))

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    def __str__(self) -> str:
        return format_word(self)


def canonicalize(preperiod: Sequence[int], cycle: Sequence[int]) -> EPWord:
    """Return the canonical word for ``preperiod . cycle^inf``.

    The cycle is reduced to its primitive root, then trailing preperiod bits
    that match the end of the cycle are rotated into it.
    """
    pre = _as_bits(preperiod, "preperiod")
    cyc = _as_bits(cycle, "cycle")
    if not cyc:
        raise InvalidInputError("cycle must be nonempty")
    cyc = _primitive_root(cyc)
    # rotating a primitive word keeps it primitive
    while pre and pre[-1] == cyc[-1]:
        cyc = (pre[-1],) + cyc[:-1]
        pre = pre[:-1]
    return EPWord(pre, cyc)


ZERO = EPWord((), (0,))
ONE = EPWord((), (1,))


def shift(w: EPWord) -> EPWord:
    if w.preperiod:
        return EPWord(w.preperiod[1:], w.cycle)
    return EPWord((), w.cycle[1:] + w.cycle[:1])


def shift_n(w: EPWord, n: int) -> EPWord:
    """``S^n(w)`` computed directly rather than by ``n`` single shifts."""
    if n < 0:
        raise InvalidInputError("shift count must be non-negative")
    m = len(w.preperiod)
    if n < m:
        return EPWord(w.preperiod[n:], w.cycle)
    r = (n - m) % len(w.cycle)
    return EPWord((), w.cycle[r:] + w.cycle[:r])


def _window(w: EPWord, start: int, length: int) -> int:
    """Bits ``start .. start+length-1`` packed big-endian into an int."""
    value = 0
    for i in range(start, start + length):
        value = (value << 1) | w.bit(i)
    return value


def metric(a: EPWord, b: EPWord) -> Fraction:
    """Exact ``sum_i D(a_i, b_i) / 2^i``.

    The head runs over the longer preperiod; the tail is a geometric series
    over one block of length lcm(|cycle_a|, |cycle_b|).
    """
    if a == b:
        return Fraction(0)
    head_len = max(len(a.preperiod), len(b.preperiod))
    block = lcm(len(a.cycle), len(b.cycle))
    head = _window(a, 0, head_len) ^ _window(b, 0, head_len)
    tail = _window(a, head_len, block) ^ _window(b, head_len, block)
    total = Fraction(0)
    if head_len:
        total += Fraction(head, 1 << (head_len - 1))
    if tail:
        # 2^-P * (tail / 2^(C-1)) / (1 - 2^-C)
        total += Fraction(2 * tail, (1 << head_len) * ((1 << block) - 1))
    return total


def truncate_to_periodic(w: EPWord, n: int) -> EPWord:
    """Purely periodic word repeating the first ``n`` bits of ``w``.

    Agrees with ``w`` on coordinates ``0..n-1``, so ``metric(w, result) <= 2^(1-n)``.
    """
    if n < 1:
        raise InvalidInputError("truncation length must be >= 1")
    return canonicalize((), w.prefix(n))


def period_of(w: EPWord) -> Optional[int]:
    """Least period of a purely periodic word, ``None`` otherwise."""
    if w.preperiod:
        return None
    return len(w.cycle)


def format_word(w: EPWord) -> str:
    return "".join(map(str, w.preperiod)) + ":" + "".join(map(str, w.cycle))


def parse_word(text: str) -> EPWord:
    """Parse ``"pre:cycle"``, e.g. ``"0001:01"``; ``":0"`` is the zero string."""
    text = text.strip()
    if text.count(":") != 1:
        raise InvalidInputError(f"word {text!r} must have the form 'pre:cycle'")
    pre, cyc = text.split(":")
    if not cyc:
        raise InvalidInputError(f"word {text!r} has an empty cycle")
    if any(ch not in "01" for ch in pre + cyc):
        raise InvalidInputError(f"word {text!r} may only contain 0, 1 and ':'")
    return canonicalize([int(c) for c in pre], [int(c) for c in cyc])
