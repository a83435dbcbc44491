"""Tent and logistic maps on [0, 1] with exact orbits.

Tent states are rationals and iterate exactly. Logistic states are carried as
rational angles ``theta`` with ``x = sin^2(pi * theta)``; one doubling step of
the angle is one step of ``x -> 4x(1-x)``. Angles are only mapped to x-space
when a distance is needed, and then as a rigorous float enclosure.
"""
from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Union

from mpmath import iv, libmp

from .errors import DomainError, InvalidInputError

__all__ = [
    "HALF",
    "PI_UPPER",
    "DistanceValue",
    "AnglePoint",
    "as_fraction",
    "tent_step",
    "tent_iterate",
    "tent_itinerary",
    "tent_cylinder_map",
    "tent_periodic_points",
    "tent_period_of",
    "nearest_tent_periodic",
    "angle_step",
    "angle_iterate",
    "angle_period_of",
    "truncate_angle",
    "logistic_embed",
    "logistic_distance",
    "logistic_step_enclosure",
    "conjugacy_residual",
]

HALF = Fraction(1, 2)
# 355/113 - pi ~ 2.7e-7 > 0
PI_UPPER = Fraction(355, 113)

ENCLOSURE_WIDTH = 1e-12
_IV_PREC = 128
_iv_lock = threading.RLock()

Number = Union[Fraction, int, str]


def as_fraction(value: Number) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings; floats are rejected."""
    if isinstance(value, float):
        raise InvalidInputError("floats are not accepted as exact rationals")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidInputError(f"not a rational: {value!r}") from exc


# ---------------------------------------------------------------- enclosures


@contextmanager
def _iv_context():
    # mpmath keeps interval precision as module-global state
    with _iv_lock:
        saved = iv.prec
        iv.prec = _IV_PREC
        try:
            yield iv
        finally:
            iv.prec = saved


def _iv_rational(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _endpoints(interval) -> tuple[float, float]:
    a, b = interval._mpi_
    return libmp.to_float(a, rnd="f"), libmp.to_float(b, rnd="c")


@dataclass(frozen=True)
class DistanceValue:
    """A distance known either exactly or inside ``[lo, hi]``.

    Strict comparisons are answered on the conservative side: ``exceeds(t)``
    is true only if the whole enclosure lies above ``t``.
    """

    exact: Optional[Fraction] = None
    lo: Optional[float] = None
    hi: Optional[float] = None

    def __post_init__(self):
        if (self.exact is None) == (self.lo is None or self.hi is None):
            raise InvalidInputError("DistanceValue needs exactly one of exact or (lo, hi)")
        if self.exact is None:
            if not self.lo <= self.hi:
                raise InvalidInputError(f"inverted enclosure [{self.lo}, {self.hi}]")
            if self.hi - self.lo > ENCLOSURE_WIDTH:
                raise InvalidInputError(f"enclosure width {self.hi - self.lo} exceeds 1e-12")

    @classmethod
    def of(cls, value: Number) -> "DistanceValue":
        return cls(exact=as_fraction(value))

    @classmethod
    def enclosure(cls, lo: float, hi: float) -> "DistanceValue":
        return cls(lo=lo, hi=hi)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def lower(self) -> Union[Fraction, float]:
        return self.exact if self.exact is not None else self.lo

    @property
    def upper(self) -> Union[Fraction, float]:
        return self.exact if self.exact is not None else self.hi

    def exceeds(self, threshold) -> bool:
        """Certified ``value > threshold``."""
        return self.lower > threshold

    def below(self, threshold) -> bool:
        """Certified ``value < threshold``."""
        return self.upper < threshold

    def midpoint(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return self.lo + (self.hi - self.lo) / 2

    def contains(self, value) -> bool:
        if self.exact is not None:
            return self.exact == value
        return self.lo <= value <= self.hi

    def to_json(self):
        if self.exact is not None:
            return str(self.exact)
        return {"hi": repr(self.hi), "lo": repr(self.lo)}

    @classmethod
    def from_json(cls, data) -> "DistanceValue":
        if isinstance(data, dict):
            return cls(lo=float(data["lo"]), hi=float(data["hi"]))
        return cls(exact=as_fraction(data))


# ---------------------------------------------------------------- tent map


def _check_unit(x: Fraction) -> Fraction:
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"tent state {x} is outside [0, 1]")
    return x


def tent_step(x: Number) -> Fraction:
    x = _check_unit(x)
    return 2 * x if x <= HALF else 2 - 2 * x


def tent_iterate(x: Number, n: int) -> Fraction:
    """``T^n(x)`` using integer arithmetic on a common denominator."""
    x = _check_unit(x)
    a, q = x.numerator, x.denominator
    for _ in range(n):
        a = 2 * a if 2 * a <= q else 2 * q - 2 * a
    return Fraction(a, q)


def tent_itinerary(x: Number, n: int) -> list[int]:
    """Branch sequence of the first ``n`` iterates; exactly 1/2 codes as 0."""
    x = _check_unit(x)
    a, q = x.numerator, x.denominator
    out = []
    for _ in range(n):
        if 2 * a <= q:
            out.append(0)
            a = 2 * a
        else:
            out.append(1)
            a = 2 * q - 2 * a
    return out


def tent_cylinder_map(word) -> tuple[int, int]:
    """Coefficients ``(slope, offset)`` of ``T^n`` on the closed cylinder of ``word``.

    On that cylinder ``T^n(x) = slope * x + offset`` with ``slope = +-2^n``, and
    the map is onto [0, 1].
    """
    a, b = 1, 0
    for bit in word:
        if bit:
            a, b = -2 * a, 2 - 2 * b
        else:
            a, b = 2 * a, 2 * b
    return a, b


def _cylinder_point(word, target: Fraction) -> Fraction:
    """The unique point of the cylinder of ``word`` sent to ``target`` by ``T^n``."""
    a, b = tent_cylinder_map(word)
    return (target - b) / a


def _cylinder_fixed_point(word) -> Fraction:
    a, b = tent_cylinder_map(word)
    return Fraction(b, 1 - a)


def tent_periodic_points(n: int) -> list[Fraction]:
    """All solutions of ``T^n(x) = x`` in [0, 1], sorted (``2^n`` of them)."""
    if not isinstance(n, int) or not 1 <= n <= 20:
        raise InvalidInputError(f"period must be an integer in 1..20, got {n!r}")
    found = set()
    # depth-first over itinerary words, composing branch maps as we go
    stack = [(0, 1, 0)]
    while stack:
        depth, a, b = stack.pop()
        if depth == n:
            x = Fraction(b, 1 - a)
            if 0 <= x <= 1:
                found.add(x)
            continue
        stack.append((depth + 1, 2 * a, 2 * b))
        stack.append((depth + 1, -2 * a, 2 - 2 * b))
    return sorted(found)


def tent_period_of(x: Number) -> Optional[int]:
    """Least period of ``x`` under the tent map, ``None`` if not periodic.

    Periodic rationals are exactly those with odd reduced denominator and
    even numerator. Writing ``x = 2b/q``, ``T^n(x) = x`` iff
    ``2^n b = +-b (mod q)``.
    """
    x = _check_unit(x)
    a, q = x.numerator, x.denominator
    if q % 2 == 0 or a % 2:
        return None
    b = a // 2
    q_red = q // gcd(b, q) if b else 1
    if q_red == 1:
        return 1
    n, power = 1, 2 % q_red
    while power != 1 and power != q_red - 1:
        power = (2 * power) % q_red
        n += 1
    return n


def nearest_tent_periodic(x: Number, eps: Number) -> Fraction:
    """A periodic point within ``eps`` of ``x``.

    Takes the least ``n`` with ``2^-n < eps`` and returns the period-``n``
    point sharing the closed ``n``-cylinder of ``x``.
    """
    x = _check_unit(x)
    eps = as_fraction(eps)
    if eps <= 0:
        raise InvalidInputError("eps must be positive")
    if tent_period_of(x) is not None:
        return x
    n = 1
    while Fraction(1, 1 << n) >= eps:
        n += 1
    return _cylinder_fixed_point(tent_itinerary(x, n))


# ---------------------------------------------------------------- angle doubling


@dataclass(frozen=True)
class AnglePoint:
    """Logistic state ``sin^2(pi * theta)`` with ``theta`` reduced into [0, 1)."""

    theta: Fraction

    def __post_init__(self):
        theta = as_fraction(self.theta) % 1
        object.__setattr__(self, "theta", theta)

    def __str__(self) -> str:
        return f"theta={self.theta}"


def angle_step(p: AnglePoint) -> AnglePoint:
    return AnglePoint(2 * p.theta)


def angle_iterate(p: AnglePoint, n: int) -> AnglePoint:
    a, q = p.theta.numerator, p.theta.denominator
    return AnglePoint(Fraction(a * pow(2, n, q) % q, q))


def angle_period_of(p: AnglePoint) -> Optional[int]:
    """Period under doubling: the order of 2 mod the (odd) denominator."""
    q = p.theta.denominator
    if q % 2 == 0:
        return None
    n, power = 1, 2 % q
    while power != 1 % q:
        power = (2 * power) % q
        n += 1
    return n


def truncate_angle(p: AnglePoint, n: int) -> AnglePoint:
    """Purely periodic angle repeating the first ``n`` binary digits of ``theta``."""
    if n < 1:
        raise InvalidInputError("truncation length must be >= 1")
    head = (p.theta.numerator << n) // p.theta.denominator
    return AnglePoint(Fraction(head, (1 << n) - 1))


@lru_cache(maxsize=65536)
def _embed_interval(theta: Fraction):
    with _iv_context():
        if theta == 0:
            return iv.mpf(0)
        if theta == HALF:
            return iv.mpf(1)
        value = iv.sin(iv.pi * _iv_rational(theta)) ** 2
        lo, hi = value._mpi_
        # clamp to the true range [0, 1]
        if libmp.mpf_lt(lo, libmp.fzero):
            lo = libmp.fzero
        if libmp.mpf_gt(hi, libmp.fone):
            hi = libmp.fone
        return iv.make_mpf((lo, hi))


def logistic_embed(p: AnglePoint) -> DistanceValue:
    """Enclosure of ``x = sin^2(pi * theta)``; degenerate at theta in {0, 1/2}."""
    return DistanceValue.enclosure(*_endpoints(_embed_interval(p.theta)))


def logistic_distance(p: AnglePoint, q: AnglePoint) -> DistanceValue:
    """Enclosure of ``|x_p - x_q|`` in x-space (always an enclosure, never exact)."""
    hp, hq = _embed_interval(p.theta), _embed_interval(q.theta)
    with _iv_context():
        lo, hi = _endpoints(abs(hp - hq))
    return DistanceValue.enclosure(max(lo, 0.0), min(hi, 1.0))


def logistic_step_enclosure(lo: float, hi: float) -> tuple[float, float]:
    """Outward enclosure of ``4x(1-x)`` over ``x`` in ``[lo, hi]``."""
    with _iv_context():
        x = iv.mpf([lo, hi])
        return _endpoints(4 * x * (1 - x))


def conjugacy_residual(p: AnglePoint) -> float:
    """Upper bound on ``|4h(t)(1-h(t)) - h(2t mod 1)|`` with ``h = sin^2(pi .)``."""
    with _iv_context():
        h = _embed_interval(p.theta)
        h2 = _embed_interval(angle_step(p).theta)
        residual = abs(4 * h * (1 - h) - h2)
        return _endpoints(residual)[1]
