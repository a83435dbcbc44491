"""The three concrete dynamical systems behind a common interface.

Each system exposes iteration, a distance, a per-step Lipschitz constant, and
two constructive oracles: one producing a periodic point near any point, one
producing a pair of nearby points whose orbits separate.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, ClassVar, Optional

from . import interval_maps as im
from . import symbolic as sym
from .errors import DomainError, InvalidInputError, UnsupportedDeltaError
from .interval_maps import AnglePoint, DistanceValue, as_fraction
from .symbolic import EPWord

__all__ = [
    "DynamicalSystem",
    "FullShift",
    "TentSystem",
    "LogisticSystem",
    "SensitivityWitness",
    "SYSTEMS",
    "get_system",
    "iterate",
    "distance",
    "nearest_periodic",
    "sensitivity_witness",
]


@dataclass(frozen=True)
class SensitivityWitness:
    """Points ``y, z`` near a center whose ``k``-th iterates are ``separation`` apart."""

    y: Any
    z: Any
    k: int
    separation: DistanceValue


def _positive(value, name: str) -> Fraction:
    value = as_fraction(value)
    if value <= 0:
        raise InvalidInputError(f"{name} must be positive, got {value}")
    return value


class DynamicalSystem(ABC):
    """A metric space with a continuous self-map, known exactly enough to certify."""

    id: ClassVar[str]
    point_type: ClassVar[type]
    lipschitz_per_step: ClassVar[Fraction]
    diameter: ClassVar[Fraction]
    certified_delta: ClassVar[Fraction]

    def check_point(self, p):
        if not isinstance(p, self.point_type):
            raise InvalidInputError(
                f"{self.id} expects {self.point_type.__name__} points, got {type(p).__name__}"
            )
        return p

    @abstractmethod
    def step(self, p):
        ...

    def iterate(self, p, n: int):
        self.check_point(p)
        if n < 0:
            raise InvalidInputError("iteration count must be non-negative")
        for _ in range(n):
            p = self.step(p)
        return p

    @abstractmethod
    def distance(self, p, q) -> DistanceValue:
        ...

    @abstractmethod
    def period_of(self, p) -> Optional[int]:
        """Least period in the native representation, or ``None``."""

    @abstractmethod
    def nearest_periodic(self, x, eps):
        ...

    @abstractmethod
    def _sensitive_pair(self, x, eps: Fraction) -> SensitivityWitness:
        ...

    def sensitivity_witness(self, x, eps, delta) -> SensitivityWitness:
        self.check_point(x)
        eps = _positive(eps, "eps")
        delta = _positive(delta, "delta")
        if delta > self.certified_delta:
            raise UnsupportedDeltaError(
                f"delta {delta} exceeds the certified constant {self.certified_delta} for {self.id}"
            )
        return self._sensitive_pair(x, eps)

    @abstractmethod
    def parse_point(self, text: str):
        ...

    @abstractmethod
    def format_point(self, p) -> str:
        ...

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


def _least_m(eps: Fraction, scale: Fraction) -> int:
    """Least ``m >= 1`` with ``scale * 2^-m < eps``."""
    m = 1
    while scale / (1 << m) >= eps:
        m += 1
    return m


class FullShift(DynamicalSystem):
    id = "full-shift"
    point_type = EPWord
    lipschitz_per_step = Fraction(2)
    diameter = Fraction(2)
    certified_delta = Fraction(1)

    def step(self, p):
        return sym.shift(p)

    def iterate(self, p, n):
        self.check_point(p)
        return sym.shift_n(p, n)

    def distance(self, p, q):
        return DistanceValue.of(sym.metric(self.check_point(p), self.check_point(q)))

    def period_of(self, p):
        return sym.period_of(self.check_point(p))

    def nearest_periodic(self, x, eps):
        self.check_point(x)
        eps = _positive(eps, "eps")
        if x.is_periodic:
            return x
        # agreement on n bits costs at most 2^(1-n)
        n = _least_m(eps, Fraction(2))
        return sym.truncate_to_periodic(x, n)

    def _sensitive_pair(self, x, eps):
        m = _least_m(eps, Fraction(2))
        head = x.prefix(m)
        y = sym.canonicalize(head, (0,))
        z = sym.canonicalize(head, (1,))
        return SensitivityWitness(y, z, m, self.distance(self.iterate(y, m), self.iterate(z, m)))

    def parse_point(self, text):
        return sym.parse_word(text)

    def format_point(self, p):
        return sym.format_word(p)


class TentSystem(DynamicalSystem):
    id = "tent"
    point_type = Fraction
    lipschitz_per_step = Fraction(2)
    diameter = Fraction(1)
    certified_delta = Fraction(1, 2)
    target_low = Fraction(0)
    target_high = Fraction(3, 4)

    def check_point(self, p):
        if isinstance(p, int) and not isinstance(p, bool):
            p = Fraction(p)
        super().check_point(p)
        if not 0 <= p <= 1:
            raise DomainError(f"tent state {p} is outside [0, 1]")
        return p

    def step(self, p):
        return im.tent_step(p)

    def iterate(self, p, n):
        p = self.check_point(p)
        if n < 0:
            raise InvalidInputError("iteration count must be non-negative")
        return im.tent_iterate(p, n)

    def distance(self, p, q):
        return DistanceValue.of(abs(self.check_point(p) - self.check_point(q)))

    def period_of(self, p):
        return im.tent_period_of(self.check_point(p))

    def nearest_periodic(self, x, eps):
        x = self.check_point(x)
        return im.nearest_tent_periodic(x, _positive(eps, "eps"))

    def _sensitive_pair(self, x, eps):
        x = self.check_point(x)
        # least m with 2^m * eps >= 2: the closed m-cylinder of x has width
        # 2^-m <= eps/2 and T^m maps it affinely onto [0, 1]
        m = 1
        while (1 << m) * eps < 2:
            m += 1
        word = im.tent_itinerary(x, m)
        y = im._cylinder_point(word, self.target_low)
        z = im._cylinder_point(word, self.target_high)
        return SensitivityWitness(y, z, m, self.distance(self.iterate(y, m), self.iterate(z, m)))

    def parse_point(self, text):
        return self.check_point(as_fraction(text.strip()))

    def format_point(self, p):
        return str(p)


class LogisticSystem(DynamicalSystem):
    id = "logistic"
    point_type = AnglePoint
    lipschitz_per_step = Fraction(4)
    diameter = Fraction(1)
    certified_delta = Fraction(1, 2)
    # angle targets with x-images 0 and 1
    target_low = Fraction(0)
    target_high = Fraction(1, 2)

    def step(self, p):
        return im.angle_step(p)

    def iterate(self, p, n):
        self.check_point(p)
        if n < 0:
            raise InvalidInputError("iteration count must be non-negative")
        return im.angle_iterate(p, n)

    def distance(self, p, q):
        return im.logistic_distance(self.check_point(p), self.check_point(q))

    def period_of(self, p):
        return im.angle_period_of(self.check_point(p))

    def nearest_periodic(self, x, eps):
        self.check_point(x)
        eps = _positive(eps, "eps")
        if self.period_of(x) is not None:
            return x
        # |h(a) - h(b)| <= pi |a - b| and n shared binary digits give |a - b| <= 2^-n
        n = _least_m(eps, 2 * im.PI_UPPER)
        return im.truncate_angle(x, n)

    def _sensitive_pair(self, x, eps):
        m = _least_m(eps, 2 * im.PI_UPPER)
        theta = x.theta
        j = (theta.numerator << m) // theta.denominator
        base = Fraction(j, 1 << m)
        # doubling sends [j/2^m, (j+1)/2^m) onto [0, 1)
        y = AnglePoint(base + self.target_low / (1 << m))
        z = AnglePoint(base + self.target_high / (1 << m))
        return SensitivityWitness(y, z, m, self.distance(self.iterate(y, m), self.iterate(z, m)))

    def parse_point(self, text):
        text = text.strip()
        if text.startswith("theta="):
            text = text[len("theta="):]
        return AnglePoint(as_fraction(text))

    def format_point(self, p):
        return f"theta={p.theta}"


SYSTEMS: dict[str, DynamicalSystem] = {
    s.id: s for s in (FullShift(), TentSystem(), LogisticSystem())
}


def get_system(system_id) -> DynamicalSystem:
    if isinstance(system_id, DynamicalSystem):
        return system_id
    try:
        return SYSTEMS[system_id]
    except KeyError:
        raise InvalidInputError(
            f"unknown system {system_id!r}; choose from {', '.join(SYSTEMS)}"
        ) from None


def iterate(system, p, n: int):
    return get_system(system).iterate(p, n)


def distance(system, p, q) -> DistanceValue:
    return get_system(system).distance(p, q)


def nearest_periodic(system, x, eps):
    return get_system(system).nearest_periodic(x, eps)


def sensitivity_witness(system, x, eps, delta) -> SensitivityWitness:
    return get_system(system).sensitivity_witness(x, eps, delta)
