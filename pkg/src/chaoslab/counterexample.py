"""The eventually-zero subshift A: sensitive, yet not asymptotically sensitive.

Any two eventually-zero strings agree from some index on, so their shifted
orbits coincide after finitely many steps and every separation set is
finite. Sensitivity survives because a single late 1 can always be planted.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from . import symbolic as sym
from .errors import InvalidInputError, UnsupportedDeltaError
from .interval_maps import DistanceValue, as_fraction
from .symbolic import EPWord
from .systems import SensitivityWitness

__all__ = [
    "AWord",
    "DELTA_A",
    "is_in_A",
    "separation_bound",
    "last_separation_time",
    "a_sensitivity_witness",
    "a_report",
]

DELTA_A = Fraction(1, 2)
MAX_SUPPORT = 64


@dataclass(frozen=True)
class AWord:
    """``support . 0^inf`` with no trailing zeros in ``support``."""

    support: tuple[int, ...] = ()

    def __post_init__(self):
        bits = tuple(int(b) for b in self.support)
        if any(b not in (0, 1) for b in bits):
            raise InvalidInputError("support must contain only bits 0/1")
        while bits and bits[-1] == 0:
            bits = bits[:-1]
        object.__setattr__(self, "support", bits)

    @classmethod
    def from_word(cls, w: EPWord) -> "AWord":
        if not is_in_A(w):
            raise InvalidInputError(f"{sym.format_word(w)} is not eventually zero")
        return cls(w.preperiod)

    def to_word(self) -> EPWord:
        return sym.canonicalize(self.support, (0,))

    def __len__(self) -> int:
        return len(self.support)

    def __str__(self) -> str:
        return sym.format_word(self.to_word())


def _word(w) -> EPWord:
    return w.to_word() if isinstance(w, AWord) else w


def is_in_A(w: EPWord) -> bool:
    return w.cycle == (0,)


def separation_bound(y: AWord, z: AWord) -> int:
    """``N = max(|support y|, |support z|)``; ``S^n y = S^n z = 0^inf`` for ``n >= N``."""
    return max(len(y), len(z))


def last_separation_time(y: AWord, z: AWord) -> int:
    """Least ``N`` with ``d(S^n y, S^n z) = 0`` for every ``n >= N``.

    Equals :func:`separation_bound` exactly when the two supports differ at
    index ``separation_bound - 1``.
    """
    n = separation_bound(y, z)
    a = y.support + (0,) * (n - len(y))
    b = z.support + (0,) * (n - len(z))
    for i in range(n - 1, -1, -1):
        if a[i] != b[i]:
            return i + 1
    return 0


def a_sensitivity_witness(x: AWord, eps, delta) -> SensitivityWitness:
    """Plant a 1 just past the ``eps``-ball's resolution; separation is exactly 1."""
    eps = as_fraction(eps)
    delta = as_fraction(delta)
    if eps <= 0:
        raise InvalidInputError("eps must be positive")
    if not 0 < delta < 1:
        raise UnsupportedDeltaError(f"delta {delta} not in (0, 1); A certifies only delta < 1")
    x = AWord.from_word(x) if isinstance(x, EPWord) else x
    m = 1
    while Fraction(2, 1 << m) >= eps:
        m += 1
    head = x.to_word().prefix(m)
    y = AWord(head)
    z = AWord(head + (1,))
    sep = sym.metric(sym.shift_n(y.to_word(), m), sym.shift_n(z.to_word(), m))
    return SensitivityWitness(y, z, m, DistanceValue.of(sep))


def _random_aword(rng: np.random.Generator) -> AWord:
    length = int(rng.integers(0, MAX_SUPPORT + 1))
    return AWord(tuple(int(b) for b in rng.integers(0, 2, size=length)))


def _scan_last_separation(y: AWord, z: AWord, horizon: int) -> int:
    """Brute force: one past the last ``n <= horizon`` with nonzero distance."""
    wy, wz = y.to_word(), z.to_word()
    last = 0
    for n in range(horizon + 1):
        if sym.metric(wy, wz) != 0:
            last = n + 1
        wy, wz = sym.shift(wy), sym.shift(wz)
    return last


def _check_pair(args):
    y, z, eps_y, eps_z, delta = args
    failures = 0
    for center, eps in ((y, eps_y), (z, eps_z)):
        w = a_sensitivity_witness(center, eps, delta)
        ok = (
            is_in_A(w.y.to_word()) and is_in_A(w.z.to_word())
            and sym.metric(center.to_word(), w.y.to_word()) < eps
            and sym.metric(center.to_word(), w.z.to_word()) < eps
            and w.separation.exceeds(delta)
        )
        failures += not ok
    bound = separation_bound(y, z)
    scanned = _scan_last_separation(y, z, bound + 8)
    # bound is least iff the supports disagree at its last index
    differ_at_end = bound > 0 and y.to_word().bit(bound - 1) != z.to_word().bit(bound - 1)
    tight = scanned == last_separation_time(y, z) and (scanned == bound) == differ_at_end
    periodic = [str(w) for w in (y, z) if sym.period_of(w.to_word()) is not None]
    return bound, tight, failures, periodic


def _threads() -> int:
    raw = os.environ.get("CHAOSLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise InvalidInputError(f"CHAOSLAB_THREADS must be a positive integer, got {raw!r}")
    return n


def a_report(samples: int, seed: int, delta=DELTA_A, workers: int | None = None) -> dict:
    """Sample pairs from A and confirm both halves of the counterexample."""
    if samples < 1:
        raise InvalidInputError("samples must be >= 1")
    delta = as_fraction(delta)
    rng = np.random.default_rng(seed)
    jobs = []
    for _ in range(samples):
        y, z = _random_aword(rng), _random_aword(rng)
        eps_y, eps_z = (Fraction(1, 1 << int(j)) for j in rng.integers(1, 21, size=2))
        jobs.append((y, z, eps_y, eps_z, delta))

    workers = _threads() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_pair, jobs, chunksize=64))
    else:
        results = [_check_pair(job) for job in jobs]

    bounds = [b for b, _, _, _ in results]
    periodic = sorted({p for _, _, _, ps in results for p in ps})
    mismatches = sum(not tight for _, tight, _, _ in results)
    failures = sum(f for _, _, f, _ in results)
    return {
        "all_bounds_finite": mismatches == 0,
        "asymptotically_sensitive": False if mismatches == 0 else None,
        "bound_scan_mismatches": mismatches,
        "delta": str(delta),
        "max_bound": max(bounds),
        "periodic_in_A": periodic,
        "samples": samples,
        "seed": seed,
        "sensitive": failures == 0,
        "sensitivity_failures": failures,
    }
