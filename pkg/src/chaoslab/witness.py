"""Periodic separating pairs inside arbitrary balls.

Given sensitivity and a periodic-point oracle, :func:`asymptotic_witness`
builds two periodic points in ``B_r(x)`` whose orbits are more than ``delta``
apart at time ``k`` and therefore at every time ``k + mL``, where ``L`` is a
common period. :func:`verify_certificate` replays such a claim from scratch.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any

from .errors import InvalidInputError, VerificationFailure
from .interval_maps import DistanceValue, as_fraction
from .systems import DynamicalSystem, get_system

log = logging.getLogger(__name__)

__all__ = [
    "WitnessCertificate",
    "VerificationReport",
    "asymptotic_witness",
    "verify_certificate",
    "separation_series",
]


@dataclass(frozen=True)
class WitnessCertificate:
    system: str
    x: Any
    r: Fraction
    delta: Fraction
    p: Any
    q: Any
    period_p: int
    period_q: int
    k: int
    L: int
    separation_at_k: DistanceValue
    epsilon_used: Fraction
    rho_used: Fraction

    def recurrence_times(self, count: int) -> list[int]:
        """The first ``count`` times ``k, k+L, k+2L, ...`` with certified separation."""
        return [self.k + m * self.L for m in range(count)]

    def to_json(self) -> dict:
        sys = get_system(self.system)
        return {
            "L": self.L,
            "delta": str(self.delta),
            "epsilon_used": str(self.epsilon_used),
            "k": self.k,
            "p": sys.format_point(self.p),
            "period_p": self.period_p,
            "period_q": self.period_q,
            "q": sys.format_point(self.q),
            "r": str(self.r),
            "rho_used": str(self.rho_used),
            "separation_at_k": self.separation_at_k.to_json(),
            "system": self.system,
            "x": sys.format_point(self.x),
        }

    @classmethod
    def from_json(cls, data: dict) -> "WitnessCertificate":
        try:
            sys = get_system(data["system"])
            return cls(
                system=sys.id,
                x=sys.parse_point(data["x"]),
                r=as_fraction(data["r"]),
                delta=as_fraction(data["delta"]),
                p=sys.parse_point(data["p"]),
                q=sys.parse_point(data["q"]),
                period_p=int(data["period_p"]),
                period_q=int(data["period_q"]),
                k=int(data["k"]),
                L=int(data["L"]),
                separation_at_k=DistanceValue.from_json(data["separation_at_k"]),
                epsilon_used=as_fraction(data["epsilon_used"]),
                rho_used=as_fraction(data["rho_used"]),
            )
        except KeyError as exc:
            raise InvalidInputError(f"certificate is missing field {exc.args[0]!r}") from None


@dataclass
class VerificationReport:
    clauses: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.clauses[name] = bool(ok)
        if detail:
            self.details[name] = detail

    @property
    def passed(self) -> bool:
        return bool(self.clauses) and all(self.clauses.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.clauses.items() if not ok]

    def to_json(self) -> dict:
        return {"clauses": dict(sorted(self.clauses.items())),
                "details": dict(sorted(self.details.items())),
                "passed": self.passed}


def _as_exact_lower(value: DistanceValue) -> Fraction:
    # Fraction(float) is exact, so float bounds stay rigorous
    return Fraction(value.lower)


def asymptotic_witness(system, x, r, delta) -> WitnessCertificate:
    """Construct a periodic pair in ``B_r(x)`` separating beyond ``delta`` infinitely often."""
    sys: DynamicalSystem = get_system(system)
    x = sys.check_point(x)
    r = as_fraction(r)
    delta = as_fraction(delta)
    if r <= 0:
        raise InvalidInputError("radius must be positive")

    # a sensitive pair; the construction below names the witness's y as z
    sens = sys.sensitivity_witness(x, r, delta)
    z, y, k = sens.y, sens.z, sens.k
    s = _as_exact_lower(sens.separation)

    # any eps with s - 4 eps > delta works
    eps = (s - delta) / 5
    # T^k is L^k-Lipschitz, so T^k(B_rho(z)) lies in B_eps(T^k z)
    rho = eps / sys.lipschitz_per_step ** k

    p = sys.nearest_periodic(z, min(rho, r - Fraction(sys.distance(x, z).upper)))
    q = sys.nearest_periodic(y, min(rho, r - Fraction(sys.distance(x, y).upper)))

    separation = sys.distance(sys.iterate(p, k), sys.iterate(q, k))
    if not separation.exceeds(delta):
        raise VerificationFailure(
            f"{sys.id}: periodic pair separates by {separation.lower} <= delta={delta} at k={k}"
        )
    period_p, period_q = sys.period_of(p), sys.period_of(q)
    if period_p is None or period_q is None:
        raise VerificationFailure(f"{sys.id}: periodic-point oracle returned a non-periodic point")

    cert = WitnessCertificate(
        system=sys.id, x=x, r=r, delta=delta, p=p, q=q,
        period_p=period_p, period_q=period_q, k=k, L=lcm(period_p, period_q),
        separation_at_k=separation, epsilon_used=eps, rho_used=rho,
    )
    log.debug("witness %s k=%d L=%d", sys.id, cert.k, cert.L)
    return cert


def verify_certificate(system, cert: WitnessCertificate, M: int) -> VerificationReport:
    """Recheck every clause of ``cert`` without trusting recomputable fields."""
    sys = get_system(system)
    report = VerificationReport()
    if M < 0:
        raise InvalidInputError("verification depth must be non-negative")

    same = cert.system == sys.id
    report.record("system", same, "" if same else f"certificate is for {cert.system!r}")
    well_formed = cert.k >= 1 and cert.L >= 1 and cert.period_p >= 1 and cert.period_q >= 1
    report.record("well_formed", well_formed and cert.r > 0 and cert.delta > 0)
    if not report.passed:
        return report

    try:
        for p in (cert.x, cert.p, cert.q):
            sys.check_point(p)
    except (InvalidInputError, ValueError) as exc:
        report.record("point_kind", False, str(exc))
        return report

    d_xp, d_xq = sys.distance(cert.x, cert.p), sys.distance(cert.x, cert.q)
    report.record("p_in_ball", d_xp.below(cert.r), f"d(x,p) <= {d_xp.upper}")
    report.record("q_in_ball", d_xq.below(cert.r), f"d(x,q) <= {d_xq.upper}")

    report.record("p_periodic", sys.iterate(cert.p, cert.period_p) == cert.p)
    report.record("q_periodic", sys.iterate(cert.q, cert.period_q) == cert.q)
    true_p, true_q = sys.period_of(cert.p), sys.period_of(cert.q)
    common = (
        true_p is not None and true_q is not None
        and cert.L % true_p == 0 and cert.L % true_q == 0
    )
    report.record("L_common_period", common, f"least periods {true_p}, {true_q}; L={cert.L}")

    # replay both orbits out to time k + M L
    tp, tq = sys.iterate(cert.p, cert.k), sys.iterate(cert.q, cert.k)
    first = sys.distance(tp, tq)
    all_above = first.exceeds(cert.delta)
    all_equal = True
    worst = first
    for m in range(1, M + 1):
        tp, tq = sys.iterate(tp, cert.L), sys.iterate(tq, cert.L)
        d = sys.distance(tp, tq)
        if not d.exceeds(cert.delta):
            all_above = False
        if d != first:
            all_equal = False
        if d.lower < worst.lower:
            worst = d
    report.record(
        "separation",
        all_above,
        f"min lower bound {worst.lower} vs delta {cert.delta} over m=0..{M}",
    )
    if first.is_exact:
        report.record("separation_matches_claim", first == cert.separation_at_k)
        report.record("recurrence_exact", all_equal)
    else:
        claim = cert.separation_at_k
        report.record(
            "separation_matches_claim",
            first.lower <= claim.upper and claim.lower <= first.upper,
        )
    return report


def separation_series(system, p, q, N: int) -> list[tuple[int, DistanceValue]]:
    """``[(n, d(T^n p, T^n q)) for n = 0..N]``."""
    sys = get_system(system)
    if N < 1:
        raise InvalidInputError("series length must be >= 1")
    sys.check_point(p)
    sys.check_point(q)
    out = []
    for n in range(N + 1):
        out.append((n, sys.distance(p, q)))
        p, q = sys.step(p), sys.step(q)
    return out
