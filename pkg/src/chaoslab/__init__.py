"""Certified sensitivity and asymptotic sensitivity for the binary shift, tent and logistic maps."""
from .errors import (
    ChaoslabError,
    DomainError,
    InvalidInputError,
    UnsupportedDeltaError,
    VerificationFailure,
)
from .interval_maps import AnglePoint, DistanceValue
from .symbolic import EPWord, canonicalize, metric, parse_word, shift
from .systems import SYSTEMS, get_system, iterate, distance, nearest_periodic, sensitivity_witness
from .witness import (
    VerificationReport,
    WitnessCertificate,
    asymptotic_witness,
    separation_series,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "AnglePoint",
    "ChaoslabError",
    "DistanceValue",
    "DomainError",
    "EPWord",
    "InvalidInputError",
    "SYSTEMS",
    "UnsupportedDeltaError",
    "VerificationFailure",
    "VerificationReport",
    "WitnessCertificate",
    "asymptotic_witness",
    "canonicalize",
    "distance",
    "get_system",
    "iterate",
    "metric",
    "nearest_periodic",
    "parse_word",
    "sensitivity_witness",
    "separation_series",
    "shift",
    "verify_certificate",
]
