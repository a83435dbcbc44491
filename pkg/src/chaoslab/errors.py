"""Exception hierarchy shared by every chaoslab module."""


class ChaoslabError(Exception):
    """Base class for all library errors."""


class InvalidInputError(ChaoslabError, ValueError):
    """Malformed arguments: empty cycles, unparsable encodings, bad counts."""


class DomainError(ChaoslabError, ValueError):
    """A point lies outside the phase space of the system it was given to."""


class UnsupportedDeltaError(ChaoslabError, ValueError):
    """The requested separation threshold exceeds what the construction certifies."""


class VerificationFailure(ChaoslabError):
    """A constructed object failed its own post-construction check.

    Raised only on internal soundness defects; callers should never see it.
    """
