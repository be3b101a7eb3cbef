"""Exception types shared across the package."""


class SepsymError(Exception):
    """Base class for all package-specific errors."""


class GroundSetMismatchError(SepsymError):
    """Two values built over different ground sets were combined."""


class ScaleLimitError(SepsymError):
    """A computation exceeded the configured desk-scale bound."""


class InvalidSeedError(SepsymError):
    """A seed collection violates the symmetric-collection invariants."""


class ParityError(SepsymError):
    """An operation defined only for one parity of n was called on the other."""


class DomainError(SepsymError):
    """A collection member falls outside the requested domain."""


class UnsupportedError(SepsymError):
    """No closed-form target exists for the requested combination."""


class NotMaximalError(SepsymError):
    """Input collection is not maximal of the expected size / compatibility."""


class NoTilingError(SepsymError):
    """Exact-cover search for a tiling exhausted without a solution."""


class NotMCoveredError(SepsymError):
    """The middle line of the zonogon is not covered by edges of the tiling."""


class NotSymmetricError(SepsymError):
    """An object required to be mirror-symmetric is not."""


class BadMembraneError(SepsymError):
    """A membrane fails the requirements of the requested operation."""


class NoCubillageError(SepsymError):
    """Exact-cover search for a cubillage exhausted without a solution."""
