"""Exception types shared across the package."""


class QTSFError(Exception):
    """Base class for errors raised by qtsf."""


class ParseError(QTSFError, ValueError):
    """Malformed partition string, JSON payload or command argument."""


class PoleError(QTSFError, ArithmeticError):
    """A limit or specialization hit a genuine pole."""


class NotPolynomialError(QTSFError, ValueError):
    """A value expected to be a Laurent polynomial still has a denominator."""


class ChecksumError(QTSFError):
    """A cached table failed its content-hash check."""


class SizeGuardError(QTSFError):
    """The requested computation exceeds the configured size bound."""


class IntegrityError(QTSFError):
    """A space that should be closed under an action was found not to be."""


class IdentityMismatch(QTSFError):
    """Independent routes to the same quantity disagreed."""
