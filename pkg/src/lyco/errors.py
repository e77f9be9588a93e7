"""Error taxonomy shared by every layer of the kernel.

All exceptions carry plain-text messages; nothing here is recoverable
state, so they are deliberately thin.
"""


class LycoError(Exception):
    """Base class for every error raised by this package."""


class RingMismatch(LycoError):
    """Operands belong to different ring contexts."""


class ZeroInversion(LycoError):
    """Attempted to invert the zero element of a field."""


class NonInvertible(LycoError):
    """Element has no inverse (degenerate extension data, etc.)."""


class ZeroPolynomial(LycoError):
    """Leading term of the zero polynomial was requested."""


class MonomialOverflow(LycoError):
    """An exponent left the supported 16-bit range."""


class ResourceLimit(LycoError):
    """A configured budget (pair queue, reduction steps) was exhausted."""


class NonHomogeneousInput(LycoError):
    """Graded machinery received a non-homogeneous presentation."""


class UnitIdeal(LycoError):
    """Operation undefined for the unit ideal."""


class DecompositionIncomplete(LycoError):
    """Prime decomposition could not be completed within budget.

    Raised only where a complete answer is required; the decomposer
    itself returns a flagged partial result instead of lying.
    """


class NegativeHilbertDifference(LycoError):
    """hilb(B_alpha) - hilb(R/I^alpha) had a negative coefficient.

    The natural map R/I^alpha -> B_alpha is injective modulo the top
    dimensional part, so a negative difference means the computation is
    internally inconsistent.  Hard error.
    """


class CertificateFailure(LycoError):
    """An internal consistency certificate did not check out."""


class EmptyGraph(LycoError):
    """Component analysis of a graph with no vertices."""


class SessionSyntaxError(LycoError):
    """Session file could not be parsed; carries line and column."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}" + (f", col {col}" if col is not None else "") + f": {message}"
        super().__init__(message)


class UndeclaredVariable(SessionSyntaxError):
    """A polynomial used a symbol the ring did not declare."""


class DuplicateName(SessionSyntaxError):
    """A session declared the same name twice."""
