"""Exception hierarchy shared by every module.

Each class carries the name of the module that raises it so the CLI can
report which layer rejected the input.
"""


class ShefferError(Exception):
    module = "itersheffer"


class NotInvertible(ShefferError):
    module = "powerseries"


class NotDelta(ShefferError):
    module = "powerseries"


class InnerNotDelta(ShefferError):
    module = "powerseries"


class DomainViolation(ShefferError):
    module = "powerseries"


class MixedReferenceSequence(ShefferError):
    module = "riordan"


class DimensionMismatch(ShefferError):
    module = "determinantal"


class ZeroDiagonal(ShefferError):
    module = "determinantal"


class ShapeMismatch(ShefferError):
    module = "iterated"


class InvalidParameter(ShefferError):
    module = "families"


class IndexOutOfRange(ShefferError):
    module = "families"


class UnboundParameter(ShefferError):
    module = "specparse"


class ExpressionSyntaxError(ShefferError):
    """Raised by the expression parser.

    ``offset`` is the byte offset into the (ASCII) input where parsing
    stopped and ``expected`` the set of token kinds that would have been
    accepted there.
    """

    module = "specparse"

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = message
        if self.expected:
            detail += " (expected one of: %s)" % ", ".join(sorted(self.expected))
        super().__init__("%s at offset %d" % (detail, offset))
