"""Exception types shared across the package."""


class CohereError(Exception):
    """Base class for all package errors."""


class ParseError(CohereError):
    def __init__(self, message, text="", pos=0):
        super().__init__(message)
        self.text = text
        self.pos = pos

    def __str__(self):
        base = super().__str__()
        if self.text:
            return "%s (at column %d in %r)" % (base, self.pos, self.text)
        return base


class IllTyped(CohereError):
    """A composition whose interface formulae disagree.

    ``position`` is the path of the offending node inside the term
    (a tuple of child indices from the root).
    """

    def __init__(self, message, position=()):
        super().__init__(message)
        self.position = position

    def __str__(self):
        return "%s [at %s]" % (super().__str__(), "/".join(map(str, self.position)) or "root")


class HeadNotInTheory(CohereError):
    def __init__(self, head, theory, position=()):
        super().__init__("head %r is not available in theory %s" % (head, theory))
        self.head = head
        self.theory = theory
        self.position = position


class UnitForbidden(CohereError):
    """The unit object occurs where the ambient theory rejects it."""


class UnitPresent(UnitForbidden):
    """Alias used by the unit-free inhabitation procedure."""


class BadOccurrence(CohereError):
    """An occurrence index that does not address a functor application."""


class SizeMismatch(CohereError):
    """Graph composition with unequal interface sizes."""


class NoArrow(CohereError):
    """No canonical arrow exists between the two formulae."""


class NotPsiFactor(CohereError):
    """kappa/tau asked of a factor whose head carries no contracted strand."""


class BoundaryMismatch(CohereError):
    """Closure search between terms with different (source, target)."""


class PreconditionViolated(CohereError):
    def __init__(self, which, mode):
        super().__init__("formula %s fails diversification (%s)" % (which, mode))
        self.which = which
        self.mode = mode


class BudgetExhausted(CohereError):
    """A step budget ran out; for the normaliser this signals an internal bug."""
