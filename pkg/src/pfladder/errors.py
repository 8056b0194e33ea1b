"""Exception hierarchy.

Every error carries its class name so the CLI can report it verbatim.
"""


class PfladderError(Exception):
    """Base class for all errors raised by this package."""


# ladder data model
class CornerOutOfRange(PfladderError, ValueError):
    pass


class CoincidentCorners(PfladderError, ValueError):
    pass


class NotSortable(PfladderError, ValueError):
    pass


class InvalidSpec(PfladderError, ValueError):
    pass


class EmptySpec(PfladderError, ValueError):
    pass


class StepNotApplicable(PfladderError, ValueError):
    pass


class BadCornerIndex(PfladderError, IndexError):
    pass


class UnknownFamily(PfladderError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown family"


class BadParams(PfladderError, ValueError):
    pass


# invariants
class HypothesisFails(PfladderError, ValueError):
    pass


class NonTermination(PfladderError, RuntimeError):
    pass


# oracle
class OddSubset(PfladderError, ValueError):
    pass


class IndexOutOfRange(PfladderError, ValueError):
    pass


class TooManyGenerators(PfladderError, RuntimeError):
    pass


class BudgetExceeded(PfladderError, RuntimeError):
    pass


class NegativeHEntry(PfladderError, ArithmeticError):
    pass
