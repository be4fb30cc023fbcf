"""Exception hierarchy shared by the galconj core modules."""


class GalconjError(Exception):
    """Base class for all galconj errors."""


class SpecError(GalconjError, ValueError):
    """A group description is malformed or out of range."""


class GroupAxiomError(GalconjError):
    """A multiplication table violates the group axioms."""


class BudgetExceededError(GalconjError):
    """An enumeration or computation would exceed a configured budget."""


class ActionError(GalconjError):
    """A semidirect-product action is not an automorphism or not a homomorphism."""


class StructureError(GalconjError):
    """A structural operation was called outside its precondition."""


class CyclotomicError(GalconjError, ValueError):
    pass


class SplittingError(GalconjError):
    """Eigenspace splitting over F_p did not separate all characters."""


class LiftingError(GalconjError):
    """A lifted eigenvalue multiplicity fell outside its admissible range."""


class TableError(GalconjError):
    """Character table computation or lookup failed."""


class CatalogError(GalconjError, ValueError):
    """Invalid family parameters or a corrupted bundled data file."""
