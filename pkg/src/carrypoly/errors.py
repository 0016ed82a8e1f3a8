class CarryPolyError(Exception):
    pass


class StructuralError(CarryPolyError, ValueError):
    """Operands do not fit together (modulus, arity or tape mismatch)."""


class DomainError(CarryPolyError, ArithmeticError):
    """An argument lies outside the mathematical domain of the operation."""


class ConsistencyError(CarryPolyError, AssertionError):
    """An internal identity that must hold did not."""
