"""Carry polynomials for p-ary addition and multiplication over F_p.

The i-th base-p digit of a sum or product of digits is a polynomial function
of the digits. This package builds those polynomials exactly, checks them
against integer arithmetic, and runs big-integer algorithms that touch
digits only through addition, multiplication and constants.
"""
from .add_carry import (
    carry_oracle_add,
    enumerate_compositions,
    phi1_two_poly,
    phi_poly,
    phi_prime_poly,
    phi_values,
    phi_values_lucas,
)
from .bernoulli import (
    bernoulli,
    bernoulli_poly,
    fermat_quotient,
    power_sum,
    wilson_from_bernoulli,
    wilson_quotient,
)
from .bignum import (
    CarryState,
    Digits,
    add_many,
    add_two,
    from_digits,
    lookahead_d,
    mul_listed,
    mul_schoolbook,
    run_batch,
    to_digits,
)
from .errors import CarryPolyError, ConsistencyError, DomainError, StructuralError
from .fp_core import FpElem, PrimeField, lucas_binom, primitive_root, rational_mod
from .interp import TruthTable, gamma_to_poly, indicator_poly, interpolate, tabulate, to_gamma_basis
from .mpoly import MPoly, elementary_symmetric
from .mul_carry import (
    PsiAux,
    carry_oracle_mul,
    monomial_count_psi1,
    psi1_poly,
    psi_aux,
    section_alpha,
    teichmuller_lift,
)
from .restricted_ops import CostTape, TrackedValue, eval_tracked, tv_add, tv_const, tv_mul

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
