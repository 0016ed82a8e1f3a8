"""Exact Bernoulli numbers (B_1 = -1/2), Bernoulli polynomials, Wilson and Fermat quotients."""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

from .errors import ConsistencyError, DomainError
from .fp_core import check_odd_prime, check_prime, is_prime, rational_mod

DEFAULT_MAX_WILSON_P = 10_000


class BernoulliCache:
    """Growable table of B_0, B_1, ...; concurrent readers, one writer at a time."""

    def __init__(self):
        self._values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._values)

    def get(self, ell: int) -> Fraction:
        if ell < 0:
            raise DomainError("Bernoulli index must be non-negative")
        values = self._values
        if ell < len(values):
            return values[ell]
        with self._lock:
            self._extend(ell)
            return self._values[ell]

    def _extend(self, ell: int) -> None:
        values = list(self._values)
        # sum_{s=0}^{m} C(m+1, s) B_s = 0 for m >= 1
        for m in range(len(values), ell + 1):
            if m > 1 and m % 2:
                values.append(Fraction(0))
                continue
            acc = sum((comb(m + 1, s) * values[s] for s in range(m)), Fraction(0))
            values.append(-acc / (m + 1))
        self._values = values


_CACHE = BernoulliCache()


def bernoulli(ell: int) -> Fraction:
    return _CACHE.get(ell)


def bernoulli_poly(m: int) -> list[Fraction]:
    """Ascending coefficients of B_m(x) = sum_s C(m, s) B_{m-s} x^s."""
    if m < 0:
        raise DomainError("degree must be non-negative")
    return [comb(m, s) * bernoulli(m - s) for s in range(m + 1)]


def eval_poly(coeffs: list[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def power_sum(m: int, N: int) -> int:
    """sum_{k=1}^{N} k^m via (B_{m+1}(N+1) - B_{m+1}) / (m+1)."""
    if m < 1 or N < 1:
        raise DomainError("power_sum needs m, N >= 1")
    value = (eval_poly(bernoulli_poly(m + 1), N + 1) - bernoulli(m + 1)) / (m + 1)
    if value.denominator != 1:
        raise ConsistencyError(f"power sum came out non-integral: {value}")
    return value.numerator


def staudt_clausen_denominator(ell: int) -> int:
    """Product of the primes q with (q - 1) | ell."""
    out = 1
    for d in range(1, ell + 1):
        if ell % d == 0 and is_prime(d + 1):
            out *= d + 1
    return out


def wilson_quotient(p: int, max_p: int = DEFAULT_MAX_WILSON_P) -> int:
    """((p-1)! + 1) / p reduced mod p."""
    check_prime(p)
    if p > max_p:
        raise DomainError(f"p = {p} exceeds the factorial budget {max_p}")
    num = factorial(p - 1) + 1
    q, r = divmod(num, p)
    if r:
        raise ConsistencyError(f"(p-1)! + 1 is not divisible by {p}")
    return q % p


def wilson_from_bernoulli(p: int) -> int:
    """(B_{p-1} + 1/p - 1)^<p>; the p in the two denominators cancels."""
    check_odd_prime(p)
    value = bernoulli(p - 1) + Fraction(1, p) - 1
    if value.denominator % p == 0:
        raise ConsistencyError(f"denominator of {value} still divisible by {p}")
    return rational_mod(value, p)


def fermat_quotient(a: int, p: int) -> int:
    """(a^(p-1) - 1) / p reduced mod p."""
    check_prime(p)
    if a % p == 0:
        raise DomainError(f"{p} divides {a}")
    if a < 1:
        raise DomainError("fermat_quotient needs a >= 1")
    # a^(p-1) mod p^2 carries all the information needed
    return (pow(a, p - 1, p * p) - 1) // p % p
