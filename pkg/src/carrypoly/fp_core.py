"""Exact arithmetic in F_p and Z/mZ.

Residues are plain Python ints wherever speed matters; :class:`FpElem` is the
tagged scalar used at API boundaries and by the plain (unencrypted) circuits.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .errors import DomainError, StructuralError

MAX_MODULUS_BITS = 61


TRIAL_DIVISION_LIMIT = 1 << 32
# Miller-Rabin with these bases is exact below 3.3e24, far past the word-size cap
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    if n >= TRIAL_DIVISION_LIMIT:
        return _miller_rabin(n)
    # 6k +- 1 wheel
    k = 5
    limit = isqrt(n)
    while k <= limit:
        if n % k == 0 or n % (k + 2) == 0:
            return False
        k += 6
    return True


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Return ``p`` if it is a prime that fits the word-size budget, else raise."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise DomainError(f"modulus must be an int, got {type(p).__name__}")
    if p.bit_length() > MAX_MODULUS_BITS:
        raise DomainError(f"modulus {p} exceeds {MAX_MODULUS_BITS} bits")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return p


def check_odd_prime(p: int) -> int:
    check_prime(p)
    if p == 2:
        raise DomainError("p must be an odd prime")
    return p


class FpElem:
    """A residue in [0, p-1] tagged with its prime modulus."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", int(value) % p)

    def __setattr__(self, name, value):
        raise AttributeError("FpElem is immutable")

    def lift(self) -> int:
        """The representative in {0, ..., p-1} as an ordinary integer."""
        return self.value

    def _coerce(self, other) -> int:
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise StructuralError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElem(self.value + v, self.p)

    __radd__ = __add__

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElem(self.value * v, self.p)

    __rmul__ = __mul__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElem(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpElem(v - self.value, self.p)

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FpElem(pow(self.value, e, self.p), self.p)

    def inverse(self) -> "FpElem":
        if self.value == 0:
            raise DomainError("inverse of zero")
        return FpElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FpElem(v, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FpElem({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def _same_modulus(a: FpElem, b: FpElem) -> None:
    if a.p != b.p:
        raise StructuralError(f"modulus mismatch: {a.p} vs {b.p}")


def fp_add(a: FpElem, b: FpElem) -> FpElem:
    _same_modulus(a, b)
    return FpElem(a.value + b.value, a.p)


def fp_mul(a: FpElem, b: FpElem) -> FpElem:
    _same_modulus(a, b)
    return FpElem(a.value * b.value, a.p)


def fp_neg(a: FpElem) -> FpElem:
    return FpElem(-a.value, a.p)


def fp_inv(a: FpElem) -> FpElem:
    return a.inverse()


class PrimeField:
    """F_p as a ring context: builds elements and injects constants."""

    def __init__(self, p: int):
        self.p = check_prime(p)

    def __call__(self, value: int) -> FpElem:
        return FpElem(value, self.p)

    const = __call__

    def elements(self):
        return [FpElem(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def rational_mod(a, m: int) -> int:
    """Image of the rational ``a`` in Z/mZ, i.e. num * den^{-1} mod m.

    >>> rational_mod(Fraction(5, 66), 7)
    4
    """
    if m < 1:
        raise DomainError("modulus must be positive")
    a = Fraction(a)
    if gcd(a.denominator, m) != 1:
        raise DomainError(f"denominator of {a} is not invertible mod {m}")
    if m == 1:
        return 0
    return a.numerator * pow(a.denominator, -1, m) % m


def lucas_binom(a: int, b: int, p: int) -> int:
    """C(a, b) mod p as the product of digitwise binomials."""
    if a < 0 or b < 0:
        raise DomainError("lucas_binom needs non-negative arguments")
    result = 1
    while b:
        ad, bd = a % p, b % p
        if bd > ad:
            return 0
        result = result * _small_binom(ad, bd, p) % p
        a //= p
        b //= p
    return result


@lru_cache(maxsize=4096)
def _small_binom(a: int, b: int, p: int) -> int:
    num = den = 1
    for k in range(b):
        num = num * (a - k) % p
        den = den * (k + 1) % p
    return num * pow(den, -1, p) % p


def multiplicative_order(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise DomainError("zero has no multiplicative order")
    order, acc = 1, x
    while acc != 1:
        acc = acc * x % p
        order += 1
    return order


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest positive generator of F_p^x (1 for p = 2)."""
    check_prime(p)
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out
