"""Carry of p-ary multiplication (digit p^1 of a product of lifted digits).

psi_1(x_1..x_n) = X * (Psi(X) - sum_j Psi(x_j) + (n-1) Psi(1)) with X = x_1 ... x_n
and Psi(t) = sum_{i=1}^{p-2} (B_{p-1-i} / (p-1-i))^<p> t^i.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .bernoulli import bernoulli
from .errors import ConsistencyError, DomainError
from .fp_core import FpElem, check_odd_prime, rational_mod
from .mpoly import MPoly, product_of_variables, univariate


@dataclass(frozen=True)
class PsiAux:
    p: int
    coeffs: tuple[int, ...]  # beta_1 .. beta_{p-2}
    psi1_const: int  # Psi(1)

    def __post_init__(self):
        p, beta = self.p, self.coeffs
        if len(beta) != p - 2:
            raise ConsistencyError(f"expected {p - 2} coefficients, got {len(beta)}")
        for i in range(1, p - 3, 2):
            if beta[i - 1]:
                raise ConsistencyError(f"odd coefficient beta_{i} = {beta[i - 1]} should vanish")
        if beta[-1] != (p - 1) // 2:
            raise ConsistencyError(f"top coefficient {beta[-1]} != (p-1)/2")
        if sum(beta) % p != self.psi1_const:
            raise ConsistencyError("psi1_const is not Psi(1)")

    def __call__(self, t) -> int:
        t = t.value if isinstance(t, FpElem) else t % self.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc + c) * t % self.p
        return acc

    def bar(self, t) -> int:
        """Psi(1) - Psi(t): the normalised coboundary potential."""
        return (self.psi1_const - self(t)) % self.p

    def as_poly(self) -> MPoly:
        return univariate((0,) + self.coeffs, self.p)

    def to_str(self, var: str = "t") -> str:
        """Descending terms with explicit coefficients, e.g. ``2*t^3 + 3*t^2``."""
        parts = []
        for i in range(len(self.coeffs), 0, -1):
            c = self.coeffs[i - 1]
            if c:
                parts.append(f"{c}*{var}" if i == 1 else f"{c}*{var}^{i}")
        return " + ".join(parts) or "0"


@lru_cache(maxsize=None)
def psi_aux(p: int) -> PsiAux:
    check_odd_prime(p)
    beta = []
    for i in range(1, p - 1):
        k = p - 1 - i
        ratio = bernoulli(k) / k
        # k <= p-2, so von Staudt-Clausen keeps p out of the denominator
        if ratio.denominator % p == 0:
            raise ConsistencyError(f"B_{k}/{k} = {ratio} has p = {p} in its denominator")
        beta.append(rational_mod(ratio, p))
    return PsiAux(p, tuple(beta), sum(beta) % p)


@lru_cache(maxsize=None)
def psi1_poly(n: int, p: int) -> MPoly:
    """Minimal polynomial of the multiplication carry for n factors."""
    check_odd_prime(p)
    if n < 1:
        raise DomainError("need at least one factor")
    if n == 1:
        return MPoly.zero(p, 1)
    return psi1_formula(n, p)


def psi1_formula(n: int, p: int) -> MPoly:
    """The closed form expanded as written, for any n >= 1 (it collapses to 0 at n = 1)."""
    check_odd_prime(p)
    aux = psi_aux(p)
    psi = aux.as_poly()
    xs = MPoly.variables(p, n)
    prod_x = product_of_variables(p, n)
    inner = psi.compose_univariate(prod_x) + (n - 1) * aux.psi1_const
    for x in xs:
        inner = inner - psi.compose_univariate(x)
    return (prod_x * inner).reduce()


def carry_oracle_mul(xs: Sequence, p: int | None = None) -> int:
    """Digit 1 (the p^1 place) of the integer product of the lifted inputs."""
    vals = []
    for x in xs:
        if isinstance(x, FpElem):
            p = x.p if p is None else p
            vals.append(x.value)
        else:
            vals.append(int(x))
    if p is None:
        raise DomainError("p is required when the inputs are plain integers")
    prod = 1
    for v in vals:
        prod *= v % p
    return prod // p % p


def monomial_count_psi1(n: int, p: int) -> int:
    return psi1_poly(n, p).metrics().monomial_count


def expected_monomial_count_psi1(n: int, p: int) -> int:
    """(n+1)(p-1)/2 monomials, plus x_1...x_n when its coefficient (n-1) Psi(1) is nonzero mod p.

    That coefficient vanishes for Wilson primes and also whenever p divides
    n - 1 (e.g. p = 3, n = 4). Assumes every even-index coefficient of Psi
    is nonzero mod p.
    """
    base = (n + 1) * (p - 1) // 2
    return base + (1 if (n - 1) * psi_aux(p).psi1_const % p else 0)


def teichmuller_lift(x, p: int) -> int:
    """[x] = x~^p in Z/p^2: multiplicative, congruent to x mod p."""
    check_odd_prime(p)
    x = x.value if isinstance(x, FpElem) else x % p
    if x == 0:
        raise DomainError("the Teichmuller lift is defined on nonzero residues")
    return pow(x, p, p * p)


def section_alpha(x, p: int) -> int:
    """((x~ [x]^{-1} - 1) / p)^<p>, the gap between the naive and multiplicative sections."""
    x = x.value if isinstance(x, FpElem) else x % p
    m = p * p
    ratio = x * pow(teichmuller_lift(x, p), -1, m) % m
    if ratio % p != 1:
        raise ConsistencyError("section ratio is not congruent to 1 mod p")
    return (ratio - 1) // p % p


def lift_defect(a, p: int) -> int:
    """(([a] + 1 - [a+1]) / p)^<p> for a not in {0, -1}."""
    a = a.value if isinstance(a, FpElem) else a % p
    if a in (0, p - 1):
        raise DomainError("lift_defect needs a not in {0, -1}")
    m = p * p
    diff = (teichmuller_lift(a, p) + 1 - teichmuller_lift(a + 1, p)) % m
    if diff % p:
        raise ConsistencyError("lift difference is not divisible by p")
    return diff // p % p

