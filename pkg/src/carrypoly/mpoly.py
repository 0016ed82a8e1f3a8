"""Sparse multivariate polynomials over F_p.

Terms are stored as ``{exponent tuple: coefficient}`` with coefficients in
[1, p-1]. Arithmetic never reduces exponents on its own; call
:meth:`MPoly.reduce` to fold ``x^p -> x``.
"""
from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import StructuralError
from .fp_core import FpElem, check_prime


class Metrics(NamedTuple):
    monomial_count: int
    total_degree: int
    max_var_degree: int


class MPoly:
    __slots__ = ("p", "nvars", "terms")

    def __init__(self, p: int, nvars: int, terms=None):
        self.p = check_prime(p)
        if nvars < 0:
            raise StructuralError("nvars must be non-negative")
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise StructuralError(f"exponent vector {exps} has length != {nvars}")
            if any(e < 0 for e in exps):
                raise StructuralError(f"negative exponent in {exps}")
            c = int(c) % p
            if c:
                clean[exps] = (clean.get(exps, 0) + c) % p
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, p: int, nvars: int) -> "MPoly":
        return cls(p, nvars)

    @classmethod
    def constant(cls, c: int, p: int, nvars: int) -> "MPoly":
        return cls(p, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, j: int, p: int, nvars: int) -> "MPoly":
        """The variable x_{j+1} (``j`` is 0-based)."""
        if not 0 <= j < nvars:
            raise StructuralError(f"variable index {j} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[j] = 1
        return cls(p, nvars, {tuple(exps): 1})

    @classmethod
    def variables(cls, p: int, nvars: int) -> list["MPoly"]:
        return [cls.var(j, p, nvars) for j in range(nvars)]

    @classmethod
    def _raw(cls, p: int, nvars: int, terms: dict) -> "MPoly":
        # trusted path: keys valid, coefficients already in [1, p-1]
        obj = cls.__new__(cls)
        obj.p, obj.nvars, obj.terms = p, nvars, terms
        return obj

    # -- ring structure -----------------------------------------------------
    def _check(self, other: "MPoly") -> None:
        if self.p != other.p:
            raise StructuralError(f"modulus mismatch: {self.p} vs {other.p}")
        if self.nvars != other.nvars:
            raise StructuralError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise StructuralError(f"modulus mismatch: {self.p} vs {other.p}")
            other = other.value
        if isinstance(other, int):
            return MPoly.constant(other, self.p, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly._raw(p, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return MPoly._raw(p, self.nvars, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FpElem)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return MPoly._raw(p, self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        if isinstance(c, FpElem):
            if c.p != self.p:
                raise StructuralError(f"modulus mismatch: {self.p} vs {c.p}")
            c = c.value
        p = self.p
        c %= p
        if not c:
            return MPoly.zero(p, self.nvars)
        return MPoly._raw(p, self.nvars, {e: v * c % p for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.constant(1, self.p, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return (self.p, self.nvars, self.terms) == (other.p, other.nvars, other.terms)
        if isinstance(other, int):
            return self == MPoly.constant(other, self.p, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- reduction & structure ----------------------------------------------
    def reduce(self) -> "MPoly":
        """Fold every exponent into [0, p-1] using x^p = x on F_p."""
        p = self.p
        m = p - 1
        out: dict = {}
        for e, c in self.terms.items():
            r = tuple(1 + (k - 1) % m if k else 0 for k in e)
            out[r] = (out.get(r, 0) + c) % p
        return MPoly._raw(p, self.nvars, {e: c for e, c in out.items() if c})

    def is_reduced(self) -> bool:
        return all(k < self.p for e in self.terms for k in e)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def metrics(self) -> Metrics:
        return Metrics(
            len(self.terms),
            self.total_degree(),
            max((max(e, default=0) for e in self.terms), default=0),
        )

    def is_symmetric(self) -> bool:
        terms = self.terms
        for k in range(self.nvars - 1):
            for e, c in terms.items():
                swapped = e[:k] + (e[k + 1], e[k]) + e[k + 2:]
                if terms.get(swapped) != c:
                    return False
        return True

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    # -- evaluation ---------------------------------------------------------
    def __call__(self, *xs) -> int:
        """Evaluate at integer (or FpElem) arguments; returns an int residue."""
        if len(xs) != self.nvars:
            raise StructuralError(f"expected {self.nvars} arguments, got {len(xs)}")
        p = self.p
        vals = [x.value if isinstance(x, FpElem) else x % p for x in xs]
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * pow(v, k, p) % p
            total += t
        return total % p

    def evaluate(self, point: Sequence) -> FpElem:
        for x in point:
            if isinstance(x, FpElem) and x.p != self.p:
                raise StructuralError(f"modulus mismatch: {self.p} vs {x.p}")
        return FpElem(self(*point), self.p)

    def evaluate_circuit(self, point: Sequence, const: Callable[[int], object]):
        """Evaluate using only ``+``, ``*`` and constant injection.

        Strategy (fixed, so operation counts are reproducible): per-variable
        power tables ``x^k = x^ceil(k/2) * x^floor(k/2)``, each monomial as a
        balanced product tree over its variable powers, coefficient applied
        as a constant multiple (skipped when it is 1), terms summed in
        canonical order.
        """
        if len(point) != self.nvars:
            raise StructuralError(f"expected {self.nvars} arguments, got {len(point)}")
        if not self.terms:
            return const(0)
        top = [0] * self.nvars
        for e in self.terms:
            for j, k in enumerate(e):
                if k > top[j]:
                    top[j] = k
        powers = []
        for j, x in enumerate(point):
            table = [None, x]
            for k in range(2, top[j] + 1):
                table.append(table[(k + 1) // 2] * table[k // 2])
            powers.append(table)
        acc = None
        for e, c in self.sorted_terms():
            factors = [powers[j][k] for j, k in enumerate(e) if k]
            if factors:
                term = _balanced_product(factors)
                if c != 1:
                    term = const(c) * term
            else:
                term = const(c)
            acc = term if acc is None else acc + term
        return acc

    # -- composition helpers ------------------------------------------------
    def compose_univariate(self, g: "MPoly") -> "MPoly":
        """For a univariate ``self``, return self(g) with g in any number of variables."""
        if self.nvars != 1:
            raise StructuralError("compose_univariate needs a univariate polynomial")
        if self.p != g.p:
            raise StructuralError(f"modulus mismatch: {self.p} vs {g.p}")
        out = MPoly.zero(self.p, g.nvars)
        for (k,), c in self.terms.items():
            out = out + (g ** k).scale(c)
        return out

    # -- text ---------------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{j + 1}" for j in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly(p={self.p}, nvars={self.nvars}, {self.to_str()!r})"


def _balanced_product(factors: list):
    while len(factors) > 1:
        nxt = [factors[i] * factors[i + 1] for i in range(0, len(factors) - 1, 2)]
        if len(factors) % 2:
            nxt.append(factors[-1])
        factors = nxt
    return factors[0]


def elementary_symmetric(k: int, nvars: int, p: int) -> MPoly:
    """e_k(x1, ..., xn); zero when k > n."""
    if k < 0:
        raise StructuralError("k must be non-negative")
    terms = {}
    for subset in combinations(range(nvars), k):
        e = [0] * nvars
        for j in subset:
            e[j] = 1
        terms[tuple(e)] = 1
    return MPoly(p, nvars, terms)


def product_of_variables(p: int, nvars: int) -> MPoly:
    return MPoly(p, nvars, {(1,) * nvars: 1})


def falling_factorial(x: MPoly, d: int) -> MPoly:
    """x (x - 1) ... (x - d + 1) for a polynomial ``x``."""
    out = MPoly.constant(1, x.p, x.nvars)
    for k in range(d):
        out = out * (x - k)
    return out


def univariate(coeffs: Iterable[int], p: int) -> MPoly:
    """Univariate polynomial from ascending coefficients."""
    return MPoly(p, 1, {(k,): c for k, c in enumerate(coeffs) if c % p})
