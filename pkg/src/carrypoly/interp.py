"""Truth tables, interpolation to the minimal polynomial, and the falling-factorial basis."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb, factorial, prod
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import StructuralError
from .fp_core import FpElem, check_prime
from .mpoly import MPoly, falling_factorial


@dataclass(frozen=True)
class TruthTable:
    """Values of a function (F_p)^n -> F_p, x1-major (x1 is the most significant digit)."""

    p: int
    nvars: int
    values: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if len(self.values) != self.p ** self.nvars:
            raise StructuralError(
                f"table has {len(self.values)} entries, expected {self.p ** self.nvars}"
            )

    def points(self):
        return product(range(self.p), repeat=self.nvars)

    def index(self, point: Sequence[int]) -> int:
        i = 0
        for x in point:
            i = i * self.p + x
        return i

    def __getitem__(self, point) -> int:
        return self.values[self.index(point)]


def tabulate(f: MPoly | Callable[..., int], p: int | None = None, nvars: int | None = None) -> TruthTable:
    """Truth table of a polynomial or of any callable on integer digits."""
    if isinstance(f, MPoly):
        p, nvars = f.p, f.nvars
        fn = f
    else:
        if p is None or nvars is None:
            raise StructuralError("p and nvars are required for a plain callable")
        fn = f
    vals = tuple(int(fn(*pt)) % p for pt in product(range(p), repeat=nvars))
    return TruthTable(p, nvars, vals)


def indicator_poly(a: Sequence[int | FpElem], p: int) -> MPoly:
    """prod_i (1 - (x_i - a_i)^(p-1)), reduced: 1 at ``a`` and 0 elsewhere."""
    n = len(a)
    xs = MPoly.variables(p, n)
    out = MPoly.constant(1, p, n)
    for x, ai in zip(xs, a):
        ai = ai.value if isinstance(ai, FpElem) else ai
        out = out * (1 - (x - ai) ** (p - 1))
    return out.reduce()


def _indicator_matrix(p: int) -> np.ndarray:
    """U[k, a] = coefficient of x^k in 1 - (x - a)^(p-1)."""
    u = np.zeros((p, p), dtype=object)
    for a in range(p):
        for k in range(p):
            u[k, a] = -comb(p - 1, k) * pow(-a, p - 1 - k, p) % p
        u[0, a] = (u[0, a] + 1) % p
    return u


def interpolate(t: TruthTable) -> MPoly:
    """Minimal polynomial expression of a tabulated function.

    Computes sum_a f(a) * indicator_a(x); since each indicator is a product
    of univariate factors the sum is contracted one axis at a time.
    """
    p, n = t.p, t.nvars
    if n == 0:
        return MPoly.constant(t.values[0], p, 0)
    u = _indicator_matrix(p)
    dtype = np.int64 if p < (1 << 20) else object
    u = u.astype(dtype)
    coeffs = np.array(t.values, dtype=dtype).reshape((p,) * n)
    for axis in range(n):
        coeffs = np.tensordot(u, coeffs, axes=([1], [axis])) % p
        coeffs = np.moveaxis(coeffs, 0, axis)
    terms = {tuple(int(k) for k in idx): int(coeffs[idx]) for idx in zip(*np.nonzero(coeffs))}
    return MPoly(p, n, terms)


def interpolate_by_indicators(t: TruthTable) -> MPoly:
    """Literal indicator-sum construction; quadratic in the table size, for cross-checks."""
    out = MPoly.zero(t.p, t.nvars)
    for pt, v in zip(t.points(), t.values):
        if v:
            out = out + indicator_poly(pt, t.p).scale(v)
    return out


def _gamma_at(dprime: Sequence[int], d: Sequence[int], p: int) -> int:
    # Gamma_{d'}(d) = prod d_j! / (d_j - d'_j)!, zero unless d' <= d componentwise
    out = 1
    for a, b in zip(dprime, d):
        for k in range(a):
            out = out * (b - k) % p
    return out


def to_gamma_basis(f: MPoly) -> dict[tuple[int, ...], int]:
    """Coefficients of a reduced polynomial in the basis prod_j x_j (x_j - 1) ... (x_j - d_j + 1).

    Solves the triangular system obtained by evaluating at the points
    d in [0, p-1]^n in order of increasing total degree.
    """
    p, n = f.p, f.nvars
    if not f.is_reduced():
        raise StructuralError("to_gamma_basis needs a reduced polynomial")
    values = tabulate(f)
    order = sorted(product(range(p), repeat=n), key=sum)
    gamma: dict[tuple[int, ...], int] = {}
    for d in order:
        acc = values[d]
        for dp, g in gamma.items():
            if all(a <= b for a, b in zip(dp, d)):
                acc -= g * _gamma_at(dp, d, p)
        acc %= p
        if acc:
            pivot = prod(factorial(k) for k in d) % p
            gamma[d] = acc * pow(pivot, -1, p) % p
    return gamma


def gamma_to_poly(coeffs: Mapping[Sequence[int], int | FpElem], nvars: int, p: int) -> MPoly:
    """Expand sum_d c_d * Gamma_d into the monomial basis (reduced)."""
    xs = MPoly.variables(p, nvars)
    cache: dict[tuple[int, int], MPoly] = {}
    out = MPoly.zero(p, nvars)
    for d, c in coeffs.items():
        d = tuple(d)
        if len(d) != nvars:
            raise StructuralError(f"composition {d} has length != {nvars}")
        if any(not 0 <= k <= p - 1 for k in d):
            raise StructuralError(f"composition {d} has an entry outside [0, {p - 1}]")
        c = c.value if isinstance(c, FpElem) else c
        term = MPoly.constant(c, p, nvars)
        for j, k in enumerate(d):
            if k:
                if (j, k) not in cache:
                    cache[(j, k)] = falling_factorial(xs[j], k)
                term = term * cache[(j, k)]
        out = out + term
    return out.reduce()


# -- truth-table text format --------------------------------------------------

def format_table(t: TruthTable) -> str:
    lines = [f"{t.p} {t.nvars}"]
    for pt, v in zip(t.points(), t.values):
        lines.append(" ".join(str(x) for x in pt) + f" -> {v}")
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> TruthTable:
    """Parse ``p n`` followed by ``x1 ... xn -> v`` lines (any order, full coverage)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise StructuralError("empty truth table")
    try:
        p, n = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise StructuralError(f"bad header line {lines[0]!r}; expected 'p n'") from None
    check_prime(p)
    seen: dict[tuple[int, ...], int] = {}
    for ln in lines[1:]:
        lhs, sep, rhs = ln.partition("->")
        if not sep:
            raise StructuralError(f"missing '->' in line {ln!r}")
        try:
            pt = tuple(int(tok) for tok in lhs.split())
            v = int(rhs)
        except ValueError:
            raise StructuralError(f"non-integer entry in line {ln!r}") from None
        if len(pt) != n or any(not 0 <= x < p for x in pt) or not 0 <= v < p:
            raise StructuralError(f"entry out of range in line {ln!r}")
        if pt in seen:
            raise StructuralError(f"duplicated input tuple {pt}")
        seen[pt] = v
    for pt in product(range(p), repeat=n):
        if pt not in seen:
            raise StructuralError(f"missing input tuple {pt}")
    return TruthTable(p, n, tuple(seen[pt] for pt in product(range(p), repeat=n)))
