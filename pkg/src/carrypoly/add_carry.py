"""Carry polynomials for p-ary addition.

``phi_poly(i, n, p)`` is the minimal polynomial of the i-th base-p digit of
x1 + ... + xn (digits lifted to {0, ..., p-1}), written as a sum over
[p-1]-restricted compositions d of p^i of prod_j x_j^(d_j falling) / d_j!.
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from .errors import DomainError
from .fp_core import FpElem, check_prime
from .interp import gamma_to_poly
from .mpoly import MPoly, falling_factorial


def _digits_of(xs: Sequence, p: int | None) -> tuple[list[int], int]:
    vals = []
    for x in xs:
        if isinstance(x, FpElem):
            if p is None:
                p = x.p
            vals.append(x.value)
        else:
            vals.append(int(x))
    if p is None:
        raise DomainError("p is required when the inputs are plain integers")
    return [v % p for v in vals], p


def carry_oracle_add(xs: Sequence, i: int, p: int | None = None) -> int:
    """The i-th base-p digit of the integer sum of the lifted inputs."""
    vals, p = _digits_of(xs, p)
    return sum(vals) // p ** i % p


def enumerate_compositions(target: int, n: int, p: int) -> list[tuple[int, ...]]:
    """All (d_1, ..., d_n) with 0 <= d_j <= p-1 summing to ``target``, lexicographic."""
    out: list[tuple[int, ...]] = []
    top = p - 1
    if target < 0 or target > n * top:
        return out

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        lo = max(0, remaining - (slots - 1) * top)
        for d in range(lo, min(top, remaining) + 1):
            prefix.append(d)
            rec(prefix, remaining - d, slots - 1)
            prefix.pop()

    rec([], target, n)
    return out


def composition_count(target: int, n: int, p: int) -> int:
    """Coefficient of X^target in (1 + X + ... + X^(p-1))^n."""
    poly = [1]
    for _ in range(n):
        nxt = [0] * (len(poly) + p - 1)
        for k, c in enumerate(poly):
            for d in range(p):
                nxt[k + d] += c
        poly = nxt
    return poly[target] if 0 <= target < len(poly) else 0


@lru_cache(maxsize=None)
def inverse_factorials(p: int) -> tuple[int, ...]:
    """(1/d!)^<p> for d = 0 .. p-1."""
    return tuple(pow(factorial(d) % p, -1, p) for d in range(p))


def gamma_coefficient(d: Sequence[int], p: int) -> int:
    inv = inverse_factorials(p)
    out = 1
    for k in d:
        out = out * inv[k] % p
    return out


@lru_cache(maxsize=None)
def phi_poly(i: int, n: int, p: int) -> MPoly:
    """Minimal polynomial of the carry to digit ``i`` of an n-term sum."""
    check_prime(p)
    if i < 0:
        raise DomainError("carry index must be non-negative")
    target = p ** i
    comps = enumerate_compositions(target, n, p)
    return gamma_to_poly({d: gamma_coefficient(d, p) for d in comps}, n, p)


@lru_cache(maxsize=None)
def phi1_two_poly(p: int) -> MPoly:
    """Two-summand carry as sum_{d=1}^{p-1} (-1)^d / d * x1^(d falling) * x2^(p-d falling).

    For p = 2 this sign pattern is not claimed; fall back to the general form.
    """
    check_prime(p)
    if p == 2:
        return phi_poly(1, 2, 2)
    x1, x2 = MPoly.variables(p, 2)
    out = MPoly.zero(p, 2)
    for d in range(1, p):
        c = (-1) ** d * pow(d, -1, p)
        out = out + (falling_factorial(x1, d) * falling_factorial(x2, p - d)).scale(c)
    return out.reduce()


@lru_cache(maxsize=None)
def phi_prime_poly(p: int) -> MPoly:
    """Carry of x1 + x2 + g for g in {0, 1}: phi_1(x1, x2) + g * (1 - (x1 + x2 + 1)^(p-1))."""
    check_prime(p)
    x1, x2, g = MPoly.variables(p, 3)
    base = phi_poly(1, 2, p)
    lifted = MPoly(p, 3, {e + (0,): c for e, c in base.terms.items()})
    return (lifted + g * (1 - (x1 + x2 + 1) ** (p - 1))).reduce()


def _prefix_products(fs: Sequence) -> list:
    # all prefix products at depth ceil(log2 len(fs)), splitting in halves
    if len(fs) == 1:
        return [fs[0]]
    h = len(fs) // 2
    left, right = _prefix_products(fs[:h]), _prefix_products(fs[h:])
    return left + [left[-1] * r for r in right]


def carry_pair(a, b, p: int, const: Callable[[int], object]):
    """phi_1(a, b) = C(a + b, p) = sum_{d=1}^{p-1} C(a, d) C(b, p - d) on abstract scalars.

    The falling factorials come from prefix products of (x - c), so the
    depth matches the expanded form while the gate count drops from about
    p^2 to about p log p.
    """
    inv = inverse_factorials(p)
    fa = _prefix_products([a] + [a + const(p - c) for c in range(1, p - 1)])
    fb = _prefix_products([b] + [b + const(p - c) for c in range(1, p - 1)])
    acc = None
    for d in range(1, p):
        c = inv[d] * inv[p - d] % p
        term = fa[d - 1] * fb[p - d - 1]
        if c != 1:
            term = const(c) * term
        acc = term if acc is None else acc + term
    return acc


_ONE = object()


def phi_values(ks: Sequence[int], xs: Sequence, p: int, const: Callable[[int], object]) -> list:
    """Evaluate phi_k(xs) for each k in ``ks`` using only +, * and constants.

    The composition sum is factored variable by variable: after absorbing a
    prefix of the inputs, ``state[t]`` holds the sum over restricted
    compositions of t of the products of coefficient-weighted falling
    factorials. This evaluates the same polynomial as :func:`phi_poly`
    without expanding it, so it scales to the arities the digit algorithms
    need.
    """
    n = len(xs)
    out: list = [None] * len(ks)
    targets = {}
    for slot, k in enumerate(ks):
        if k == 0:
            acc = xs[0] if n else const(0)
            for x in xs[1:]:
                acc = acc + x
            out[slot] = acc
        elif p ** k > n * (p - 1):
            out[slot] = const(0)
        else:
            targets.setdefault(p ** k, []).append(slot)
    if not targets:
        return out
    t_max, t_min = max(targets), min(targets)
    inv = inverse_factorials(p)
    top = min(p - 1, t_max)
    state: dict[int, object] = {0: _ONE}
    for pos, x in enumerate(xs):
        # weights g[d] = (1/d!) x (x-1) ... (x-d+1)
        weights: list = [_ONE, x]
        ff = x
        for d in range(2, top + 1):
            ff = ff * (x + const(p - d + 1))
            weights.append(ff if inv[d] == 1 else const(inv[d]) * ff)
        remaining = n - pos - 1
        new: dict[int, object] = {}
        for t_prev, s in state.items():
            for d in range(top + 1):
                t = t_prev + d
                if t > t_max:
                    break
                if t + remaining * (p - 1) < t_min:
                    continue
                if remaining == 0 and t not in targets:
                    continue
                w = weights[d]
                if s is _ONE:
                    term = w
                elif w is _ONE:
                    term = s
                else:
                    term = s * w
                new[t] = term if t not in new else new[t] + term
        state = new
    for t, slots in targets.items():
        v = state.get(t)
        if v is None:
            v = const(0)
        elif v is _ONE:
            v = const(1)
        for slot in slots:
            out[slot] = v
    return out


def _mul(a, b):
    if a is None or b is None:
        return None
    if a is _ONE:
        return b
    if b is _ONE:
        return a
    return a * b


def _add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def phi_values_lucas(ks: Sequence[int], xs: Sequence, p: int, const: Callable[[int], object]) -> list:
    """Same values as :func:`phi_values`, with state size linear in the digit count.

    phi_k(xs) is C(S, p^k) mod p for S = sum(xs). While the inputs are
    absorbed one at a time, digit 0 of the partial sum is kept directly and
    ``rows[k][c]`` holds C(S, c p^k) = C(s_k, c) for k >= 1 (Lucas). Adding u
    changes row k by Vandermonde's identity, and Lucas splits every term:

        C(S + u, c p^k) = C(S, c p^k) + C(S, (c-1) p^k) * prod_{0<l<k} C(s_l, p-1) * q

    where q = sum_v C(u, v) C(s_0, p-v) = C(s_0 + u, p) is the two-summand
    carry phi_1(s_0, u), evaluated by :func:`carry_pair`. Entries beyond the largest reachable sum are known
    zeros and cost nothing.
    """
    n = len(xs)
    out: list = [None] * len(ks)
    wanted = []
    for slot, k in enumerate(ks):
        if k == 0:
            continue
        if p ** k > n * (p - 1):
            out[slot] = const(0)
        else:
            wanted.append((slot, k))
    if not n:
        return [const(0) if v is None else v for v in out]
    K = max((k for _, k in wanted), default=0)
    # the top row only ever feeds the answer, so columns 0 and 1 suffice there
    width = [0] + [p] * (K - 1) + [2] if K else [0]
    rows: list[list] = [[_ONE] + [None] * (w - 1) for w in width]
    s0 = xs[0]
    reach = p - 1
    for x in xs[1:]:
        q = carry_pair(s0, x, p, const) if K else None
        s0 = s0 + x
        reach += p - 1
        prefix = _ONE
        for k in range(1, K + 1):
            row = rows[k]
            r = _mul(prefix, q)
            if k < K:
                prefix = _mul(prefix, row[p - 1])
            if r is None:
                continue
            new = list(row)
            for c in range(1, width[k]):
                if c * p ** k > reach:
                    break
                new[c] = _add(row[c], _mul(row[c - 1], r))
            rows[k] = new
    for slot, k in enumerate(ks):
        if k == 0:
            out[slot] = s0
    for slot, k in wanted:
        v = rows[k][1]
        out[slot] = const(0) if v is None else (const(1) if v is _ONE else v)
    return out
