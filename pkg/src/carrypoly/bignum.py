"""p-ary big-integer addition and multiplication built from carry-polynomial evaluations.

Every algorithm is written against an abstract scalar that offers ``+``,
``*`` and constant injection only. Running it on :class:`FpElem` gives plain
arithmetic; running it on :class:`TrackedValue` records the circuit cost and
proves no other operation is used. Loops have fixed trip counts that depend
on operand lengths only, never on digit values.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .add_carry import carry_pair, phi_poly, phi_values, phi_values_lucas
from .errors import ConsistencyError, DomainError, StructuralError
from .fp_core import FpElem, PrimeField, check_odd_prime, check_prime
from .mul_carry import psi1_poly
from .restricted_ops import CostTape, TrackedValue

EXPANDED_MAX_ARITY = 2
STRATEGIES = ("auto", "expanded", "factored", "lucas")


@dataclass(frozen=True)
class Digits:
    """Little-endian base-p digits; canonical form has no trailing zeros (0 is empty)."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if any(not 0 <= d < self.p for d in self.digits):
            raise DomainError(f"digit out of range for p = {self.p}: {self.digits}")

    @classmethod
    def from_int(cls, v: int, p: int) -> "Digits":
        return to_digits(v, p)

    @classmethod
    def from_fp(cls, digits: Sequence[FpElem], p: int) -> "Digits":
        return canonical(p, [d.value for d in digits])

    def __int__(self):
        return from_digits(self)

    def __len__(self):
        return len(self.digits)

    def padded(self, width: int) -> tuple[int, ...]:
        if width < len(self.digits):
            raise StructuralError(f"cannot pad {len(self.digits)} digits to width {width}")
        return self.digits + (0,) * (width - len(self.digits))

    def to_literal(self) -> str:
        """Big-endian digit string; comma separated when p > 10."""
        ds = self.digits[::-1] or (0,)
        if self.p <= 10:
            return "".join(str(d) for d in ds)
        return ",".join(str(d) for d in ds)

    @classmethod
    def from_literal(cls, text: str, p: int) -> "Digits":
        text = text.strip()
        if "," in text:
            ds = [int(tok) for tok in text.split(",")]
        else:
            ds = [int(ch, 36) for ch in text]
        return canonical(p, ds[::-1])


class CarryState:
    """Pending carries gamma[(j, k)] sent from digit j to digit k, with j < k <= j + d."""

    def __init__(self, d: int):
        self.d = d
        self.gamma: dict[tuple[int, int], object] = {}

    def put(self, j: int, k: int, value) -> None:
        if not 0 <= j < k <= j + self.d:
            raise StructuralError(f"carry ({j}, {k}) is outside the lookahead window d = {self.d}")
        self.gamma[(j, k)] = value

    def incoming(self, i: int) -> list:
        """Carries into digit i from i-d, ..., i-1; sources below 0 do not exist."""
        return [self.gamma[(i - j, i)] for j in range(self.d, 0, -1) if i - j >= 0]


def canonical(p: int, digits: Sequence[int]) -> Digits:
    ds = list(digits)
    while ds and ds[-1] == 0:
        ds.pop()
    return Digits(p, tuple(ds))


def to_digits(v: int, p: int) -> Digits:
    check_prime(p)
    if v < 0:
        raise DomainError("negative integers are not supported")
    ds = []
    while v:
        v, r = divmod(v, p)
        ds.append(r)
    return Digits(p, tuple(ds))


def from_digits(d: Digits) -> int:
    v = 0
    for x in reversed(d.digits):
        v = v * d.p + x
    return v


def lookahead_d(n: int, p: int) -> int:
    """Smallest d >= 0 with (n + d)(p - 1) < p^(d+1)."""
    if n < 1:
        raise DomainError("need at least one addend")
    d = 0
    while (n + d) * (p - 1) >= p ** (d + 1):
        d += 1
    return d


def max_carry_index(n: int, p: int) -> int:
    """max{k : n(p-1) >= p^k}: the highest digit an n-term column can reach."""
    k = 0
    while n * (p - 1) >= p ** (k + 1):
        k += 1
    return k


def _peek(x):
    # reads a plaintext value for debug-mode checks only; widened so sums cannot wrap
    v = x.value
    return v.astype(object) if isinstance(v, np.ndarray) else v


class CarryEvaluator:
    """Evaluates carry polynomials on abstract scalars.

    ``strategy="expanded"`` always evaluates the expanded minimal polynomial;
    ``"factored"`` evaluates the composition sum without expanding it;
    ``"lucas"`` tracks the binomials C(S, c p^k) digit by digit;
    ``"auto"`` uses :func:`carry_pair` for a lone two-summand carry, expands
    other arity-2 calls and switches to ``"lucas"`` from three summands on,
    where it beats the composition sum in both gate count and depth.
    """

    def __init__(self, p: int, const: Callable[[int], object], strategy: str = "auto"):
        if strategy not in STRATEGIES:
            raise StructuralError(f"unknown strategy {strategy!r}")
        self.p = p
        self.const = const
        self.strategy = strategy

    def phis(self, ks: Sequence[int], xs: Sequence) -> list:
        if not xs:
            return [self.const(0) for _ in ks]
        strategy = self.strategy
        if strategy == "auto":
            if len(xs) == 2 and list(ks) == [1]:
                return [carry_pair(xs[0], xs[1], self.p, self.const)]
            strategy = "expanded" if len(xs) <= EXPANDED_MAX_ARITY else "lucas"
        if strategy == "expanded":
            return [phi_poly(k, len(xs), self.p).evaluate_circuit(xs, self.const) for k in ks]
        if strategy == "factored":
            return phi_values(ks, xs, self.p, self.const)
        return phi_values_lucas(ks, xs, self.p, self.const)

    def phi(self, k: int, xs: Sequence):
        return self.phis([k], xs)[0]

    def psi1(self, x, y):
        return psi1_poly(2, self.p).evaluate_circuit([x, y], self.const)

    def phi_prime(self, x1, x2, g):
        """phi_1(x1, x2) + g * (1 - (x1 + x2 + 1)^(p-1)), valid for g in {0, 1}."""
        const, p = self.const, self.p
        s = x1 + x2 + const(1)
        power = _power(s, p - 1)
        return self.phi(1, [x1, x2]) + g * (const(1) + const(p - 1) * power)


def _power(x, e: int):
    result = None
    base = x
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return result


# -- circuits over abstract scalars -------------------------------------------

def add_many_circuit(addends: Sequence[Sequence], ev: CarryEvaluator, debug: bool = False) -> list:
    """Column addition with carries gamma[(j, k)] sent from digit j to digit k <= j + d."""
    n = len(addends)
    m = len(addends[0]) - 1
    if any(len(a) != m + 1 for a in addends):
        raise StructuralError("addends must be padded to a common length")
    p = ev.p
    d = lookahead_d(n, p)
    top = m + d + 1
    state = CarryState(d)
    out = []
    for i in range(top + 1):
        inputs = [a[i] for a in addends] if i <= m else []
        inputs += state.incoming(i)
        ks = [0] + list(range(1, min(d, top - i) + 1))
        if debug and inputs:
            total = sum(_peek(x) for x in inputs)
            if np.any(np.asarray(total) >= p ** (d + 1)):
                raise ConsistencyError(f"column {i} overflows the lookahead window d = {d}")
        vals = ev.phis(ks, inputs)
        out.append(vals[0])
        for k, v in zip(ks[1:], vals[1:]):
            state.put(i, i + k, v)
    return out


def add_two_circuit(a: Sequence, b: Sequence, ev: CarryEvaluator) -> list:
    m = len(a) - 1
    if len(b) != m + 1:
        raise StructuralError("operands must be padded to a common length")
    out = [a[0] + b[0]]
    g = ev.phi(1, [a[0], b[0]])
    for i in range(1, m + 1):
        out.append(a[i] + b[i] + g)
        g = ev.phi_prime(a[i], b[i], g)
    out.append(g)
    return out


def mul_schoolbook_circuit(a1: Sequence, a2: Sequence, ev: CarryEvaluator, debug: bool = False) -> list:
    """Row-by-row accumulation; the running carry never exceeds one digit."""
    m1, m2 = len(a1) - 1, len(a2) - 1
    if m1 < 1:
        raise StructuralError("first operand needs at least two digit slots")
    p = ev.p

    def check(prod_ab, old, g, a, b):
        if debug:
            bound = _peek(a) * _peek(b) + _peek(old) + (0 if g is None else _peek(g))
            if np.any(np.asarray(bound) > p * p - 1):
                raise ConsistencyError("digit update exceeded p^2 - 1")

    c: list = [None] * (m1 + m2 + 2)
    c[0] = a1[0] * a2[0]
    g = ev.psi1(a1[0], a2[0])
    for i in range(1, m1 + 1):
        prod = a1[i] * a2[0]
        c[i] = prod + g
        g = ev.psi1(a1[i], a2[0]) + ev.phi(1, [prod, g])
    c[m1 + 1] = g
    for j in range(1, m2 + 1):
        prod = a1[0] * a2[j]
        old = c[j]
        check(prod, old, None, a1[0], a2[j])
        c[j] = prod + old
        g = ev.psi1(a1[0], a2[j]) + ev.phi(1, [prod, old])
        for i in range(1, m1):
            prod = a1[i] * a2[j]
            old = c[i + j]
            check(prod, old, g, a1[i], a2[j])
            c[i + j] = prod + old + g
            g = ev.psi1(a1[i], a2[j]) + ev.phi(1, [prod, old, g])
        prod = a1[m1] * a2[j]
        old = c[m1 + j]
        check(prod, old, g, a1[m1], a2[j])
        c[m1 + j] = prod + old + g
        # the carry uses the digit value from before this update
        c[m1 + j + 1] = ev.psi1(a1[m1], a2[j]) + ev.phi(1, [prod, old, g])
    return c


def mul_listed_circuit(a1: Sequence, a2: Sequence, ev: CarryEvaluator) -> list:
    """Partial products and their carries go to per-digit lists, then each list is reduced."""
    lists: defaultdict[int, list] = defaultdict(list)
    for i, x in enumerate(a1):
        for j, y in enumerate(a2):
            lists[i + j].append(x * y)
            lists[i + j + 1].append(ev.psi1(x, y))
    out = []
    i = 0
    while lists[i]:
        alphas = lists[i]
        top = max_carry_index(len(alphas), ev.p)
        vals = ev.phis(range(top + 1), alphas)
        out.append(vals[0])
        for j in range(1, top + 1):
            lists[i + j].append(vals[j])
        i += 1
    return out


# -- Digits-level API ---------------------------------------------------------

def _ring(p: int, tape: CostTape | None):
    if tape is None:
        field = PrimeField(p)
        return field, field.const
    if tape.p != p:
        raise StructuralError(f"tape modulus {tape.p} != {p}")
    return tape.input, tape.const


def _common_p(operands: Sequence[Digits]) -> int:
    ps = {d.p for d in operands}
    if len(ps) != 1:
        raise StructuralError(f"operands use different moduli: {sorted(ps)}")
    return ps.pop()


def _decode(p: int, out: Sequence) -> Digits:
    vals = []
    for x in out:
        v = x.value
        if isinstance(v, np.ndarray):
            raise StructuralError("batched values need run_batch")
        vals.append(int(v))
    return canonical(p, vals)


def _inputs(d: Digits, width: int, make) -> list:
    return [make(x) for x in d.padded(width)]


def add_many(addends: Sequence[Digits], *, tape: CostTape | None = None,
             strategy: str = "auto", debug: bool = False) -> Digits:
    if not addends:
        raise DomainError("need at least one addend")
    p = _common_p(addends)
    make, const = _ring(p, tape)
    width = max(1, max(len(a) for a in addends))
    out = add_many_circuit([_inputs(a, width, make) for a in addends],
                           CarryEvaluator(p, const, strategy), debug)
    return _decode(p, out)


def add_two(a: Digits, b: Digits, *, tape: CostTape | None = None, strategy: str = "auto") -> Digits:
    p = _common_p([a, b])
    make, const = _ring(p, tape)
    width = max(1, len(a), len(b))
    out = add_two_circuit(_inputs(a, width, make), _inputs(b, width, make),
                          CarryEvaluator(p, const, strategy))
    return _decode(p, out)


def mul_schoolbook(a: Digits, b: Digits, *, tape: CostTape | None = None,
                   strategy: str = "auto", debug: bool = False) -> Digits:
    p = _common_p([a, b])
    check_odd_prime(p)
    make, const = _ring(p, tape)
    out = mul_schoolbook_circuit(_inputs(a, max(2, len(a)), make), _inputs(b, max(1, len(b)), make),
                                 CarryEvaluator(p, const, strategy), debug)
    return _decode(p, out)


def mul_listed(a: Digits, b: Digits, *, tape: CostTape | None = None, strategy: str = "auto") -> Digits:
    p = _common_p([a, b])
    check_odd_prime(p)
    make, const = _ring(p, tape)
    out = mul_listed_circuit(_inputs(a, max(1, len(a)), make), _inputs(b, max(1, len(b)), make),
                             CarryEvaluator(p, const, strategy))
    return _decode(p, out)


ALGORITHMS = {
    "many": "add",
    "two": "add",
    "schoolbook": "mul",
    "listed": "mul",
}


def run_batch(algo: str, instances: Sequence[Sequence[int]], p: int, *,
              width: int | None = None, tape: CostTape | None = None,
              strategy: str = "auto", debug: bool = False) -> tuple[list[int], CostTape]:
    """Run one fixed-width circuit over many operand tuples at once.

    Each instance is a tuple of non-negative integers (two for ``two``,
    ``schoolbook`` and ``listed``; any count for ``many``). Operands are
    zero-padded to ``width`` digits and packed slot-wise into numpy arrays
    carried by TrackedValues, so the returned tape prices a single circuit.
    """
    if algo not in ALGORITHMS:
        raise StructuralError(f"unknown algorithm {algo!r}")
    if not instances:
        return [], tape or CostTape(p)
    arity = len(instances[0])
    if any(len(inst) != arity for inst in instances):
        raise StructuralError("all instances need the same number of operands")
    if algo != "many" and arity != 2:
        raise StructuralError(f"{algo} takes exactly two operands")
    if ALGORITHMS[algo] == "mul":
        check_odd_prime(p)
    digits = [[to_digits(v, p) for v in inst] for inst in instances]
    need = max(1, max(len(d) for inst in digits for d in inst))
    if algo == "schoolbook":
        need = max(need, 2)
    width = need if width is None else width
    if width < need:
        raise StructuralError(f"width {width} is too small for operands needing {need} digits")
    tape = tape or CostTape(p)
    columns = []
    for h in range(arity):
        mat = np.array([d[h].padded(width) for d in digits], dtype=np.int64)
        columns.append([tape.input(mat[:, i]) for i in range(width)])
    ev = CarryEvaluator(p, tape.const, strategy)
    if algo == "many":
        out = add_many_circuit(columns, ev, debug)
    elif algo == "two":
        out = add_two_circuit(columns[0], columns[1], ev)
    elif algo == "schoolbook":
        out = mul_schoolbook_circuit(columns[0], columns[1], ev, debug)
    else:
        out = mul_listed_circuit(columns[0], columns[1], ev)
    batch = len(instances)
    results = [0] * batch
    for x in reversed(out):
        vals = np.broadcast_to(np.asarray(x.value), (batch,))
        results = [r * p + int(v) for r, v in zip(results, vals)]
    return results, tape
