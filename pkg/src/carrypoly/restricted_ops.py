"""Add/multiply-only scalars with operation counting.

A :class:`TrackedValue` models a ciphertext: it supports ``+``, ``*`` and
nothing else, and every operation is recorded on the shared
:class:`CostTape`. Values may be ints or numpy arrays of residues; an array
is a batch of independent slots pushed through the same circuit.
"""
from __future__ import annotations

import json
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import StructuralError
from .fp_core import FpElem, check_prime
from .mpoly import MPoly


class CostTape:
    """Counters for one logical computation. Not thread-safe; use one tape per computation."""

    def __init__(self, p: int):
        self.p = check_prime(p)
        self.adds = 0
        self.muls = 0
        self.const_muls = 0
        self.max_depth = 0
        dtype = slot_dtype(self.p)
        self._dtype = dtype
        self._wrap = None if dtype is object else dtype(self.p)
        self._table = _product_table(self.p) if dtype is np.uint8 else None
        self._consts: dict[int, TrackedValue] = {}

    def input(self, value) -> "TrackedValue":
        """Inject a fresh input (depth 0). ``value`` may be an int, FpElem or array of residues."""
        if isinstance(value, FpElem):
            if value.p != self.p:
                raise StructuralError(f"modulus mismatch: {self.p} vs {value.p}")
            value = value.value
        if isinstance(value, np.ndarray):
            value = (np.asarray(value, dtype=object) % self.p).astype(self._dtype)
        else:
            value = int(value) % self.p
        return TrackedValue(value, 0, self, False)

    def const(self, c) -> "TrackedValue":
        if isinstance(c, FpElem):
            c = c.value
        c = int(c) % self.p
        hit = self._consts.get(c)
        if hit is None:
            # constants are never mutated, so one wrapper per residue suffices
            hit = self._consts[c] = TrackedValue(c, 0, self, True)
        return hit

    def report(self) -> dict[str, int]:
        return {
            "adds": self.adds,
            "muls": self.muls,
            "const_muls": self.const_muls,
            "max_depth": self.max_depth,
        }

    def to_text(self) -> str:
        return "\n".join(f"{k} = {v}" for k, v in self.report().items())

    def to_json(self) -> str:
        return json.dumps(self.report(), sort_keys=True)

    def __repr__(self):
        return f"CostTape(p={self.p}, {self.report()})"


def slot_dtype(p: int):
    """Narrowest unsigned dtype holding a product of two residues."""
    for dt in (np.uint8, np.uint16, np.uint32, np.uint64):
        if (p - 1) ** 2 <= np.iinfo(dt).max:
            return dt
    return object


@lru_cache(maxsize=None)
def _product_table(p: int):
    # (a * b) mod p looked up by a * b; only used while p^2 fits in a byte
    return (np.arange(p * p) % p).astype(np.uint8)


_ndarray = np.ndarray
_minimum = np.minimum


class TrackedValue:
    """A field element reachable only through addition, multiplication and constants."""

    __slots__ = ("value", "depth", "tape", "is_const")

    def __init__(self, value, depth: int, tape: CostTape, is_const: bool):
        self.value = value
        self.depth = depth
        self.tape = tape
        self.is_const = is_const

    def _check(self, other) -> None:
        if not isinstance(other, TrackedValue):
            raise StructuralError(
                f"TrackedValue only combines with TrackedValue, got {type(other).__name__}"
            )
        if other.tape is not self.tape:
            raise StructuralError("operands belong to different tapes")

    # The two operators below run once per circuit gate, so the checks and
    # the modular reduction are inlined.
    def __add__(self, other: "TrackedValue") -> "TrackedValue":
        tape = self.tape
        if other.__class__ is not TrackedValue or other.tape is not tape:
            self._check(other)
        s = self.value + other.value
        if s.__class__ is _ndarray and tape._wrap is not None:
            # unsigned wrap-around makes s - p huge exactly when s < p
            s = _minimum(s, s - tape._wrap)
        else:
            s %= tape.p
        if self.is_const and other.is_const:
            return TrackedValue(s, 0, tape, True)
        tape.adds += 1
        d1, d2 = self.depth, other.depth
        return TrackedValue(s, d1 if d1 > d2 else d2, tape, False)

    def __mul__(self, other: "TrackedValue") -> "TrackedValue":
        tape = self.tape
        if other.__class__ is not TrackedValue or other.tape is not tape:
            self._check(other)
        s = self.value * other.value
        if s.__class__ is _ndarray and tape._table is not None:
            s = tape._table.take(s)
        else:
            s %= tape.p
        if self.is_const:
            if other.is_const:
                return TrackedValue(s, 0, tape, True)
            tape.const_muls += 1
            return TrackedValue(s, other.depth, tape, False)
        if other.is_const:
            tape.const_muls += 1
            return TrackedValue(s, self.depth, tape, False)
        tape.muls += 1
        d1, d2 = self.depth, other.depth
        depth = (d1 if d1 > d2 else d2) + 1
        if depth > tape.max_depth:
            tape.max_depth = depth
        return TrackedValue(s, depth, tape, False)

    def __bool__(self):
        raise TypeError("cannot branch on a TrackedValue")

    def __repr__(self):
        kind = "const" if self.is_const else f"depth={self.depth}"
        return f"TrackedValue({self.value!r}, {kind})"


def tv_add(a: TrackedValue, b: TrackedValue) -> TrackedValue:
    return a + b


def tv_mul(a: TrackedValue, b: TrackedValue) -> TrackedValue:
    return a * b


def tv_const(tape: CostTape, c) -> TrackedValue:
    return tape.const(c)


def horner(coeffs: Sequence[int], x: TrackedValue) -> TrackedValue:
    """sum_i coeffs[i] x^i by Horner's rule; the leading step is a constant product."""
    if not coeffs:
        raise StructuralError("need at least one coefficient")
    tape = x.tape
    acc = tape.const(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * x + tape.const(c)
    return acc


def eval_tracked(f: MPoly, point: Sequence[TrackedValue], tape: CostTape | None = None) -> TrackedValue:
    """Evaluate ``f`` on tracked inputs with the fixed power-table strategy."""
    if len(point) != f.nvars:
        raise StructuralError(f"expected {f.nvars} arguments, got {len(point)}")
    if tape is None:
        if not point:
            raise StructuralError("a tape is required for a polynomial in zero variables")
        tape = point[0].tape
    if tape.p != f.p:
        raise StructuralError(f"modulus mismatch: tape {tape.p} vs polynomial {f.p}")
    for x in point:
        if not isinstance(x, TrackedValue) or x.tape is not tape:
            raise StructuralError("all inputs must be TrackedValues on the same tape")
    return f.evaluate_circuit(point, tape.const)


def depth_bound(f: MPoly) -> int:
    """ceil(log2(max monomial degree)) + (p - 2): the documented depth ceiling of eval_tracked."""
    d = f.total_degree()
    return (max(d, 1) - 1).bit_length() + (f.p - 2)
