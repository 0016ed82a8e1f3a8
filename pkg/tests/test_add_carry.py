import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from carrypoly.add_carry import (
    carry_oracle_add,
    carry_pair,
    composition_count,
    enumerate_compositions,
    phi1_two_poly,
    phi_poly,
    phi_prime_poly,
    phi_values,
    phi_values_lucas,
)
from carrypoly.fp_core import FpElem, PrimeField
from carrypoly.interp import interpolate, tabulate
from carrypoly.mpoly import MPoly, elementary_symmetric
from carrypoly.restricted_ops import CostTape, eval_tracked


def valid_indices(n, p):
    i = 0
    while p ** i <= n * (p - 1):
        yield i
        i += 1


def test_oracle_examples():
    assert carry_oracle_add([3, 4], 1, 5) == 1
    assert carry_oracle_add([FpElem(1, 2)] * 3, 1) == 1
    assert carry_oracle_add([6, 6], 2, 7) == 0


def test_composition_examples():
    assert enumerate_compositions(3, 2, 3) == [(1, 2), (2, 1)]
    assert enumerate_compositions(0, 3, 5) == [(0, 0, 0)]
    assert enumerate_compositions(9, 2, 5) == []


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 3), (7, 2)])
def test_compositions_are_complete_and_sorted(p, n):
    for target in range(0, n * (p - 1) + 2):
        comps = enumerate_compositions(target, n, p)
        brute = [d for d in itertools.product(range(p), repeat=n) if sum(d) == target]
        assert comps == brute
        assert len(comps) == composition_count(target, n, p)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi_poly_matches_oracle_and_interpolation(p, n):
    for i in valid_indices(n, p):
        f = phi_poly(i, n, p)
        assert f.is_symmetric()
        assert f.total_degree() <= p ** i
        oracle = tabulate(lambda *x: carry_oracle_add(x, i, p), p, n)
        assert tabulate(f) == oracle
        assert interpolate(oracle) == f


def test_phi_zero_is_plain_sum():
    for p, n in [(2, 3), (5, 2), (7, 3)]:
        assert phi_poly(0, n, p) == sum(MPoly.variables(p, n), MPoly.zero(p, n))


def test_binary_carries_are_elementary_symmetric():
    for n in range(1, 6):
        for i in valid_indices(n, 2):
            assert phi_poly(i, n, 2) == elementary_symmetric(2 ** i, n, 2)


def test_unreachable_digit_is_zero():
    assert not phi_poly(2, 2, 3)
    assert not phi_poly(1, 1, 7)


def test_phi1_p3_golden():
    assert phi_poly(1, 2, 3).to_str() == "2*x1^2*x2 + 2*x1*x2^2 + 2*x1*x2"


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_two_summand_form(p):
    f = phi1_two_poly(p)
    assert f == phi_poly(1, 2, p)
    assert f(p - 1, 1) == 1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_phi_prime_with_incoming_carry(p):
    f = phi_prime_poly(p)
    base = phi_poly(1, 2, p)
    for a, b in itertools.product(range(p), repeat=2):
        assert f(a, b, 0) == base(a, b)
        # the incoming carry is only ever 0 or 1
        assert f(a, b, 1) == (a + b + 1) // p


def test_phi_prime_examples():
    f = phi_prime_poly(5)
    assert f(2, 2, 1) == 1
    assert f(2, 2, 0) == 0


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_factored_evaluators_match_oracle(data):
    p = data.draw(st.sampled_from([2, 3, 5, 7, 13]))
    xs = data.draw(st.lists(st.integers(0, p - 1), max_size=40))
    F = PrimeField(p)
    ks = list(range(5))
    want = [carry_oracle_add(xs, k, p) for k in ks]
    pts = [F(x) for x in xs]
    assert [int(v) for v in phi_values(ks, pts, p, F.const)] == want
    assert [int(v) for v in phi_values_lucas(ks, pts, p, F.const)] == want


def test_factored_evaluators_match_expanded_polynomial():
    rng = random.Random(3)
    for p, n in [(3, 3), (5, 3), (7, 2)]:
        F = PrimeField(p)
        for i in valid_indices(n, p):
            f = phi_poly(i, n, p)
            for _ in range(50):
                x = [rng.randrange(p) for _ in range(n)]
                pts = [F(v) for v in x]
                assert phi_values([i], pts, p, F.const)[0] == f(*x)
                assert phi_values_lucas([i], pts, p, F.const)[0] == f(*x)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_carry_pair_matches_expanded_form(p):
    for a, b in itertools.product(range(p), repeat=2):
        tape = CostTape(p)
        assert carry_pair(tape.input(a), tape.input(b), p, tape.const).value == (a + b) // p
    pair, expanded = CostTape(p), CostTape(p)
    carry_pair(pair.input(1), pair.input(1), p, pair.const)
    eval_tracked(phi_poly(1, 2, p), [expanded.input(1), expanded.input(1)])
    assert pair.max_depth == expanded.max_depth
    assert pair.muls <= expanded.muls
