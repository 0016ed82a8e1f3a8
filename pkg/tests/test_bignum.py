import random

import pytest
from hypothesis import given, settings, strategies as st

from carrypoly.bignum import (
    CarryState,
    Digits,
    add_many,
    add_two,
    from_digits,
    lookahead_d,
    max_carry_index,
    mul_listed,
    mul_schoolbook,
    run_batch,
    to_digits,
)
from carrypoly.errors import DomainError, StructuralError
from carrypoly.restricted_ops import CostTape


def D(text, p):
    return Digits.from_literal(text, p)


def test_lookahead():
    for p in (2, 3, 5, 13):
        assert lookahead_d(2, p) == 1
    assert lookahead_d(10, 3) == 2
    assert lookahead_d(1, 5) == 0
    with pytest.raises(DomainError):
        lookahead_d(0, 3)


def test_max_carry_index():
    assert max_carry_index(2, 3) == 1
    assert max_carry_index(1, 5) == 0
    assert max_carry_index(9, 2) == 3


def test_carry_state_window():
    s = CarryState(2)
    s.put(0, 2, "a")
    s.put(1, 2, "b")
    s.put(0, 1, "c")
    assert s.incoming(2) == ["a", "b"]
    assert s.incoming(1) == ["c"]
    assert s.incoming(0) == []
    with pytest.raises(StructuralError):
        s.put(0, 3, "g")
    with pytest.raises(StructuralError):
        s.put(1, 1, "g")


def test_digits_conversion():
    assert to_digits(0, 5).digits == ()
    assert to_digits(49, 7).digits == (0, 0, 1)
    assert D("133", 5) == to_digits(43, 5)
    assert to_digits(300, 13).to_literal() == "1,10,1"
    assert Digits.from_literal("1,10,1", 13) == to_digits(300, 13)
    with pytest.raises(DomainError):
        to_digits(-1, 5)
    with pytest.raises(DomainError):
        Digits(5, (5,))


def test_round_trip_256_bit():
    rng = random.Random(0)
    for _ in range(10_000):
        v = rng.getrandbits(256)
        p = rng.choice([2, 3, 5, 7, 11, 13, 251])
        d = to_digits(v, p)
        assert from_digits(d) == v and (not d.digits or d.digits[-1] != 0)


def test_addition_examples():
    assert add_many([D("34", 5), D("44", 5)]) == D("133", 5)
    assert add_many([D("22", 3)] * 3) == to_digits(24, 3)
    assert add_many([D("1201", 3)]) == D("1201", 3)
    assert add_two(D("66", 7), D("1", 7)) == D("100", 7)
    assert add_two(D("432", 5), to_digits(0, 5)) == D("432", 5)


def test_multiplication_examples():
    assert mul_schoolbook(D("43", 5), D("2", 5)) == D("141", 5)
    assert mul_schoolbook(D("66", 7), D("66", 7)) == D("6501", 7)
    assert mul_schoolbook(D("43", 5), to_digits(0, 5)) == to_digits(0, 5)
    assert mul_listed(D("21", 3), D("12", 3)) == D("1022", 3)
    assert mul_listed(to_digits(1, 11), to_digits(987654, 11)) == to_digits(987654, 11)


def test_p2_multiplication_is_refused():
    with pytest.raises(DomainError):
        mul_schoolbook(to_digits(3, 2), to_digits(3, 2))
    with pytest.raises(DomainError):
        run_batch("listed", [(3, 3)], 2)


def test_modulus_mismatch():
    with pytest.raises(StructuralError):
        add_two(to_digits(3, 5), to_digits(3, 7))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 10 ** 12), min_size=1, max_size=6))
def test_add_many_with_debug_checks(p, xs):
    assert from_digits(add_many([to_digits(x, p) for x in xs], debug=True)) == sum(xs)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]), st.integers(0, 10 ** 15), st.integers(0, 10 ** 15))
def test_all_algorithms_agree_on_scalars(p, a, b):
    A, B = to_digits(a, p), to_digits(b, p)
    assert from_digits(add_two(A, B)) == a + b
    assert from_digits(mul_schoolbook(A, B, debug=True)) == a * b
    assert from_digits(mul_listed(A, B)) == a * b


def test_add_two_output_width():
    tape = CostTape(7)
    from carrypoly.bignum import CarryEvaluator, add_two_circuit
    a = [tape.input(6), tape.input(6)]
    b = [tape.input(1), tape.input(0)]
    out = add_two_circuit(a, b, CarryEvaluator(7, tape.const))
    assert len(out) == 3
    assert [x.value for x in out] == [0, 0, 1]


@pytest.mark.parametrize("strategy", ["expanded", "factored", "lucas"])
def test_strategies_agree(strategy):
    rng = random.Random(5)
    for p in (3, 5):
        for _ in range(20):
            a, b, c = (rng.randrange(p ** 6) for _ in range(3))
            A, B, C = (to_digits(v, p) for v in (a, b, c))
            assert from_digits(add_many([A, B, C], strategy=strategy)) == a + b + c
            if strategy != "expanded":
                # wide columns make the expanded polynomial impractically large
                assert from_digits(mul_listed(A, B, strategy=strategy)) == a * b


def test_tracked_runs_price_the_circuit():
    tape = CostTape(5)
    res = mul_schoolbook(to_digits(123, 5), to_digits(456, 5), tape=tape)
    assert from_digits(res) == 123 * 456
    rep = tape.report()
    assert rep["muls"] > 0 and rep["adds"] > 0 and rep["max_depth"] > 0


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_cross_algorithm_batches(p):
    rng = random.Random(p)
    pairs = [tuple(rng.randrange(p ** rng.randint(1, 32)) for _ in range(2)) for _ in range(1000)]
    school, _ = run_batch("schoolbook", pairs, p, width=32)
    listed, _ = run_batch("listed", pairs, p, width=32)
    assert school == listed == [a * b for a, b in pairs]
    if p in (3, 5, 7):
        many, _ = run_batch("many", pairs, p, width=32)
        two, _ = run_batch("two", pairs, p, width=32)
        assert many == two == [a + b for a, b in pairs]


def test_batch_width_is_checked():
    with pytest.raises(StructuralError):
        run_batch("two", [(100, 1)], 3, width=2)
    with pytest.raises(StructuralError):
        run_batch("two", [(1, 2, 3)], 3)
    with pytest.raises(StructuralError):
        run_batch("quick", [(1, 2)], 3)
    assert run_batch("many", [(1, 2, 3), (4, 5, 6)], 3)[0] == [6, 15]
