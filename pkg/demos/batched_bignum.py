"""Big-integer arithmetic in base p, one circuit for a thousand operand pairs.

Operands are split into digits, the digits of all pairs are packed into
numpy slot arrays, and the carry circuit runs once over the whole batch."""
import random
import time

from carrypoly import mul_schoolbook, to_digits
from carrypoly.bignum import run_batch

a, b = to_digits(48, 7), to_digits(48, 7)
print(f"(48)_10 = {a.to_literal()} in base 7, squared = {mul_schoolbook(a, b).to_literal()} = {48 * 48}")

rng = random.Random(1)
p, width = 5, 32
pairs = [(rng.randrange(p ** width), rng.randrange(p ** width)) for _ in range(1000)]
for algo in ("two", "many", "schoolbook", "listed"):
    t = time.perf_counter()
    got, tape = run_batch(algo, pairs, p, width=width)
    want = [x + y if algo in ("two", "many") else x * y for x, y in pairs]
    rep = tape.report()
    print(f"{algo:10s} correct={got == want}  {time.perf_counter() - t:5.2f} s  "
          f"muls={rep['muls']:6d} depth={rep['max_depth']}")
