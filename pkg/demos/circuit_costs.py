"""What a carry costs as an add/multiply-only circuit.

Every strategy computes the same carries; they differ in gate count and in
multiplicative depth, the figure that matters for leveled homomorphic
evaluation."""
import numpy as np

from carrypoly import CostTape
from carrypoly.add_carry import phi_values, phi_values_lucas
from carrypoly.bignum import CarryEvaluator

rows = []
for p in (3, 5, 7, 13):
    for n in (3, 6, 12):
        costs = []
        for fn in (phi_values, phi_values_lucas):
            tape = CostTape(p)
            fn([0, 1], [tape.input(1) for _ in range(n)], p, tape.const)
            r = tape.report()
            costs += [r["adds"] + r["muls"] + r["const_muls"], r["max_depth"]]
        rows.append([p, n] + costs)

table = np.array(rows)
print(" p   n  | composition gates depth | lucas gates depth")
for p, n, g1, d1, g2, d2 in table:
    print(f"{p:2d} {n:3d}  | {g1:17d} {d1:5d} | {g2:11d} {d2:5d}")
print("lucas never deeper:", bool((table[:, 5] <= table[:, 3]).all()))

# the default evaluator picks a strategy per call
tape = CostTape(7)
ev = CarryEvaluator(7, tape.const)
xs = [tape.input(6) for _ in range(9)]
digit, to_7, to_49 = (v.value for v in ev.phis([0, 1, 2], xs))
print(f"9 * 6 = 54 = ({to_49}{to_7}{digit})_7, numpy says {np.base_repr(54, 7)}")
print(tape.to_text())
