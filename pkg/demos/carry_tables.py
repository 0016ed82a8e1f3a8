"""Carry polynomials at a glance: the first carry of x + y, the multiplication
carry psi_1 and its auxiliary polynomial Psi, for a few small primes."""
import numpy as np

from carrypoly import phi_poly, psi1_poly, psi_aux, wilson_quotient
from carrypoly.add_carry import carry_oracle_add

for p in (2, 3, 5):
    f = phi_poly(1, 2, p)
    print(f"p={p}  carry of x+y:  {f.to_str()}")

# the polynomial and the integer carry agree on the whole grid
p = 5
grid = np.array([[phi_poly(1, 2, p)(x, y) for y in range(p)] for x in range(p)])
oracle = np.array([[carry_oracle_add((x, y), 1, p) for y in range(p)] for x in range(p)])
print(grid)
print("agrees with the oracle:", bool((grid == oracle).all()))

print()
print(f"psi_1 for p=3, n=2:  {psi1_poly(2, 3).to_str()}")
for p in (3, 5, 7, 11, 13):
    aux = psi_aux(p)
    print(f"p={p:2d}  Psi(t) = {aux.to_str():50s} Psi(1) = {aux.psi1_const}  w_p = {wilson_quotient(p)}")

# Psi(1) vanishes exactly at the Wilson primes
zeros = [p for p in range(3, 200) if all(p % d for d in range(2, p)) and psi_aux(p).psi1_const == 0]
print("odd p < 200 with Psi(1) = 0:", zeros)
