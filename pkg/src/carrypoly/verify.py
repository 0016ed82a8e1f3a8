"""Self-checking suites over the library's algebraic identities.

Each suite walks a finite range exhaustively (or with a fixed seed) and
records every mismatch instead of stopping at the first one, so a failing
run produces a complete listing.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .add_carry import (
    carry_oracle_add,
    composition_count,
    enumerate_compositions,
    gamma_coefficient,
    phi_poly,
)
from .bernoulli import (
    bernoulli,
    bernoulli_poly,
    fermat_quotient,
    power_sum,
    staudt_clausen_denominator,
    wilson_from_bernoulli,
    wilson_quotient,
)
from .bignum import run_batch
from .errors import CarryPolyError, StructuralError
from .fp_core import is_prime
from .interp import to_gamma_basis
from .mul_carry import (
    carry_oracle_mul,
    expected_monomial_count_psi1,
    lift_defect,
    monomial_count_psi1,
    psi1_formula,
    psi1_poly,
    psi_aux,
    section_alpha,
    teichmuller_lift,
)

SEED = 20240601


@dataclass(frozen=True)
class Failure:
    suite: str
    check: str
    detail: str

    def to_dict(self) -> dict:
        return {"suite": self.suite, "check": self.check, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    checks: int = 0
    failures: list[Failure] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, name: str, cond: bool, detail: str = "") -> bool:
        self.checks += 1
        if not cond:
            self.failures.append(Failure(self.suite, name, detail))
        return cond

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": self.checks,
            "failures": [f.to_dict() for f in self.failures],
            "seconds": round(self.seconds, 3),
        }


def primes_upto(bound: int, odd: bool = False) -> list[int]:
    return [q for q in range(3 if odd else 2, bound + 1) if is_prime(q)]


# -- suites -------------------------------------------------------------------

def suite_add_carry(rep: SuiteReport, p_max: int = 7, n_max: int = 3) -> None:
    for p in primes_upto(p_max):
        for n in range(1, n_max + 1):
            i = 0
            while p ** i <= n * (p - 1):
                f = phi_poly(i, n, p)
                tag = f"p={p} n={n} i={i}"
                bad = [x for x in itertools.product(range(p), repeat=n)
                       if f(*x) != carry_oracle_add(x, i, p)]
                rep.check("oracle", not bad, f"{tag} first mismatch at {bad[:1]}")
                rep.check("degree", f.total_degree() <= p ** i, f"{tag} degree {f.total_degree()}")
                rep.check("symmetric", f.is_symmetric(), tag)
                if i >= 1:
                    basis = to_gamma_basis(f)
                    comps = enumerate_compositions(p ** i, n, p)
                    rep.check("gamma-support", set(basis) == set(comps), tag)
                    rep.check("gamma-count", len(comps) == composition_count(p ** i, n, p), tag)
                    rep.check(
                        "gamma-coefficients",
                        all(basis.get(d) == gamma_coefficient(d, p) for d in comps),
                        tag,
                    )
                i += 1


def suite_mul_carry(rep: SuiteReport, p_max: int = 13, random_points: int = 10_000) -> None:
    rng = random.Random(SEED)
    for p in primes_upto(p_max, odd=True):
        for n in (2, 3):
            if n == 3 and p > 7:
                continue
            f = psi1_poly(n, p)
            bad = [x for x in itertools.product(range(p), repeat=n) if f(*x) != carry_oracle_mul(x, p)]
            rep.check("oracle-exhaustive", not bad, f"p={p} n={n} first mismatch at {bad[:1]}")
            rep.check("symmetric", f.is_symmetric(), f"p={p} n={n}")
    for p in primes_upto(min(p_max, 7), odd=True):
        for n in (4, 5, 6):
            f = psi1_poly(n, p)
            bad = None
            for _ in range(random_points):
                x = [rng.randrange(p) for _ in range(n)]
                if f(*x) != carry_oracle_mul(x, p):
                    bad = x
                    break
            rep.check("oracle-random", bad is None, f"p={p} n={n} mismatch at {bad}")
    for p in primes_upto(19, odd=True):
        for n in (2, 3, 4):
            got, want = monomial_count_psi1(n, p), expected_monomial_count_psi1(n, p)
            rep.check("monomial-count", got == want, f"p={p} n={n}: {got} != {want}")
    for p in primes_upto(199, odd=True):
        aux = psi_aux(p)  # parity and top-coefficient invariants are asserted on construction
        w = wilson_quotient(p)
        rep.check("psi1-is-wilson", aux.psi1_const == w, f"p={p}: {aux.psi1_const} != {w}")
        if p < 100:
            bad = [x for x in range(1, p)
                   if (aux(x) - aux.psi1_const) % p != fermat_quotient(x, p)]
            rep.check("fermat-slice", not bad, f"p={p} at x={bad[:1]}")
    for p in (3, 5, 7):
        rep.check("n1-is-zero", not psi1_formula(1, p) and not psi1_poly(1, p), f"p={p}")


def suite_bernoulli(rep: SuiteReport, l_max: int = 60) -> None:
    rep.check("B1-convention", bernoulli(1) == Fraction(-1, 2), str(bernoulli(1)))
    for ell in range(3, l_max + 1, 2):
        rep.check("odd-vanish", bernoulli(ell) == 0, f"l={ell}")
    for ell in range(2, l_max + 1, 2):
        den, want = bernoulli(ell).denominator, staudt_clausen_denominator(ell)
        rep.check("staudt-clausen", den == want, f"l={ell}: {den} != {want}")
    for m in range(1, 11):
        for N in range(1, 51):
            naive = sum(k ** m for k in range(1, N + 1))
            rep.check("power-sum", power_sum(m, N) == naive, f"m={m} N={N}")
    for n in range(0, 9):
        for m in range(1, 5):
            rep.check("multiplication-theorem", multiplication_theorem_holds(n, m), f"n={n} m={m}")
    for p in primes_upto(199, odd=True):
        a, b = wilson_from_bernoulli(p), wilson_quotient(p)
        rep.check("wilson-bernoulli", a == b, f"p={p}: {a} != {b}")
    for p in primes_upto(99, odd=True):
        total = sum(fermat_quotient(a, p) for a in range(1, p)) % p
        rep.check("lerch", total == wilson_quotient(p), f"p={p}: {total}")


def suite_cocycle(rep: SuiteReport, p_max: int = 13) -> None:
    for p in primes_upto(p_max, odd=True):
        f = psi1_poly(2, p)
        phi = phi_poly(1, 2, p)
        table = [[f(x, y) for y in range(p)] for x in range(p)]
        bad = None
        for x, y, z in itertools.product(range(p), repeat=3):
            lhs = table[x][y] * z + table[x * y % p][z]
            rhs = x * table[y][z] + table[x][y * z % p]
            if (lhs - rhs) % p:
                bad = (x, y, z)
                break
        rep.check("cocycle", bad is None, f"p={p} at {bad}")
        # (x+1) y = xy + y only while x + 1 is still a digit, i.e. x <= p - 2
        bad = [(x, y) for x in range(p - 1) for y in range(p)
               if table[x + 1][y] != (table[x][y] + phi(x * y % p, y)) % p]
        rep.check("mixed-relation", not bad, f"p={p} at {bad[:1]}")
        # at x = p - 1 the left side wraps to psi_1(0, y) = 0 and the right side is y
        bad = [y for y in range(p)
               if (table[p - 1][y] + phi((p - 1) * y % p, y)) % p != y]
        rep.check("mixed-relation-wrap", not bad, f"p={p} at y={bad[:1]}")


def suite_appendix(rep: SuiteReport, p_max: int = 31) -> None:
    for p in primes_upto(p_max, odd=True):
        m = p * p
        lift = {x: teichmuller_lift(x, p) for x in range(1, p)}
        rep.check("lift-congruent", all(v % p == x for x, v in lift.items()), f"p={p}")
        rep.check("lift-root-of-unity", all(pow(v, p - 1, m) == 1 for v in lift.values()), f"p={p}")
        bad = [(x, y) for x in range(1, p) for y in range(1, p)
               if lift[x] * lift[y] % m != lift[x * y % p]]
        rep.check("lift-multiplicative", not bad, f"p={p} at {bad[:1]}")
        aux = psi_aux(p)
        bad = [x for x in range(1, p) if section_alpha(x, p) != aux.bar(x)]
        rep.check("alpha-is-psi-bar", not bad, f"p={p} at {bad[:1]}")
        bad = [x for x in range(1, p) if section_alpha(x, p) != -fermat_quotient(x, p) % p]
        rep.check("alpha-is-minus-fermat", not bad, f"p={p} at {bad[:1]}")
        bad = [a for a in range(1, p - 1)
               if ((a + 1) * aux.bar(a + 1) - a * aux.bar(a)) % p != lift_defect(a, p)]
        rep.check("differential-equation", not bad, f"p={p} at {bad[:1]}")


def suite_bignum(rep: SuiteReport, p_max: int = 13, count: int = 200, max_len: int = 24) -> None:
    rng = random.Random(SEED)
    for p in primes_upto(p_max):
        for algo in ("many", "two", "schoolbook", "listed"):
            if algo in ("schoolbook", "listed") and p == 2:
                continue
            pairs = [tuple(rng.randrange(p ** rng.randint(1, max_len)) for _ in range(2))
                     for _ in range(count)]
            results, tape = run_batch(algo, pairs, p, width=max_len)
            want = [a + b if algo in ("many", "two") else a * b for a, b in pairs]
            bad = [pair for pair, r, w in zip(pairs, results, want) if r != w]
            rep.check("oracle", not bad, f"p={p} algo={algo} first mismatch {bad[:1]}")
            rep.check("cost-tape", set(tape.report()) == {"adds", "muls", "const_muls", "max_depth"},
                      f"p={p} algo={algo}")
        triples = [tuple(rng.randrange(p ** rng.randint(1, max_len)) for _ in range(3))
                   for _ in range(count)]
        results, _ = run_batch("many", triples, p, width=max_len, debug=True)
        bad = [t for t, r in zip(triples, results) if r != sum(t)]
        rep.check("oracle-three-addends", not bad, f"p={p} first mismatch {bad[:1]}")


def multiplication_theorem_holds(n: int, m: int) -> bool:
    """B_n(m x) = m^(n-1) sum_{k<m} B_n(x + k/m), compared coefficient by coefficient."""
    base = bernoulli_poly(n)
    lhs = [c * m ** s for s, c in enumerate(base)]
    rhs = [Fraction(0)] * (n + 1)
    for k in range(m):
        for s, c in enumerate(_shift(base, Fraction(k, m))):
            rhs[s] += c
    return lhs == [c * m ** (n - 1) if n else c / m for c in rhs]


def _shift(coeffs: list[Fraction], h: Fraction) -> list[Fraction]:
    # coefficients of f(x + h)
    out = [Fraction(0)] * len(coeffs)
    for s, c in enumerate(coeffs):
        for r in range(s + 1):
            out[r] += c * comb(s, r) * h ** (s - r)
    return out


SUITES = {
    "add-carry": suite_add_carry,
    "mul-carry": suite_mul_carry,
    "bernoulli": suite_bernoulli,
    "cocycle": suite_cocycle,
    "appendix": suite_appendix,
    "bignum": suite_bignum,
}
SUITE_NAMES = tuple(SUITES) + ("all",)
_P_BOUNDED = ("add-carry", "mul-carry", "cocycle", "appendix", "bignum")


def run_suite(name: str, p_max: int | None = None, l_max: int | None = None) -> list[SuiteReport]:
    """Run one suite (or every suite for ``"all"``) and return one report per suite."""
    if name not in SUITE_NAMES:
        raise StructuralError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for suite in names:
        rep = SuiteReport(suite)
        kwargs = {}
        if p_max is not None and suite in _P_BOUNDED:
            kwargs["p_max"] = p_max
        if l_max is not None and suite == "bernoulli":
            kwargs["l_max"] = l_max
        start = time.perf_counter()
        try:
            SUITES[suite](rep, **kwargs)
        except CarryPolyError as exc:
            rep.check("no-internal-error", False, f"{type(exc).__name__}: {exc}")
        rep.seconds = time.perf_counter() - start
        reports.append(rep)
    return reports
