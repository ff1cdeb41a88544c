"""Exact identity checks shared by the command line and the test-suite.

Every check returns a :class:`CheckResult` listing how many cases were
examined and the first few counterexamples, so a failure can be reproduced.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from normdiv import asymptotic, divisor
from normdiv.density import rho_ideal, varrho_assembled, varrho_direct
from normdiv.field import FieldSpec, verify_field
from normdiv.ideals import arithmetic
from normdiv.lattice import count_bruteforce, count_points
from normdiv.ntheory import primes_up_to
from normdiv.region import Region, default_region

DEFAULT_SEED = 20240917
MAX_EXAMPLES = 5


@dataclass
class CheckResult:
    """Outcome of one identity check."""

    name: str
    checked: int = 0
    failures: list = dc_field(default_factory=list)
    failure_count: int = 0
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0 and self.checked > 0

    def record(self, ok: bool, example=None) -> None:
        self.checked += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_EXAMPLES:
                self.failures.append(example)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked} cases, {self.failure_count} failures ({self.seconds:.1f}s)"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failure_count,
            "examples": [repr(x) for x in self.failures],
        }


def _timed(name: str, body: Callable[[CheckResult], None]) -> CheckResult:
    res = CheckResult(name)
    t0 = time.perf_counter()
    body(res)
    res.seconds = time.perf_counter() - t0
    return res


def check_field(field: FieldSpec) -> CheckResult:
    def body(res):
        for key, ok in verify_field(field).items():
            res.record(ok, key)

    return _timed(f"{field.name}: field data", body)


def check_mu_identity(field: FieldSpec, n_max: int = 60, norm_max: int = 10**4) -> CheckResult:
    """[n | N(q)] == sum_m mu_n(m) [m | q] for n <= n_max and N(q) <= norm_max."""
    arith = arithmetic(field)
    ideals = arith.ideals_up_to(norm_max)

    def body(res):
        for n in range(1, n_max + 1):
            mu = arith.mu_coefficients(n)
            for q in ideals:
                lhs = int(q.norm % n == 0)
                res.record(lhs == mu.indicator(q), (n, q))

    return _timed(f"{field.name}: mu_n indicator identity", body)


def check_varrho_routes(field: FieldSpec, n_max: int = 500) -> CheckResult:
    """varrho by direct count equals varrho assembled from mu_n and rho."""
    arith = arithmetic(field)

    def body(res):
        for n in range(1, n_max + 1):
            a = varrho_direct(field, n).value
            b = varrho_assembled(arith, n).value
            res.record(a == b, (n, a, b))

    return _timed(f"{field.name}: varrho direct == assembled", body)


def check_rho_primes(field: FieldSpec, p_max: int = 200) -> CheckResult:
    """rho(P) = 1 for every degree-one prime ideal P above p <= p_max."""
    arith = arithmetic(field)

    def body(res):
        for p in primes_up_to(p_max):
            for P in arith.split_prime(int(p)):
                if P.f == 1:
                    r = rho_ideal(arith.prime_ideal(P)).value
                    res.record(r == 1, (P, r))

    return _timed(f"{field.name}: rho(P) = 1 on degree-one primes", body)


def check_rho_multiplicative(field: FieldSpec, pairs: int = 200, norm_max: int = 10**4,
                             seed: int = DEFAULT_SEED) -> CheckResult:
    """rho(a b) = rho(a) rho(b) for random pairs with coprime norms."""
    arith = arithmetic(field)
    ideals = [q for q in arith.ideals_up_to(norm_max) if q.norm > 1]
    rng = random.Random(seed)

    def body(res):
        while res.checked < pairs:
            a, b = rng.choice(ideals), rng.choice(ideals)
            if math.gcd(a.norm, b.norm) != 1:
                continue
            lhs = rho_ideal(a * b).value
            rhs = rho_ideal(a).value * rho_ideal(b).value
            res.record(lhs == rhs, (a, b))

    return _timed(f"{field.name}: rho multiplicative", body)


def check_hyperbola(n_max: int = 10**5, ys: Sequence[int] = (10, 50, 316), ks: Sequence[int] = (3, 4)) -> CheckResult:
    """The size-split decomposition of tau_k is exact for all n <= n_max."""

    def body(res):
        for k in ks:
            for y in ys:
                t = divisor.hyperbola_table(n_max, y, k)
                bad = np.flatnonzero(t["assembled"][1:] != t["tau"][1:]) + 1
                res.checked += n_max
                res.failure_count += len(bad)
                res.failures.extend((k, y, int(n)) for n in bad[: MAX_EXAMPLES - len(res.failures)])

    return _timed("hyperbola decomposition", body)


def check_binomial(ks: Sequence[int] = range(3, 9)) -> CheckResult:
    def body(res):
        for k in ks:
            res.record(asymptotic.binomial_identity_check(k), k)

    return _timed("binomial residue identity", body)


def check_counts(field: FieldSpec, region: Region | None = None, samples: int = 12, X: int = 9,
                 norm_max: int = 500, seed: int = DEFAULT_SEED) -> CheckResult:
    """Enumerated |A_X(n)| equals a brute-force scan of the box."""
    region = default_region(field) if region is None else region
    arith = arithmetic(field)
    ideals = arith.ideals_up_to(norm_max)
    rng = random.Random(seed)

    def body(res):
        for q in rng.sample(ideals, min(samples, len(ideals))):
            a = count_points(q, region, X)
            b = count_bruteforce(q, region, X)
            res.record(a == b, (q, X, a, b))

    return _timed(f"{field.name}: lattice counts vs brute force", body)


def check_sieve(values: int = 10**4, upper: int = 2 * 10**8, seed: int = DEFAULT_SEED,
                windows: int = 10) -> CheckResult:
    """Sieved tau_k equals trial-division tau_k on random windows of integers below ``upper``."""
    rng = np.random.default_rng(seed)
    width = max(values // windows, 1)

    def body(res):
        for k in (3, 4):
            for _ in range(windows):
                A = int(rng.integers(1, upper - width))
                w = divisor.sieve_window(A, A + width - 1, (k,))
                vals = np.arange(A, A + width, dtype=np.int64)
                bad = np.flatnonzero(w.taus[k] != divisor.tau_values(vals, k))
                res.checked += width
                res.failure_count += len(bad)
                res.failures.extend(int(vals[i]) for i in bad[: MAX_EXAMPLES - len(res.failures)])

    return _timed("segmented sieve vs trial division", body)


def check_sharp(field: FieldSpec, X: int = 20, deltas: Sequence[int] = (2, 3)) -> CheckResult:
    """sum_j (-1)^(j-1) C(k,j) M_j plus the tracked correction equals M(R_X)."""
    region = default_region(field)

    def body(res):
        for delta in deltas:
            sd = divisor.sharp_decomposition(region, X, delta)
            res.record(sd.holds and sd.total == divisor.M_exact(region, X, threads=1), (X, delta))

    return _timed(f"{field.name}: sharp-cutoff reassembly", body)


def identity_suite(fields: Sequence[FieldSpec], full: bool = False) -> list[CheckResult]:
    """Run every exact check; ``full`` uses the acceptance-scale parameters."""
    out = []
    for f in fields:
        out.append(check_field(f))
        out.append(check_mu_identity(f, 60, 10**4 if full else 2000))
        out.append(check_varrho_routes(f, 500 if full else 150))
        out.append(check_rho_primes(f, 200))
        out.append(check_rho_multiplicative(f, 200 if full else 50))
        out.append(check_counts(f))
        out.append(check_sharp(f, 20 if f.k == 3 else 8))
    out.append(check_hyperbola(10**5 if full else 2 * 10**4))
    out.append(check_binomial())
    out.append(check_sieve(10**4 if full else 2000))
    return out
