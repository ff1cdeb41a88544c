"""Integral ideals of a class-number-one Galois field.

Prime ideals come from Dedekind's criterion (the fields are monogenic), ideals
are stored by their prime factorization and carry a canonical column-style
Hermite normal form inside O_K coordinates.  This module also provides the
inclusion-exclusion coefficients mu_n expressing ``n | N(q)`` through ideal
divisibility.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from normdiv import polymod
from normdiv.field import FieldError, FieldSpec
from normdiv.intlat import fincke_pohst, hnf_columns, hnf_solve, lll_gram
from normdiv.ntheory import factorint

HNF = tuple[tuple[int, ...], ...]


class SearchBoundError(RuntimeError):
    """No principal generator found within the enumeration budget."""


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal (p, g(theta)) with ramification e, residue degree f, r conjugates."""

    p: int
    index: int
    e: int
    f: int
    r: int
    generator: tuple[int, ...]
    hnf: HNF = dc_field(repr=False)

    @property
    def norm(self) -> int:
        return self.p**self.f

    @property
    def key(self) -> tuple[int, int]:
        return (self.p, self.index)


@dataclass(frozen=True)
class Ideal:
    """An integral ideal given by its factorization ((p, index, exponent), ...).

    Equality and hashing use the factorization only, which is canonical by
    unique factorization; ``hnf`` gives the equally canonical lattice basis.
    """

    arith: "IdealArithmetic" = dc_field(compare=False, repr=False)
    factors: tuple[tuple[int, int, int], ...]

    @property
    def norm(self) -> int:
        out = 1
        for p, i, e in self.factors:
            out *= self.arith.prime(p, i).norm ** e
        return out

    @property
    def hnf(self) -> HNF:
        return self.arith.hnf(self.factors)

    def exponents(self) -> dict[tuple[int, int], int]:
        return {(p, i): e for p, i, e in self.factors}

    def divides(self, other: "Ideal") -> bool:
        """self | other, by comparing exponents."""
        mine = other.exponents()
        return all(mine.get((p, i), 0) >= e for p, i, e in self.factors)

    def __mul__(self, other: "Ideal") -> "Ideal":
        ex = self.exponents()
        for p, i, e in other.factors:
            ex[(p, i)] = ex.get((p, i), 0) + e
        return self.arith.ideal(ex)

    def __truediv__(self, other: "Ideal") -> "Ideal":
        ex = self.exponents()
        for p, i, e in other.factors:
            ex[(p, i)] = ex.get((p, i), 0) - e
            if ex[(p, i)] < 0:
                raise ValueError("quotient is not integral")
        return self.arith.ideal(ex)

    def contains(self, x: Sequence[int]) -> bool:
        return hnf_solve(self.hnf, x) is not None

    def __repr__(self):
        if not self.factors:
            return "Ideal(1)"
        parts = [f"P{p}_{i}" + (f"^{e}" if e > 1 else "") for p, i, e in self.factors]
        return "Ideal(" + "*".join(parts) + ")"


@dataclass(frozen=True)
class MuCoefficients:
    """The finite signed measure mu_n on ideals."""

    n: int
    coeffs: dict = dc_field(hash=False)

    def support(self) -> list[Ideal]:
        return list(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def indicator(self, q: Ideal) -> int:
        """sum over the support of mu_n(m) * [m | q]."""
        return sum(c for m, c in self.coeffs.items() if m.divides(q))


def star_sharp_flat_from(n: int, residue_degree) -> tuple[int, int, int]:
    star = sharp = flat = 1
    for p, a in factorint(n).items():
        f = residue_degree(p)
        star *= p ** (f * -(-a // f))
        if f == 1:
            sharp *= p**a
        else:
            flat *= p**a
    return star, sharp, flat


def local_mu(alpha: int, f: int, r: int) -> dict[tuple[int, ...], int]:
    """mu on exponent vectors c over the r primes above p, for n = p^alpha.

    Solves [sum c >= a] = sum_{d <= c} mu(d) with a = ceil(alpha / f) by
    Moebius inversion on N^r; only vectors with a <= |c| and c_i <= a can
    carry mass.
    """
    a = -(-alpha // f)
    if a == 0:
        return {(0,) * r: 1}
    out = {}
    for c in itertools.product(range(a + 1), repeat=r):
        total = sum(c)
        if total < a:
            continue
        supp = [i for i in range(r) if c[i]]
        val = 0
        for s in range(len(supp) + 1):
            if total - s >= a:
                val += (-1) ** s * math.comb(len(supp), s)
        if val:
            out[c] = val
    return out


class IdealArithmetic:
    """Prime splitting, ideal HNFs and mu_n for one field (results cached)."""

    def __init__(self, field: FieldSpec, seed: int = polymod.DEFAULT_SEED):
        if field.class_number != 1:
            raise FieldError("class number must be 1")
        self.field = field
        self.seed = seed
        self._split: dict[int, tuple[PrimeIdeal, ...]] = {}
        self._hnf: dict[tuple, HNF] = {(): tuple(tuple(int(i == j) for i in range(field.k)) for j in range(field.k))}
        self._generators: dict[tuple, tuple[int, ...]] = {}
        self._lock = threading.Lock()

    # -- primes -------------------------------------------------------------

    def split_prime(self, p: int) -> tuple[PrimeIdeal, ...]:
        """Prime ideals above p (Dedekind factorization of the minimal polynomial mod p)."""
        cached = self._split.get(p)
        if cached is not None:
            return cached
        fld = self.field
        if not fld.is_monogenic:
            idx2 = polymod_discriminant_index(fld)
            if idx2 % (p * p) == 0:
                raise FieldError(f"p = {p} may divide the index of Z[theta]; field unsupported")
        facs = polymod.factor(list(fld.minpoly), p, self.seed)
        k = fld.k
        r = len(facs)
        out = []
        for index, (g, e) in enumerate(facs):
            f = len(g) - 1
            gel = fld.poly_at_theta(g)
            gens = [tuple(p * int(i == j) for i in range(k)) for j in range(k)]
            gens += [fld.mul(gel, tuple(int(i == j) for i in range(k))) for j in range(k)]
            h = hnf_columns(gens, k, modulus=p)
            out.append(PrimeIdeal(p, index, e, f, r, tuple(g), tuple(map(tuple, h))))
        ef = {(q.e, q.f) for q in out}
        if sum(q.e * q.f for q in out) != k or len(ef) != 1:
            raise FieldError(f"splitting of {p} is not of Galois type: {sorted(ef)}")
        res = tuple(out)
        with self._lock:
            self._split.setdefault(p, res)
        return self._split[p]

    def splitting_type(self, p: int) -> tuple[int, int, int]:
        ps = self.split_prime(p)
        return ps[0].e, ps[0].f, ps[0].r

    def residue_degree(self, p: int) -> int:
        return self.split_prime(p)[0].f

    def is_degree_one(self, p: int) -> bool:
        """p lies under degree-one primes (p in N-sharp)."""
        return self.residue_degree(p) == 1

    def prime(self, p: int, index: int) -> PrimeIdeal:
        return self.split_prime(p)[index]

    # -- ideals -------------------------------------------------------------

    def ideal(self, exps) -> Ideal:
        """Ideal from {(p, index): exponent}."""
        items = exps.items() if isinstance(exps, dict) else exps
        facs = tuple(sorted((int(p), int(i), int(e)) for (p, i), e in items if e))
        return Ideal(self, facs)

    def unit_ideal(self) -> Ideal:
        return Ideal(self, ())

    def prime_ideal(self, q: PrimeIdeal) -> Ideal:
        return Ideal(self, ((q.p, q.index, 1),))

    def principal(self, x: Sequence[int]) -> Ideal:
        """Factorization of (x) for nonzero x."""
        n = abs(self.field.norm(x))
        if n == 0:
            raise ValueError("zero has no ideal factorization")
        exps = {}
        for p in factorint(n):
            for q in self.split_prime(p):
                e = 0
                cur = tuple(x)
                h = q.hnf
                # valuation: largest e with x in q^e
                while True:
                    he = self.hnf(((q.p, q.index, e + 1),))
                    if hnf_solve(he, cur) is None:
                        break
                    e += 1
                if e:
                    exps[q.key] = e
        return self.ideal(exps)

    def rational(self, m: int) -> Ideal:
        exps = {}
        for p, a in factorint(abs(m)).items():
            for q in self.split_prime(p):
                exps[q.key] = a * q.e
        return self.ideal(exps)

    def hnf(self, factors: tuple) -> HNF:
        h = self._hnf.get(factors)
        if h is not None:
            return h
        p, i, e = factors[-1]
        rest = factors[:-1] + (((p, i, e - 1),) if e > 1 else ())
        a = self.hnf(rest)
        b = self.prime(p, i).hnf
        res = self._multiply_hnf(a, b)
        with self._lock:
            self._hnf.setdefault(factors, res)
        return self._hnf[factors]

    def _multiply_hnf(self, a: HNF, b: HNF) -> HNF:
        k = self.field.k
        gens = [self.field.mul(x, y) for x in a for y in b]
        modulus = a[0][0] * b[0][0]  # smallest positive integers of each ideal
        h = hnf_columns(gens, k, modulus=modulus)
        return tuple(map(tuple, h))

    def hnf_from_generators(self, gens) -> HNF:
        k = self.field.k
        h = hnf_columns([tuple(g) for g in gens], k)
        return tuple(map(tuple, h))

    def divides(self, ideal: Ideal, x: Sequence[int]) -> bool:
        """ideal | (x), i.e. x lies in the ideal (back-substitution on the HNF)."""
        return hnf_solve(ideal.hnf, x) is not None

    # -- enumeration --------------------------------------------------------

    def local_ideals(self, p: int, m: int) -> list[Ideal]:
        """Ideals of norm p^(f m) supported above p."""
        ps = self.split_prime(p)
        out = []
        for c in _compositions(m, len(ps)):
            out.append(self.ideal({q.key: ci for q, ci in zip(ps, c)}))
        return out

    def ideals_of_norm(self, n: int) -> list[Ideal]:
        parts = []
        for p, a in factorint(n).items():
            f = self.residue_degree(p)
            if a % f:
                return []
            parts.append(self.local_ideals(p, a // f))
        out = []
        for combo in itertools.product(*parts):
            ex = {}
            for idl in combo:
                ex.update(idl.exponents())
            out.append(self.ideal(ex))
        return out

    def a_K(self, n: int) -> int:
        out = 1
        for p, a in factorint(n).items():
            e, f, r = self.splitting_type(p)
            if a % f:
                return 0
            out *= math.comb(a // f + r - 1, r - 1)
        return out

    def ideals_up_to(self, bound: int) -> list[Ideal]:
        """All ideals of norm <= bound, sorted by (norm, factorization)."""
        from normdiv.ntheory import primes_up_to

        local = []
        for p in primes_up_to(bound):
            p = int(p)
            ps = self.split_prime(p)
            f = ps[0].f
            if p**f > bound:
                continue
            opts = []
            m = 1
            while p ** (f * m) <= bound:
                for c in _compositions(m, len(ps)):
                    opts.append((p ** (f * m), tuple((q.p, q.index, ci) for q, ci in zip(ps, c) if ci)))
                m += 1
            local.append(opts)
        # the pruning below needs the local factors ordered by their smallest norm p^f
        local.sort(key=lambda opts: opts[0][0])
        out: list[tuple[int, tuple]] = []

        def rec(i, norm, facs):
            out.append((norm, facs))
            for j in range(i, len(local)):
                first = local[j][0][0]
                if norm * first > bound:
                    break
                for nrm, fac in local[j]:
                    if norm * nrm <= bound:
                        rec(j + 1, norm * nrm, facs + fac)

        rec(0, 1, ())
        out.sort()
        return [Ideal(self, tuple(sorted(f))) for _, f in out]

    # -- n*, n#, nb and mu_n ------------------------------------------------

    def star_sharp_flat(self, n: int) -> tuple[int, int, int]:
        return star_sharp_flat_from(n, self.residue_degree)

    def mu_coefficients(self, n: int) -> MuCoefficients:
        """mu_n built prime by prime and glued multiplicatively."""
        pieces = []
        for p, alpha in factorint(n).items():
            ps = self.split_prime(p)
            loc = local_mu(alpha, ps[0].f, len(ps))
            pieces.append([({q.key: ci for q, ci in zip(ps, c)}, v) for c, v in loc.items()])
        coeffs = {}
        for combo in itertools.product(*pieces):
            ex = {}
            val = 1
            for d, v in combo:
                ex.update(d)
                val *= v
            coeffs[self.ideal(ex)] = val
        return MuCoefficients(n, coeffs)

    def mu_coefficients_bruteforce(self, n: int) -> MuCoefficients:
        """mu_n(q) = sum_{m | q, n | N m} mobius(q / m) over divisors of lcm{N q = n*}.

        Global Moebius inversion on the ideal divisor lattice; used as an
        independent check of :meth:`mu_coefficients`.
        """
        star = self.star_sharp_flat(n)[0]
        lcm = {}
        for q in self.ideals_of_norm(star):
            for key, e in q.exponents().items():
                lcm[key] = max(lcm.get(key, 0), e)
        keys = sorted(lcm)
        divisors = [self.ideal(dict(zip(keys, c))) for c in itertools.product(*[range(lcm[k] + 1) for k in keys])]
        coeffs = {}
        for q in divisors:
            total = 0
            for m in divisors:
                if not m.divides(q) or m.norm % n:
                    continue
                quo = (q / m).factors
                if all(e == 1 for _, _, e in quo):
                    total += (-1) ** len(quo)
            if total:
                coeffs[q] = total
        return MuCoefficients(n, coeffs)

    # -- generators ---------------------------------------------------------

    def minkowski_gram(self, cols: Sequence[Sequence[int]]) -> list[list[float]]:
        E = self.field.embedding_matrix
        V = np.array([E @ np.array(c, dtype=float) for c in cols])
        G = (V.conj() @ V.T).real
        return G.tolist()

    def find_generator(self, ideal: Ideal, limit: int = 200000) -> tuple[int, ...]:
        """Short-vector search in the Minkowski embedding for x with |N(x)| = N(ideal)."""
        fld = self.field
        cols = [list(c) for c in ideal.hnf]
        target = ideal.norm
        U = lll_gram(self.minkowski_gram(cols))
        red = [[sum(u * c[d] for u, c in zip(row, cols)) for d in range(fld.k)] for row in U]
        g = self.minkowski_gram(red)
        bound = fld.k * target ** (2 / fld.k) * 1.5
        tried = 0
        while tried < limit:
            for coeffs in fincke_pohst(g, bound, limit=limit):
                tried += 1
                x = tuple(sum(c * v[d] for c, v in zip(coeffs, red)) for d in range(fld.k))
                if abs(fld.norm(x)) == target:
                    return x
            bound *= 2
        raise SearchBoundError(f"no generator of norm {target} found")

    def principal_generator(self, ideal: Ideal) -> tuple[int, ...]:
        """A balanced generator of ``ideal`` (verified: norm and membership)."""
        cached = self._generators.get(ideal.factors)
        if cached is not None:
            return cached
        fld = self.field
        if not ideal.factors:
            g = fld.one()
        elif len(ideal.factors) == 1 and ideal.factors[0][2] == 1:
            g = fld.balance_generator(self.find_generator(ideal))
        else:
            g = fld.one()
            for p, i, e in ideal.factors:
                pg = self.principal_generator(self.ideal({(p, i): 1}))
                g = fld.balance_generator(fld.mul(g, fld.power(pg, e)))
        g = fld.balance_generator(g)
        g = self.canonical_associate(g)
        if abs(fld.norm(g)) != ideal.norm or not self.divides(ideal, g):
            raise SearchBoundError("generator verification failed")
        with self._lock:
            self._generators.setdefault(ideal.factors, g)
        return self._generators[ideal.factors]

    @cached_property
    def roots_of_unity(self) -> tuple[tuple[int, ...], ...]:
        fld = self.field
        out = []
        for x in itertools.product(range(-2, 3), repeat=fld.k):
            if abs(fld.norm(x)) != 1:
                continue
            vals = fld.embedding_matrix @ np.array(x, dtype=float)
            if np.allclose(np.abs(vals), 1.0, atol=1e-9):
                out.append(tuple(x))
        return tuple(sorted(out, reverse=True))

    def canonical_associate(self, g: Sequence[int]) -> tuple[int, ...]:
        """Representative of g times roots of unity, lexicographically largest."""
        fld = self.field
        return max(fld.mul(g, z) for z in self.roots_of_unity)


def _compositions(m: int, r: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors in N^r with sum m."""
    if r == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _compositions(m - first, r - 1):
            yield (first,) + rest


def polymod_discriminant_index(fld: FieldSpec) -> int:
    from normdiv.field import poly_discriminant

    return abs(poly_discriminant(fld.minpoly) // fld.discriminant)


_ARITH: dict[FieldSpec, IdealArithmetic] = {}
_ARITH_LOCK = threading.Lock()


def arithmetic(field: FieldSpec) -> IdealArithmetic:
    """Shared, cached :class:`IdealArithmetic` for a field."""
    with _ARITH_LOCK:
        a = _ARITH.get(field)
        if a is None:
            a = _ARITH[field] = IdealArithmetic(field)
        return a
