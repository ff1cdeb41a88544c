"""Multiplier lattices, reduced bases and exact lattice point counts.

For a generator ``n`` of an ideal, the multiplier lattice is the set of
``b`` in Z^k for which ``n * b`` has vanishing last coordinate.  Its shortest
vector controls the error term when counting points of the dilated region
that are divisible by the ideal.  Exact counts are obtained by enumerating
the triangular HNF basis of the ideal's hyperplane sublattice, with the
innermost coordinate handled by numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from normdiv.density import rho_ideal
from normdiv.field import FieldSpec
from normdiv.ideals import Ideal, arithmetic
from normdiv.intlat import det_bareiss, gram, gram_det, integer_kernel, lll
from normdiv.region import Region, VolumeEstimate, region_volume


class EnumerationBudgetError(RuntimeError):
    """Enumeration would visit more points than allowed."""


@dataclass(frozen=True)
class LatticeBasis:
    """A basis of the multiplier lattice of a generator.

    Attributes:
        generator: The element n whose multiplier lattice this is.
        vectors: k-1 basis vectors in Z^k, sorted by Euclidean norm.
        reduced: Whether the basis has been LLL-reduced.
        det: Covolume of the image lattice ``{n * b}`` inside Z^(k-1); equals
            N(n) / rho((n)).
        gram_det: Squared Euclidean covolume of the lattice itself.
    """

    generator: tuple[int, ...]
    vectors: tuple[tuple[int, ...], ...]
    reduced: bool
    det: int
    gram_det: int

    @property
    def norms(self) -> list[float]:
        return [math.sqrt(sum(c * c for c in v)) for v in self.vectors]

    @property
    def shortest(self) -> tuple[int, ...]:
        return self.vectors[0]

    @property
    def shortest_norm(self) -> float:
        return self.norms[0]

    def hadamard_ratio(self) -> float:
        """prod ||z_j|| / sqrt(gram_det), at least 1 by Hadamard's inequality."""
        return math.prod(self.norms) / math.sqrt(self.gram_det)

    def domination_constant(self) -> float:
        """max_j ||z_j|| ||z_j^*||: sharp constant in |b_j| <= c ||b|| / ||z_j||.

        ``z_j^*`` is the dual basis inside the span, so b_j = <b, z_j^*>.
        """
        B = np.array(self.vectors, dtype=float)
        dual = np.linalg.solve(B @ B.T, B)
        return float(max(np.linalg.norm(B[j]) * np.linalg.norm(dual[j]) for j in range(len(B))))


def _image_det(field: FieldSpec, g: Sequence[int], vectors) -> int:
    imgs = [field.mul(g, v)[:-1] for v in vectors]
    return abs(det_bareiss(imgs))


def multiplier_lattice(field: FieldSpec, g: Sequence[int], reduce: bool = True) -> LatticeBasis:
    """Lambda(n): integer kernel of the last row of the multiplication-by-n matrix.

    Args:
        field: The field.
        g: A nonzero algebraic integer.
        reduce: LLL-reduce the kernel basis (delta = 0.99).

    Returns:
        A :class:`LatticeBasis` of rank k-1.
    """
    g = tuple(int(c) for c in g)
    if not any(g):
        raise ValueError("the generator must be nonzero")
    m = field.mult_matrix(g)
    basis = integer_kernel(m[-1])
    lb = LatticeBasis(g, tuple(map(tuple, basis)), False, _image_det(field, g, basis), gram_det(basis))
    return reduce_basis(lb) if reduce else lb


def reduce_basis(lb: LatticeBasis) -> LatticeBasis:
    """LLL-reduce (delta = 0.99) and order the vectors by norm."""
    red = lll([list(v) for v in lb.vectors])
    red = [tuple(v) for v in red]
    red.sort(key=lambda v: (sum(c * c for c in v), tuple(-abs(c) for c in v), v))
    red = [v if next((c for c in v if c), 0) > 0 else tuple(-c for c in v) for v in red]
    return LatticeBasis(lb.generator, tuple(red), True, lb.det, lb.gram_det)


# -- enumeration ------------------------------------------------------------


def _ceil_div(a: np.ndarray, b: int) -> np.ndarray:
    return -((-a) // b)


def enumerate_hnf(cols: Sequence[Sequence[int]], ranges: Sequence[tuple[int, int]], chunk: int = 2**20,
                  budget: int | None = None) -> Iterator[list[np.ndarray]]:
    """Points of the lattice spanned by upper-triangular ``cols`` inside a box.

    ``cols[j]`` has zero entries below position j (its own dimension is the
    number of columns).  Each level's coefficient range is computed from the
    box and the coefficients already fixed, then all prefixes are expanded at
    once (ragged ``repeat``/``arange`` expansion), so the Python work is per
    level, not per point.

    Args:
        cols: Triangular basis columns, ``cols[j][i] == 0`` for ``i > j``.
        ranges: Inclusive integer bounds ``(lo_i, hi_i)`` per coordinate.
        chunk: Maximum number of prefixes expanded at a time.
        budget: Optional cap on the number of points produced.

    Yields:
        Lists of coordinate arrays (one array per coordinate).
    """
    d = len(cols)
    diag = [int(cols[j][j]) for j in range(d)]
    produced = 0

    def expand(prefix_coeffs: list[np.ndarray], level: int):
        nonlocal produced
        # partial coordinate ``level`` contributed by coefficients above it
        n = len(prefix_coeffs[0]) if prefix_coeffs else 1
        partial = np.zeros(n, dtype=np.int64)
        for j, c in zip(range(level + 1, d), prefix_coeffs):
            if cols[j][level]:
                partial += c * int(cols[j][level])
        lo, hi = ranges[level]
        cmin = _ceil_div(lo - partial, diag[level])
        cmax = (hi - partial) // diag[level]
        counts = np.maximum(cmax - cmin + 1, 0)
        total = int(counts.sum())
        if total == 0:
            return
        if level == 0 and budget is not None and produced + total > budget:
            raise EnumerationBudgetError(f"more than {budget} points")
        # ragged expansion
        starts = np.repeat(cmin, counts)
        offs = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
        new = starts + offs
        parents = np.repeat(np.arange(n), counts)
        coeffs = [new] + [c[parents] for c in prefix_coeffs]
        if level == 0:
            produced += total
            # coordinates x_i = sum_j c_j cols[j][i]; coeffs[t] is for column t
            xs = []
            for i in range(d):
                x = np.zeros(total, dtype=np.int64)
                for j in range(i, d):
                    if cols[j][i]:
                        x += coeffs[j] * int(cols[j][i])
                xs.append(x)
            yield xs
            return
        for s in range(0, total, chunk):
            yield from expand([c[s: s + chunk] for c in coeffs], level - 1)

    if d == 0:
        return
    yield from expand([], d - 1)


def region_points(region: Region, X, cols=None, budget: int | None = None) -> Iterator[tuple[list[np.ndarray], np.ndarray]]:
    """Points of R_X (optionally restricted to a sublattice) with their f-values.

    Args:
        region: The region R.
        X: Dilation factor.
        cols: Triangular basis of a sublattice of Z^(k-1); defaults to Z^(k-1).
        budget: Cap on the number of box points scanned.

    Yields:
        ``(coords, fvals)`` with coordinate arrays and exact f-values, already
        filtered to ``X^k <= f <= 2 X^k``.
    """
    field = region.field
    d = region.dim
    if cols is None:
        cols = [[int(i == j) for i in range(d)] for j in range(d)]
    ranges = region.scaled_ranges(X)
    if any(lo > hi for lo, hi in ranges):
        return
    bound = max(max(abs(lo), abs(hi)) for lo, hi in ranges)
    f_lo, f_hi = region.f_bounds(X)
    for xs in enumerate_hnf(cols, ranges, budget=budget):
        fv = field.f_array(xs, bound)
        mask = (fv >= f_lo) & (fv <= f_hi) if fv.dtype == object else (fv >= math.ceil(f_lo)) & (fv <= math.floor(f_hi))
        if fv.dtype == object:
            mask = np.array(mask, dtype=bool)
        if mask.any():
            yield [x[mask] for x in xs], fv[mask]


def ideal_sublattice(ideal: Ideal) -> list[list[int]]:
    """Triangular basis (first k-1 HNF columns, last entry dropped) of Z^(k-1) cap ideal."""
    h = ideal.hnf
    k = len(h)
    return [list(h[j][: k - 1]) for j in range(k - 1)]


# -- counting ---------------------------------------------------------------


@dataclass(frozen=True)
class CountResult:
    """Exact |A_X(n)| against its predicted main term.

    Attributes:
        count: Exact number of x in R_X with n | (x).
        main: rho(n)/N(n) * vol(R) * X^(k-1).
        density: rho(n)/N(n) as an exact rational.
        volume: Volume estimate of R used for ``main``.
        envelope: The error term 1 + X^(k-2) / (|z|^(k-2) N^((k-2)/k)).
        envelope_upper: sum_{j=1}^{k-2} X^j / (|z|^j N^(j/k)).
        shortest: Norm of the shortest multiplier-lattice vector.
    """

    ideal_norm: int
    X: float
    count: int
    main: float
    density: Fraction
    volume: float
    envelope: float
    envelope_upper: float
    shortest: float

    @property
    def deviation(self) -> float:
        return abs(self.count - self.main)

    @property
    def calibration(self) -> float:
        """|exact - main| / envelope."""
        return self.deviation / self.envelope


def error_envelope(k: int, norm: int, shortest: float, X) -> tuple[float, float]:
    """Both error terms of the counting lemma.

    Args:
        k: Field degree.
        norm: N(n).
        shortest: ||z(n)||.
        X: Dilation.

    Returns:
        ``(1 + X^(k-2)/(|z|^(k-2) N^((k-2)/k)), sum_{j=1}^{k-2} X^j/(|z|^j N^(j/k)))``.
    """
    X = float(X)
    t = X / (shortest * norm ** (1 / k))
    return 1.0 + t ** (k - 2), sum(t**j for j in range(1, k - 1))


def count_points(ideal: Ideal, region: Region, X, budget: int = 10**9) -> int:
    """|A_X(n)|: points of R_X cap Z^(k-1) lying in the ideal."""
    return sum(len(xs[0]) for xs, _ in region_points(region, X, ideal_sublattice(ideal), budget=budget))


def count_exact(ideal: Ideal, region: Region, X, volume: VolumeEstimate | None = None,
                budget: int = 10**9) -> CountResult:
    """|A_X(n)| by enumeration of Z^(k-1) cap n inside X * B.

    Args:
        ideal: The ideal n.
        region: The region R.
        X: Dilation (X >= 1).
        volume: Precomputed volume of R (computed if omitted).
        budget: Maximum number of box points scanned.

    Returns:
        A :class:`CountResult`.
    """
    if X < 1:
        raise ValueError("X must be at least 1")
    field = region.field
    k = field.k
    if volume is None:
        volume = region_volume(region)
    count = count_points(ideal, region, X, budget)
    dens = rho_ideal(ideal).value / ideal.norm
    main = float(dens) * volume.value * float(X) ** (k - 1)
    arith = arithmetic(field)
    g = arith.principal_generator(ideal)
    lb = multiplier_lattice(field, g)
    env, env1 = error_envelope(k, ideal.norm, lb.shortest_norm, X)
    return CountResult(ideal.norm, float(X), count, main, dens, volume.value, env, env1, lb.shortest_norm)


def count_bruteforce(ideal: Ideal, region: Region, X) -> int:
    """|A_X(n)| by scanning every integer point of the box (test oracle)."""
    count = 0
    ranges = region.scaled_ranges(X)
    import itertools

    for x in itertools.product(*[range(a, b + 1) for a, b in ranges]):
        if region.contains(x, X) and ideal.contains(tuple(x) + (0,)):
            count += 1
    return count
