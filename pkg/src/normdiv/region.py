"""Regions R = {x in B : 1 <= f(x) <= 2} and their volumes.

A region is an axis-parallel box B with rational corners intersected with the
slab 1 <= f <= 2.  Dilation by X is tested in exact integer arithmetic.
The volume is computed by deterministic interval refinement of B, with a
one-dimensional root-finding quadrature as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import integrate

from normdiv.field import FieldSpec


class VolumeBudgetError(RuntimeError):
    """The requested volume tolerance is not reachable within the cell budget."""


@dataclass(frozen=True)
class Region:
    """The box ``prod [lo_i, hi_i]`` cut down to ``1 <= f(x) <= 2``.

    Attributes:
        field: Field supplying the form f.
        box: Pairs ``(lo_i, hi_i)`` of rationals, one per coordinate of Z^(k-1).
    """

    field: FieldSpec
    box: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if len(self.box) != self.field.k - 1:
            raise ValueError(f"box must have {self.field.k - 1} sides")
        box = tuple((Fraction(a), Fraction(b)) for a, b in self.box)
        if any(a > b for a, b in box):
            raise ValueError("box sides must satisfy lo <= hi")
        object.__setattr__(self, "box", box)

    @property
    def dim(self) -> int:
        return len(self.box)

    @property
    def box_volume(self) -> Fraction:
        out = Fraction(1)
        for a, b in self.box:
            out *= b - a
        return out

    def scaled_ranges(self, X) -> list[tuple[int, int]]:
        """Integer ranges ``ceil(lo X) .. floor(hi X)`` for each coordinate."""
        X = Fraction(X)
        return [(math.ceil(a * X), math.floor(b * X)) for a, b in self.box]

    def f_bounds(self, X) -> tuple[Fraction, Fraction]:
        """The admissible range ``[X^k, 2 X^k]`` for f on R_X."""
        Xk = Fraction(X) ** self.field.k
        return Xk, 2 * Xk

    def contains(self, x: Sequence[int], X=1) -> bool:
        """Exact membership of an integer point in R_X."""
        X = Fraction(X)
        if any(not (a * X <= xi <= b * X) for xi, (a, b) in zip(x, self.box)):
            return False
        lo, hi = self.f_bounds(X)
        return lo <= self.field.incomplete_norm(x) <= hi

    def contains_real(self, x: Sequence[float]) -> bool:
        if any(not (a <= xi <= b) for xi, (a, b) in zip(x, self.box)):
            return False
        v = self.field.incomplete_norm(x)
        return 1 <= v <= 2

    def scaled(self, factor) -> "Region":
        """The box enlarged about its centre by ``factor`` (f-range unchanged)."""
        factor = Fraction(factor)
        out = []
        for a, b in self.box:
            c, h = (a + b) / 2, (b - a) / 2
            out.append((c - factor * h, c + factor * h))
        return Region(self.field, tuple(out))

    def to_dict(self) -> dict:
        return {"box": [[str(a), str(b)] for a, b in self.box]}


def default_region(field: FieldSpec) -> Region:
    """The built-in region: x_1 in [1/2, 3/2], the other coordinates in [-1/2, 1/2]."""
    half = Fraction(1, 2)
    box = [(half, 3 * half)] + [(-half, half)] * (field.k - 2)
    return Region(field, tuple(box))


def region_from_box(field: FieldSpec, box) -> Region:
    return Region(field, tuple((Fraction(str(a)), Fraction(str(b))) for a, b in box))


# -- interval evaluation of f ------------------------------------------------


def _power_interval(lo: np.ndarray, hi: np.ndarray, e: int) -> tuple[np.ndarray, np.ndarray]:
    if e == 0:
        return np.ones_like(lo), np.ones_like(hi)
    a, b = lo**e, hi**e
    if e % 2:
        return a, b
    low = np.where((lo <= 0) & (hi >= 0), 0.0, np.minimum(a, b))
    return low, np.maximum(a, b)


def _form_interval(form: dict, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Naive interval enclosure of a polynomial {exponents: coeff} over cells."""
    n = lo.shape[0]
    tot_lo = np.zeros(n)
    tot_hi = np.zeros(n)
    for e, c in form.items():
        t_lo = np.full(n, float(c))
        t_hi = np.full(n, float(c))
        for i, ei in enumerate(e):
            if not ei:
                continue
            p_lo, p_hi = _power_interval(lo[:, i], hi[:, i], ei)
            cands = np.stack([t_lo * p_lo, t_lo * p_hi, t_hi * p_lo, t_hi * p_hi])
            t_lo, t_hi = cands.min(axis=0), cands.max(axis=0)
        tot_lo += t_lo
        tot_hi += t_hi
    return tot_lo, tot_hi


def _form_value(form: dict, x: np.ndarray) -> np.ndarray:
    out = np.zeros(x.shape[0])
    for e, c in form.items():
        term = np.full(x.shape[0], float(c))
        for i, ei in enumerate(e):
            if ei:
                term = term * x[:, i] ** ei
        out += term
    return out


def _derivative_forms(field: FieldSpec) -> list[dict]:
    forms = []
    for v in range(field.k - 1):
        d = {}
        for e, c in field.incomplete_form.items():
            if e[v]:
                e2 = tuple(ei - (i == v) for i, ei in enumerate(e))
                d[e2] = d.get(e2, 0) + c * e[v]
        forms.append(d)
    return forms


def f_interval(field: FieldSpec, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Enclosure of f over each cell ``[lo, hi]`` (rows are cells).

    The naive monomial enclosure is intersected with the centred form
    ``f(c) + sum_i [df/dx_i] [-w_i/2, w_i/2]``, whose overestimate shrinks
    quadratically with the cell width.
    """
    form = field.incomplete_form
    n_lo, n_hi = _form_interval(form, lo, hi)
    centre = (lo + hi) / 2
    half = (hi - lo) / 2
    fc = _form_value(form, centre)
    spread = np.zeros(lo.shape[0])
    for i, dform in enumerate(_derivative_forms(field)):
        g_lo, g_hi = _form_interval(dform, lo, hi)
        spread += np.maximum(np.abs(g_lo), np.abs(g_hi)) * half[:, i]
    tot_lo = np.maximum(n_lo, fc - spread)
    tot_hi = np.minimum(n_hi, fc + spread)
    slack = 1e-12 * (np.abs(tot_lo) + np.abs(tot_hi) + 1.0)
    return tot_lo - slack, tot_hi + slack


def _fold_symmetric(region: Region) -> tuple[list[tuple[Fraction, Fraction]], int]:
    """Halve the box along every coordinate in which f is even and the box symmetric."""
    box = list(region.box)
    fold = 1
    for i, (a, b) in enumerate(box):
        even = all(e[i] % 2 == 0 for e in region.field.incomplete_form)
        if even and a == -b and b > 0:
            box[i] = (Fraction(0), b)
            fold *= 2
    return box, fold


_VOLUME_CACHE: dict = {}


@dataclass(frozen=True)
class VolumeEstimate:
    """Inner/outer volume enclosure: value = midpoint, error = half-gap."""

    value: float
    error: float
    inner: float
    outer: float
    cells: int
    depth: int


def default_volume_tol(k: int) -> float:
    """Volume tolerance reachable in about a minute: 1e-4 for k = 3, 1e-3 above."""
    return 1e-4 if k <= 3 else 1e-3


def region_volume(region: Region, tol: float | None = None, cell_budget: int = 10**8, chunk: int = 2**18) -> VolumeEstimate:
    """Volume of a region by deterministic dyadic refinement.

    Cells whose f-enclosure lies inside [1, 2] count fully, cells disjoint
    from it are discarded, and the rest are split into 2^d children until the
    total volume of undecided cells falls below ``2 * tol``.

    Args:
        region: The region.
        tol: Target half-gap between inner and outer volume (default from
            :func:`default_volume_tol`).
        cell_budget: Maximum number of cells examined.
        chunk: Cells classified per vectorized batch.

    Returns:
        A :class:`VolumeEstimate`.

    Raises:
        VolumeBudgetError: if the budget runs out before the tolerance is met.
    """
    if tol is None:
        tol = default_volume_tol(region.field.k)
    key = (region, tol, cell_budget)
    cached = _VOLUME_CACHE.get(key)
    if cached is not None:
        return cached
    field = region.field
    d = region.dim
    box, fold = _fold_symmetric(region)
    lo0 = np.array([float(a) for a, _ in box])
    width = np.array([float(b - a) for a, b in box])
    if np.any(width == 0):
        return VolumeEstimate(0.0, 0.0, 0.0, 0.0, 0, 0)
    tol = tol / fold
    cells = lo0[None, :].copy()
    inner = 0.0
    examined = 0
    depth = 0
    offsets = np.array(np.meshgrid(*([[0.0, 1.0]] * d), indexing="ij")).reshape(d, -1).T
    while True:
        cell_vol = float(np.prod(width))
        undecided = []
        for s in range(0, len(cells), chunk):
            lo = cells[s: s + chunk]
            hi = lo + width
            f_lo, f_hi = f_interval(field, lo, hi)
            inside = (f_lo >= 1.0) & (f_hi <= 2.0)
            outside = (f_hi < 1.0) | (f_lo > 2.0)
            inner += cell_vol * int(np.count_nonzero(inside))
            undecided.append(lo[~inside & ~outside])
        examined += len(cells)
        cells = np.concatenate(undecided) if undecided else np.zeros((0, d))
        boundary = cell_vol * len(cells)
        if boundary / 2 <= tol:
            est = VolumeEstimate(
                fold * (inner + boundary / 2), fold * boundary / 2, fold * inner, fold * (inner + boundary), examined, depth
            )
            _VOLUME_CACHE[key] = est
            return est
        if examined + len(cells) * 2**d > cell_budget:
            raise VolumeBudgetError(
                f"tolerance {tol} not reached: half-gap {boundary / 2:.3g} after {examined} cells"
            )
        width = width / 2
        cells = (cells[:, None, :] + offsets[None, :, :] * width[None, None, :]).reshape(-1, d)
        depth += 1


# -- quadrature cross-check ---------------------------------------------------


def _slice_measure(coeffs: np.ndarray, a: float, b: float) -> float:
    """Measure of {t in [a, b] : 1 <= g(t) <= 2} for a polynomial g (high degree first)."""
    pts = [a, b]
    for level in (1.0, 2.0):
        c = coeffs.copy()
        c[-1] -= level
        c = np.trim_zeros(c, "f")
        if len(c) > 1:
            for r in np.roots(c):
                if abs(r.imag) < 1e-9 and a < r.real < b:
                    pts.append(float(r.real))
    pts.sort()
    total = 0.0
    for u, v in zip(pts, pts[1:]):
        if v <= u:
            continue
        m = (u + v) / 2
        val = np.polyval(coeffs, m)
        if 1.0 <= val <= 2.0:
            total += v - u
    return total


def _last_variable_poly(field: FieldSpec, head: Sequence[float]) -> np.ndarray:
    """Coefficients (high first) of t -> f(head, t)."""
    k1 = field.k - 1
    deg = field.k
    out = np.zeros(deg + 1)
    for e, c in field.incomplete_form.items():
        v = float(c)
        for xi, ei in zip(head, e[: k1 - 1]):
            v *= xi**ei
        out[deg - e[k1 - 1]] += v
    return out


def region_volume_quadrature(region: Region, points: int = 400) -> float:
    """Volume by exact slice measures in the last coordinate and quadrature in the rest.

    The integrand (length of the admissible t-set) is only piecewise smooth, so
    this is a cross-check of modest accuracy, not the reported value.
    """
    field = region.field
    a_last, b_last = (float(v) for v in region.box[-1])
    heads = region.box[:-1]
    nodes, weights = np.polynomial.legendre.leggauss(points)

    def measure(head):
        return _slice_measure(_last_variable_poly(field, head), a_last, b_last)

    if len(heads) == 1:
        a, b = (float(v) for v in heads[0])
        val, _ = integrate.quad(lambda t: measure([t]), a, b, limit=400, epsabs=1e-7)
        return float(val)
    # Tensor Gauss-Legendre over the leading coordinates.
    grids = []
    for a, b in heads:
        a, b = float(a), float(b)
        grids.append(((b - a) / 2 * nodes + (a + b) / 2, (b - a) / 2 * weights))
    total = 0.0
    for idx in np.ndindex(*([points] * len(heads))):
        head = [grids[i][0][j] for i, j in enumerate(idx)]
        w = math.prod(grids[i][1][j] for i, j in enumerate(idx))
        total += w * measure(head)
    return total
