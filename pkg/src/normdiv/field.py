"""Galois number fields given by an integral basis and a multiplication tensor.

Elements of the ring of integers are integer coordinate tuples with respect to
the basis ``omega_1 = 1, omega_2, ..., omega_k``.  Points of Z^(k-1) are
identified with elements whose last coordinate vanishes, and the incomplete
norm form ``f`` is the norm restricted to that hyperplane.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import mpmath
import numpy as np

from normdiv.intlat import det_bareiss

Coords = tuple[int, ...]


class FieldError(ValueError):
    """Malformed or unsupported field data."""


class PrecisionError(ArithmeticError):
    """Numeric embeddings failed their consistency check."""


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


@dataclass(frozen=True)
class FieldSpec:
    """Data describing a monogenic Galois field of degree ``k``.

    ``minpoly`` lists the coefficients of the monic minimal polynomial of a
    primitive element theta, lowest degree first.  ``basis`` expresses each
    omega_i in the power basis 1, theta, ..., theta^(k-1) (rational entries
    allowed).  ``tensor[i][j][r]`` is the coefficient of omega_r in
    omega_i * omega_j.  ``units`` are coordinate vectors of fundamental units
    and ``torsion`` the number of roots of unity.
    """

    name: str
    minpoly: tuple[int, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    tensor: tuple[tuple[tuple[int, ...], ...], ...]
    discriminant: int
    class_number: int
    units: tuple[Coords, ...]
    torsion: int
    precision: int = 128
    description: str = dc_field(default="", compare=False)

    def __post_init__(self):
        k = self.degree
        if k < 3:
            raise FieldError("degree must be at least 3")
        if self.minpoly[-1] != 1:
            raise FieldError("minimal polynomial must be monic")
        if len(self.basis) != k or any(len(r) != k for r in self.basis):
            raise FieldError("basis must be a k x k matrix")
        if len(self.tensor) != k or any(len(a) != k or any(len(b) != k for b in a) for a in self.tensor):
            raise FieldError("tensor must be k x k x k")
        if self.class_number != 1:
            raise FieldError("only class number 1 is supported")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        k = int(d["degree"])
        flat = [int(x) for x in d["tensor"]]
        if len(flat) != k**3:
            raise FieldError(f"tensor must hold {k**3} integers, got {len(flat)}")
        tensor = tuple(
            tuple(tuple(flat[(i * k + j) * k: (i * k + j) * k + k]) for j in range(k)) for i in range(k)
        )
        basis = tuple(tuple(Fraction(x) for x in row) for row in d["basis"])
        return cls(
            name=d["name"],
            minpoly=tuple(int(c) for c in d["minpoly"]),
            basis=basis,
            tensor=tensor,
            discriminant=int(d["discriminant"]),
            class_number=int(d["class_number"]),
            units=tuple(tuple(int(c) for c in u) for u in d["units"]),
            torsion=int(d["torsion"]),
            precision=int(d.get("precision", 128)),
            description=d.get("description", ""),
        )

    def to_dict(self) -> dict:
        k = self.degree
        return {
            "name": self.name,
            "description": self.description,
            "degree": k,
            "minpoly": list(self.minpoly),
            "basis": [[str(x) for x in row] for row in self.basis],
            "tensor": [self.tensor[i][j][r] for i in range(k) for j in range(k) for r in range(k)],
            "discriminant": self.discriminant,
            "class_number": self.class_number,
            "units": [list(u) for u in self.units],
            "torsion": self.torsion,
            "precision": self.precision,
        }

    @classmethod
    def load(cls, path) -> "FieldSpec":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def dump(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def k(self) -> int:
        return self.degree

    def one(self) -> Coords:
        return (1,) + (0,) * (self.k - 1)

    def from_int(self, m: int) -> Coords:
        return (m,) + (0,) * (self.k - 1)

    def embed(self, x: Sequence[int]) -> Coords:
        """Z^(k-1) -> O_K, appending a zero last coordinate."""
        if len(x) != self.k - 1:
            raise ValueError(f"expected {self.k - 1} coordinates")
        return tuple(int(c) for c in x) + (0,)

    def mul(self, x: Sequence[int], y: Sequence[int]) -> Coords:
        k = self.k
        if len(x) != k or len(y) != k:
            raise ValueError(f"expected {k} coordinates")
        out = [0] * k
        t = self.tensor
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = t[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for r, a in enumerate(ti[j]):
                    if a:
                        out[r] += c * a
        return tuple(out)

    def add(self, x, y) -> Coords:
        return tuple(a + b for a, b in zip(x, y))

    def power(self, x, e: int) -> Coords:
        if e < 0:
            return self.power(self.inverse(x), -e)
        result = self.one()
        base = tuple(x)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def mult_matrix(self, x: Sequence[int]) -> list[list[int]]:
        """Matrix M with (x*y) = M y, rows indexed by output coordinate."""
        k = self.k
        t = self.tensor
        return [[sum(x[i] * t[i][j][r] for i in range(k)) for j in range(k)] for r in range(k)]

    def norm(self, x: Sequence[int]) -> int:
        return det_bareiss(self.mult_matrix(x))

    def trace(self, x: Sequence[int]) -> int:
        m = self.mult_matrix(x)
        return sum(m[i][i] for i in range(self.k))

    def inverse(self, x: Sequence[int]) -> Coords:
        """Exact inverse of a unit; raises if x is not a unit."""
        q = self.divide(self.one(), x)
        if q is None:
            raise ValueError("element is not a unit")
        return q

    def divide(self, x: Sequence[int], y: Sequence[int]) -> Coords | None:
        """x / y if it is integral, else None (exact linear solve)."""
        m = self.mult_matrix(y)
        sol = _solve_rational(m, list(x))
        if sol is None or any(v.denominator != 1 for v in sol):
            return None
        return tuple(int(v) for v in sol)

    # -- norm forms ---------------------------------------------------------

    @cached_property
    def norm_form(self) -> dict[tuple[int, ...], int]:
        """Coefficients of N(x_1 omega_1 + ... + x_k omega_k) as {exponents: coeff}."""
        k = self.k
        # Entry (r, j) of the multiplication matrix is linear in x.
        entries = [[{} for _ in range(k)] for _ in range(k)]
        for i in range(k):
            e = tuple(int(a == i) for a in range(k))
            for j in range(k):
                for r in range(k):
                    c = self.tensor[i][j][r]
                    if c:
                        entries[r][j][e] = entries[r][j].get(e, 0) + c
        total: dict = {}
        for perm in itertools.permutations(range(k)):
            sign = _perm_sign(perm)
            term = {(0,) * k: sign}
            for r in range(k):
                term = _poly_mul(term, entries[r][perm[r]])
                if not term:
                    break
            for e, c in term.items():
                total[e] = total.get(e, 0) + c
        return {e: c for e, c in sorted(total.items()) if c}

    @cached_property
    def incomplete_form(self) -> dict[tuple[int, ...], int]:
        """Coefficients of f(x_1..x_{k-1}) = N(x_1 omega_1 + ... + x_{k-1} omega_{k-1})."""
        return {e[:-1]: c for e, c in self.norm_form.items() if e[-1] == 0}

    def incomplete_norm(self, x: Sequence[int]) -> int:
        total = 0
        for e, c in self.incomplete_form.items():
            term = c
            for xi, ei in zip(x, e):
                if ei:
                    term *= xi**ei
            total += term
        return total

    @cached_property
    def form_abs_coeff_sum(self) -> int:
        return sum(abs(c) for c in self.incomplete_form.values())

    def f_array(self, coords: Sequence[np.ndarray], bound: int | None = None) -> np.ndarray:
        """Vectorized f on integer arrays.

        ``bound`` is an upper bound on max |x_i|; int64 is used only when the
        resulting values provably fit, otherwise Python-int object arrays.
        """
        if bound is None:
            bound = max((int(np.abs(np.asarray(c)).max()) if np.size(c) else 0) for c in coords)
        fits = self.form_abs_coeff_sum * max(bound, 1) ** self.k < 2**62
        dtype = np.int64 if fits else object
        xs = [np.asarray(c).astype(dtype) for c in coords]
        shape = np.broadcast(*xs).shape if xs else ()
        out = np.zeros(shape, dtype=dtype)
        for e, c in self.incomplete_form.items():
            term = np.full(shape, c, dtype=dtype)
            for xi, ei in zip(xs, e):
                if ei:
                    term = term * xi**ei
            out = out + term
        return out

    def f_mod(self, coords: Sequence[np.ndarray], m: int) -> np.ndarray:
        """f(x) mod m for int64 arrays with 0 <= x < m (m < 2^31 required)."""
        if m >= 2**31:
            raise ValueError("modulus too large for the int64 path")
        xs = [np.asarray(c, dtype=np.int64) % m for c in coords]
        shape = np.broadcast(*xs).shape
        out = np.zeros(shape, dtype=np.int64)
        for e, c in self.incomplete_form.items():
            term = np.full(shape, c % m, dtype=np.int64)
            for xi, ei in zip(xs, e):
                for _ in range(ei):
                    term = term * xi % m
            out = (out + term) % m
        return out

    def f_gradient(self, x: Sequence[int]) -> list[int]:
        grad = []
        for v in range(self.k - 1):
            total = 0
            for e, c in self.incomplete_form.items():
                if e[v] == 0:
                    continue
                term = c * e[v]
                for i, (xi, ei) in enumerate(zip(x, e)):
                    p = ei - 1 if i == v else ei
                    if p:
                        term *= xi**p
                total += term
            grad.append(total)
        return grad

    # -- power basis --------------------------------------------------------

    @cached_property
    def basis_inverse(self) -> list[list[Fraction]]:
        """Matrix taking power-basis coordinates to omega coordinates."""
        k = self.k
        # Row i of ``basis`` is omega_i in the power basis: power = B^T omega.
        bt = [[self.basis[j][i] for j in range(k)] for i in range(k)]
        inv = _invert_rational(bt)
        if inv is None:
            raise FieldError("basis matrix is singular")
        return inv

    def from_power_basis(self, c: Sequence) -> Coords:
        """Omega coordinates of sum c_j theta^j (must be integral)."""
        k = self.k
        c = list(c) + [0] * (k - len(c))
        out = []
        inv = self.basis_inverse
        for i in range(k):
            v = sum(inv[i][j] * c[j] for j in range(k))
            if v.denominator != 1:
                raise ValueError("element is not integral in the omega basis")
            out.append(int(v))
        return tuple(out)

    def to_power_basis(self, x: Sequence[int]) -> list[Fraction]:
        k = self.k
        return [sum(x[i] * self.basis[i][j] for i in range(k)) for j in range(k)]

    @cached_property
    def theta(self) -> Coords:
        return self.from_power_basis([0, 1])

    def poly_at_theta(self, coeffs: Sequence[int]) -> Coords:
        """Element g(theta) for an integer polynomial g (coefficients low first)."""
        acc = (0,) * self.k
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, self.theta), self.from_int(c))
        return acc

    @cached_property
    def is_monogenic(self) -> bool:
        return poly_discriminant(self.minpoly) == self.discriminant

    # -- numeric embeddings -------------------------------------------------

    @cached_property
    def conjugates(self) -> tuple:
        """Roots of the minimal polynomial (mpmath), real ones first then by imaginary part."""
        with mpmath.workprec(self.precision + 32):
            rts = mpmath.polyroots(list(reversed(self.minpoly)), maxsteps=200, extraprec=2 * self.precision)
            rts = [mpmath.mpc(r) for r in rts]
            cleaned = []
            for r in rts:
                if abs(r.imag) < mpmath.mpf(2) ** (-self.precision // 2):
                    r = mpmath.mpc(r.real, 0)
                cleaned.append(r)
            cleaned.sort(key=lambda r: (r.imag != 0, float(r.real), float(r.imag)))
        return tuple(cleaned)

    @cached_property
    def basis_embeddings(self) -> tuple[tuple, ...]:
        """omega_i^sigma for every conjugate sigma (rows sigma, columns i)."""
        with mpmath.workprec(self.precision + 32):
            rows = []
            for t in self.conjugates:
                pw = [mpmath.mpc(1)]
                for _ in range(self.k - 1):
                    pw.append(pw[-1] * t)
                rows.append(tuple(sum((mpmath.mpf(b.numerator) / b.denominator) * pw[j]
                                      for j, b in enumerate(self.basis[i])) for i in range(self.k)))
        return tuple(rows)

    @cached_property
    def embedding_matrix(self) -> np.ndarray:
        """Complex float64 matrix E with E @ x = (x^sigma)_sigma."""
        return np.array([[complex(v) for v in row] for row in self.basis_embeddings])

    def embeddings(self, x: Sequence[int], check: bool = True) -> list:
        """Conjugates x^sigma as mpmath numbers; checks |prod| == |N(x)|."""
        with mpmath.workprec(self.precision + 32):
            vals = [sum(xi * w for xi, w in zip(x, row)) for row in self.basis_embeddings]
            if check and any(x):
                n = self.norm(x)
                prod = mpmath.fprod(vals)
                if n == 0 or abs(abs(prod) / abs(n) - 1) > mpmath.mpf(10) ** -9:
                    raise PrecisionError("product of conjugates disagrees with the norm")
        return vals

    def log_embedding(self, x: Sequence[int]) -> list[float]:
        with mpmath.workprec(self.precision):
            return [float(mpmath.log(abs(v))) for v in self.embeddings(x, check=False)]

    # -- units and balancing ------------------------------------------------

    @cached_property
    def unit_logs(self) -> np.ndarray:
        return np.array([self.log_embedding(u) for u in self.units]).reshape(len(self.units), self.k)

    @cached_property
    def unit_inverses(self) -> tuple[Coords, ...]:
        return tuple(self.inverse(u) for u in self.units)

    @cached_property
    def balance_bound(self) -> float:
        """B_K: spread diameter of the unit log-lattice parallelepiped plus log(torsion)."""
        spreads = [float(r.max() - r.min()) for r in self.unit_logs]
        return sum(spreads) + math.log(self.torsion)

    @cached_property
    def balance_constant(self) -> float:
        """c_K with ||x|| <= c_K |N(x)|^(1/k) for balanced x."""
        einv = np.linalg.inv(self.embedding_matrix)
        return float(np.linalg.norm(einv, 2) * math.sqrt(self.k) * math.exp(self.balance_bound))

    @cached_property
    def regulator(self) -> float:
        """Regulator of the given units (archimedean places weighted 1 or 2)."""
        k = self.k
        conj = self.conjugates
        places = []
        seen_complex = set()
        for i, t in enumerate(conj):
            if t.imag == 0:
                places.append((i, 1))
            else:
                key = (round(float(t.real), 12), round(abs(float(t.imag)), 12))
                if key not in seen_complex:
                    seen_complex.add(key)
                    places.append((i, 2))
        r = len(places) - 1
        if r != len(self.units):
            raise FieldError(f"expected {r} fundamental units, got {len(self.units)}")
        if r == 0:
            return 1.0
        m = np.array([[w * self.unit_logs[u][i] for (i, w) in places[:r]] for u in range(r)])
        return abs(float(np.linalg.det(m)))

    @cached_property
    def signature(self) -> tuple[int, int]:
        real = sum(1 for t in self.conjugates if t.imag == 0)
        return real, (self.k - real) // 2

    def spread(self, x: Sequence[int]) -> float:
        logs = self.log_embedding(x)
        return max(logs) - min(logs)

    def balance_generator(self, g: Sequence[int]) -> Coords:
        """Multiply g by a unit so that all |g^sigma| are close to |N g|^(1/k)."""
        g = tuple(int(c) for c in g)
        if not any(g):
            raise ValueError("cannot balance zero")
        if not self.units:
            return g
        logs = np.array(self.log_embedding(g))
        target = logs - logs.mean()
        A = self.unit_logs.T  # k x r
        t, *_ = np.linalg.lstsq(A, -target, rcond=None)
        base = np.round(t).astype(int)
        best = None
        r = len(self.units)
        for delta in itertools.product((-1, 0, 1), repeat=r):
            c = base + np.array(delta)
            v = target + A @ c
            s = float(v.max() - v.min())
            key = (round(s, 9), tuple(abs(int(ci)) for ci in c), tuple(int(ci) for ci in c))
            if best is None or key < best[0]:
                best = (key, c)
        c = best[1]
        out = g
        for ui, (u, uinv) in enumerate(zip(self.units, self.unit_inverses)):
            e = int(c[ui])
            if e > 0:
                out = self.mul(out, self.power(u, e))
            elif e < 0:
                out = self.mul(out, self.power(uinv, -e))
        return out

    # -- Galois group -------------------------------------------------------

    @cached_property
    def automorphisms(self) -> tuple[Coords, ...]:
        """Images sigma(theta) in omega coordinates, one per automorphism.

        Found numerically from the conjugates and certified exactly by checking
        m(sigma(theta)) == 0 in the ring.  Empty if the field is not Galois.
        """
        k = self.k
        conj = [complex(t) for t in self.conjugates]
        vander = np.array([[t**j for j in range(k)] for t in conj])
        vinv = np.linalg.inv(vander)
        found = []
        for perm in itertools.permutations(range(k)):
            w = np.array([conj[perm[s]] for s in range(k)])
            c = vinv @ w
            if np.max(np.abs(c.imag)) > 1e-6:
                continue
            cr = np.round(c.real)
            if np.max(np.abs(c.real - cr)) > 1e-6:
                continue
            coeffs = [int(v) for v in cr]
            try:
                image = self.from_power_basis(coeffs)
            except ValueError:
                continue
            val = (0,) * k
            for a in reversed(self.minpoly):
                val = self.add(self.mul(val, image), self.from_int(a))
            if not any(val) and image not in found:
                found.append(image)
        return tuple(found)

    def __repr__(self):
        return f"FieldSpec({self.name!r}, k={self.k})"


@dataclass(frozen=True)
class Element:
    """An algebraic integer bound to its field; supports * + and norm()."""

    field: FieldSpec
    coords: Coords

    def _check(self, other: "Element"):
        if not isinstance(other, Element) or other.field != self.field:
            raise ValueError("elements belong to different fields")

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.field, self.field.mul(self.coords, other.coords))

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.field, self.field.add(self.coords, other.coords))

    def norm(self) -> int:
        return self.field.norm(self.coords)


def _perm_sign(perm) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def _solve_rational(m, b):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(m, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


def _invert_rational(m):
    n = len(m)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        sol = _solve_rational(m, e)
        if sol is None:
            return None
        cols.append(sol)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def poly_discriminant(coeffs: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial via the resultant with its derivative."""
    n = len(coeffs) - 1
    deriv = [i * coeffs[i] for i in range(1, n + 1)]
    res = _resultant(list(coeffs), deriv)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res


def _resultant(a, b) -> int:
    # Sylvester matrix determinant; coefficients low first.
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    ar, br = list(reversed(a)), list(reversed(b))
    for i in range(n):
        rows.append([0] * i + ar + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + br + [0] * (size - n - 1 - i))
    return det_bareiss(rows)


def _builtin_path(name: str):
    return resources.files("normdiv") / "data" / f"{name}.json"


def builtin(name: str) -> FieldSpec:
    """Load a shipped field: ``"cubic9"`` or ``"biquadratic8"``."""
    key = BUILTIN_ALIASES.get(name, name)
    if key not in _BUILTIN_DATA:
        raise KeyError(f"unknown built-in field {name!r}")
    return _BUILTIN_CACHE.setdefault(key, FieldSpec.from_dict(_BUILTIN_DATA[key]))


def load_field(name_or_path: str) -> FieldSpec:
    key = BUILTIN_ALIASES.get(name_or_path, name_or_path)
    if key in _BUILTIN_DATA:
        return builtin(key)
    return FieldSpec.load(name_or_path)


def tensor_from_basis(minpoly: Sequence[int], basis: Sequence[Sequence]) -> list[int]:
    """Row-major multiplication tensor of an integral basis given in power-basis coordinates."""
    k = len(minpoly) - 1
    rows = [[Fraction(x) for x in row] for row in basis]

    def polymul(a, b):
        out = [Fraction(0)] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        for d in range(2 * k - 2, k - 1, -1):
            c = out[d]
            if c:
                for j in range(k + 1):
                    out[d - k + j] -= c * minpoly[j]
        return out[:k]

    bt = [[rows[j][i] for j in range(k)] for i in range(k)]
    inv = _invert_rational(bt)
    flat = []
    for i in range(k):
        for j in range(k):
            prod = polymul(rows[i], rows[j])
            coords = [sum(inv[r][c] * prod[c] for c in range(k)) for r in range(k)]
            if any(v.denominator != 1 for v in coords):
                raise FieldError("basis is not closed under multiplication")
            flat.extend(int(v) for v in coords)
    return flat


_CUBIC_BASIS = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
# omega = 1, sqrt2 = zeta - zeta^3, i = zeta^2, (sqrt2 + sqrt2 i)/2 = zeta
_BIQUADRATIC_BASIS = [["1", "0", "0", "0"], ["0", "1", "0", "-1"], ["0", "0", "1", "0"], ["0", "1", "0", "0"]]

_BUILTIN_DATA = {
    "cubic9": {
        "name": "cubic9",
        "description": "cyclic cubic field Q[t]/(t^3 - 3t - 1), conductor 9",
        "degree": 3,
        "minpoly": [-1, -3, 0, 1],
        "basis": _CUBIC_BASIS,
        "tensor": tensor_from_basis([-1, -3, 0, 1], _CUBIC_BASIS),
        "discriminant": 81,
        "class_number": 1,
        "units": [[0, 1, 0], [1, 1, 0]],
        "torsion": 2,
        "precision": 128,
    },
    "biquadratic8": {
        "name": "biquadratic8",
        "description": "Q(sqrt2, i) = Q(zeta8) with basis 1, sqrt2, i, (sqrt2 + sqrt2 i)/2",
        "degree": 4,
        "minpoly": [1, 0, 0, 0, 1],
        "basis": _BIQUADRATIC_BASIS,
        "tensor": tensor_from_basis([1, 0, 0, 0, 1], _BIQUADRATIC_BASIS),
        "discriminant": 256,
        "class_number": 1,
        "units": [[1, 1, 0, 0]],
        "torsion": 8,
        "precision": 128,
    },
}

BUILTIN_ALIASES = {"cubic": "cubic9", "quartic": "biquadratic8", "zeta8": "biquadratic8"}
_BUILTIN_CACHE: dict[str, FieldSpec] = {}


def builtin_names() -> list[str]:
    return sorted(_BUILTIN_DATA)


def verify_field(spec: FieldSpec) -> dict[str, bool]:
    """Run the finite consistency checks of a field description.

    Args:
        spec: The field to check.

    Returns:
        Mapping from check name to pass/fail.  Failures are data, never
        exceptions.
    """
    k = spec.k
    t = spec.tensor
    basis = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    out: dict[str, bool] = {}
    out["identity"] = all(t[0][j] == basis[j] and t[j][0] == basis[j] for j in range(k))
    out["commutative"] = all(t[i][j] == t[j][i] for i in range(k) for j in range(k))
    assoc = True
    for a, b, c in itertools.product(basis, repeat=3):
        if spec.mul(spec.mul(a, b), c) != spec.mul(a, spec.mul(b, c)):
            assoc = False
            break
    out["associative"] = assoc
    try:
        out["tensor_matches_basis"] = list(tensor_from_basis(spec.minpoly, spec.basis)) == [
            t[i][j][r] for i in range(k) for j in range(k) for r in range(k)
        ]
    except FieldError:
        out["tensor_matches_basis"] = False
    trace_gram = [[spec.trace(spec.mul(a, b)) for b in basis] for a in basis]
    out["discriminant"] = det_bareiss(trace_gram) == spec.discriminant
    out["monogenic"] = poly_discriminant(spec.minpoly) == spec.discriminant
    with mpmath.workprec(spec.precision):
        tol = mpmath.mpf(2) ** (-spec.precision // 2)
        out["roots"] = len(spec.conjugates) == k and all(
            abs(mpmath.polyval(list(reversed(spec.minpoly)), r)) < tol for r in spec.conjugates
        )
    try:
        out["galois"] = len(spec.automorphisms) == k
    except (FieldError, ValueError, np.linalg.LinAlgError):
        out["galois"] = False
    out["units"] = all(abs(spec.norm(u)) == 1 for u in spec.units)
    try:
        for x in ((1,) * k, tuple(range(1, k + 1)), (3,) + (0,) * (k - 2) + (-2,)):
            spec.embeddings(x)
        out["embedding_product"] = True
    except PrecisionError:
        out["embedding_product"] = False
    try:
        out["regulator"] = spec.regulator > 0
    except FieldError:
        out["regulator"] = False
    return out
