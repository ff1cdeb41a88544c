"""Experiment configuration, report tables and reproducibility manifests.

Config files are JSON objects; every key is optional::

    {
      "field": "cubic",              # built-in name or path to a field JSON
      "box": [[0.5, 1.5], [-0.5, 0.5]],
      "X": [50, 100, 200, 400],
      "delta": 4,
      "P0": 1000,
      "seed": 20240917,
      "volume_tol": 1e-4,
      "budgets": {"segment": 4194304, "enumeration": 1000000000,
                  "volume_cells": 100000000},
      "output": "out"
    }

Reports are written as ``<stem>.csv`` (fixed column order, no timings, so the
file is byte-reproducible), ``<stem>.json`` (same rows plus a summary and
per-column provenance) and ``<stem>.manifest.json``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import platform
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Any

from normdiv import __version__
from normdiv.field import FieldSpec, load_field
from normdiv.region import Region, default_region, region_from_box

DEFAULT_SEED = 20240917


class ConfigError(ValueError):
    """Malformed experiment configuration."""


@dataclass
class Budgets:
    segment: int = 2**22
    enumeration: int = 10**9
    volume_cells: int = 10**8


@dataclass
class ExperimentConfig:
    """Parameters of one experiment run.

    Attributes:
        field: Built-in field name or a path to a field JSON file.
        box: Region box as ``[[lo, hi], ...]``; ``None`` selects the default box.
        X: Dilation factors, ascending.
        delta: Cutoff parameter of the sharp decomposition.
        P0: Prime cutoff of the Euler product.
        seed: Seed for every sampled quantity.
        volume_tol: Target half-gap of the region volume (``None``: by degree).
        budgets: Work limits.
        output: Output directory (``None``: print to stdout only).
    """

    field: str = "cubic"
    box: list | None = None
    X: list[int] = dc_field(default_factory=lambda: [50, 100, 200, 400])
    delta: float = 4
    P0: int = 1000
    seed: int = DEFAULT_SEED
    volume_tol: float | None = None
    budgets: Budgets = dc_field(default_factory=Budgets)
    output: str | None = None

    def __post_init__(self):
        if isinstance(self.budgets, dict):
            try:
                self.budgets = Budgets(**self.budgets)
            except TypeError as exc:
                raise ConfigError(f"bad budgets: {exc}") from None
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.X, list) or not self.X or not all(isinstance(x, (int, float)) and x >= 1 for x in self.X):
            raise ConfigError("X must be a nonempty list of numbers >= 1")
        if list(self.X) != sorted(self.X):
            raise ConfigError("X must be sorted ascending")
        for name, value in asdict(self.budgets).items():
            if not isinstance(value, int) or value <= 0:
                raise ConfigError(f"budget {name} must be a positive integer")
        if self.P0 < 100:
            raise ConfigError("P0 must be at least 100")
        if self.delta <= 0:
            raise ConfigError("delta must be positive")
        if self.volume_tol is not None and self.volume_tol <= 0:
            raise ConfigError("volume_tol must be positive")
        if self.box is not None:
            if not isinstance(self.box, list) or not all(isinstance(b, list) and len(b) == 2 and b[0] <= b[1] for b in self.box):
                raise ConfigError("box must be a list of [lo, hi] pairs")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return asdict(self)

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form (output directory excluded)."""
        d = self.to_dict()
        d.pop("output", None)
        return hashlib.sha256(json.dumps(d, sort_keys=True, separators=(",", ":")).encode()).hexdigest()

    def load_field(self) -> FieldSpec:
        try:
            return load_field(self.field)
        except (OSError, KeyError, ValueError) as exc:
            raise ConfigError(f"cannot load field {self.field!r}: {exc}") from None

    def region(self, field: FieldSpec) -> Region:
        if self.box is None:
            return default_region(field)
        if len(self.box) != field.k - 1:
            raise ConfigError(f"box needs {field.k - 1} intervals")
        return region_from_box(field, self.box)


# -- values -----------------------------------------------------------------


def format_value(v: Any) -> str:
    """Cell text: rationals as ``num/den``, floats by ``repr`` (shortest round-trip)."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def parse_value(text: str) -> Any:
    """Inverse of :func:`format_value` for the types it produces."""
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@dataclass
class Report:
    """A table of rows with a summary.

    Attributes:
        name: Report stem, used for file names.
        columns: Column order for the CSV.
        rows: One dict per row.
        provenance: Column -> ``exact``, ``truncated`` or ``measured-constant``.
        summary: Free-form summary values (JSON only).
        timings: Per-row or global timings (JSON only).
        ok: Whether every check in the report passed.
    """

    name: str
    columns: list[str]
    rows: list[dict] = dc_field(default_factory=list)
    provenance: dict[str, str] = dc_field(default_factory=dict)
    summary: dict = dc_field(default_factory=dict)
    timings: dict = dc_field(default_factory=dict)
    ok: bool = True

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([format_value(row.get(c)) for c in self.columns])
        return buf.getvalue()

    def json_obj(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "columns": self.columns,
            "provenance": self.provenance,
            "rows": [{c: format_value(r.get(c)) for c in self.columns} for r in self.rows],
            "summary": _jsonable(self.summary),
            "timings": self.timings,
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return format_value(obj)
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def read_csv(text: str) -> tuple[list[str], list[dict]]:
    """Parse a report CSV back into typed rows."""
    reader = csv.reader(io.StringIO(text))
    columns = next(reader, [])
    rows = [{c: parse_value(v) for c, v in zip(columns, line)} for line in reader]
    return columns, rows


def manifest(config: ExperimentConfig | None, field: FieldSpec | None, extra: dict | None = None) -> dict:
    import mpmath
    import numpy
    import scipy

    out = {
        "normdiv": __version__,
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "mpmath": mpmath.__version__,
    }
    if config is not None:
        out["config"] = config.to_dict()
        out["config_digest"] = config.digest()
    if field is not None:
        out["field"] = {"name": field.name, "minpoly": list(field.minpoly), "discriminant": field.discriminant}
    if extra:
        out.update(extra)
    return out


def emit_report(report: Report, outdir: str | Path, manifest_data: dict | None = None) -> list[Path]:
    """Write CSV, JSON and (optionally) manifest files; returns the paths written."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = [outdir / f"{report.name}.csv", outdir / f"{report.name}.json"]
    paths[0].write_text(report.csv_text())
    paths[1].write_text(json.dumps(report.json_obj(), indent=2, sort_keys=True) + "\n")
    if manifest_data is not None:
        p = outdir / f"{report.name}.manifest.json"
        p.write_text(json.dumps(_jsonable(manifest_data), indent=2, sort_keys=True) + "\n")
        paths.append(p)
    return paths
