"""Command line interface: ``normdiv <subcommand> ...``.

Each subcommand builds a :class:`~normdiv.reports.Report`, prints its CSV to
stdout and, with ``--out DIR``, also writes CSV, JSON and a manifest.

Exit status: 0 success, 1 a checked identity failed, 2 malformed
configuration or arguments, 3 a work budget was exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from normdiv import asymptotic, divisor, identities
from normdiv.density import BudgetError, rho_direct, rho_ideal, varrho_assembled, varrho_direct
from normdiv.field import FieldSpec, builtin_names, verify_field
from normdiv.ideals import SearchBoundError, arithmetic
from normdiv.lattice import EnumerationBudgetError, count_exact
from normdiv.region import VolumeBudgetError, region_volume
from normdiv.reports import ConfigError, ExperimentConfig, Report, emit_report, manifest

EXIT_OK, EXIT_IDENTITY, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ERRORS = (BudgetError, EnumerationBudgetError, VolumeBudgetError, divisor.SieveBudgetError, SearchBoundError)


def _ideal_label(ideal) -> str:
    return repr(ideal)[len("Ideal("):-1]


# -- report builders --------------------------------------------------------


def report_field_verify(field: FieldSpec, args, cfg) -> Report:
    rep = Report("field_verify", ["check", "passed"], provenance={"passed": "exact"})
    for name, ok in verify_field(field).items():
        rep.rows.append({"check": name, "passed": ok})
    rep.ok = all(r["passed"] for r in rep.rows)
    return rep


def report_split(field: FieldSpec, args, cfg) -> Report:
    arith = arithmetic(field)
    rep = Report("split", ["p", "index", "e", "f", "r", "norm", "degree_one", "generator"])
    for P in arith.split_prime(args.p):
        rep.rows.append({"p": P.p, "index": P.index, "e": P.e, "f": P.f, "r": P.r, "norm": P.norm,
                         "degree_one": P.f == 1, "generator": " ".join(map(str, P.generator))})
    return rep


def report_ideals(field: FieldSpec, args, cfg) -> Report:
    arith = arithmetic(field)
    rep = Report("ideals", ["ideal", "norm", "hnf"])
    for q in arith.ideals_of_norm(args.n):
        rep.rows.append({"ideal": _ideal_label(q), "norm": q.norm,
                         "hnf": ";".join(" ".join(map(str, c)) for c in q.hnf)})
    rep.summary = {"a_K": len(rep.rows)}
    return rep


def report_mu(field: FieldSpec, args, cfg) -> Report:
    arith = arithmetic(field)
    mu = arith.mu_coefficients(args.n)
    rep = Report("mu", ["ideal", "norm", "mu"], provenance={"mu": "exact"})
    for q, c in sorted(mu.coeffs.items(), key=lambda t: (t[0].norm, t[0].factors)):
        rep.rows.append({"ideal": _ideal_label(q), "norm": q.norm, "mu": c})
    rep.summary = {"n": args.n, "support": len(mu)}
    return rep


def report_density(field: FieldSpec, args, cfg) -> Report:
    arith = arithmetic(field)
    if args.kind == "rho":
        rep = Report("density_rho", ["ideal", "norm", "rho", "rho_direct", "agree"],
                     provenance={"rho": "exact", "rho_direct": "exact"})
        for q in arith.ideals_of_norm(args.arg):
            r = rho_ideal(q).value
            try:
                d = rho_direct(q, budget=cfg.budgets.enumeration).value
            except BudgetError:
                d = None
            rep.rows.append({"ideal": _ideal_label(q), "norm": q.norm, "rho": r, "rho_direct": d,
                             "agree": None if d is None else d == r})
        rep.ok = all(r["agree"] is not False for r in rep.rows)
        return rep
    rep = Report("density_varrho", ["n", "varrho_direct", "varrho_assembled", "agree"],
                 provenance={"varrho_direct": "exact", "varrho_assembled": "exact"})
    a = varrho_assembled(arith, args.arg).value
    try:
        d = varrho_direct(field, args.arg).value
    except BudgetError:
        d = None
    rep.rows.append({"n": args.arg, "varrho_direct": d, "varrho_assembled": a, "agree": None if d is None else a == d})
    rep.ok = rep.rows[0]["agree"] is not False
    return rep


def report_identities(field: FieldSpec, args, cfg) -> Report:
    fields = [field] if args.field_only else [arithmetic(f).field for f in _all_builtin()]
    rep = Report("identities", ["check", "cases", "failures", "passed"], provenance={"passed": "exact"})
    t0 = time.perf_counter()
    for res in identities.identity_suite(fields, full=args.full):
        print(res.line(), file=sys.stderr)
        rep.rows.append({"check": res.name, "cases": res.checked, "failures": res.failure_count, "passed": res.passed})
        rep.timings[res.name] = round(res.seconds, 3)
    rep.timings["total"] = round(time.perf_counter() - t0, 3)
    rep.ok = all(r["passed"] for r in rep.rows)
    return rep


def _all_builtin():
    from normdiv.field import builtin

    return [builtin(n) for n in builtin_names()]


def report_count(field: FieldSpec, args, cfg) -> Report:
    arith = arithmetic(field)
    region = cfg.region(field)
    vol = region_volume(region, tol=cfg.volume_tol, cell_budget=cfg.budgets.volume_cells)
    cols = ["ideal", "norm", "X", "count", "main", "density", "envelope", "envelope_upper", "shortest", "calibration"]
    rep = Report("count", cols, provenance={"count": "exact", "density": "exact", "main": "truncated",
                                            "envelope": "measured-constant"})
    for q in arith.ideals_of_norm(args.norm):
        res = count_exact(q, region, args.X, volume=vol, budget=cfg.budgets.enumeration)
        rep.rows.append({"ideal": _ideal_label(q), "norm": q.norm, "X": args.X, "count": res.count, "main": res.main,
                         "density": res.density, "envelope": res.envelope, "envelope_upper": res.envelope_upper,
                         "shortest": res.shortest, "calibration": res.calibration})
    rep.summary = {"volume": vol.value, "volume_error": vol.error}
    return rep


def report_constant(field: FieldSpec, args, cfg) -> Report:
    cols = ["P0", "C", "tail_bound", "naive_product", "residue", "c_measured", "sigma"]
    rep = Report("constant", cols, provenance={"C": "truncated", "tail_bound": "measured-constant",
                                               "naive_product": "truncated"})
    p0s = args.p0 or [cfg.P0, 2 * cfg.P0]
    for p0 in p0s:
        t0 = time.perf_counter()
        est = asymptotic.constant_C(field, p0)
        d = est.as_dict()
        rep.rows.append({"P0": p0, "C": d["value"], "tail_bound": est.tail_bound, "naive_product": d["naive_value"],
                         "residue": d["residue"], "c_measured": est.c_measured, "sigma": est.sigma})
        rep.timings[str(p0)] = round(time.perf_counter() - t0, 3)
    if len(rep.rows) >= 2:
        diffs = [abs(float(b["C"]) - float(a["C"])) <= a["tail_bound"] for a, b in zip(rep.rows, rep.rows[1:])]
        rep.summary = {"stabilized": all(diffs)}
    return rep


def report_sum_exact(field: FieldSpec, args, cfg) -> Report:
    region = cfg.region(field)
    rep = Report("sum_exact", ["X", "points", "M_exact"], provenance={"M_exact": "exact"})
    t0 = time.perf_counter()
    vals = divisor.region_values(region, args.X)
    total = int(divisor.tau_lookup(vals, field.k).sum()) if vals.size else 0
    rep.rows.append({"X": args.X, "points": int(vals.size), "M_exact": total})
    rep.timings["total"] = round(time.perf_counter() - t0, 3)
    return rep


def report_hyperbola(field: FieldSpec, args, cfg) -> Report:
    k = args.k or field.k
    dec = divisor.hyperbola_decompose(args.n, args.y, k)
    cols = ["n", "y", "k", "S0"] + [f"T{j}" for j in range(1, k + 1)] + ["assembled", "tau", "holds"]
    row = {"n": args.n, "y": args.y, "k": k, "S0": dec.all_small, "assembled": dec.assembled, "tau": dec.tau,
           "holds": dec.holds}
    row.update({f"T{j}": t for j, t in enumerate(dec.terms, 1)})
    rep = Report("hyperbola", cols, [row], provenance={c: "exact" for c in cols})
    rep.ok = dec.holds
    return rep


def report_theorem(field: FieldSpec, args, cfg) -> Report:
    """M(R_X) against the predicted main term for every X in the config."""
    k = field.k
    region = cfg.region(field)
    xs = args.X or cfg.X
    t0 = time.perf_counter()
    vol = region_volume(region, tol=cfg.volume_tol, cell_budget=cfg.budgets.volume_cells)
    est = asymptotic.constant_C(field, cfg.P0)
    rep = Report(
        "theorem",
        ["X", "points", "M_exact", "main_term", "ratio", "volume", "volume_error", "C", "C_tail_bound"],
        provenance={"M_exact": "exact", "main_term": "truncated", "ratio": "truncated", "volume": "truncated",
                    "C": "truncated", "C_tail_bound": "measured-constant"},
    )
    rep.timings["setup"] = round(time.perf_counter() - t0, 3)
    for X in xs:
        t1 = time.perf_counter()
        vals = divisor.region_values(region, X)
        M = int(divisor.tau_lookup(vals, k, segment=cfg.budgets.segment).sum()) if vals.size else 0
        main = asymptotic.main_term(vol.value, X, est.value, k)
        rep.rows.append({"X": X, "points": int(vals.size), "M_exact": M, "main_term": main,
                         "ratio": M / main if main else None, "volume": vol.value, "volume_error": vol.error,
                         "C": float(est.value), "C_tail_bound": est.tail_bound})
        rep.timings[str(X)] = round(time.perf_counter() - t1, 3)
    ratios = [r["ratio"] for r in rep.rows if r["ratio"] is not None]
    devs = [abs(r - 1) for r in ratios]
    rep.summary = {
        "in_band": all(0.4 <= r <= 1.6 for r in ratios),
        "monotone_from_second": all(b <= a for a, b in zip(devs[1:], devs[2:])),
    }
    return rep


def report_wolke(field: FieldSpec, args, cfg) -> Report:
    rep = Report("wolke", ["V", "points", "total", "ratio"], provenance={"total": "exact", "ratio": "truncated"})
    for V in args.V:
        t0 = time.perf_counter()
        res = divisor.wolke_average(field, V, args.F)
        rep.rows.append({"V": V, "points": res.points, "total": res.total, "ratio": res.ratio})
        rep.timings[str(V)] = round(time.perf_counter() - t0, 3)
    ratios = [r["ratio"] for r in rep.rows if r["ratio"] and r["ratio"] != float("inf")]
    if ratios:
        rep.summary = {"variation": max(ratios) / min(ratios), "F": args.F}
    return rep


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="normdiv", description="Divisor sums over incomplete norm forms.")
    ap.add_argument("--field", help="built-in field name or field JSON path (overrides the config)")
    ap.add_argument("--config", help="experiment config JSON")
    ap.add_argument("--out", help="directory for CSV/JSON/manifest output")
    ap.add_argument("--json", action="store_true", help="print the JSON report instead of CSV")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="field data checks")
    p.add_argument("action", choices=["verify"])
    p.set_defaults(builder=report_field_verify)

    p = sub.add_parser("split", help="splitting of a rational prime")
    p.add_argument("p", type=int)
    p.set_defaults(builder=report_split)

    p = sub.add_parser("ideals", help="ideals of norm n")
    p.add_argument("n", type=int)
    p.set_defaults(builder=report_ideals)

    p = sub.add_parser("mu", help="inclusion-exclusion weights mu_n")
    p.add_argument("n", type=int)
    p.set_defaults(builder=report_mu)

    p = sub.add_parser("density", help="rho of ideals of norm n, or varrho(n)")
    p.add_argument("kind", choices=["rho", "varrho"])
    p.add_argument("arg", type=int)
    p.set_defaults(builder=report_density)

    p = sub.add_parser("identities", help="run the exact identity suite")
    p.add_argument("--full", action="store_true", help="acceptance-scale parameters")
    p.add_argument("--field-only", action="store_true", help="only the selected field (default: all built-ins)")
    p.set_defaults(builder=report_identities)

    p = sub.add_parser("count", help="lattice point counts for ideals of a given norm")
    p.add_argument("norm", type=int)
    p.add_argument("X", type=int)
    p.set_defaults(builder=report_count)

    p = sub.add_parser("constant", help="the Euler-product constant C")
    p.add_argument("--p0", type=int, nargs="+", help="prime cutoffs (default: P0 and 2 P0 from the config)")
    p.set_defaults(builder=report_constant)

    p = sub.add_parser("sum-exact", help="exact divisor sum M(R_X)")
    p.add_argument("X", type=int)
    p.set_defaults(builder=report_sum_exact)

    p = sub.add_parser("hyperbola", help="size-split decomposition of tau_k(n)")
    p.add_argument("n", type=int)
    p.add_argument("y", type=int)
    p.add_argument("--k", type=int, help="divisor function index (default: field degree)")
    p.set_defaults(builder=report_hyperbola)

    p = sub.add_parser("theorem", help="M(R_X) against the main term over the config's X list")
    p.add_argument("--X", type=int, nargs="+", help="override the X list")
    p.set_defaults(builder=report_theorem)

    p = sub.add_parser("wolke", help="average of a multiplicative function of N(v) over a box")
    p.add_argument("V", type=int, nargs="+")
    p.add_argument("--F", default="corollary", choices=sorted(divisor.F_SPECS))
    p.set_defaults(builder=report_wolke)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = ExperimentConfig.from_file(args.config) if args.config else ExperimentConfig()
        if args.field:
            cfg.field = args.field
        if getattr(args, "X", None) and isinstance(args.X, list):
            cfg.X = sorted(args.X)
            cfg.validate()
        if args.out:
            cfg.output = args.out
        field = cfg.load_field()
        rep = args.builder(field, args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BUDGET_ERRORS as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.json:
        print(json.dumps(rep.json_obj(), indent=2, sort_keys=True))
    else:
        sys.stdout.write(rep.csv_text())
    if rep.summary:
        print(json.dumps({"summary": rep.json_obj()["summary"]}, sort_keys=True), file=sys.stderr)
    if cfg.output:
        emit_report(rep, cfg.output, manifest(cfg, field, {"command": sys.argv[1:] if argv is None else list(argv)}))
    return EXIT_OK if rep.ok else EXIT_IDENTITY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
