"""Command line entry point.

    biquad tower|orbital|local|spectra|lseries [--config PATH] [--degree d]
           [--r r[,r...]] [--oracle] [--window n] [--out PATH] [--workers n]

Every command prints a JSON report with a top-level ``"schema": 1`` field.
Rationals are written as strings ("3/2"); Laurent polynomials in u = q^s as
``{"exponent": "coefficient"}``.  Exit codes: 0 all properties verified,
1 a property failed, 2 configuration error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import local_iwahori, lseries, orbital, spectra
from .characters import eta_value, places_y3_over, validate_sigma
from .config import SessionConfig, format_tower, load_tower
from .errors import BiquadError, CapacityError, PropertyFailure

SCHEMA = 1
COMMANDS = ("tower", "orbital", "local", "spectra", "lseries")


def _frac(x) -> str:
    return str(Fraction(x))


def _config_echo(cfg: SessionConfig) -> dict:
    return {"config": cfg.tower_path, "degree": cfg.degree, "divisor": cfg.divisor,
            "r": list(cfg.r), "oracle": cfg.oracle, "window": cfg.window,
            "k0": cfg.k0, "mode": cfg.mode}


# ---------------------------------------------------------------------------
# commands


def cmd_tower(cfg: SessionConfig) -> dict:
    t = load_tower(cfg.tower_path)
    report = validate_sigma(t)
    bound = 1 if cfg.degree is None else cfg.degree
    if bound > 3:
        raise CapacityError("tower listing is limited to degree 3")
    places = []
    for x in t.curve.places_up_to(bound):
        places.append({
            "place": x.label, "degree": x.degree,
            "chi1": t.chi1.value(x), "chi2": t.chi2.value(x), "chi3": t.chi3.value(x),
            "split": t.is_split(x),
            "above": [{"place": w.label, "eta": eta_value(t, w)} for w in places_y3_over(t, x)],
        })
    return {"tower": format_tower(t), "N": t.N, "sigma": report,
            "D3_prime": t.D3_prime.label, "places": places,
            "counts_by_degree": {str(d): len(t.curve.places_of_degree(d)) for d in range(1, bound + 1)},
            "checks": {"sigma_splits": True}}


def _orbital_one(t, D, pt, rs, oracle: bool) -> dict:
    J = orbital.j_of_a(t, D, pt)
    rec = {"a": pt.label, "B": pt.B.label, "eta_B": eta_value(t, pt.B), "J": J.to_json(),
           "J_r": {str(r): _frac(orbital.j_r_direct(t, pt, r)) for r in rs},
           "functional_equation": orbital.functional_equation_holds(t, D, pt)}
    if oracle:
        rec["oracle"] = orbital.oracle_count(t, D, pt.a).to_json()
        rec["oracle_match"] = rec["oracle"] == rec["J"]
    return rec


def cmd_orbital(cfg: SessionConfig) -> dict:
    t = load_tower(cfg.tower_path)
    results = []
    ok = True
    for D in cfg.divisors(t):
        pts = orbital.enumerate_AD(t, D)
        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as ex:
                recs = list(ex.map(lambda p: _orbital_one(t, D, p, cfg.r, cfg.oracle), pts))
        else:
            recs = [_orbital_one(t, D, p, cfg.r, cfg.oracle) for p in pts]
        Jr = {str(r): _frac(orbital.j_r(t, D, r, pts)) for r in cfg.r}
        entry = {"D": D.label if not D.is_zero() else "{}", "degree": D.degree,
                 "diagnostic": orbital.ad_diagnostic(t, D),
                 "invariants": recs, "J": orbital.j_global(t, D, pts).to_json(),
                 "J_r": Jr, "predicted_intersection_numbers": Jr}
        results.append(entry)
        for rec in recs:
            if not rec["functional_equation"]:
                ok = False
            if cfg.oracle and not rec["oracle_match"]:
                ok = False
    return {"N": t.N, "results": results, "checks": {"all_ok": ok}}


def cmd_local(cfg: SessionConfig) -> dict:
    window = 6 if cfg.window is None else cfg.window
    k0s = range(-2, 3) if cfg.k0 is None else [cfg.k0]
    runs = []
    for k0 in k0s:
        sols = local_iwahori.iwahori_orbit_search(k0, window, cfg.mode)
        runs.append({"mode": cfg.mode, "k0": k0, "window": window,
                     "solutions": [list(s) for s in sols]})
    if cfg.mode == "both":
        ok = all(not r["solutions"] for r in runs)
    elif cfg.mode == "full":
        ok = all(r["solutions"] == [[r["k0"], 0]] for r in runs)
    else:
        ok = True
    return {"runs": runs, "checks": {"all_ok": ok}}


def cmd_spectra(cfg: SessionConfig) -> dict:
    dps = range(1, spectra.MAX_DPRIME + 1) if cfg.degree is None else [cfg.degree]
    if cfg.degree is not None and not 1 <= cfg.degree <= spectra.MAX_DPRIME:
        raise CapacityError(f"d' must lie in [1, {spectra.MAX_DPRIME}]")
    tables = []
    ok = True
    for dp in dps:
        rows = []
        for d1, d2, lam, dim, stable, irr in spectra.decompose(dp):
            iso = spectra.verify_induced_iso(d1, d2)
            rows.append({"d1": d1, "d2": d2, "eigenvalue": lam, "dim": dim, "stable": stable,
                         "irreducible": irr, "induced_match": iso["matches_ind_1_x_eta"],
                         "induced_match_eta_on_first": iso["matches_ind_eta_x_1"],
                         "symmetry_literal": iso["symmetry_literal"],
                         "symmetry_up_to_eta_twist": iso["symmetry_up_to_eta_twist"]})
            ok = ok and stable and irr and iso["matches_ind_1_x_eta"] and iso["symmetry_up_to_eta_twist"]
        spec_ok = spectra.spectrum_ok(dp)
        ok = ok and spec_ok
        tables.append({"dprime": dp, "spectrum_ok": spec_ok, "rows": rows})
    return {"tables": tables, "checks": {"all_ok": ok}}


def cmd_lseries(cfg: SessionConfig) -> dict:
    t = load_tower(cfg.tower_path)
    n = 3 if cfg.degree is None else cfg.degree
    if n > 4:
        raise CapacityError("lseries degree bound is 4")
    euler = lseries.euler_factorization_check(t, n)
    tri = lseries.triangulate(t, n)
    return {"euler": euler, "triangulation": tri,
            "checks": {"all_ok": euler["all_ok"] and tri["all_ok"]}}


HANDLERS = {"tower": cmd_tower, "orbital": cmd_orbital, "local": cmd_local,
            "spectra": cmd_spectra, "lseries": cmd_lseries}


def run(cfg: SessionConfig) -> dict:
    """Build the report for a session; raises BiquadError subclasses."""
    cfg.validate()
    start = time.perf_counter()
    body = HANDLERS[cfg.command](cfg)
    report = {"schema": SCHEMA, "command": cfg.command, "session": _config_echo(cfg)}
    report.update(body)
    if cfg.timing:
        report["wall_time"] = round(time.perf_counter() - start, 3)
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# argument parsing


def _r_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("--r wants integers like 0,1,2") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="biquad", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="tower file (default: built-in F_5 tower)")
    p.add_argument("--degree", type=int, help="degree of D / d' / place bound")
    p.add_argument("--divisor", help="explicit D, e.g. {1:0:0^1,1:2:1^1}")
    p.add_argument("--r", type=_r_list, default=[0, 1, 2], help="derivative orders, e.g. 0,1,2")
    p.add_argument("--oracle", action="store_true", help="also run the lattice-count oracle")
    p.add_argument("--window", type=int, help="search window for local")
    p.add_argument("--k0", type=int, help="single k0 for local (default: -2..2)")
    p.add_argument("--mode", choices=local_iwahori.MODES, default="both")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall_time (breaks byte identity)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = SessionConfig(command=args.command, tower_path=args.config, degree=args.degree,
                        divisor=args.divisor, r=args.r, oracle=args.oracle, window=args.window,
                        workers=args.workers, out=args.out, k0=args.k0, mode=args.mode,
                        timing=args.timing)
    try:
        report = run(cfg)
    except BiquadError as exc:
        print(f"biquad {cfg.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    text = dumps(report)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not report["checks"].get("all_ok", True):
        failed = _first_failure(report)
        print(f"biquad {cfg.command}: property failed: {failed}", file=sys.stderr)
        return PropertyFailure.exit_code
    return 0


def _first_failure(report: dict) -> str:
    if report["command"] == "orbital":
        for entry in report["results"]:
            for rec in entry["invariants"]:
                if not rec["functional_equation"]:
                    return f"functional equation at a = {rec['a']}"
                if rec.get("oracle_match") is False:
                    return f"oracle mismatch at D = {entry['D']}, a = {rec['a']}"
    return "see checks in the report"


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
