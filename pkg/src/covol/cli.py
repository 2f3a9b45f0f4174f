"""Command-line front end: field, zeta, covolume, bounds, survey, reproduce."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds
from .covolume import QuaternionData, covolume_report
from .dataset import load_dataset
from .errors import ContradictionError, CovolError
from .invariants import class_invariants, narrow_kB
from .numfield import NumberField, build_field, split_prime
from .polynomial import Polynomial, format_poly
from .survey import (classify, discrepancy_report, emit_tables, format_tables, prune_cascade)
from .zeta import DEFAULT_P, Q_MAX, compute_zeta

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONTRADICTION = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# --- helpers ------------------------------------------------------------------------


def _fields_path(args) -> str | None:
    return getattr(args, "fields", None)


def _resolve_field(args) -> tuple[NumberField, object]:
    """NumberField plus the matching dataset record (or None)."""
    ds = load_dataset(_fields_path(args))
    if getattr(args, "disc", None) is not None:
        rec = ds.by_disc(args.disc)
        return build_field(rec.poly, rec.overrides, rec.disc), rec
    if getattr(args, "poly", None) is None:
        raise UsageError("give --poly or --disc")
    poly = Polynomial.parse(args.poly)
    for rec in ds.records:
        if rec.poly == poly.coeffs:
            return build_field(poly, rec.overrides, rec.disc), rec
    return build_field(poly), None


def _splitting_summary(k: NumberField, primes=(2, 3, 5, 7)) -> dict:
    out = {}
    for p in primes:
        try:
            st = split_prime(k, p)
        except CovolError as exc:
            out[str(p)] = {"error": str(exc)}
            continue
        kind = "inert" if st.is_inert else ("ramified" if any(v.e > 1 for v in st.places) else "split")
        out[str(p)] = {"type": kind, "factors": [[v.e, v.f] for v in st.places], "norms": list(st.norms),
                       "source": st.source}
    return out


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


# --- subcommands ------------------------------------------------------------------------


def cmd_field(args) -> int:
    k, rec = _resolve_field(args)
    data = {
        "poly": format_poly(k.coeffs),
        "degree": k.degree,
        "disc": k.field_disc,
        "poly_disc": k.poly_disc,
        "index": k.index,
        "roots_approx": [float((lo + hi) / 2) for lo, hi in (k.root_interval(i, 40) for i in range(k.degree))],
        "splitting": _splitting_summary(k),
    }
    if rec is not None:
        ci = class_invariants(k, rec)
        data.update({"class_number": ci.h, "class_number_provenance": ci.h_provenance,
                     "unit_index": ci.u_index, "t": ci.t, "kB": ci.kB_deg, "flags": list(ci.flags)})
    lines = [f"field {data['poly']}", f"degree {data['degree']}", f"disc {data['disc']}",
             f"poly_disc {data['poly_disc']} (index {data['index']})"]
    for p, s in data["splitting"].items():
        lines.append(f"  {p}: {s.get('type', s.get('error'))} {s.get('factors', '')}")
    if rec is not None:
        lines.append(f"h = {data['class_number']} ({data['class_number_provenance']}), "
                     f"[U:U+] = {data['unit_index']}, t = {data['t']}, [k_B:k] = {data['kB']}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_zeta(args) -> int:
    k, _ = _resolve_field(args)
    res = compute_zeta(k, P=args.prime_bound, Q_max=args.qmax)
    data = res.as_dict()
    text = (f"zeta_k(-1) = {res.zeta_minus1}\n"
            f"zeta_k(2) in [{float(res.zeta2.lo):.15g}, {float(res.zeta2.hi):.15g}] (approx.)\n"
            f"prime bound {res.prime_bound}, reconstruction margin ~{float(res.reconstruction_margin):.3g}")
    _emit(args, data, text)
    return EXIT_OK


def _parse_fin_ram(k: NumberField, text: str | None):
    places = []
    if not text:
        return places
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            p, idx = (int(x) for x in item.split(":"))
        except ValueError:
            raise UsageError(f"finite place '{item}' must look like p:idx")
        st = split_prime(k, p)
        if not 0 <= idx < len(st.places):
            raise UsageError(f"prime {p} has {len(st.places)} places; index {idx} out of range")
        places.append(st.places[idx])
    return places


def cmd_covolume(args) -> int:
    k, rec = _resolve_field(args)
    if rec is None:
        from .errors import MissingInvariant
        raise MissingInvariant("covolume needs a bundled field (unit data)")
    ci = class_invariants(k, rec)
    S = _parse_fin_ram(k, args.fin_ram)
    qd = QuaternionData(k.degree, args.inf_ram, tuple(S), min_split=1 if args.allow_n1 else 2)
    z = compute_zeta(k).zeta_minus1
    kB, exact = narrow_kB(ci, k, S)
    rep = covolume_report(k, qd, ci, z, kB=kB, kB_exact=exact)
    data = rep.as_dict()
    text = "\n".join([f"k_{k.field_disc}: {qd.label()}",
                      f"g = {rep.g}, mu = {rep.mu}, chi(max) = {rep.chi_max}, EP = {rep.ep_min}",
                      f"Vigneras (as printed, index 1) = {rep.chi_norm1}",
                      *[f"flag: {f}" for f in rep.flags]])
    _emit(args, data, text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    fn = args.function
    note = bounds.CONSTANT_NOTES.get(fn, "")
    if fn in ("psi", "xi", "rho"):
        f = getattr(bounds, fn)
        val = f(args.m, args.q)
        data = {"function": fn, "m": args.m, "q": args.q, "value": val, "provenance": note}
        if fn != "psi":
            import math
            data["exp_value"] = math.exp(val)
        text = f"{fn}({args.m},{args.q}) = {val:.10g}" + (f"  exp = {data['exp_value']:.10g}" if fn != "psi" else "")
    elif fn == "alpha":
        iv = bounds.alpha_interval(args.m, args.d, args.t)
        data = {"function": fn, "m": args.m, "d": args.d, "t": args.t, "value": float(iv.mid),
                "interval": [float(iv.lo), float(iv.hi)]}
        text = f"alpha({args.m},{args.d},{args.t}) = {float(iv.mid):.12g}"
    elif fn == "cutoff":
        c = bounds.disc_cutoff(args.m, Fraction(args.budget))
        data = {"function": fn, "m": args.m, "budget": args.budget, "cutoff": c}
        text = f"degree {args.m}: fields with d_k >= {c} have alpha > {args.budget}"
    elif fn == "ep":
        P, X, R = bounds.ep_bound_functions(args.n, args.m, args.q)
        data = {"function": fn, "n": args.n, "m": args.m, "q": args.q, "Psi": P, "X": X, "R": R}
        text = f"Psi = {P:.10g}, X = {X:.10g}, R = {R:.10g}"
    elif fn == "integrals":
        y = args.y
        coeffs = {"0.1": ("0.8", "0.4"), "1": ("1.5", "0.75")}
        cs, cc = coeffs.get(str(y), (args.coeff_sinh, args.coeff_cosh))
        if cs is None or cc is None:
            raise UsageError("give --coeff-sinh and --coeff-cosh for this y")
        a, b = bounds.cf_integrals(y, cs, cc)
        data = {"function": fn, "sinh": a.as_dict(), "cosh": b.as_dict()}
        text = "\n".join(f"{r.coeff} * int (1-a(sqrt({r.y}) x)) K_{r.kernel} in [{r.lower!r}, {r.upper!r}]"
                         for r in (a, b))
    else:  # spot
        rows = bounds.spot_values()
        data = {"function": fn, "rows": rows}
        text = "\n".join(f"{r['quantity']}: computed {r['computed']:.10g}, printed {r['printed']} {r['annotation']}"
                         for r in rows)
    _emit(args, data, text)
    return EXIT_OK


def _report_markdown(rep) -> str:
    lines = [f"# Survey: {rep.measure} <= {rep.budget}", "", f"dataset: {rep.provenance}", "",
             "## Cascade"]
    for s in rep.plan.stages:
        lines.append(f"- {s.name}: degree cap {s.degree_cap} ({s.note})")
    lines.append(f"- windows: " + ", ".join(f"m={m}: d_k < {d}" for m, d in sorted(rep.plan.windows.items())))
    lines += ["", "## Survivors", "| lattice | chi | EP |", "|---|---|---|"]
    lines += [f"| {s.label} | {s.chi} | {s.ep} |" for s in rep.survivors]
    lines += ["", "## Minima"] + [f"- {s.label}: {s.value(rep.measure)}" for s in rep.minima]
    lines += ["", "## Excluded"] + [f"- {k}: {v}" for k, v in sorted(rep.excluded.items())]
    if rep.warnings:
        lines += ["", "## Warnings"] + [f"- {w}" for w in rep.warnings]
    return "\n".join(lines) + "\n"


def cmd_survey(args) -> int:
    ds = load_dataset(_fields_path(args))
    try:
        budget = Fraction(args.budget)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad budget {args.budget}")
    if args.plan_only:
        plan = prune_cascade(budget, args.measure)
        _emit(args, plan.as_dict(), json.dumps(plan.as_dict(), indent=2, sort_keys=True))
        return EXIT_OK
    rep = classify(ds, budget, args.measure, workers=args.workers)
    data = rep.as_dict()
    md = _report_markdown(rep)
    if args.out:
        out = Path(args.out)
        out.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n" if out.suffix == ".json" else md)
    _emit(args, data, md)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    ds = load_dataset(_fields_path(args))
    data: dict = {}
    text = []
    mismatches = 0
    if args.tables or not args.discrepancies:
        tables = emit_tables(ds, workers=args.workers)
        data["tables"] = {name: [r.as_dict() for r in rows] for name, rows in tables.items()}
        text.append(format_tables(tables))
        mismatches += sum(1 for rows in tables.values() for r in rows
                          for a in r.annotations if not a.startswith("suspected-typo"))
    if args.discrepancies:
        disc = discrepancy_report(ds)
        data["discrepancies"] = disc
        text.append("## Discrepancies")
        text += [f"- [{d['topic']}] {d['quantity']}: printed {d['printed']}; computed {d['computed']}"
                 + (f" ({d['annotation']})" if d.get("annotation") else "") for d in disc]
    data["mismatches"] = mismatches
    _emit(args, data, "\n".join(text))
    if args.strict and mismatches:
        return EXIT_CONTRADICTION
    return EXIT_OK


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--fields", help="dataset path (default: bundled, or $COVOL_FIELDS)")
    fieldsel = argparse.ArgumentParser(add_help=False)
    g = fieldsel.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help='defining polynomial, e.g. "x^4-x^3-3x^2+x+1" or "[1,1,-3,-1,1]"')
    g.add_argument("--disc", type=int, help="discriminant of a bundled field")

    p = _Parser(prog="covol", description="Covolumes of arithmetic lattices from quaternion algebras")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("field", parents=[common, fieldsel], help="field invariants")
    s.set_defaults(func=cmd_field)

    s = sub.add_parser("zeta", parents=[common, fieldsel], help="zeta_k(2) enclosure and zeta_k(-1)")
    s.add_argument("--prime-bound", type=int, default=DEFAULT_P)
    s.add_argument("--qmax", type=int, default=Q_MAX)
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("covolume", parents=[common, fieldsel], help="covolume report for (k, B)")
    s.add_argument("--inf-ram", type=int, default=0, help="number of ramified real places")
    s.add_argument("--fin-ram", default="", help="ramified finite places p:idx,...")
    s.add_argument("--allow-n1", action="store_true", help="allow a single split real place")
    s.set_defaults(func=cmd_covolume)

    s = sub.add_parser("bounds", parents=[common], help="bound functions")
    s.add_argument("function", choices=["psi", "xi", "rho", "alpha", "cutoff", "ep", "integrals", "spot"])
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--q", type=int, default=1)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--y", default="0.1")
    s.add_argument("--coeff-sinh")
    s.add_argument("--coeff-cosh")
    s.add_argument("--budget", default="1/60")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("survey", parents=[common], help="classify lattices within a budget")
    s.add_argument("--budget", default="1/60")
    s.add_argument("--measure", choices=["chi", "ep"], default="chi")
    s.add_argument("--out", help="write the report (.md or .json)")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--plan-only", action="store_true", help="print the cascade plan only")
    s.set_defaults(func=cmd_survey)

    s = sub.add_parser("reproduce", parents=[common], help="recompute the printed tables")
    s.add_argument("--tables", action="store_true")
    s.add_argument("--discrepancies", action="store_true")
    s.add_argument("--strict", action="store_true", help="exit 2 on any mismatch with printed values")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_reproduce)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContradictionError as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except (CovolError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
