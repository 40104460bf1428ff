"""Command-line front end.

Subcommands: ``zeros`` (one sequence), ``simultaneous`` (common zeros of two
sequences), ``expand`` (recompute digit expansions from a saved report) and
``bench`` (randomised benchmark tables).

Exit codes: 0 complete, 1 malformed input, 2 partial (caps or timeout hit),
3 unsupported (no usable prime below the ceiling, or a forced prime failing
validation).  ``SKOLEM_MAX_PRIME`` overrides the prime-search ceiling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import replace
from fractions import Fraction

from .driver import (
    DriverOptions,
    UnusablePrime,
    ZeroReport,
    find_padic_zeros,
    simultaneous_skolem,
)
from .errors import IdenticallyZero, MalformedInstance, SearchExhausted, SkolemError
from .interpolate import DEFAULT_PRIME_CEILING
from .lrs import Lrs

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_PARTIAL = 2
EXIT_UNSUPPORTED = 3


def parse_instance(doc: dict, path: str = "<instance>") -> tuple[Lrs, dict]:
    """Validate an instance document; returns (sequence, options block)."""
    if not isinstance(doc, dict):
        raise MalformedInstance(f"{path}: expected a JSON object")
    rec = doc.get("recurrence")
    if not isinstance(rec, list) or not rec:
        raise MalformedInstance(f"{path}: field 'recurrence' must be a nonempty list")
    coeffs = []
    for i, c in enumerate(rec):
        try:
            coeffs.append(int(str(c)))
        except ValueError:
            raise MalformedInstance(f"{path}: recurrence[{i}] = {c!r} is not an integer")
    if coeffs[0] == 0:
        raise MalformedInstance(f"{path}: recurrence[0] (the trailing coefficient a_0) must be nonzero")
    init = doc.get("initial")
    if not isinstance(init, list) or len(init) != len(coeffs):
        raise MalformedInstance(
            f"{path}: field 'initial' must list exactly {len(coeffs)} values"
        )
    values = []
    for i, v in enumerate(init):
        try:
            values.append(Fraction(str(v)))
        except (ValueError, ZeroDivisionError):
            raise MalformedInstance(f"{path}: initial[{i}] = {v!r} is not a rational")
    opts = doc.get("options", {})
    if opts and not isinstance(opts, dict):
        raise MalformedInstance(f"{path}: field 'options' must be an object")
    prime = doc.get("prime")
    if prime is not None:
        if not isinstance(prime, int) or prime < 3:
            raise MalformedInstance(f"{path}: field 'prime' must be an odd prime >= 3")
        opts = dict(opts)
        opts["prime"] = prime
    return Lrs(coeffs, values), opts


def load_instance(path: str) -> tuple[Lrs, dict]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise MalformedInstance(f"{path}: no such file")
    except json.JSONDecodeError as e:
        raise MalformedInstance(f"{path}: invalid JSON ({e})")
    return parse_instance(doc, path)


def driver_options(file_opts: dict, args) -> DriverOptions:
    ceiling = int(os.environ.get("SKOLEM_MAX_PRIME", DEFAULT_PRIME_CEILING))
    opts = DriverOptions(prime_ceiling=ceiling)

    def pick(cli_value, key, default):
        if cli_value is not None:
            return cli_value
        if key in file_opts:
            return file_opts[key]
        return default

    mode = pick(getattr(args, "mode", None), "mode", opts.mode)
    if mode == "hensel-only":
        mode = "hensel"
    if mode not in ("full", "hensel"):
        raise MalformedInstance(f"options.mode must be 'full' or 'hensel', got {mode!r}")
    timeout_raw = pick(getattr(args, "timeout", None), "timeout", 60.0)
    timeout = float(timeout_raw) if timeout_raw and float(timeout_raw) > 0 else None
    return replace(
        opts,
        prime=pick(getattr(args, "prime", None), "prime", None),
        min_prime=int(pick(getattr(args, "min_prime", None), "min_prime", opts.min_prime)),
        mode=mode,
        precision=int(pick(getattr(args, "precision", None), "precision", opts.precision)),
        max_depth=int(pick(getattr(args, "max_depth", None), "depth_cap", opts.max_depth)),
        height_cap=int(pick(getattr(args, "height", None), "rational_height", opts.height_cap)),
        expand=int(pick(getattr(args, "expand", None), "expand", opts.expand)),
        timeout=timeout,
        relation_bound=int(pick(getattr(args, "relation_bound", None), "relation_bound", 0)),
    )


def record_to_json(r) -> dict:
    return {
        "ell": r.ell,
        "kind": r.kind,
        "value": str(r.value) if r.value is not None else None,
        "zero": str(r.zero) if r.zero is not None else None,
        "multiplicity": r.multiplicity,
        "digits": list(r.digits),
        "certificate": {"y": r.certificate[0], "nu": r.certificate[1]} if r.certificate else None,
        "conditional": r.conditional,
    }


def report_to_json(rep: ZeroReport, instance_doc: dict) -> dict:
    by_kind: dict[str, int] = {}
    for r in rep.records:
        by_kind[r.kind] = by_kind.get(r.kind, 0) + 1
    out = {
        "schema_version": SCHEMA_VERSION,
        "tool": "padic-skolem",
        "status": rep.status,
        "prime": rep.prime,
        "period": rep.period,
        "mode": "hensel-only" if rep.mode == "hensel" else rep.mode,
        "precision": rep.precision,
        "instance": instance_doc,
        "records": [record_to_json(r) for r in rep.records],
        "unresolved": [
            {"ell": b.ell, "center": b.center, "depth": b.depth, "count": b.count, "accounted": b.accounted}
            for b in rep.unresolved
        ],
        "identically_zero_progressions": [
            {"residue": j, "modulus": m} for j, m in rep.zero_progressions
        ],
        "discarded_ball_mass": {str(k): v for k, v in sorted(rep.discarded_mass.items())},
        "schanuel_conditional": rep.schanuel_conditional,
        "summary": {
            "records": len(rep.records),
            "by_kind": dict(sorted(by_kind.items())),
            "integer_zeros": rep.integer_zeros,
        },
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    if rep.relations is not None:
        out["relations"] = [
            {
                "offset": off,
                "modulus_digits": lat.modulus_digits,
                "vectors": [list(v) for v in lat.vectors],
                "status": lat.status,
            }
            for off, lat in rep.relations
        ]
    return out


def instance_to_json(u: Lrs, file_opts: dict) -> dict:
    doc = {
        "recurrence": [str(c) for c in u.coeffs],
        "initial": [str(v) for v in u.initial],
    }
    if file_opts.get("prime"):
        doc["prime"] = file_opts["prime"]
    opts = {k: v for k, v in file_opts.items() if k != "prime"}
    if opts:
        doc["options"] = opts
    return doc


def _emit(doc: dict, out_path: str | None):
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_zeros(args) -> int:
    u, file_opts = load_instance(args.instance)
    opts = driver_options(file_opts, args)
    try:
        rep = find_padic_zeros(u, opts)
    except (UnusablePrime, SearchExhausted) as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except IdenticallyZero as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    doc = report_to_json(rep, instance_to_json(u, file_opts))
    _emit(doc, args.out)
    return EXIT_OK if rep.status == "complete" else EXIT_PARTIAL


def cmd_simultaneous(args) -> int:
    ua, opts_a = load_instance(args.instance_a)
    ub, opts_b = load_instance(args.instance_b)
    opts = driver_options(opts_a, args)
    try:
        sim = simultaneous_skolem(ua, ub, opts)
    except (UnusablePrime, SearchExhausted) as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": "padic-skolem",
        "status": sim.status,
        "prime": sim.prime,
        "coprimality_screen": "passed" if sim.screen_passed else "failed",
        "common_integer_zeros": sim.common_zeros,
        "common_progressions": [
            {"residue": j, "modulus": m} for j, m in sim.common_progressions
        ],
        "instance_a": instance_to_json(ua, opts_a),
        "instance_b": instance_to_json(ub, opts_b),
        "combined": report_to_json(sim.combined, {}) if sim.combined else None,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    if not sim.screen_passed:
        doc["warning"] = (
            "coprimality screen failed: the common zeros listed are verified, "
            "but completeness of the list is not guaranteed"
        )
    _emit(doc, args.out)
    return EXIT_OK if sim.status == "complete" else EXIT_PARTIAL


def cmd_expand(args) -> int:
    try:
        with open(args.report) as fh:
            doc = json.load(fh)
    except (FileNotFoundError, json.JSONDecodeError) as e:
        print(f"error: cannot read report: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    records = doc.get("records", [])
    if not 0 <= args.record < len(records):
        print(f"error: record index {args.record} out of range (report has {len(records)})", file=sys.stderr)
        return EXIT_MALFORMED
    u, file_opts = parse_instance(doc.get("instance", {}), args.report)
    opts = driver_options(file_opts, args)
    opts = replace(
        opts,
        prime=doc["prime"],
        mode="hensel" if doc.get("mode") == "hensel-only" else doc.get("mode", "full"),
        precision=max(opts.precision, args.digits + 8),
        expand=args.digits,
        timeout=None,
    )
    rep = find_padic_zeros(u, opts)
    if args.record >= len(rep.records):
        print("error: record selector no longer matches the recomputed report", file=sys.stderr)
        return EXIT_MALFORMED
    rec = rep.records[args.record]
    old = records[args.record]
    if rec.ell != old.get("ell") or rec.kind != old.get("kind"):
        print("error: record selector no longer matches the recomputed report", file=sys.stderr)
        return EXIT_MALFORMED
    print(json.dumps({"record": args.record, "ell": rec.ell, "kind": rec.kind, "digits": list(rec.digits)}))
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import run_bench

    return run_bench(args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skolem",
        description="Exact computation of the p-adic zeros of integer linear recurrence sequences.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--prime", type=int, help="force this prime (validated)")
        p.add_argument("--min-prime", type=int, dest="min_prime", help="smallest prime to try (default 3)")
        p.add_argument("--mode", choices=["full", "hensel", "hensel-only"], help="search mode (default full)")
        p.add_argument("--precision", type=int, help="initial working digits (default 32)")
        p.add_argument("--max-depth", type=int, dest="max_depth", help="residue tree depth cap (default 64)")
        p.add_argument("--height", type=int, help="rational height ceiling (default 10^6)")
        p.add_argument("--expand", type=int, help="digits reported per zero (default 3)")
        p.add_argument("--timeout", type=float, help="wall-clock seconds (default 60; 0 disables)")
        p.add_argument("--relation-bound", type=int, dest="relation_bound", help="screen multiplicative relations up to this size")
        p.add_argument("--out", help="write the JSON report here instead of stdout")

    pz = sub.add_parser("zeros", help="all p-adic zeros of one sequence")
    pz.add_argument("instance", help="instance JSON file")
    common(pz)
    pz.set_defaults(func=cmd_zeros)

    ps = sub.add_parser("simultaneous", help="common integer zeros of two sequences")
    ps.add_argument("instance_a")
    ps.add_argument("instance_b")
    common(ps)
    ps.set_defaults(func=cmd_simultaneous)

    pe = sub.add_parser("expand", help="recompute a zero's digit expansion from a report")
    pe.add_argument("report", help="report JSON produced by 'zeros'")
    pe.add_argument("--record", type=int, required=True, help="record index in the report")
    pe.add_argument("--digits", type=int, required=True, help="number of base-p digits")
    pe.set_defaults(func=cmd_expand)

    pb = sub.add_parser("bench", help="randomised benchmark tables (CSV)")
    pb.add_argument("--orders", default="2..4", help="order range, e.g. 2..5 or a single order")
    pb.add_argument("--count", type=int, default=100, help="instances per order")
    pb.add_argument("--seed", type=int, default=1)
    pb.add_argument("--coeff-bound", type=int, dest="coeff_bound", default=10)
    pb.add_argument("--timeout", type=float, default=60.0)
    pb.add_argument("--jobs", type=int, default=1)
    pb.add_argument("--primes-only", action="store_true", dest="primes_only", help="only measure the selected prime")
    pb.add_argument("--mode", choices=["full", "hensel", "hensel-only"], default="hensel")
    pb.add_argument("--out", help="output directory for CSV (default: print)")
    pb.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MalformedInstance as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
