"""Randomised benchmark harness.

Generates uniform random recurrences per order (coefficients and initial
values in [-B, B], trailing coefficient nonzero), runs the zero finder on
each under a wall-clock timeout and emits one CSV row per order: success
counts, selected-prime statistics, a histogram of zero counts and zero-kind
totals.  Identically-zero instances are excluded as unsupported; degenerate
ones are decomposed and run normally.  Fixed seed means identical output.
"""

from __future__ import annotations

import csv
import io
import os
import random
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .driver import DriverOptions, UnusablePrime, find_padic_zeros
from .errors import IdenticallyZero, SearchExhausted
from .interpolate import DEFAULT_PRIME_CEILING
from .lrs import Lrs

CSV_COLUMNS = [
    "order",
    "generated",
    "excluded_zero",
    "total",
    "success",
    "pct_success",
    "timeouts",
    "unsupported",
    "avg_prime",
    "std_prime",
    "max_prime",
    "min_prime",
    "zeros_0",
    "zeros_1",
    "zeros_2",
    "zeros_3",
    "zeros_4",
    "zeros_5",
    "zeros_6plus",
    "z_integer",
    "z_rational_nonint",
    "z_unknown",
    "z_conditional",
]


def random_instances(order: int, count: int, bound: int, seed: int) -> list[tuple]:
    rng = random.Random(seed * 1_000_003 + order)
    out = []
    excluded = 0
    generated = 0
    while len(out) < count:
        generated += 1
        coeffs = [rng.randint(-bound, bound) for _ in range(order)]
        while coeffs[0] == 0:
            coeffs[0] = rng.randint(-bound, bound)
        init = [rng.randint(-bound, bound) for _ in range(order)]
        if all(v == 0 for v in init):
            excluded += 1
            continue
        out.append((tuple(coeffs), tuple(init)))
    return out, generated, excluded


@dataclass
class InstanceOutcome:
    ok: bool
    timeout: bool = False
    unsupported: bool = False
    prime: int | None = None
    n_zeros: int = 0
    z_integer: int = 0
    z_rational: int = 0
    z_unknown: int = 0
    z_conditional: int = 0


def _run_instance(payload) -> InstanceOutcome:
    coeffs, init, mode, timeout, ceiling, primes_only = payload
    u = Lrs(coeffs, init)
    opts = DriverOptions(mode=mode, timeout=timeout, prime_ceiling=ceiling)
    try:
        if primes_only:
            from .driver import _choose_prime
            from .lrs import degeneracy_decompose, minimize

            mu = minimize(u)
            if mu.is_identically_zero():
                raise IdenticallyZero("zero")
            _m, subs = degeneracy_decompose(mu)
            from .driver import _SubTask

            tasks = [_SubTask(j, s) for j, s in subs if not s.is_identically_zero()]
            p = _choose_prime(mu, tasks, opts)
            return InstanceOutcome(ok=True, prime=p)
        rep = find_padic_zeros(u, opts)
    except (SearchExhausted, UnusablePrime):
        return InstanceOutcome(ok=False, unsupported=True)
    except IdenticallyZero:
        return InstanceOutcome(ok=False, unsupported=True)
    out = InstanceOutcome(
        ok=rep.status == "complete",
        timeout=rep.status != "complete",
        prime=rep.prime,
        n_zeros=len(rep.records),
    )
    for r in rep.records:
        if r.zero is None:
            out.z_unknown += 1
        elif r.zero.denominator == 1:
            out.z_integer += 1
        else:
            out.z_rational += 1
        if r.conditional:
            out.z_conditional += 1
    return out


def bench_order(
    order: int,
    count: int,
    bound: int,
    seed: int,
    mode: str,
    timeout: float | None,
    jobs: int = 1,
    primes_only: bool = False,
    ceiling: int = DEFAULT_PRIME_CEILING,
) -> dict:
    instances, generated, excluded = random_instances(order, count, bound, seed)
    payloads = [(c, i, mode, timeout, ceiling, primes_only) for c, i in instances]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_instance, payloads))
    else:
        outcomes = [_run_instance(p) for p in payloads]
    primes = [o.prime for o in outcomes if o.prime is not None]
    hist = [0] * 6
    six_plus = 0
    row = {c: 0 for c in CSV_COLUMNS}
    row.update(
        order=order,
        generated=generated,
        excluded_zero=excluded,
        total=len(instances),
        success=sum(1 for o in outcomes if o.ok),
        timeouts=sum(1 for o in outcomes if o.timeout),
        unsupported=sum(1 for o in outcomes if o.unsupported),
    )
    row["pct_success"] = round(100.0 * row["success"] / max(1, row["total"]), 1)
    if primes:
        row["avg_prime"] = round(statistics.fmean(primes), 1)
        row["std_prime"] = round(statistics.pstdev(primes), 1)
        row["max_prime"] = max(primes)
        row["min_prime"] = min(primes)
    for o in outcomes:
        if not o.ok:
            continue
        if o.n_zeros >= 6:
            six_plus += 1
        else:
            hist[o.n_zeros] += 1
        row["z_integer"] += o.z_integer
        row["z_rational_nonint"] += o.z_rational
        row["z_unknown"] += o.z_unknown
        row["z_conditional"] += o.z_conditional
    for n in range(6):
        row[f"zeros_{n}"] = hist[n]
    row["zeros_6plus"] = six_plus
    return row


def parse_orders(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def run_bench(args) -> int:
    orders = parse_orders(args.orders)
    mode = "hensel" if args.mode in ("hensel", "hensel-only") else "full"
    timeout = args.timeout if args.timeout and args.timeout > 0 else None
    ceiling = int(os.environ.get("SKOLEM_MAX_PRIME", DEFAULT_PRIME_CEILING))
    rows = [
        bench_order(
            order,
            args.count,
            args.coeff_bound,
            args.seed,
            mode,
            timeout,
            jobs=args.jobs,
            primes_only=args.primes_only,
            ceiling=ceiling,
        )
        for order in orders
    ]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    writer.writerows(rows)
    text = buf.getvalue()
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        name = "bench_primes.csv" if args.primes_only else "bench_orders.csv"
        path = os.path.join(args.out, name)
        with open(path, "w") as fh:
            fh.write(text)
        print(path)
    else:
        sys.stdout.write(text)
    return 0
