"""Timing harness for the fast conversions; emits CSV."""

from __future__ import annotations

import csv
import io
import random
import statistics
import time
from dataclasses import dataclass
from typing import Iterator, TextIO

from .decomp import decomp, moment_series
from .expand import expand, expand_transposed
from .field import CapacityError, PrimeField, default_field
from .recurrence import RecurrenceFamily, preset

CSV_HEADER = ("op", "n", "reps", "median_ns", "modulus")

OPS = {
    "expand": lambda fam, v: expand(fam, v),
    "decomp": lambda fam, v: decomp(fam, v),
    "texpand": lambda fam, v: expand_transposed(fam, v),
    "moments": lambda fam, v: moment_series(fam, len(v)),
}


@dataclass(frozen=True)
class BenchRecord:
    op: str
    n: int
    reps: int
    median_ns: int
    modulus: int

    def row(self) -> tuple:
        return (self.op, self.n, self.reps, self.median_ns, self.modulus)


def run_bench(
    op: str,
    log_n_range: tuple[int, int],
    reps: int = 5,
    seed: int = 0,
    family: str = "random",
    field: PrimeField | None = None,
) -> Iterator[BenchRecord]:
    """Median wall time of ``op`` on random inputs for ``n = 2**lo .. 2**hi``.

    Repetitions run sequentially on the same input. ``family="random"`` draws a
    fresh random recurrence per size; any preset name is accepted too.
    """
    field = field or default_field()
    if op not in OPS:
        raise ValueError(f"unknown op '{op}', choose from {sorted(OPS)}")
    if reps < 3:
        raise ValueError(f"need at least 3 repetitions, got {reps}")
    lo, hi = log_n_range
    if lo < 0 or hi < lo:
        raise ValueError(f"bad size range {log_n_range}")
    # decomp transforms reach 4n (series inversion of length 2n-1)
    if 4 << hi > field.max_ntt_size:
        raise CapacityError(f"n = 2**{hi} exceeds the NTT capacity modulo {field.p}")
    if family != "random":
        preset(family, field)
    return _timed_runs(OPS[op], op, lo, hi, reps, random.Random(seed), family, field)


def _timed_runs(fn, op, lo, hi, reps, rng, family, field):
    for log_n in range(lo, hi + 1):
        n = 1 << log_n
        if family == "random":
            fam = RecurrenceFamily.random(n + 1, field, rng)
        else:
            fam = preset(family, field)
        vec = field.array([rng.randrange(field.p) for _ in range(n)])
        fn(fam, vec)  # warm caches (twiddles, field tables); untimed
        times = []
        for _ in range(reps):
            t0 = time.perf_counter_ns()
            fn(fam, vec)
            times.append(time.perf_counter_ns() - t0)
        yield BenchRecord(op, n, reps, int(statistics.median(times)), field.p)


def write_csv(records, out: TextIO, seed: int) -> None:
    out.write(f"# seed={seed}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.row())
        out.flush()


def bench_csv(op: str, log_n_range: tuple[int, int], reps: int = 5, seed: int = 0, **kw) -> str:
    buf = io.StringIO()
    write_csv(run_bench(op, log_n_range, reps, seed, **kw), buf, seed)
    return buf.getvalue()
