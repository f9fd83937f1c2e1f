"""Timing harness: blade-mixing FFT path against the naive per-frequency sums."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

import numpy as np

from .clifford import Multivector, RootOfMinusOne
from .gft import GftPlan, GridSpec, MultivectorField, axis_sum, gft_forward

OPS = ("axis", "gft")
METHODS = ("fast", "naive")


@dataclass(frozen=True)
class BenchRow:
    op: str
    method: str
    n: int
    m: int
    ms: float
    speedup: float
    max_gap: float


def _best_time(fn, repeat: int) -> tuple[float, np.ndarray]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def default_plan(grid: GridSpec) -> GftPlan:
    """Roots ``e1 e2`` on the first half of the axes (left), generators on the rest (right)."""
    m = grid.m
    if m == 1:
        return GftPlan.from_roots([RootOfMinusOne(Multivector.blade(1, 1))], [], grid)
    roots = [RootOfMinusOne(Multivector.blade(m, 1, 2))]
    roots += [RootOfMinusOne(Multivector.blade(m, k + 1)) for k in range(1, m)]
    mu = max(1, m // 2)
    return GftPlan.from_roots(roots[:mu], roots[mu:], grid)


def run_bench(op: str = "axis", n: int = 1024, m: int = 2, methods=METHODS, seed: int = 0,
              repeat: int = 3, plan: GftPlan | None = None) -> list[BenchRow]:
    """Time ``op`` for each method on a random field; ``max_gap`` is the largest
    elementwise difference to the first method's output relative to its max norm.

    ``axis`` is one left-sided transform along axis 0 with the plan's first
    root; ``gft`` is the full forward transform.  The naive method runs once.
    """
    if op not in OPS:
        raise ValueError(f"unknown op {op!r}; choose from {OPS}")
    methods = list(methods)
    for meth in methods:
        if meth not in METHODS:
            raise ValueError(f"unknown method {meth!r}; choose from {METHODS}")
    grid = GridSpec.periodic(n, m)
    plan = default_plan(grid) if plan is None else plan
    f = MultivectorField.random(grid, np.random.default_rng(seed), complex_coeffs=True)
    axis, root = plan.left[0] if plan.left else plan.right[0]
    side = "left" if plan.left else "right"

    def job(meth):
        if op == "axis":
            return lambda: axis_sum(f.data, grid, axis, root, side, -1, meth, plan)
        return lambda: gft_forward(plan, f, meth).data

    timings, outputs = {}, {}
    for meth in methods:
        timings[meth], outputs[meth] = _best_time(job(meth), repeat if meth == "fast" else 1)
    ref = outputs[methods[0]]
    scale = float(np.max(np.abs(ref))) or 1.0
    slowest = max(timings.values())
    rows = []
    for meth in methods:
        gap = float(np.max(np.abs(outputs[meth] - ref))) / scale
        rows.append(BenchRow(op, meth, n, m, timings[meth] * 1e3, slowest / timings[meth], gap))
    return rows


def rows_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["op", "method", "n", "m", "ms", "speedup", "max_gap"])
    for r in rows:
        out.writerow([r.op, r.method, r.n, r.m, f"{r.ms:.3f}", f"{r.speedup:.2f}", f"{r.max_gap:.3e}"])
    return buf.getvalue()
