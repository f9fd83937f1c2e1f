"""Self-check suites: every identity is evaluated numerically and compared with a tolerance.

Each check yields a :class:`Check` with the measured gap.  Upper-bound checks
pass when ``gap < tol``; lower-bound checks (``kind="min"``) pass when
``gap > tol`` and are used for inequalities that must hold.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import approach_a as aa
from . import mustard as mu
from . import qft as q
from .clifford import Multivector, RootOfMinusOne, comm_split, parse_root, planes_product
from .gft import (
    GftPlan,
    GridSpec,
    MultivectorField,
    generalized_translate,
    gft_forward,
    gft_inverse,
)
from .special import RadialProfile, hermite_fn

SUITES = ("clifford", "gft", "mustard", "translate", "qft", "approach_a")


@dataclass(frozen=True)
class Check:
    suite: str
    identity: str
    gap: float
    tol: float
    kind: str = "max"

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.gap):
            return False
        return self.gap < self.tol if self.kind == "max" else self.gap > self.tol

    def line(self) -> str:
        rel = "<" if self.kind == "max" else ">"
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}/{self.identity}: gap {self.gap:.3e} (need {rel} {self.tol:.0e})"


def standard_roots(m: int) -> tuple[list[RootOfMinusOne], int]:
    """Default root list and split for dimension ``m``.

    ``m = 2`` gives the quaternionic pair ``(e1 | e2)``; ``m = 3`` the
    noncommuting bivectors ``(e12, e23 | e13)``; otherwise the generators
    with the first half on the left.
    """
    if m == 2:
        exprs, split = ["e1", "e2"], 1
    elif m == 3:
        exprs, split = ["e12", "e23", "e13"], 2
    else:
        exprs, split = [f"e{k + 1}" for k in range(m)], max(1, m // 2)
    return [parse_root(e, m) for e in exprs], split


def standard_plan(grid: GridSpec) -> GftPlan:
    roots, split = standard_roots(grid.m)
    return GftPlan.from_roots(roots[:split], roots[split:], grid)


def random_multivector(m: int, rng: np.random.Generator, complex_coeffs: bool = False) -> Multivector:
    c = rng.standard_normal(1 << m)
    if complex_coeffs:
        c = c + 1j * rng.standard_normal(1 << m)
    return Multivector(m, c)


def relative_gap(a: np.ndarray, b: np.ndarray) -> float:
    ref = float(np.linalg.norm(b))
    diff = float(np.linalg.norm(np.asarray(a) - np.asarray(b)))
    return diff / ref if ref > 0 else diff


# -- clifford -----------------------------------------------------------------

def suite_clifford(m: int = 3, n: int = 16, seed: int = 0, trials: int = 20) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    assoc = mat = split = 0.0
    for _ in range(trials):
        a, b, c = (random_multivector(m, rng, True) for _ in range(3))
        assoc = max(assoc, relative_gap(((a * b) * c).coeffs, (a * (b * c)).coeffs))
        mat = max(mat, relative_gap(a.left_matrix() @ b.coeffs, (a * b).coeffs),
                  relative_gap(b.right_matrix() @ a.coeffs, (a * b).coeffs))
        # the split is an eigen-decomposition when b squares to a scalar, as vectors do
        b = Multivector.vector(rng.standard_normal(m))
        s0, s1 = comm_split(a, b)
        split = max(split, relative_gap((s0 + s1).coeffs, a.coeffs),
                    float(np.max(np.abs((s0 * b - b * s0).coeffs))) / np.linalg.norm(a.coeffs),
                    float(np.max(np.abs((s1 * b + b * s1).coeffs))) / np.linalg.norm(a.coeffs))
    yield Check("clifford", "associativity", assoc, 1e-12)
    yield Check("clifford", "left_right_matrices", mat, 1e-12)
    yield Check("clifford", "commutative_split", split, 1e-12)
    roots = standard_roots(m)[0]
    sq = max(float(np.max(np.abs((r.value * r.value).coeffs - Multivector.scalar(m, -1.0).coeffs)))
             for r in roots)
    yield Check("clifford", "roots_square_to_minus_one", sq, 1e-12)


# -- gft ------------------------------------------------------------------------

def hermite_field(grid: GridSpec, j, mv: Multivector, spectral: bool = False) -> MultivectorField:
    """``prod_k psi_{j_k}(x_k) * mv`` with unnormalized Hermite functions."""
    mesh = grid.mesh(spectral)
    vals = np.ones(grid.sizes)
    for jk, xk in zip(j, mesh):
        vals = vals * hermite_fn(jk, xk)
    return MultivectorField.from_scalar(grid, vals, mv)


def eigen_factors(plan: GftPlan, j) -> tuple[Multivector, Multivector]:
    """``prod_{k <= mu} (-i_k)**j_k`` and ``prod_{k > mu} (-i_k)**j_k`` in axis order."""
    m = plan.grid.m
    L = R = Multivector.scalar(m)
    for axis, root in plan.left:
        for _ in range(j[axis]):
            L = L * (-root.value)
    for axis, root in plan.right:
        for _ in range(j[axis]):
            R = R * (-root.value)
    return L, R


def hermite_eigen_gap(plan: GftPlan, max_order: int, rng: np.random.Generator) -> float:
    grid = plan.grid
    worst = 0.0
    for j in itertools.product(range(max_order + 1), repeat=grid.m):
        if sum(j) > max_order:
            continue
        a = random_multivector(grid.m, rng)
        F = gft_forward(plan, hermite_field(grid, j, a))
        L, R = eigen_factors(plan, j)
        worst = max(worst, F.relative_gap(hermite_field(grid, j, L * a * R, spectral=True)))
    return worst


def suite_gft(m: int = 2, n: int = 16, seed: int = 0, eigen_n: int = 64, eigen_delta: float = 0.25) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    grid = GridSpec.periodic(n, m)
    plan = standard_plan(grid)
    f = MultivectorField.random(grid, rng, complex_coeffs=True)
    F = gft_forward(plan, f)
    yield Check("gft", "periodic_round_trip", gft_inverse(plan, F).relative_gap(f), 1e-12)
    yield Check("gft", "fast_equals_naive", gft_forward(plan, f, "naive").relative_gap(F), 1e-10)

    cal = GridSpec.calibrated(eigen_n, m, eigen_delta)
    cplan = plan.with_grid(cal)
    mesh = cal.mesh()
    r2 = sum(x * x for x in mesh)
    poly = sum((k + 1) * x for k, x in enumerate(mesh))
    s = MultivectorField.from_scalar(cal, (1 + poly) * np.exp(-r2 / 2), random_multivector(m, rng))
    back = gft_inverse(cplan, gft_forward(cplan, s))
    yield Check("gft", "calibrated_round_trip", back.relative_gap(s), 1e-8)
    order = 6 if m <= 2 else 2
    yield Check("gft", f"hermite_eigenvalues_order_{order}", hermite_eigen_gap(cplan, order, rng), 1e-6)


# -- mustard ----------------------------------------------------------------------

def suite_mustard(m: int = 2, n: int = 16, seed: int = 0, pairs: int = 3) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    grid = GridSpec.periodic(n, m)
    plan = standard_plan(grid)
    gap = thm = 0.0
    for _ in range(pairs):
        f = MultivectorField.random(grid, rng, True)
        g = MultivectorField.random(grid, rng, True)
        spec = mu.mustard_convolve_spectral(plan, f, g)
        gap = max(gap, mu.mustard_convolve_direct(plan, f, g).relative_gap(spec))
        lhs = gft_forward(plan, spec).data
        F, G = gft_forward(plan, f).data, gft_forward(plan, g).data
        thm = max(thm, relative_gap(lhs, grid.convolution_prefactor() * planes_product(F, G, m)))
    yield Check("mustard", "direct_equals_spectral", gap, 1e-10)
    yield Check("mustard", "convolution_theorem", thm, 1e-12)
    if m <= 2:
        small = GridSpec.periodic(min(n, 8), m)
        splan = plan.with_grid(small)
        f = MultivectorField.random(small, rng, True)
        g = MultivectorField.random(small, rng, True)
        lit = mu.mustard_convolve_direct(splan, f, g, literal=True)
        yield Check("mustard", "literal_terms_equal_spectral", lit.relative_gap(mu.mustard_convolve_spectral(splan, f, g)), 1e-10)


# -- translation ---------------------------------------------------------------------

def suite_translate(m: int = 2, n: int = 16, seed: int = 0, pairs: int = 3) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    grid = GridSpec.periodic(n, m)
    plan = standard_plan(grid)
    gap = 0.0
    for _ in range(pairs):
        f = MultivectorField.random(grid, rng, True)
        y = tuple(int(v) for v in rng.integers(0, n, m))
        gap = max(gap, mu.translate_closed_form(plan, f, y).relative_gap(generalized_translate(plan, f, y)))
    yield Check("translate", "closed_form_equals_spectral", gap, 1e-10)

    small = GridSpec.periodic(min(n, 6 if m >= 3 else 8), m)
    splan = plan.with_grid(small)
    f = MultivectorField.random(small, rng, True)
    g = MultivectorField.random(small, rng, True)
    yield Check("translate", "tau_closed_equals_sum",
                mu.tau_convolve(splan, f, g).relative_gap(mu.tau_convolve(splan, f, g, "sum")), 1e-10)

    # scalar fields move rigidly when same-side roots commute
    roots = [RootOfMinusOne(Multivector.blade(m, k + 1)) if m <= 2 else RootOfMinusOne(Multivector.blade(m, 1, 2))
             for k in range(m)]
    cplan = GftPlan.from_roots(roots[:1], roots[1:], grid)
    fs = MultivectorField.from_scalar(grid, rng.standard_normal(grid.sizes))
    y = tuple(int(v) for v in rng.integers(0, n, m))
    yield Check("translate", "scalar_field_shift_commuting_roots",
                generalized_translate(cplan, fs, y).relative_gap(fs.shift(y)), 1e-12)


# -- qft --------------------------------------------------------------------------------

def suite_qft(m: int = 2, n: int = 16, seed: int = 0, pairs: int = 3) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    grid = GridSpec.periodic(n, 2)
    root_pairs = [(q.unit_root(1, 0, 0), q.unit_root(0, 1, 0))]
    for _ in range(pairs - 1):
        root_pairs.append((q.unit_root(*rng.standard_normal(3)), q.unit_root(*rng.standard_normal(3))))
    thm = sym = direct = qthm = shift = tau = 0.0
    for mu_, nu_ in root_pairs:
        plan = q.qft_plan(mu_, nu_, grid)
        f = MultivectorField.random(grid, rng, True)
        g = MultivectorField.random(grid, rng, True)
        conv = mu.classical_convolve(f, g)
        thm = max(thm, q.qft_conv_theorem_rhs(mu_, nu_, f, g).relative_gap(q.qft(mu_, nu_, conv)))
        spec = mu.mustard_convolve_spectral(plan, f, g)
        sym = max(sym, q.mustard_q(mu_, nu_, f, g).relative_gap(spec))
        direct = max(direct, mu.mustard_convolve_direct(plan, f, g).relative_gap(spec))
        rhs = planes_product(q.qft(mu_, nu_, f).data, q.qft(mu_, nu_, g).data, 2) * grid.convolution_prefactor()
        qthm = max(qthm, relative_gap(q.qft(mu_, nu_, spec).data, rhs))
        y = tuple(int(v) for v in rng.integers(0, n, 2))
        shift = max(shift, generalized_translate(plan, f, y).relative_gap(f.shift(y)))
        tau = max(tau, mu.tau_convolve(plan, f, g).relative_gap(conv))
    yield Check("qft", "convolution_theorem_sum", thm, 1e-10)
    yield Check("qft", "symmetric_formula_equals_spectral", sym, 1e-10)
    yield Check("qft", "direct_equals_spectral", direct, 1e-10)
    yield Check("qft", "mustard_product_theorem", qthm, 1e-12)
    yield Check("qft", "translation_is_shift", shift, 1e-12)
    yield Check("qft", "tau_convolution_is_classical", tau, 1e-10)

    # the product of transforms is not the transform of the convolution for noncommuting values
    mu_, nu_ = root_pairs[0]
    x1, x2 = grid.mesh()
    phi = np.exp(-((x1 - n / 2) ** 2 + (x2 - n / 3) ** 2) / 8)
    chi = np.cos(2 * np.pi * x1 / n) + np.sin(4 * np.pi * x2 / n)
    f = MultivectorField.from_scalar(grid, phi, nu_.value)
    g = MultivectorField.from_scalar(grid, chi, mu_.value)
    naive = q.naive_product_rhs(mu_, nu_, f, g)
    yield Check("qft", "naive_product_differs_noncommuting", naive.relative_gap(q.qft(mu_, nu_, mu.classical_convolve(f, g))),
                1e-2, kind="min")

    px = rng.integers(0, 256, (n, n + 3, 3), dtype=np.uint8)
    dec, _ = q.decode_rgb(q.encode_rgb(px))
    yield Check("qft", "rgb_round_trip", float(np.max(np.abs(dec.astype(int) - px))), 0.5)
    img = q.encode_rgb(px)
    low = q.gaussian_lowpass(img.grid, 2.0)
    parts = (q.filter_field(img, low, mu_, nu_) + q.filter_field(img, q.highpass_complement(low), mu_, nu_))
    yield Check("qft", "lowpass_plus_highpass_identity", parts.relative_gap(img), 1e-10)


# -- approach A ------------------------------------------------------------------------------

def acceptance_presets() -> list[aa.KernelSpecA]:
    return [aa.classical(), aa.clifford_minus(), aa.fractional_cft(math.pi / 2, math.pi / 4)]


def approach_a_eigen_gap(spec: aa.KernelSpecA, jmax: int = 3) -> float:
    worst = 0.0
    for parity in ("even", "odd"):
        for k in (0, 1):
            for j in range(jmax + 1):
                f = RadialProfile.sample(aa.hermite_radial(spec.m, parity, j, k))
                h = aa.radial_transform(spec, f, k, parity)
                ev = aa.eigenvalue_A(spec, parity, j, k)
                worst = max(worst, relative_gap(h.values, ev * f.values))
    return worst


def sphere_gaps(spec: aa.KernelSpecA, rng: np.random.Generator, trials: int = 20, K: int = 40,
                radius: float = 2.0) -> tuple[float, float]:
    gap = wedge = 0.0
    for _ in range(trials):
        x = rng.standard_normal(spec.m)
        y = rng.standard_normal(spec.m)
        x *= rng.uniform(0, radius) / np.linalg.norm(x)
        y *= rng.uniform(0, radius) / np.linalg.norm(y)
        c = aa.sphere_integral_check(spec, rng.uniform(0, radius), x, y, K)
        gap, wedge = max(gap, c.gap), max(wedge, c.wedge)
    return gap, wedge


def translation_collapse(rng: np.random.Generator, points: int = 200, radius: float = 4.0) -> tuple[float, float]:
    spec = aa.classical()
    f0 = RadialProfile.sample(lambda r: np.exp(-r**2 / 2))
    x = rng.standard_normal((points, 4))
    x *= (rng.uniform(0, 1, points) ** 0.25 * radius / np.linalg.norm(x, axis=1))[:, None]
    y = rng.standard_normal(4)
    y *= rng.uniform(0, radius) / np.linalg.norm(y)
    got = aa.translate_radial(spec, f0, y, x)
    want = np.exp(-np.sum((x - y) ** 2, axis=1) / 2)
    return float(np.max(np.abs(got - want))), abs(aa.translation_constant(spec) - 1)


def convolution_spread(spec: aa.KernelSpecA, f0: Callable, g0: Callable, s_eval) -> float:
    vals = {v: aa.convolve_radial(spec, f0, g0, v, s_eval) for v in aa.VARIANTS}
    scale = max(float(np.max(np.abs(v))) for v in vals.values())
    return max(float(np.max(np.abs(vals[a] - vals[b]))) / scale
               for a, b in itertools.combinations(aa.VARIANTS, 2))


def suite_approach_a(m: int = 4, n: int = 16, seed: int = 0) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    for spec in acceptance_presets():
        yield Check("approach_a", f"eigenvalues[{spec.name}]", approach_a_eigen_gap(spec), 1e-6)
        inv = aa.inverse_spec(spec)
        prod = max(abs(aa.eigenvalue_A(spec, p, j, k) * aa.eigenvalue_A(inv, p, j, k) - 1)
                   for p in ("even", "odd") for j in range(3) for k in range(8))
        yield Check("approach_a", f"inverse_eigenvalues[{spec.name}]", prod, 1e-10)
    for angle in (math.pi / 2, math.pi / 3):
        specs = [aa.classical(4, angle), aa.fractional_cft(angle, math.pi / 4)]
        if angle == math.pi / 2:
            specs.append(aa.clifford_minus())
        for spec in specs:
            gap, wedge = sphere_gaps(spec, rng)
            tag = f"{spec.name}@{angle:.4f}"
            yield Check("approach_a", f"sphere_integral[{tag}]", gap, 1e-6)
            yield Check("approach_a", f"sphere_wedge_cancels[{tag}]", wedge, 1e-8)
    gap, const = translation_collapse(rng)
    yield Check("approach_a", "translation_collapse_gaussian", gap, 1e-6)
    yield Check("approach_a", "translation_constant_is_one", const, 1e-10)
    gauss = lambda r: np.exp(-np.asarray(r) ** 2 / 2)
    lag = aa.hermite_radial(4, "even", 1, 0)
    s_eval = np.linspace(0.0, 3.0, 7)
    for label, g0 in (("gauss_gauss", gauss), ("gauss_laguerre", lag)):
        yield Check("approach_a", f"radial_convolutions_agree[{label}]",
                    convolution_spread(aa.classical(), gauss, g0, s_eval), 1e-8)


_SUITES = {
    "clifford": suite_clifford,
    "gft": suite_gft,
    "mustard": suite_mustard,
    "translate": suite_translate,
    "qft": suite_qft,
    "approach_a": suite_approach_a,
}


def run_suite(name: str, m: int, n: int, seed: int) -> list[Check]:
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    return list(_SUITES[name](m=m, n=n, seed=seed))


def checks_csv(checks: list[Check]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["suite", "identity", "gap", "tol", "kind", "status"])
    for c in checks:
        out.writerow([c.suite, c.identity, f"{c.gap:.3e}", f"{c.tol:.0e}", c.kind, "PASS" if c.passed else "FAIL"])
    return buf.getvalue()
