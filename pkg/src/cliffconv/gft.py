"""Discrete two-sided geometric Fourier transform on sampled multivector fields.

A field on an ``m``-dimensional grid takes values in Cl(0,m) and is stored as
``2**m`` complex coefficient planes, ``data.shape == (2**m, N_1, ..., N_m)``.

Two discretizations are supported:

``periodic``
    nodes ``x_n = n``, frequencies ``u_q = 2 pi q / N``; the transform is the
    circular DFT with weight ``N**-1/2`` per axis, so forward and inverse are
    exactly inverse to each other and the discrete convolution identities
    hold to rounding error.
``calibrated``
    centered nodes ``x_n = (n - N/2) dx`` and ``u_q = (q - N/2) du`` with
    ``du = 2 pi / (N dx)``; the weight ``dx / sqrt(2 pi)`` per axis makes the
    sum a Riemann approximation of the continuous transform.

The kernel ``prod_{k<=mu} exp(-i_k x_k u_k) f(x) prod_{k>mu} exp(-i_k x_k u_k)``
is separable, so the transform is a chain of one-axis sums: left axes are
processed innermost first (``k = mu, ..., 1``), then right axes
(``k = mu+1, ..., m``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.fft as sfft

from .clifford import (
    CliffordError,
    Multivector,
    RootOfMinusOne,
    apply_left,
    apply_right,
)

PERIODIC = "periodic"
CALIBRATED = "calibrated"

_workers = None


def set_workers(n: int | None) -> None:
    """Thread count handed to :mod:`scipy.fft` (``None``: library default)."""
    global _workers
    _workers = n


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    sizes: tuple[int, ...]
    mode: str = PERIODIC
    spacing: tuple[float, ...] | None = None

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.sizes)
        if not sizes:
            raise GridError("grid needs at least one axis")
        if self.mode not in (PERIODIC, CALIBRATED):
            raise GridError(f"unknown grid mode {self.mode!r}")
        if any(n < 1 for n in sizes):
            raise GridError(f"every axis needs at least 1 sample, got {sizes}")
        if self.mode == CALIBRATED and any(n % 2 for n in sizes):
            raise GridError(f"calibrated grids need even sizes, got {sizes}")
        if self.spacing is None:
            spacing = (1.0,) * len(sizes)
        else:
            spacing = tuple(float(d) for d in np.broadcast_to(self.spacing, (len(sizes),)))
        if any(d <= 0 for d in spacing):
            raise GridError(f"grid spacing must be positive, got {spacing}")
        if self.mode == PERIODIC and any(d != 1.0 for d in spacing):
            raise GridError("periodic grids have unit spacing")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "spacing", spacing)

    @classmethod
    def periodic(cls, n: int, m: int) -> GridSpec:
        return cls((n,) * m, PERIODIC)

    @classmethod
    def calibrated(cls, n: int, m: int, delta: float) -> GridSpec:
        return cls((n,) * m, CALIBRATED, (delta,) * m)

    @property
    def m(self) -> int:
        return len(self.sizes)

    @property
    def shape(self) -> tuple[int, ...]:
        return (1 << self.m,) + self.sizes

    def center(self, axis: int) -> int:
        return self.sizes[axis] // 2 if self.mode == CALIBRATED else 0

    def dual_spacing(self, axis: int) -> float:
        return 2 * math.pi / (self.sizes[axis] * self.spacing[axis])

    def coords(self, axis: int) -> np.ndarray:
        n = np.arange(self.sizes[axis])
        return (n - self.center(axis)) * self.spacing[axis]

    def freqs(self, axis: int) -> np.ndarray:
        q = np.arange(self.sizes[axis])
        return (q - self.center(axis)) * self.dual_spacing(axis)

    def mesh(self, spectral: bool = False) -> list[np.ndarray]:
        axes = [self.freqs(k) if spectral else self.coords(k) for k in range(self.m)]
        return np.meshgrid(*axes, indexing="ij")

    def axis_weight(self, axis: int, inverse: bool = False) -> float:
        if self.mode == PERIODIC:
            return self.sizes[axis] ** -0.5
        d = self.dual_spacing(axis) if inverse else self.spacing[axis]
        return d / math.sqrt(2 * math.pi)

    def volume_element(self) -> float:
        """Weight of one sample in ``int dx`` (1 on periodic grids)."""
        return float(np.prod(self.spacing)) if self.mode == CALIBRATED else 1.0

    def convolution_prefactor(self) -> float:
        """``(2 pi)**(m/2)`` on calibrated grids, ``prod N_k**(1/2)`` on periodic ones."""
        if self.mode == PERIODIC:
            return float(np.prod(self.sizes)) ** 0.5
        return (2 * math.pi) ** (self.m / 2)

    def offsets(self, y: Sequence[float]) -> tuple[int, ...]:
        """Integer sample offsets of a displacement ``y``; off-grid points raise."""
        if len(y) != self.m:
            raise GridError(f"displacement needs {self.m} components, got {len(y)}")
        out = []
        for yk, d in zip(y, self.spacing):
            s = yk / d
            if abs(s - round(s)) > 1e-9:
                raise GridError(f"displacement {tuple(y)} is not on the grid (spacing {self.spacing})")
            out.append(int(round(s)))
        return tuple(out)


@dataclass(frozen=True, eq=False)
class MultivectorField:
    grid: GridSpec
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.shape != self.grid.shape:
            raise GridError(f"field data must have shape {self.grid.shape}, got {data.shape}")
        object.__setattr__(self, "data", data)

    @property
    def m(self) -> int:
        return self.grid.m

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, grid: GridSpec) -> MultivectorField:
        return cls(grid, np.zeros(grid.shape, dtype=complex))

    @classmethod
    def from_scalar(cls, grid: GridSpec, values, mv: Multivector | None = None) -> MultivectorField:
        """Field ``values(x) * mv`` (``mv`` defaults to 1)."""
        values = np.broadcast_to(np.asarray(values, dtype=complex), grid.sizes)
        coeffs = mv.coeffs if mv is not None else Multivector.scalar(grid.m).coeffs
        return cls(grid, coeffs.reshape((-1,) + (1,) * grid.m) * values)

    @classmethod
    def constant(cls, grid: GridSpec, mv: Multivector) -> MultivectorField:
        return cls.from_scalar(grid, 1.0, mv)

    @classmethod
    def impulse(cls, grid: GridSpec, index: Sequence[int] | None = None,
                mv: Multivector | None = None) -> MultivectorField:
        values = np.zeros(grid.sizes)
        if index is None:
            index = tuple(grid.center(k) for k in range(grid.m))
        values[tuple(index)] = 1.0
        return cls.from_scalar(grid, values, mv)

    @classmethod
    def random(cls, grid: GridSpec, rng: np.random.Generator, complex_coeffs: bool = False) -> MultivectorField:
        data = rng.standard_normal(grid.shape)
        if complex_coeffs:
            data = data + 1j * rng.standard_normal(grid.shape)
        return cls(grid, data)

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: MultivectorField) -> None:
        if self.grid != other.grid:
            raise GridError(f"grid mismatch: {self.grid} vs {other.grid}")

    def __add__(self, other: MultivectorField) -> MultivectorField:
        self._check(other)
        return MultivectorField(self.grid, self.data + other.data)

    def __sub__(self, other: MultivectorField) -> MultivectorField:
        self._check(other)
        return MultivectorField(self.grid, self.data - other.data)

    def __neg__(self) -> MultivectorField:
        return MultivectorField(self.grid, -self.data)

    def scale(self, c: complex) -> MultivectorField:
        return MultivectorField(self.grid, self.data * c)

    def left_mul(self, mv: Multivector) -> MultivectorField:
        return MultivectorField(self.grid, apply_left(mv, self.data))

    def right_mul(self, mv: Multivector) -> MultivectorField:
        return MultivectorField(self.grid, apply_right(self.data, mv))

    def at(self, index: Sequence[int]) -> Multivector:
        return Multivector(self.m, self.data[(slice(None),) + tuple(index)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def relative_gap(self, reference: MultivectorField) -> float:
        """Frobenius norm of the difference relative to ``reference``."""
        self._check(reference)
        ref = reference.norm()
        diff = float(np.linalg.norm(self.data - reference.data))
        return diff / ref if ref > 0 else diff

    def reflect(self, flips: Sequence[int]) -> MultivectorField:
        """``f((-1)**flips[0] x_1, ...)``; reflection is index negation modulo N."""
        return MultivectorField(self.grid, reflect_planes(self.data, flips))

    def shift(self, offsets: Sequence[int]) -> MultivectorField:
        """Circular shift ``f(x - y)`` by integer sample offsets."""
        return MultivectorField(self.grid, np.roll(self.data, tuple(offsets), axis=tuple(range(1, self.m + 1))))


def reflect_planes(data: np.ndarray, flips: Sequence[int]) -> np.ndarray:
    out = data
    for k, flip in enumerate(flips):
        if flip:
            # n -> -n mod N; on centered grids this is also x -> -x
            out = np.roll(np.flip(out, axis=k + 1), 1, axis=k + 1)
    return out


# -- plans ---------------------------------------------------------------

@dataclass(frozen=True)
class _AxisMix:
    """Spectral projectors of ``h -> i h`` (or ``h -> h i``) onto its +i / -i eigenspaces."""

    matrix: np.ndarray
    v_plus: np.ndarray
    w_plus: np.ndarray
    v_minus: np.ndarray
    w_minus: np.ndarray

    @classmethod
    def build(cls, matrix: np.ndarray) -> _AxisMix:
        n = matrix.shape[0]
        eye = np.eye(n)
        parts = []
        for s in (1, -1):
            proj = (eye - s * 1j * matrix) / 2
            u, sv, _ = np.linalg.svd(proj)
            basis = u[:, sv > 1e-9]
            parts += [basis, basis.conj().T @ proj]
        return cls(matrix, *parts)


@dataclass(frozen=True)
class GftPlan:
    """Ordered root sets of a GFT bound to a grid.

    ``left`` and ``right`` list ``(axis, root)`` pairs in the order the
    factors are written in the kernel product.  :meth:`from_roots` builds a
    forward plan; :meth:`inverse` the plan of the inverse transform.
    """

    grid: GridSpec
    left: tuple[tuple[int, RootOfMinusOne], ...]
    right: tuple[tuple[int, RootOfMinusOne], ...]
    is_inverse: bool = False
    _mix: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @classmethod
    def from_roots(cls, F1: Sequence[RootOfMinusOne], F2: Sequence[RootOfMinusOne],
                   grid: GridSpec) -> GftPlan:
        roots = list(F1) + list(F2)
        if len(roots) != grid.m:
            raise GridError(f"|F1| + |F2| must equal m = {grid.m}, got {len(roots)}")
        for r in roots:
            if not isinstance(r, RootOfMinusOne):
                r = RootOfMinusOne(r)
            if r.m != grid.m:
                raise CliffordError(f"root lives in Cl(0,{r.m}) but the grid has m = {grid.m}")
        roots = [r if isinstance(r, RootOfMinusOne) else RootOfMinusOne(r) for r in roots]
        mu = len(F1)
        return cls(grid, tuple(enumerate(roots[:mu])),
                   tuple((k, roots[k]) for k in range(mu, grid.m)))

    @property
    def split(self) -> int:
        return len(self.left)

    @property
    def F1(self) -> tuple[RootOfMinusOne, ...]:
        return tuple(r for _, r in self.left)

    @property
    def F2(self) -> tuple[RootOfMinusOne, ...]:
        return tuple(r for _, r in self.right)

    def axis_roots(self) -> tuple[RootOfMinusOne, ...]:
        """Root attached to each axis, in axis order (forward plans only)."""
        if self.is_inverse:
            raise GridError("axis_roots is defined for forward plans")
        return self.F1 + self.F2

    def inverse(self) -> GftPlan:
        """Plan of the inverse: both chains reversed, every root negated."""
        return GftPlan(
            self.grid,
            tuple((k, -r) for k, r in reversed(self.left)),
            tuple((k, -r) for k, r in reversed(self.right)),
            not self.is_inverse,
        )

    def with_grid(self, grid: GridSpec) -> GftPlan:
        return GftPlan(grid, self.left, self.right, self.is_inverse)

    def mixing(self, root: RootOfMinusOne, side: str) -> _AxisMix:
        key = (id(root), side)
        mix = self._mix.get(key)
        if mix is None:
            matrix = root.value.left_matrix() if side == "left" else root.value.right_matrix()
            mix = _AxisMix.build(matrix)
            self._mix[key] = (root, mix)  # hold the root so its id stays unique
        else:
            mix = mix[1]
        return mix


# -- one-axis sums -------------------------------------------------------

def _phase_factors(grid: GridSpec, axis: int, ndim: int):
    """Pre/post modulations turning a plain FFT into the centered-phase sum."""
    n = grid.sizes[axis]
    c = grid.center(axis)
    if c == 0:
        return None, None
    idx = np.arange(n)
    pre = np.exp(2j * np.pi * c * idx / n)
    post = np.exp(2j * np.pi * c * idx / n) * np.exp(-2j * np.pi * c * c / n)
    shape = [1] * ndim
    shape[axis + 1] = n
    return pre.reshape(shape), post.reshape(shape)


def _exp_sum(data: np.ndarray, grid: GridSpec, axis: int, sign: int) -> np.ndarray:
    """``sum_n exp(sign * 1j * theta_nq) h_n`` along ``axis`` with a scalar FFT."""
    pre, post = _phase_factors(grid, axis, data.ndim)
    ax = axis + 1
    if sign < 0:
        if pre is None:
            return sfft.fft(data, axis=ax, workers=_workers)
        return post * sfft.fft(pre * data, axis=ax, workers=_workers)
    n = grid.sizes[axis]
    if pre is None:
        return n * sfft.ifft(data, axis=ax, workers=_workers)
    return n * post.conj() * sfft.ifft(pre.conj() * data, axis=ax, workers=_workers)


def _mix_apply(matrix: np.ndarray, data: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
    """``tensordot(matrix, data, 1)``, skipping zero entries (blade roots give sparse maps)."""
    rows = matrix.shape[0]
    if out is None:
        out = np.zeros((rows,) + data.shape[1:], dtype=complex)
    nz = np.abs(matrix) > 1e-15
    if nz.sum() > matrix.size // 2:
        out += np.tensordot(matrix, data, axes=(1, 0))
        return out
    for a in range(rows):
        for b in np.flatnonzero(nz[a]):
            c = matrix[a, b]
            if c == 1:
                out[a] += data[b]
            elif c == -1:
                out[a] -= data[b]
            else:
                out[a] += c * data[b]
    return out


def _axis_sum_fast(data, grid, axis, mix: _AxisMix, sign):
    # on the +i eigenspace of the mixing map, cos + sign*sin*i == exp(sign*1j*theta)
    plus = _mix_apply(mix.w_plus, data)
    minus = _mix_apply(mix.w_minus, data)
    out = _mix_apply(mix.v_plus, _exp_sum(plus, grid, axis, sign))
    return _mix_apply(mix.v_minus, _exp_sum(minus, grid, axis, -sign), out)


def _axis_sum_naive(data, grid, axis, matrix, sign):
    n = grid.sizes[axis]
    c = grid.center(axis)
    idx = np.arange(n)
    h = np.moveaxis(data, axis + 1, -1)
    out = np.empty_like(h)
    for q in range(n):
        theta = 2 * np.pi * (((idx - c) * (q - c)) % n) / n
        cs = h @ np.cos(theta)
        sn = h @ np.sin(theta)
        out[..., q] = cs + sign * np.tensordot(matrix, sn, axes=(1, 0))
    return np.moveaxis(out, -1, axis + 1)


def axis_sum(data: np.ndarray, grid: GridSpec, axis: int, root: RootOfMinusOne, side: str,
             sign: int = -1, method: str = "fast", plan: GftPlan | None = None) -> np.ndarray:
    """Unweighted ``sum_x exp(sign i x u) h`` (left) or ``sum_x h exp(sign i x u)`` (right)."""
    if not 0 <= axis < grid.m:
        raise GridError(f"axis {axis} out of range for m = {grid.m}")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if method == "fast":
        mix = plan.mixing(root, side) if plan is not None else _AxisMix.build(
            root.value.left_matrix() if side == "left" else root.value.right_matrix())
        return _axis_sum_fast(data, grid, axis, mix, sign)
    if method == "naive":
        matrix = root.value.left_matrix() if side == "left" else root.value.right_matrix()
        return _axis_sum_naive(data, grid, axis, matrix, sign)
    raise ValueError(f"unknown method {method!r}")


def axis_transform_1d(f: MultivectorField, axis: int, root: RootOfMinusOne, side: str,
                      sign: int = -1, method: str = "fast") -> MultivectorField:
    """One separable factor of the GFT along ``axis`` (no normalization)."""
    return MultivectorField(f.grid, axis_sum(f.data, f.grid, axis, root, side, sign, method))


# -- transforms ----------------------------------------------------------

def _run_plan(plan: GftPlan, f: MultivectorField, method: str) -> MultivectorField:
    if plan.grid != f.grid:
        raise GridError(f"plan grid {plan.grid} does not match field grid {f.grid}")
    data = f.data
    for axis, root in reversed(plan.left):
        data = axis_sum(data, plan.grid, axis, root, "left", -1, method, plan)
    for axis, root in plan.right:
        data = axis_sum(data, plan.grid, axis, root, "right", -1, method, plan)
    weight = np.prod([plan.grid.axis_weight(k, plan.is_inverse) for k in range(plan.grid.m)])
    return MultivectorField(f.grid, data * weight)


def gft_forward(plan: GftPlan, f: MultivectorField, method: str = "fast") -> MultivectorField:
    return _run_plan(plan, f, method)


def gft_inverse(plan: GftPlan, F: MultivectorField, method: str = "fast") -> MultivectorField:
    return _run_plan(plan.inverse(), F, method)


def spectral_phase(plan: GftPlan, F: MultivectorField, y: Sequence[float]) -> MultivectorField:
    """``prod_{k<=mu} exp(-i_k y_k u_k) F(u) prod_{k>mu} exp(-i_k y_k u_k)``."""
    grid = plan.grid
    offsets = grid.offsets(y)
    data = F.data
    for chain, side in ((reversed(plan.left), "left"), (plan.right, "right")):
        for axis, root in chain:
            s = offsets[axis]
            if s == 0:
                continue
            n = grid.sizes[axis]
            q = np.arange(n) - grid.center(axis)
            phase = 2 * np.pi * ((s * q) % n) / n
            shape = [1] * data.ndim
            shape[axis + 1] = n
            cos = np.cos(phase).reshape(shape)
            sin = np.sin(phase).reshape(shape)
            mixed = apply_left(root.value, data) if side == "left" else apply_right(data, root.value)
            data = cos * data - sin * mixed
    return MultivectorField(grid, data)


def generalized_translate(plan: GftPlan, f: MultivectorField, y: Sequence[float],
                          method: str = "fast") -> MultivectorField:
    """Translation whose transform is the kernel phase times the transform of ``f``."""
    if plan.is_inverse:
        raise GridError("generalized translation needs a forward plan")
    F = gft_forward(plan, f, method)
    return gft_inverse(plan, spectral_phase(plan, F, y), method)
