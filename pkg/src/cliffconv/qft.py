"""Two-sided quaternionic Fourier transform and colour-image filtering.

Quaternions are Cl(0,2) multivectors with ``i = e1``, ``j = e2`` and
``k = e1 e2``.  An image of height ``H`` and width ``W`` becomes a field on
the periodic ``(H, W)`` grid: rows run along ``x1``, columns along ``x2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .clifford import CliffordError, Multivector, RootOfMinusOne, planes_product
from .gft import (
    PERIODIC,
    GftPlan,
    GridError,
    GridSpec,
    MultivectorField,
    gft_forward,
    gft_inverse,
)
from .mustard import classical_convolve

# blade index of each quaternion unit
I, J, K = 1, 2, 3


def quaternion(w: float = 0.0, x: float = 0.0, y: float = 0.0, z: float = 0.0) -> Multivector:
    """``w + x i + y j + z k`` as an element of Cl(0,2)."""
    return Multivector(2, [w, x, y, z])


def unit_root(x: float, y: float, z: float) -> RootOfMinusOne:
    """Pure unit quaternion ``(x i + y j + z k) / norm``; these are exactly the roots of -1."""
    n = math.sqrt(x * x + y * y + z * z)
    if n == 0:
        raise CliffordError("a root of -1 needs a nonzero imaginary part")
    return RootOfMinusOne(quaternion(0, x / n, y / n, z / n))


def qft_plan(mu: RootOfMinusOne, nu: RootOfMinusOne, grid: GridSpec) -> GftPlan:
    if grid.m != 2:
        raise GridError("the qFT acts on two-dimensional grids")
    return GftPlan.from_roots([mu], [nu], grid)


def qft(mu: RootOfMinusOne, nu: RootOfMinusOne, f: MultivectorField, method: str = "fast") -> MultivectorField:
    """``F^{mu,nu} f``: ``exp(-mu x1 u1)`` on the left, ``exp(-nu x2 u2)`` on the right."""
    return gft_forward(qft_plan(mu, nu, f.grid), f, method)


def iqft(mu: RootOfMinusOne, nu: RootOfMinusOne, F: MultivectorField, method: str = "fast") -> MultivectorField:
    return gft_inverse(qft_plan(mu, nu, F.grid), F, method)


# -- convolution theorem ------------------------------------------------------

def field_split(f: MultivectorField, b: Multivector) -> tuple[MultivectorField, MultivectorField]:
    """Pointwise parts of ``f`` commuting / anticommuting with ``b``."""
    conj = f.left_mul(b.inverse()).right_mul(b)
    return (f + conj).scale(0.5), (f - conj).scale(0.5)


def qft_conv_theorem_rhs(mu: RootOfMinusOne, nu: RootOfMinusOne, f: MultivectorField,
                         g: MultivectorField) -> MultivectorField:
    """Right-hand side of the qFT convolution theorem for the classical convolution.

    ``prefactor * sum_{j,k} (F^{mu,(-1)^k nu} f)_{c^j(mu)} F^{(-1)^j mu, nu}(g_{c^k(nu)})``
    where the prefactor is ``2 pi`` on calibrated grids and ``sqrt(N1 N2)`` on
    periodic ones.
    """
    f._check(g)
    grid = f.grid
    g_parts = field_split(g, nu.value)
    total = np.zeros(grid.shape, dtype=complex)
    for j, k in itertools.product((0, 1), repeat=2):
        Ff = qft(mu, -nu if k else nu, f)
        Ff_j = field_split(Ff, mu.value)[j]
        Gg = qft(-mu if j else mu, nu, g_parts[k])
        total += planes_product(Ff_j.data, Gg.data, 2)
    return MultivectorField(grid, total * grid.convolution_prefactor())


def naive_product_rhs(mu: RootOfMinusOne, nu: RootOfMinusOne, f: MultivectorField,
                      g: MultivectorField) -> MultivectorField:
    """``prefactor * F(f) F(g)``, which is *not* the transform of ``f * g`` in general."""
    F, G = qft(mu, nu, f), qft(mu, nu, g)
    return MultivectorField(f.grid, planes_product(F.data, G.data, 2) * f.grid.convolution_prefactor())


def mustard_q_sign(j1: int, j2: int, k1: int, k2: int) -> int:
    return (-1) ** ((k2 + 1) * (j1 == 1)) * (-1) ** ((k1 + 1) * (j2 == 1))


def mustard_q(mu: RootOfMinusOne, nu: RootOfMinusOne, f: MultivectorField,
              g: MultivectorField) -> MultivectorField:
    """Symmetric 16-term formula for the Mustard product of the qFT.

    ``f^k1`` reflects ``x2`` and ``g^k2`` reflects ``x1``.
    """
    f._check(g)
    if f.grid.mode != PERIODIC:
        raise GridError("the reflected-convolution formula is exact only on periodic grids")
    total = MultivectorField.zeros(f.grid)
    one = Multivector.scalar(2)
    for j1, j2, k1, k2 in itertools.product((0, 1), repeat=4):
        left_f = mu.value if j1 else one
        right_f = nu.value if j2 else one
        a = f.reflect((0, k1)).left_mul(left_f).right_mul(right_f)
        b = g.reflect((k2, 0)).left_mul(left_f).right_mul(right_f)
        total = total + classical_convolve(a, b).scale(mustard_q_sign(j1, j2, k1, k2))
    return total.scale(0.25)


# -- colour images ---------------------------------------------------------------

@dataclass(frozen=True)
class DecodeReport:
    scalar_residue: float
    imag_residue: float
    clipped: int


def _basis(rotation) -> np.ndarray:
    if rotation is None:
        return np.eye(3)
    rot = np.asarray(rotation, dtype=float)
    if rot.shape != (3, 3) or abs(np.linalg.det(rot)) < 1e-12:
        raise ValueError("basis rotation must be an invertible 3x3 matrix")
    return rot


def encode_rgb(pixels: np.ndarray, rotation=None) -> MultivectorField:
    """8-bit RGB ``(H, W, 3)`` to the pure-quaternion field ``(r i + g j + b k) / 255``.

    ``rotation`` optionally maps ``(r, g, b)`` to the ``(i, j, k)`` coefficients,
    for example to align one axis with the grey line.
    """
    px = np.asarray(pixels)
    if px.ndim != 3 or px.shape[2] != 3:
        raise ValueError(f"expected an (H, W, 3) pixel array, got shape {px.shape}")
    rgb = px.astype(float) / 255.0
    ijk = np.einsum("ab,hwb->ahw", _basis(rotation), rgb)
    grid = GridSpec(px.shape[:2], PERIODIC)
    data = np.zeros(grid.shape, dtype=complex)
    data[I:K + 1] = ijk
    return MultivectorField(grid, data)


def decode_rgb(field: MultivectorField, rotation=None) -> tuple[np.ndarray, DecodeReport]:
    """Inverse of :func:`encode_rgb`; clamps to ``[0, 1]`` and drops the scalar part."""
    if field.m != 2:
        raise GridError("colour images live on two-dimensional grids")
    ijk = field.data[I:K + 1]
    rgb = np.einsum("ab,bhw->hwa", np.linalg.inv(_basis(rotation)), ijk.real)
    scaled = np.rint(rgb * 255.0)
    clipped = int(np.count_nonzero((scaled < 0) | (scaled > 255)))
    report = DecodeReport(float(np.max(np.abs(field.data[0]))), float(np.max(np.abs(field.data.imag))), clipped)
    return np.clip(scaled, 0, 255).astype(np.uint8), report


def filter_field(f: MultivectorField, multiplier: MultivectorField, mu: RootOfMinusOne,
                 nu: RootOfMinusOne) -> MultivectorField:
    """``qft^-1(multiplier * qft(f))`` with the multiplier acting from the left."""
    if multiplier.grid != f.grid:
        raise GridError(f"multiplier grid {multiplier.grid.sizes} does not match image grid {f.grid.sizes}")
    F = qft(mu, nu, f)
    return iqft(mu, nu, MultivectorField(f.grid, planes_product(multiplier.data, F.data, 2)))


def filter_image(pixels: np.ndarray, multiplier: MultivectorField, mu: RootOfMinusOne,
                 nu: RootOfMinusOne, rotation=None) -> tuple[np.ndarray, DecodeReport]:
    out = filter_field(encode_rgb(pixels, rotation), multiplier, mu, nu)
    return decode_rgb(out, rotation)


def angular_frequencies(grid: GridSpec) -> list[np.ndarray]:
    """Per-axis angular frequency ``2 pi q / N`` wrapped into ``[-pi, pi)``, as a mesh."""
    axes = []
    for n in grid.sizes:
        q = np.arange(n)
        axes.append(2 * np.pi * np.where(q < n - n // 2, q, q - n) / n)
    return np.meshgrid(*axes, indexing="ij")


def gaussian_lowpass(grid: GridSpec, sigma: float) -> MultivectorField:
    """Scalar multiplier ``exp(-sigma^2 |omega|^2 / 2)``; blurs with a Gaussian of width ``sigma`` pixels."""
    w1, w2 = angular_frequencies(grid)
    return MultivectorField.from_scalar(grid, np.exp(-(sigma**2) * (w1**2 + w2**2) / 2))


def highpass_complement(lowpass: MultivectorField) -> MultivectorField:
    return MultivectorField.constant(lowpass.grid, Multivector.scalar(2)) - lowpass


def phase_multiplier(grid: GridSpec, mu: RootOfMinusOne, theta=None) -> MultivectorField:
    """``exp(-mu theta(u))``; ``theta`` defaults to the polar angle of the frequency."""
    w1, w2 = angular_frequencies(grid)
    th = np.arctan2(w2, w1) if theta is None else np.asarray(theta(w1, w2), dtype=float)
    return (MultivectorField.from_scalar(grid, np.cos(th))
            - MultivectorField.from_scalar(grid, np.sin(th), mu.value))


MULTIPLIER_PRESETS = ("identity", "lowpass", "highpass", "phase")


def multiplier_preset(name: str, grid: GridSpec, mu: RootOfMinusOne, sigma: float = 2.0) -> MultivectorField:
    if name == "identity":
        return MultivectorField.constant(grid, Multivector.scalar(2))
    if name == "lowpass":
        return gaussian_lowpass(grid, sigma)
    if name == "highpass":
        return highpass_complement(gaussian_lowpass(grid, sigma))
    if name == "phase":
        return phase_multiplier(grid, mu)
    raise ValueError(f"unknown multiplier preset {name!r}; choose from {MULTIPLIER_PRESETS}")
