"""Series-kernel hypercomplex transforms in the eigenfunction picture.

The kernel is

    K(x, y) = (A(w, z) + (x ^ y) B(w, z)) * exp(i/2 cot(alpha) (|x|^2 + |y|^2))

with ``z = |x||y| / sin(alpha)``, ``w = <x, y> / (|x||y|)`` and

    A = sum_k  alpha_k z**-lam     J_{k+lam}(z) C_k^lam(w)
    B = sum_k  beta_k  z**(-lam-1) J_{k+lam}(z) C_{k-1}^{lam+1}(w)     (k >= 1)

where ``lam = (m - 2) / 2``.  The transform of ``f`` is
``rho(alpha) * int K(x, y) f(x) dx`` with ``rho(alpha) = (pi (1 - exp(-2 i alpha)))**(-m/2)``.

Everything here is evaluated through one-dimensional radial reductions;
no ``m``-dimensional quadrature of the transform is attempted.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .clifford import Multivector
from .special import (
    RadialProfile,
    TruncationError,
    bessel_ratio,
    gauss_legendre,
    gegenbauer_table,
    hankel_eval,
    laguerre,
)

DEFAULT_KMAX = 64
KERNEL_TOL = 1e-10


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class KernelSpecA:
    """Coefficient sequences of a series kernel.

    ``alpha_k[k]`` and ``beta_k[k]`` hold the coefficients for ``k = 0..kmax``;
    ``beta_k[0]`` is always zero because ``B`` starts at ``k = 1``.
    """

    m: int
    angle: float
    alpha_k: np.ndarray
    beta_k: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        _check_m(self.m)
        if not -math.pi < self.angle < math.pi or abs(self.angle) < 1e-12:
            raise SpecError(f"angle must lie in (-pi, pi) without 0, got {self.angle}")
        a = np.asarray(self.alpha_k, dtype=complex).copy()
        b = np.asarray(self.beta_k, dtype=complex).copy()
        if a.shape != b.shape or a.ndim != 1 or a.size < 2:
            raise SpecError("alpha_k and beta_k must be 1-D of equal length >= 2")
        if b[0] != 0:
            raise SpecError("beta_0 must be zero")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "alpha_k", a)
        object.__setattr__(self, "beta_k", b)

    @property
    def lam(self) -> float:
        return (self.m - 2) / 2

    @property
    def kmax(self) -> int:
        return self.alpha_k.size - 1

    @property
    def rho(self) -> complex:
        return (math.pi * (1 - cmath.exp(-2j * self.angle))) ** (-self.m / 2)

    @property
    def c_m(self) -> complex:
        """Constant in front of the radial integral of a transformed ``f0(r) M_k``."""
        return 2 / (math.gamma(self.m / 2) * (1 - cmath.exp(-2j * self.angle)) ** (self.m / 2))

    def truncated(self, kmax: int) -> KernelSpecA:
        if kmax > self.kmax:
            raise SpecError(f"spec only holds coefficients up to k = {self.kmax}")
        return KernelSpecA(self.m, self.angle, self.alpha_k[:kmax + 1], self.beta_k[:kmax + 1], self.name)


# -- presets ---------------------------------------------------------------

def _check_m(m: int) -> None:
    if m < 3:
        raise SpecError("the series kernel needs m >= 3 (m = 2 makes the Gegenbauer index vanish)")


def classical(m: int = 4, angle: float = math.pi / 2, kmax: int = DEFAULT_KMAX) -> KernelSpecA:
    """Kernel of the (fractional, for ``angle != pi/2``) classical Fourier transform."""
    _check_m(m)
    lam = (m - 2) / 2
    k = np.arange(kmax + 1)
    a = 2**lam * math.gamma(lam) * (k + lam) * (-1j) ** k
    return KernelSpecA(m, angle, a, np.zeros(kmax + 1), "classical")


def clifford_minus(m: int = 4, kmax: int = DEFAULT_KMAX) -> KernelSpecA:
    """The Clifford-Fourier transform with the ``-`` sign in front of the angular operator."""
    _check_m(m)
    lam = (m - 2) / 2
    k = np.arange(kmax + 1)
    ip = cmath.exp(1j * math.pi * (lam + 1))  # i**(2 lam + 2) on the principal branch
    sgn = (-1.0) ** k
    a = (2 ** (lam - 1) * math.gamma(lam + 1) * (ip + sgn)
         - 2 ** (lam - 1) * math.gamma(lam) * (k + lam) * (ip - sgn))
    b = -(2**lam) * math.gamma(lam + 1) * (ip + sgn)
    b[0] = 0
    return KernelSpecA(m, math.pi / 2, a, b, "clifford_minus")


def fractional_cft(angle: float, beta: float, m: int = 4, kmax: int = DEFAULT_KMAX) -> KernelSpecA:
    """Fractional Clifford-Fourier kernel with angles ``(angle, beta)``."""
    _check_m(m)
    lam = (m - 2) / 2
    k = np.arange(kmax + 1)
    ik = (1j) ** (-k)
    ep = np.exp(1j * beta * (k + 2 * lam))
    em = np.exp(-1j * beta * k)
    a = (2 ** (lam - 1) * math.gamma(lam) * (k + lam) * ik * (ep + em)
         - 2 ** (lam - 1) * math.gamma(lam + 1) * ik * (ep - em))
    b = 2**lam * math.gamma(lam + 1) / math.sin(angle) * ik * (ep - em)
    b[0] = 0
    return KernelSpecA(m, angle, a, b, f"fractional_cft({angle:g},{beta:g})")


PRESETS: dict[str, Callable[..., KernelSpecA]] = {
    "classical": classical,
    "clifford_minus": clifford_minus,
    "fractional_cft": fractional_cft,
}


def preset(name: str, m: int = 4, angle: float | None = None, beta: float | None = None,
           kmax: int = DEFAULT_KMAX) -> KernelSpecA:
    """Look up a preset by name; ``angle``/``beta`` are used where the preset takes them."""
    if name == "classical":
        return classical(m, math.pi / 2 if angle is None else angle, kmax)
    if name == "clifford_minus":
        if angle is not None and abs(angle - math.pi / 2) > 1e-12:
            raise SpecError("clifford_minus is only defined at angle pi/2")
        return clifford_minus(m, kmax)
    if name == "fractional_cft":
        if angle is None or beta is None:
            raise SpecError("fractional_cft needs both angle and beta")
        return fractional_cft(angle, beta, m, kmax)
    raise SpecError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")


# -- kernel ----------------------------------------------------------------

def _wedge_planes(x: np.ndarray, y: np.ndarray, m: int) -> np.ndarray:
    """Coefficient planes of the bivector ``x ^ y`` for stacked points ``(..., m)``."""
    out = np.zeros((1 << m,) + x.shape[:-1], dtype=complex)
    for a in range(m):
        for b in range(a + 1, m):
            out[(1 << a) | (1 << b)] = x[..., a] * y[..., b] - x[..., b] * y[..., a]
    return out


def _series_parts(spec: KernelSpecA, alpha_k, beta_k, zt, w):
    """Truncated ``A`` and ``z * B`` sums plus the magnitude of their last terms."""
    lam = spec.lam
    K = spec.kmax
    ca = gegenbauer_table(K, lam, w)
    cb = gegenbauer_table(max(K - 1, 0), lam + 1, w)
    A = np.zeros(np.shape(zt), dtype=complex)
    zB = np.zeros(np.shape(zt), dtype=complex)
    last = np.zeros(np.shape(zt))
    for k in range(K + 1):
        bess = bessel_ratio(k + lam, lam, zt)  # z**-lam J_{k+lam}(z)
        ta = alpha_k[k] * bess * ca[k]
        A = A + ta
        tb = 0.0
        if k >= 1:
            tb = beta_k[k] * bess * cb[k - 1]
            zB = zB + tb
        if k >= K - 1:
            last = np.maximum(last, np.abs(ta) + np.abs(tb))
    return A, zB, last


def kernel_planes(spec: KernelSpecA, x, y, tol: float = KERNEL_TOL):
    """Vectorized kernel: coefficient planes ``(2**m, ...)`` and a truncation estimate.

    ``x`` and ``y`` are arrays of points with the coordinates on the last axis
    (broadcast against each other).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != spec.m or y.shape[-1] != spec.m:
        raise SpecError(f"points must have {spec.m} coordinates")
    x, y = np.broadcast_arrays(x, y)
    nx = np.linalg.norm(x, axis=-1)
    ny = np.linalg.norm(y, axis=-1)
    prod = nx * ny
    safe = np.where(prod > 0, prod, 1.0)
    w = np.where(prod > 0, np.einsum("...i,...i->...", x, y) / safe, 0.0)
    w = np.clip(w, -1.0, 1.0)
    s = math.sin(spec.angle)
    zt = prod / s
    A, zB, last = _series_parts(spec, spec.alpha_k, spec.beta_k, zt, w)
    if np.any(last > tol * np.maximum(1.0, np.abs(A))):
        worst = float(np.max(np.abs(zt)))
        raise TruncationError(
            f"kernel series truncated at k = {spec.kmax} is not converged (|z| up to {worst:.3g})")
    # (x ^ y) B = (x' ^ y') |x||y| B = (x' ^ y') sin(alpha) z B
    with np.errstate(invalid="ignore", divide="ignore"):
        B = np.where(prod > 0, zB / np.where(zt != 0, zt, 1.0), 0.0)
    chirp = np.exp(0.5j / math.tan(spec.angle) * (nx**2 + ny**2))
    planes = _wedge_planes(x, y, spec.m) * B
    planes[0] = A
    return planes * chirp, last


def kernel_eval(spec: KernelSpecA, x: Sequence[float], y: Sequence[float],
                tol: float = KERNEL_TOL) -> tuple[Multivector, float]:
    """Kernel value ``K(x, y)`` at one pair of points, with its truncation estimate."""
    planes, last = kernel_planes(spec, x, y, tol)
    return Multivector(spec.m, planes), float(last)


# -- eigenvalues and inverse ------------------------------------------------

def _even_factor(spec: KernelSpecA, k: int) -> complex:
    lam, s = spec.lam, math.sin(spec.angle)
    return lam / (lam + k) * spec.alpha_k[k] - s * k / (2 * (lam + k)) * spec.beta_k[k]


def _odd_factor(spec: KernelSpecA, k: int) -> complex:
    """The ``q``-type combination at index ``k`` (used with ``k + 1`` for odd modes)."""
    lam, s = spec.lam, math.sin(spec.angle)
    return lam / (lam + k) * spec.alpha_k[k] + s * (k + 2 * lam) / (2 * (lam + k)) * spec.beta_k[k]


def eigenvalue_A(spec: KernelSpecA, parity: str, j: int, k: int) -> complex:
    """Eigenvalue on the Clifford-Hermite function of type ``(2j, k)`` or ``(2j+1, k)``."""
    lam, a = spec.lam, spec.angle
    pre = 2**-lam / math.gamma(lam + 1)
    if parity == "even":
        if k > spec.kmax:
            raise SpecError(f"k = {k} exceeds kmax = {spec.kmax}")
        return complex(pre * _even_factor(spec, k) * 1j**k * cmath.exp(-1j * a * (k + 2 * j)))
    if parity == "odd":
        if k + 1 > spec.kmax:
            raise SpecError(f"k + 1 = {k + 1} exceeds kmax = {spec.kmax}")
        return complex(pre * _odd_factor(spec, k + 1) * 1j ** (k + 1) * cmath.exp(-1j * a * (k + 2 * j + 1)))
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def normalizer(spec: KernelSpecA) -> np.ndarray:
    """``N_k`` for ``k = 0..kmax``."""
    lam = spec.lam
    k = np.arange(spec.kmax + 1)
    s = math.sin(spec.angle)
    a = lam / (lam + k) * spec.alpha_k
    even = a - s * k / (2 * (lam + k)) * spec.beta_k
    odd = a + s * (k + 2 * lam) / (2 * (lam + k)) * spec.beta_k
    return even * odd / (2 ** (2 * lam) * math.gamma(lam + 1) ** 2)


def inverse_coeffs(spec: KernelSpecA, tol: float = 1e-14):
    """``(tilde_alpha, tilde_beta, N)`` of the inverse kernel."""
    N = normalizer(spec)
    bad = np.flatnonzero(np.abs(N) <= tol)
    if bad.size:
        raise SpecError(f"transform not invertible at mode k = {int(bad[0])} (N_k = 0)")
    ta = (spec.alpha_k + spec.beta_k * math.sin(spec.angle)) / N
    tb = -spec.beta_k / N
    return ta, tb, N


def inverse_spec(spec: KernelSpecA) -> KernelSpecA:
    """The inverse transform written as a forward kernel at angle ``-alpha``.

    Flipping the angle flips the sign of ``z``; the parities of
    ``z**-lam J_{k+lam}`` and ``z**(-lam-1) J_{k+lam}`` are absorbed into the
    coefficients.
    """
    ta, tb, _ = inverse_coeffs(spec)
    k = np.arange(spec.kmax + 1)
    a = (-1.0) ** k * ta
    b = (-1.0) ** (k + 1) * tb
    b[0] = 0
    return KernelSpecA(spec.m, -spec.angle, a, b, f"inverse({spec.name})")


def coefficients_csv(spec: KernelSpecA) -> str:
    """CSV with columns ``k, re_alpha, im_alpha, re_beta, im_beta, re_N, im_N``."""
    N = normalizer(spec)
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["k", "re_alpha", "im_alpha", "re_beta", "im_beta", "re_N", "im_N"])
    for k in range(spec.kmax + 1):
        a, b, n = spec.alpha_k[k], spec.beta_k[k], N[k]
        out.writerow([k] + [repr(float(v)) for v in (a.real, a.imag, b.real, b.imag, n.real, n.imag)])
    return buf.getvalue()


# -- monogenics and basis functions ----------------------------------------

def monogenic(k: int, x: Sequence[float], m: int = 4) -> Multivector:
    """Built-in spherical monogenics ``M_0 = 1`` and ``M_1 = x_1 - x_2 e_1 e_2``."""
    if k == 0:
        return Multivector.scalar(m)
    if k == 1:
        return Multivector.scalar(m, x[0]) - x[1] * Multivector.blade(m, 1, 2)
    raise SpecError("only monogenics of degree 0 and 1 are built in")


def hermite_radial(m: int, parity: str, j: int, k: int) -> Callable[[np.ndarray], np.ndarray]:
    """Radial factor ``f0`` of the Clifford-Hermite function of type ``(2j, k)`` / ``(2j+1, k)``."""
    order = m / 2 + k - 1 if parity == "even" else m / 2 + k
    return lambda r: laguerre(j, order, np.asarray(r) ** 2) * np.exp(-np.asarray(r) ** 2 / 2)


# -- radial transforms ------------------------------------------------------

def radial_transform(spec: KernelSpecA, f0: RadialProfile, k: int = 0, parity: str = "even",
                     s_nodes=None) -> RadialProfile:
    """Radial profile ``h`` with ``F(f0 M_k)(y) = h(|y|) M_k(y)`` (even) or
    ``F(f0 x M_k)(y) = h(|y|) y M_k(y)`` (odd).

    The output lives on ``f0``'s nodes unless ``s_nodes`` is given.
    """
    if k not in (0, 1):
        raise SpecError("radial transforms are supported for k in {0, 1}")
    lam, m, a = spec.lam, spec.m, spec.angle
    if parity == "even":
        n, coef = k, _even_factor(spec, k)
    elif parity == "odd":
        n, coef = k + 1, _odd_factor(spec, k + 1)
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if n > spec.kmax:
        raise SpecError("spec is truncated below the requested mode")
    r, wts = f0.r_nodes, f0.weights
    if np.max(np.abs(f0.values[r >= 0.95 * r[-1]])) * r[-1] ** (m + n) > 1e-10:
        raise TruncationError("radial profile has not decayed by the end of its nodes")
    s = r if s_nodes is None else np.asarray(s_nodes, dtype=float)
    sa = math.sin(a)
    cot = 1 / math.tan(a)
    order = n + lam
    zt = np.outer(s, r) / sa
    # z**-lam J_{n+lam}(z) / s**n  ==  (r / sin a)**n z**-(n+lam) J_{n+lam}(z)
    kern = bessel_ratio(order, order, zt) * (r / sa) ** n
    g = wts * r ** (m + n - 1) * f0.values * np.exp(0.5j * cot * r**2)
    h = spec.c_m * coef * np.exp(0.5j * cot * s**2) * (kern @ g)
    if s_nodes is None:
        return f0.with_values(h)
    return RadialProfile(s, h, np.ones_like(s))


# -- sphere integral ---------------------------------------------------------

@dataclass(frozen=True)
class SphereCheck:
    lhs: Multivector
    rhs: complex
    gap: float
    wedge: float
    pieces: tuple = field(default=(), repr=False)


def _unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    return v / n if n > 0 else v


def sphere_integral_check(spec: KernelSpecA, r: float, x: Sequence[float], y: Sequence[float],
                          K: int | None = None) -> SphereCheck:
    """Series value of ``int_S K~(r eta, x) K(y, r eta) d omega(eta)`` against its closed form.

    The four pieces of the series are assembled separately: the scalar-scalar
    part, the two mixed parts and the bivector-bivector part (normalized
    sphere measure).
    """
    K = spec.kmax if K is None else K
    if K > spec.kmax:
        raise SpecError(f"K = {K} exceeds kmax = {spec.kmax}")
    m, lam, a = spec.m, spec.lam, spec.angle
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    sa = math.sin(a)
    ta, tb, _ = inverse_coeffs(spec)  # s_k, t_k
    al, be = spec.alpha_k, spec.beta_k
    xu, yu = _unit(x), _unit(y)
    w = float(np.clip(xu @ yu, -1, 1))
    z1 = r * np.linalg.norm(x) / sa
    z2 = r * np.linalg.norm(y) / sa
    ca = gegenbauer_table(K, lam, w)
    cb = gegenbauer_table(max(K - 1, 0), lam + 1, w)
    I1 = I2 = I3 = I4s = I4w = 0j
    for k in range(K + 1):
        bb = complex(bessel_ratio(k + lam, lam, z1) * bessel_ratio(k + lam, lam, z2))
        f = lam / (lam + k)
        I1 += f * ta[k] * al[k] * bb * ca[k]
        if k >= 1:
            I2 += -sa * f * tb[k] * al[k] * bb * cb[k - 1]
            I3 += -sa * f * ta[k] * be[k] * bb * cb[k - 1]
            I4s += sa**2 * k * (k + 2 * lam) / (4 * lam * (k + lam)) * tb[k] * be[k] * bb * ca[k]
            I4w += -(sa**2) * f * tb[k] * be[k] * bb * cb[k - 1]
    wedge_dir = Multivector(m, _wedge_planes(xu, yu, m))
    phase = cmath.exp(-0.5j / math.tan(a) * (x @ x - y @ y))
    lhs = (Multivector.scalar(m, I1 + I4s) + wedge_dir * (I2 + I3 + I4w)) * phase
    u = r * np.linalg.norm(x - y) / sa
    rhs = complex(2**lam * math.gamma(lam + 1) * bessel_ratio(lam, lam, u) * phase)
    gap = abs(lhs.scalar_part - rhs)
    wedge = float(np.max(np.abs(lhs.coeffs[1:])))
    return SphereCheck(lhs, rhs, gap, wedge, (I1, I2, I3, I4s + 0j, I4w))


def sphere_integral_quadrature(spec: KernelSpecA, r: float, x, y, n: int = 24) -> Multivector:
    """Direct quadrature of the same sphere integral on ``S^3`` (``m = 4`` only).

    Hyperspherical angles ``(t1, t2, phi)`` with Gauss-Legendre rules in the
    polar angles and the trapezoid rule in ``phi``.
    """
    if spec.m != 4:
        raise SpecError("direct sphere quadrature is implemented for m = 4")
    inv = inverse_spec(spec)
    g, gw = np.polynomial.legendre.leggauss(n)
    t = (g + 1) * math.pi / 2
    tw = gw * math.pi / 2
    phi = np.arange(2 * n) * math.pi / n
    T1, T2, P = np.meshgrid(t, t, phi, indexing="ij")
    W = (tw[:, None, None] * tw[None, :, None] * (math.pi / n)
         * np.sin(T1) ** 2 * np.sin(T2))
    eta = np.stack([np.cos(T1), np.sin(T1) * np.cos(T2),
                    np.sin(T1) * np.sin(T2) * np.cos(P), np.sin(T1) * np.sin(T2) * np.sin(P)], axis=-1)
    pts = r * eta
    left, _ = kernel_planes(inv, pts, np.asarray(x, dtype=float), tol=1e-6)
    right, _ = kernel_planes(spec, np.asarray(y, dtype=float), pts, tol=1e-6)
    from .clifford import planes_product
    prod = planes_product(left, right, 4)
    total = np.tensordot(prod, W, axes=3)
    return Multivector(4, total / (2 * math.pi**2))  # |S^3| = 2 pi^2


# -- generalized translation of radial functions ------------------------------

def _sphere_area(m: int) -> float:
    return 2 * math.pi ** (m / 2) / math.gamma(m / 2)


def fractional_ft_radial(f0: RadialProfile, m: int, angle: float) -> RadialProfile:
    """Fractional classical Fourier transform of a radial function (radial profile)."""
    return radial_transform(classical(m, angle, kmax=1), f0, 0, "even")


def translation_constant(spec: KernelSpecA) -> complex:
    lam = spec.lam
    return complex(2 * spec.alpha_k[0] / math.gamma(lam + 1) * (1 - cmath.exp(2j * spec.angle)) ** (-spec.m / 2))


def _translate_from(spec: KernelSpecA, Fa: RadialProfile, x2, y2, dist) -> np.ndarray:
    """Translate formula given ``|x|^2``, ``|y|^2`` and ``|x - y|``."""
    H = hankel_eval(Fa, spec.lam, np.asarray(dist) / abs(math.sin(spec.angle)))
    chirp = np.exp(-0.5j / math.tan(spec.angle) * (np.asarray(x2) - np.asarray(y2)))
    return translation_constant(spec) * chirp * H


def translate_radial(spec: KernelSpecA, f0: RadialProfile, y: Sequence[float], x_eval) -> np.ndarray:
    """Generalized translate ``tau_y f (x)`` of a real radial ``f`` at the points ``x_eval``."""
    if np.max(np.abs(f0.values.imag)) > 1e-14:
        raise SpecError("translate_radial needs a real-valued radial profile")
    y = np.asarray(y, dtype=float)
    x = np.atleast_2d(np.asarray(x_eval, dtype=float))
    if x.shape[-1] != spec.m or y.shape != (spec.m,):
        raise SpecError(f"points must have {spec.m} coordinates")
    Fa = fractional_ft_radial(f0, spec.m, spec.angle)
    return _translate_from(spec, Fa, np.sum(x * x, axis=-1), y @ y, np.linalg.norm(x - y, axis=-1))


def translate_radial_series(spec: KernelSpecA, f0: RadialProfile, y: Sequence[float], x_eval,
                            K: int = 40, n_r: int = 160, r_max: float = 12.0) -> np.ndarray:
    """Second route: ``rho(-alpha) int F_K(f)(r) [series sphere integral] r**(m-1) |S| dr``.

    Uses the kernel's own radial transform of ``f`` and the truncated series for
    the sphere integral instead of the Bessel addition theorem.
    """
    y = np.asarray(y, dtype=float)
    x = np.atleast_2d(np.asarray(x_eval, dtype=float))
    r, w = gauss_legendre(n_r, r_max)
    Ff = radial_transform(spec, f0, 0, "even", s_nodes=r).values
    rho_inv = (math.pi * (1 - cmath.exp(2j * spec.angle))) ** (-spec.m / 2)
    out = np.empty(x.shape[0], dtype=complex)
    for i, xi in enumerate(x):
        vals = np.array([sphere_integral_check(spec, rr, xi, y, K).lhs.scalar_part for rr in r])
        out[i] = rho_inv * _sphere_area(spec.m) * np.sum(w * Ff * vals * r ** (spec.m - 1))
    return out


# -- convolutions -------------------------------------------------------------

VARIANTS = ("cl", "cr", "l", "r")


def convolve_radial(spec: KernelSpecA, f0: Callable, g0: Callable, variant: str, s_eval,
                    n_rho: int = 96, n_theta: int = 64, rho_max: float = 10.0) -> np.ndarray:
    """One of the four generalized convolutions of two real radial functions.

    ``f0`` and ``g0`` are vectorized callables of the radius; the result is
    returned at the radii ``s_eval`` (it is radial).  ``cl`` / ``cr`` go
    through the spectral definitions (forward, product, inverse); ``l`` / ``r``
    integrate the generalized translate against the other factor with a
    two-dimensional rule in ``|y|`` and the angle between ``x`` and ``y``.
    """
    variant = variant.lower()
    if variant not in VARIANTS:
        raise SpecError(f"variant must be one of {VARIANTS}")
    s_eval = np.atleast_1d(np.asarray(s_eval, dtype=float))
    m = spec.m
    fp, gp = RadialProfile.sample(f0), RadialProfile.sample(g0)
    if variant in ("cl", "cr"):
        Ff = radial_transform(spec, fp).values
        Fg = radial_transform(spec, gp).values
        prod = Ff * Fg if variant == "cl" else Fg * Ff
        back = radial_transform(inverse_spec(spec), fp.with_values(prod), s_nodes=s_eval)
        return back.values / spec.rho
    # l: int [tau_y f](x) g(y) dy      r: int f(y) [tau_y g](x) dy
    moving, other = (fp, g0) if variant == "l" else (gp, f0)
    if np.max(np.abs(moving.values.imag)) > 1e-14:
        raise SpecError("the translated factor must be real-valued")
    Fa = fractional_ft_radial(moving, m, spec.angle)
    rho, rw = gauss_legendre(n_rho, rho_max)
    th, thw = np.polynomial.legendre.leggauss(n_theta)
    th = (th + 1) * math.pi / 2
    thw = thw * math.pi / 2
    R, T = np.meshgrid(rho, th, indexing="ij")
    W = rw[:, None] * thw[None, :] * R ** (m - 1) * np.sin(T) ** (m - 2) * _sphere_area(m - 1)
    weighted = W * np.asarray(other(R), dtype=complex)
    out = np.empty(s_eval.shape, dtype=complex)
    for i, s in enumerate(s_eval):
        dist = np.sqrt(np.maximum(s * s + R * R - 2 * s * R * np.cos(T), 0.0))
        out[i] = np.sum(weighted * _translate_from(spec, Fa, s * s, R * R, dist))
    return out
