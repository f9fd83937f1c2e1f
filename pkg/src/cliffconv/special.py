"""Scalar special functions and radial quadrature.

Bessel functions come from :mod:`scipy.special`; the orthogonal polynomial
families are evaluated by their three-term recurrences.  Radial integrals
use Gauss-Legendre nodes on ``[0, r_max]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gamma

import numpy as np
from scipy import special as sp

R_MAX = 12.0
N_NODES = 512
TAIL_TOL = 1e-10


class TruncationError(ValueError):
    """A radial integrand has not decayed by the end of the quadrature range."""


def bessel_j(nu: float, z):
    """Bessel function of the first kind ``J_nu(z)`` for ``nu >= 0``."""
    if nu == 0:
        return sp.j0(z)
    if nu == 1:
        return sp.j1(z)
    return sp.jv(nu, z)


def bessel_ratio(order: float, power: float, z):
    """``z**(-power) * J_order(z)`` with the removable singularity at 0 filled in.

    ``order - power`` must be a nonnegative integer ``k``; the function is then
    entire with parity ``(-1)**k``, which is used for negative ``z``.
    """
    k = order - power
    if k < 0 or abs(k - round(k)) > 1e-12:
        raise ValueError("order - power must be a nonnegative integer")
    k = int(round(k))
    z = np.asarray(z, dtype=float)
    a = np.abs(z)
    small = a < 1e-8
    safe = np.where(small, 1.0, a)
    out = bessel_j(order, safe) / safe**power
    # leading term of the ascending series
    limit = a**k / (2.0**order * gamma(order + 1)) if k else np.full_like(a, 1.0 / (2.0**order * gamma(order + 1)))
    out = np.where(small, limit, out)
    if k % 2:
        out = np.where(z < 0, -out, out)
    return out if out.ndim else float(out)


def gegenbauer(k: int, lam: float, w):
    """Gegenbauer polynomial ``C_k^lam(w)`` by upward recurrence."""
    w = np.asarray(w, dtype=float)
    prev = np.ones_like(w)
    if k == 0:
        return prev if prev.ndim else float(prev)
    cur = 2 * lam * w
    for n in range(1, k):
        prev, cur = cur, (2 * (n + lam) * w * cur - (n + 2 * lam - 1) * prev) / (n + 1)
    return cur if cur.ndim else float(cur)


def gegenbauer_table(kmax: int, lam: float, w) -> np.ndarray:
    """All ``C_k^lam(w)`` for ``k = 0..kmax`` stacked on a new leading axis."""
    w = np.asarray(w, dtype=float)
    out = np.empty((kmax + 1,) + w.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 2 * lam * w
    for n in range(1, kmax):
        out[n + 1] = (2 * (n + lam) * w * out[n] - (n + 2 * lam - 1) * out[n - 1]) / (n + 1)
    return out


def laguerre(j: int, alpha: float, t):
    """Generalized Laguerre polynomial ``L_j^alpha(t)``."""
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    if j == 0:
        return prev if prev.ndim else float(prev)
    cur = 1 + alpha - t
    for n in range(1, j):
        prev, cur = cur, ((2 * n + 1 + alpha - t) * cur - (n + alpha) * prev) / (n + 1)
    return cur if cur.ndim else float(cur)


def hermite_fn(k: int, x):
    """``psi_k(x) = (x - d/dx)**k exp(-x**2/2)``, i.e. ``H_k(x) exp(-x**2/2)``.

    ``H_k`` are the physicists' Hermite polynomials (``H_2 = 4x^2 - 2``); no
    normalization is applied.
    """
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    cur = 2 * x
    if k == 0:
        cur = prev
    for n in range(1, k):
        prev, cur = cur, 2 * x * cur - 2 * n * prev
    out = cur * np.exp(-x * x / 2)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class RadialProfile:
    """Samples ``values[i] = f0(r_nodes[i])`` of a radial function with quadrature weights."""

    r_nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r_nodes, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        w = np.asarray(self.weights, dtype=float)
        if not (r.shape == v.shape == w.shape) or r.ndim != 1:
            raise ValueError("r_nodes, values and weights must be 1-D and of equal length")
        if np.any(r < 0) or np.any(np.diff(r) <= 0):
            raise ValueError("r_nodes must be nonnegative and strictly increasing")
        if np.any(w <= 0):
            raise ValueError("quadrature weights must be positive")
        object.__setattr__(self, "r_nodes", r)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", w)

    @classmethod
    def sample(cls, f0, r_max: float = R_MAX, n: int = N_NODES) -> RadialProfile:
        r, w = gauss_legendre(n, r_max)
        return cls(r, np.asarray(f0(r), dtype=complex) * np.ones_like(r), w)

    def with_values(self, values) -> RadialProfile:
        return RadialProfile(self.r_nodes, values, self.weights)

    def integrate(self, integrand) -> complex:
        return complex(np.sum(self.weights * integrand))


@lru_cache(maxsize=None)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def gauss_legendre(n: int, r_max: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = _leggauss(n)
    return (x + 1) * r_max / 2, w * r_max / 2


def tail_estimate(f: RadialProfile, power: float) -> float:
    """Magnitude of ``|f(r)| r**power`` over the outer 5% of the nodes."""
    r = f.r_nodes
    outer = r >= 0.95 * r[-1]
    return float(np.max(np.abs(f.values[outer]) * r[outer] ** power))


def hankel_transform(f: RadialProfile, lam: float, s_nodes=None) -> RadialProfile:
    """``H_lam f(s) = int_0^inf f(r) J_lam(rs)/(rs)**lam r**(2 lam + 1) dr``.

    With ``s_nodes=None`` the output lives on the input's own nodes and
    weights, so the transform can be applied twice.  Otherwise the output
    carries trapezoid weights for the given (increasing) nodes.
    """
    if s_nodes is None:
        s, weights = f.r_nodes, f.weights
    else:
        s = np.asarray(s_nodes, dtype=float)
        weights = _trapezoid_weights(s)
    return RadialProfile(s, hankel_eval(f, lam, s), weights)


def hankel_eval(f: RadialProfile, lam: float, s) -> np.ndarray:
    """Hankel transform evaluated at arbitrary radii ``s`` (any shape)."""
    if tail_estimate(f, 2 * lam + 1) > TAIL_TOL:
        raise TruncationError(
            f"profile has not decayed by r = {f.r_nodes[-1]:g}; Hankel quadrature would be truncated"
        )
    s = np.asarray(s, dtype=float)
    flat = s.reshape(-1)
    g = f.weights * f.values * f.r_nodes ** (2 * lam + 1)
    out = np.empty(flat.shape, dtype=complex)
    step = max(1, 2_000_000 // f.r_nodes.size)
    for start in range(0, flat.size, step):
        chunk = flat[start:start + step]
        out[start:start + step] = bessel_ratio(lam, lam, np.outer(chunk, f.r_nodes)) @ g
    return out.reshape(s.shape)


def _trapezoid_weights(s: np.ndarray) -> np.ndarray:
    if s.size < 2:
        return np.ones_like(s)
    d = np.diff(s)
    w = np.empty_like(s)
    w[0] = d[0] / 2
    w[-1] = d[-1] / 2
    w[1:-1] = (d[:-1] + d[1:]) / 2
    return w
