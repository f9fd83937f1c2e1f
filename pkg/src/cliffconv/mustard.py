"""Mustard-type and translation-type convolutions for a two-sided GFT.

Every product here is checked two ways: by its spectral definition and by an
expansion into classical (componentwise) convolutions of reflected fields.
The expansions are exact on periodic grids, where reflection ``x -> -x`` is
index negation modulo ``N``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np
import scipy.fft as sfft

from .clifford import Multivector, planes_product
from .gft import (
    PERIODIC,
    GftPlan,
    GridError,
    MultivectorField,
    generalized_translate,
    gft_forward,
    gft_inverse,
    reflect_planes,
)

# admissible (j1, j2, j3) per axis: the bits sum to 0 or 2
AXIS_TRIPLES = ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))


def admissible_j(m: int) -> Iterator[np.ndarray]:
    """All ``4 x m`` bit arrays of the admissible set, row 4 identically zero."""
    for combo in itertools.product(AXIS_TRIPLES, repeat=m):
        j = np.zeros((4, m), dtype=int)
        j[:3] = np.array(combo, dtype=int).T
        yield j


def reflection_pairs(m: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    for phi in itertools.product((0, 1), repeat=m):
        for gamma in itertools.product((0, 1), repeat=m):
            yield phi, gamma


def _check_j(j: np.ndarray) -> np.ndarray:
    j = np.asarray(j, dtype=int)
    if j.ndim != 2 or j.shape[0] != 4:
        raise ValueError(f"j must have shape (4, m), got {j.shape}")
    if np.any((j != 0) & (j != 1)) or np.any(j[3] != 0):
        raise ValueError("j must be a bit array with a zero fourth row")
    if np.any(j[:3].sum(axis=0) % 2):
        raise ValueError(f"inadmissible j: column sums {j[:3].sum(axis=0).tolist()} must be 0 or 2")
    return j


def sign_c(j: np.ndarray, phi: Sequence[int], gamma: Sequence[int]) -> int:
    """Sign of the ``(j, phi, gamma)`` term in the classical-convolution expansion."""
    j = _check_j(j)
    out = 1
    for k in range(j.shape[1]):
        row = 2 * phi[k] + gamma[k]  # zero-based row 2*phi + gamma + 1
        delta = 1 if j[:3, k].sum() == 0 else 0
        if ((j[row, k] + 1) * (delta - 1)) % 2:
            out = -out
    return out


def _ordered_product(m: int, factors) -> Multivector:
    out = Multivector.scalar(m)
    for f in factors:
        out = out * f
    return out


def _power(root: Multivector, bit: int, negate: bool) -> list[Multivector]:
    if not bit:
        return []
    return [-root if negate else root]


def _factors(plan: GftPlan, j: np.ndarray):
    """The four multivector factors ``(A, B, C, D)`` attached to ``j``.

    ``A f B`` and ``C g D`` are the two operands of the classical convolution:
    ``A = prod_{mu..1} i^j1 prod_{1..mu} (-i)^j2``, ``B = prod_{mu+1..m} (-i)^j2``,
    ``C = prod_{1..mu} (-i)^j3`` and
    ``D = prod_{mu+1..m} (-i)^j3 prod_{m..mu+1} i^j1``.
    """
    m = plan.grid.m
    roots = [r.value for r in plan.axis_roots()]
    mu = plan.split
    lo, hi = range(mu), range(mu, m)
    A = _ordered_product(m, [x for k in reversed(lo) for x in _power(roots[k], j[0, k], False)]
                         + [x for k in lo for x in _power(roots[k], j[1, k], True)])
    B = _ordered_product(m, [x for k in hi for x in _power(roots[k], j[1, k], True)])
    C = _ordered_product(m, [x for k in lo for x in _power(roots[k], j[2, k], True)])
    D = _ordered_product(m, [x for k in hi for x in _power(roots[k], j[2, k], True)]
                         + [x for k in reversed(hi) for x in _power(roots[k], j[0, k], False)])
    return A, B, C, D


def _require_periodic(*fields: MultivectorField) -> None:
    for f in fields:
        if f.grid.mode != PERIODIC:
            raise GridError("the classical-convolution expansions are exact only on periodic grids")


def _check_grids(plan: GftPlan, f: MultivectorField, g: MultivectorField) -> None:
    if not (plan.grid == f.grid == g.grid):
        raise GridError("plan and both fields must share one grid")


def _fft(data: np.ndarray) -> np.ndarray:
    return sfft.fftn(data, axes=tuple(range(1, data.ndim)))


def _ifft(data: np.ndarray) -> np.ndarray:
    return sfft.ifftn(data, axes=tuple(range(1, data.ndim)))


def classical_convolve(f: MultivectorField, g: MultivectorField) -> MultivectorField:
    """``(f * g)(x) = sum_y f(y) g(x - y)`` with the geometric product, circularly.

    On calibrated grids the sum is weighted by the sample volume, so it
    approximates the integral.
    """
    f._check(g)
    data = _ifft(planes_product(_fft(f.data), _fft(g.data), f.m))
    return MultivectorField(f.grid, data * f.grid.volume_element())


def mustard_convolve_spectral(plan: GftPlan, f: MultivectorField, g: MultivectorField,
                              method: str = "fast") -> MultivectorField:
    """``prefactor * F^-1(F(f) F(g))`` with the pointwise geometric product."""
    _check_grids(plan, f, g)
    F, G = gft_forward(plan, f, method), gft_forward(plan, g, method)
    prod = MultivectorField(plan.grid, planes_product(F.data, G.data, plan.grid.m))
    return gft_inverse(plan, prod, method).scale(plan.grid.convolution_prefactor())


def mustard_convolve_reversed(plan: GftPlan, f: MultivectorField, g: MultivectorField,
                              method: str = "fast") -> MultivectorField:
    """The mirrored product ``f *_2 g := g *_1 f``."""
    return mustard_convolve_spectral(plan, g, f, method)


def mustard_convolve_direct(plan: GftPlan, f: MultivectorField, g: MultivectorField,
                            literal: bool = False) -> MultivectorField:
    """Expansion of the Mustard product into ``16**m`` classical convolutions.

    With ``literal=True`` every term is formed and convolved separately (slow,
    meant for small grids).  The default groups terms in the Fourier domain:
    the DFT commutes with reflections and with constant left/right factors,
    so for each ``(j, phi)`` the ``gamma`` sum collapses before the product.
    """
    _check_grids(plan, f, g)
    _require_periodic(f, g)
    m = plan.grid.m
    if literal:
        total = MultivectorField.zeros(plan.grid)
        for j in admissible_j(m):
            A, B, C, D = _factors(plan, j)
            for phi, gamma in reflection_pairs(m):
                left = f.reflect(phi).left_mul(A).right_mul(B)
                right = g.reflect(gamma).left_mul(C).right_mul(D)
                total = total + classical_convolve(left, right).scale(sign_c(j, phi, gamma))
        return total.scale(4.0 ** -m)

    fh, gh = _fft(f.data), _fft(g.data)
    bits = list(itertools.product((0, 1), repeat=m))
    f_ref = {phi: reflect_planes(fh, phi) for phi in bits}
    g_stack = np.stack([reflect_planes(gh, gamma) for gamma in bits])
    acc = np.zeros_like(fh)
    for j in admissible_j(m):
        A, B, C, D = _factors(plan, j)
        left = A.left_matrix() @ B.right_matrix()
        right = C.left_matrix() @ D.right_matrix()
        for phi in bits:
            a = np.tensordot(left, f_ref[phi], axes=(1, 0))
            signs = np.array([sign_c(j, phi, gamma) for gamma in bits], dtype=float)
            b = np.tensordot(right, np.tensordot(signs, g_stack, axes=1), axes=(1, 0))
            acc += planes_product(a, b, m)
    return MultivectorField(plan.grid, _ifft(acc) * 4.0 ** -m)


# -- generalized translation ---------------------------------------------

def _translation_factors(plan: GftPlan, j: np.ndarray) -> tuple[Multivector, Multivector]:
    """``L_j`` and ``R_j`` sandwiching the classical translate of ``f``."""
    m = plan.grid.m
    roots = [r.value for r in plan.axis_roots()]
    mu = plan.split
    lo, hi = range(mu), range(mu, m)
    L = _ordered_product(m, [x for k in reversed(lo) for x in _power(roots[k], j[0, k], False)]
                         + [x for k in lo for x in _power(roots[k], j[1, k], True)]
                         + [x for k in lo for x in _power(roots[k], j[2, k], True)])
    R = _ordered_product(m, [x for k in hi for x in _power(roots[k], j[2, k], True)]
                         + [x for k in hi for x in _power(roots[k], j[1, k], True)]
                         + [x for k in reversed(hi) for x in _power(roots[k], j[0, k], False)])
    return L, R


@lru_cache(maxsize=64)
def _sandwich_maps_cached(key):
    plan = key[0]
    m = plan.grid.m
    maps = {}
    terms = [(j, *_translation_factors(plan, j)) for j in admissible_j(m)]
    for phi, gamma in reflection_pairs(m):
        M = np.zeros((1 << m, 1 << m), dtype=complex)
        for j, L, R in terms:
            M += sign_c(j, phi, gamma) * (L.left_matrix() @ R.right_matrix())
        maps[phi, gamma] = M * 4.0 ** -m
    return maps


class _PlanKey(tuple):
    """Hashable wrapper keyed on object identity of the plan."""

    def __hash__(self):
        return id(self[0])

    def __eq__(self, other):
        return isinstance(other, _PlanKey) and self[0] is other[0]


def sandwich_maps(plan: GftPlan) -> dict:
    """``4**-m sum_j c L_j (.) R_j`` as a coefficient matrix for every ``(phi, gamma)``."""
    return _sandwich_maps_cached(_PlanKey((plan,)))


def translate_closed_form(plan: GftPlan, f: MultivectorField, y: Sequence[float]) -> MultivectorField:
    """Generalized translation as a signed sum of reflected classical shifts."""
    if plan.grid != f.grid:
        raise GridError("plan and field grids differ")
    _require_periodic(f)
    offsets = plan.grid.offsets(y)
    out = np.zeros_like(f.data)
    for (phi, gamma), M in sandwich_maps(plan).items():
        shift = [(-s if p else s) for s, p in zip(offsets, phi)]
        moved = f.reflect(gamma).shift(shift).data
        out += np.tensordot(M, moved, axes=(1, 0))
    return MultivectorField(f.grid, out)


def tau_convolve(plan: GftPlan, f: MultivectorField, g: MultivectorField,
                 route: str = "closed") -> MultivectorField:
    """``(f *tau g)(x) = sum_y f(y) [tau_y g](x)``.

    ``route="closed"`` uses the classical-convolution expansion;
    ``route="sum"`` literally sums spectrally translated copies of ``g`` over
    every grid point ``y`` (``prod N`` inverse transforms).
    """
    _check_grids(plan, f, g)
    _require_periodic(f, g)
    m = plan.grid.m
    if route == "closed":
        fh, gh = _fft(f.data), _fft(g.data)
        acc = np.zeros_like(fh)
        for phi, gamma in reflection_pairs(m):
            acc += _tau_term(plan, reflect_planes(fh, phi), reflect_planes(gh, gamma), phi, gamma)
        return MultivectorField(plan.grid, _ifft(acc))
    if route == "sum":
        out = np.zeros_like(f.data)
        flat = f.data.reshape(f.data.shape[0], -1)
        for idx, y in enumerate(itertools.product(*(range(n) for n in plan.grid.sizes))):
            coeff = flat[:, idx]
            if not np.any(coeff):
                continue
            moved = generalized_translate(plan, g, y).data
            out += planes_product(coeff.reshape((-1,) + (1,) * m), moved, m)
        return MultivectorField(plan.grid, out)
    raise ValueError(f"unknown route {route!r}")


def _tau_term(plan, fh_phi, gh_gamma, phi, gamma):
    m = plan.grid.m
    acc = np.zeros_like(fh_phi)
    for j in admissible_j(m):
        c = sign_c(j, phi, gamma)
        L, R = _translation_factors(plan, j)
        a = np.tensordot(L.right_matrix(), fh_phi, axes=(1, 0))
        b = np.tensordot(R.right_matrix(), gh_gamma, axes=(1, 0))
        acc += c * planes_product(a, b, m)
    return acc * 4.0 ** -m
