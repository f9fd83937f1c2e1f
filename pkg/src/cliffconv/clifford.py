"""Dense arithmetic in the Clifford algebra Cl(0,m).

A multivector stores ``2**m`` complex coefficients indexed by blade bitmask:
bit ``k`` of the index is set when generator ``e_{k+1}`` is present, and
blades are taken in ascending generator order, so index ``0b011`` is
``e1 e2`` and never ``e2 e1``.  Every generator squares to ``-1``.

Coefficient *planes* (arrays of shape ``(2**m, ...)``) are used for fields;
the helpers :func:`planes_product`, :func:`apply_left` and
:func:`apply_right` act on them pointwise.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 8
ROOT_TOL = 1e-12


class CliffordError(ValueError):
    """Raised on dimension mismatches and invalid algebra elements."""


def _check_dim(m: int) -> int:
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= MAX_DIM:
        raise CliffordError(f"algebra dimension must be an integer in [1, {MAX_DIM}], got {m!r}")
    return int(m)


def blade_sign(a: int, b: int) -> int:
    """Sign of ``e_a e_b = sign * e_{a^b}`` for blade bitmasks ``a``, ``b``."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    # one factor -1 per annihilated generator (e_i^2 = -1)
    swaps += bin(a & b).count("1")
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def product_table(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(index, sign)`` arrays with ``e_a e_b = sign[a, b] e_{index[a, b]}``."""
    m = _check_dim(m)
    n = 1 << m
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    index = a ^ b
    sign = np.array([[blade_sign(i, j) for j in range(n)] for i in range(n)], dtype=float)
    index.setflags(write=False)
    sign.setflags(write=False)
    return index, sign


@lru_cache(maxsize=None)
def grades(m: int) -> np.ndarray:
    g = np.array([bin(b).count("1") for b in range(1 << _check_dim(m))])
    g.setflags(write=False)
    return g


def blade_name(b: int) -> str:
    if b == 0:
        return "1"
    return "e" + "".join(str(k + 1) for k in range(MAX_DIM) if b >> k & 1)


class Multivector:
    """Immutable element of Cl(0,m) with complex coefficients."""

    __slots__ = ("m", "coeffs")
    __array_priority__ = 20  # keep numpy scalars from broadcasting over us

    def __init__(self, m: int, coeffs: Iterable[complex] | np.ndarray):
        m = _check_dim(m)
        c = np.array(coeffs, dtype=complex).reshape(-1)
        if c.size != 1 << m:
            raise CliffordError(f"Cl(0,{m}) needs {1 << m} coefficients, got {c.size}")
        c.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- constructors ----------------------------------------------------
    @classmethod
    def scalar(cls, m: int, value: complex = 1.0) -> Multivector:
        c = np.zeros(1 << _check_dim(m), dtype=complex)
        c[0] = value
        return cls(m, c)

    @classmethod
    def zero(cls, m: int) -> Multivector:
        return cls(m, np.zeros(1 << _check_dim(m)))

    @classmethod
    def blade(cls, m: int, *generators: int) -> Multivector:
        """Product ``e_{g1} e_{g2} ...`` of 1-based generators, in the given order."""
        out = cls.scalar(m)
        for g in generators:
            if not 1 <= g <= m:
                raise CliffordError(f"generator e{g} does not exist in Cl(0,{m})")
            c = np.zeros(1 << m, dtype=complex)
            c[1 << (g - 1)] = 1.0
            out = out * cls(m, c)
        return out

    @classmethod
    def vector(cls, coords: Sequence[complex]) -> Multivector:
        m = len(coords)
        c = np.zeros(1 << _check_dim(m), dtype=complex)
        for k, x in enumerate(coords):
            c[1 << k] = x
        return cls(m, c)

    # -- structure -------------------------------------------------------
    @property
    def scalar_part(self) -> complex:
        return complex(self.coeffs[0])

    def grade(self, k: int) -> Multivector:
        return Multivector(self.m, np.where(grades(self.m) == k, self.coeffs, 0))

    def is_grade(self, k: int, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs[grades(self.m) != k]) <= tol))

    def left_matrix(self) -> np.ndarray:
        """Matrix ``L`` with ``(self * x).coeffs == L @ x.coeffs``."""
        return left_matrix(self.m, self.coeffs)

    def right_matrix(self) -> np.ndarray:
        """Matrix ``R`` with ``(x * self).coeffs == R @ x.coeffs``."""
        return right_matrix(self.m, self.coeffs)

    def inverse(self) -> Multivector:
        return invert(self)

    def allclose(self, other: Multivector | complex, atol: float = 1e-12) -> bool:
        other = _coerce(other, self.m)
        return bool(np.all(np.abs(self.coeffs - other.coeffs) <= atol))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other, self.m)
        return Multivector(self.m, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.m)
        return Multivector(self.m, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return _coerce(other, self.m) - self

    def __neg__(self):
        return Multivector(self.m, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if np.isscalar(other):
            return Multivector(self.m, self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Multivector(self.m, self.coeffs * other)
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return Multivector(self.m, self.coeffs / other)
        return NotImplemented

    def __pow__(self, n: int) -> Multivector:
        if n < 0:
            return invert(self) ** (-n)
        out = Multivector.scalar(self.m)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.m == other.m and bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self) -> str:
        terms = []
        for b, c in enumerate(self.coeffs):
            if c == 0:
                continue
            v = c.real if c.imag == 0 else c
            terms.append(f"{v:g}" if b == 0 else f"{v:g}*{blade_name(b)}")
        return f"Multivector(m={self.m}, {' + '.join(terms) or '0'})"

    # -- serialization ---------------------------------------------------
    def to_json(self) -> str:
        return json.dumps({"m": self.m, "coeffs": [[c.real, c.imag] for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> Multivector:
        d = json.loads(text)
        return cls(d["m"], [complex(re_, im) for re_, im in d["coeffs"]])


def _coerce(x, m: int) -> Multivector:
    if isinstance(x, Multivector):
        if x.m != m:
            raise CliffordError(f"dimension mismatch: Cl(0,{m}) vs Cl(0,{x.m})")
        return x
    if np.isscalar(x):
        return Multivector.scalar(m, x)
    raise TypeError(f"cannot combine Multivector with {type(x).__name__}")


def left_matrix(m: int, coeffs: np.ndarray) -> np.ndarray:
    index, sign = product_table(m)
    n = 1 << m
    L = np.zeros((n, n), dtype=complex)
    for a in np.flatnonzero(coeffs):
        L[index[a], np.arange(n)] += sign[a] * coeffs[a]
    return L


def right_matrix(m: int, coeffs: np.ndarray) -> np.ndarray:
    index, sign = product_table(m)
    n = 1 << m
    R = np.zeros((n, n), dtype=complex)
    for a in np.flatnonzero(coeffs):
        R[index[:, a], np.arange(n)] += sign[:, a] * coeffs[a]
    return R


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    if a.m != b.m:
        raise CliffordError(f"dimension mismatch: Cl(0,{a.m}) vs Cl(0,{b.m})")
    return Multivector(a.m, left_matrix(a.m, a.coeffs) @ b.coeffs)


def wedge(x: Multivector, y: Multivector) -> Multivector:
    """Outer product of two vectors, i.e. the grade-2 part of ``x y``."""
    for v in (x, y):
        if not v.is_grade(1):
            raise CliffordError(f"wedge expects pure vectors, got {v!r}")
    return geometric_product(x, y).grade(2)


def inner(x: Sequence[complex], y: Sequence[complex]) -> complex:
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape or x.ndim != 1:
        raise CliffordError(f"inner product needs equal-length vectors, got {x.shape} and {y.shape}")
    return complex(np.sum(x * y))


def invert(b: Multivector) -> Multivector:
    L = left_matrix(b.m, b.coeffs)
    one = np.zeros(1 << b.m, dtype=complex)
    one[0] = 1.0
    if np.linalg.cond(L) > 1e12:
        raise CliffordError(f"multivector is not invertible: {b!r}")
    inv = Multivector(b.m, np.linalg.solve(L, one))
    if not (inv * b).allclose(1.0, 1e-10):
        raise CliffordError(f"multivector has no two-sided inverse: {b!r}")
    return inv


def comm_split(a: Multivector, b: Multivector) -> tuple[Multivector, Multivector]:
    """Parts of ``a`` that commute and anticommute with ``b``."""
    conj = invert(b) * a * b
    return (a + conj) / 2, (a - conj) / 2


@dataclass(frozen=True)
class RootOfMinusOne:
    """A multivector ``i`` with ``i*i == -1``, checked once at construction."""

    value: Multivector

    def __post_init__(self):
        sq = self.value * self.value
        err = np.abs(sq.coeffs - Multivector.scalar(self.value.m, -1.0).coeffs)
        if err.max() > ROOT_TOL:
            raise CliffordError(
                f"{self.value!r} is not a square root of -1 (max deviation {err.max():.3g})"
            )

    @property
    def m(self) -> int:
        return self.value.m

    def __neg__(self) -> RootOfMinusOne:
        return RootOfMinusOne(-self.value)

    def exp(self, theta: float) -> Multivector:
        return exp_root(self, theta)


def exp_root(i: RootOfMinusOne, theta: float) -> Multivector:
    return math.cos(theta) + math.sin(theta) * i.value


# -- coefficient planes --------------------------------------------------

def planes_product(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    """Pointwise geometric product of two coefficient-plane arrays."""
    index, sign = product_table(m)
    n = 1 << m
    if A.shape[0] != n or B.shape[0] != n:
        raise CliffordError(f"expected {n} coefficient planes, got {A.shape[0]} and {B.shape[0]}")
    out = np.zeros(np.broadcast_shapes(A.shape, B.shape), dtype=complex)
    for a in range(n):
        Aa = A[a]
        if not Aa.any():
            continue
        for b in range(n):
            if sign[a, b] > 0:
                out[index[a, b]] += Aa * B[b]
            else:
                out[index[a, b]] -= Aa * B[b]
    return out


def apply_left(mv: Multivector, planes: np.ndarray) -> np.ndarray:
    """``mv * f(x)`` for every sample of a coefficient-plane array."""
    return np.tensordot(mv.left_matrix(), planes, axes=(1, 0))


def apply_right(planes: np.ndarray, mv: Multivector) -> np.ndarray:
    """``f(x) * mv`` for every sample of a coefficient-plane array."""
    return np.tensordot(mv.right_matrix(), planes, axes=(1, 0))


# -- root expressions ----------------------------------------------------

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<num>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*(?:e(?P<gens>\d+))?\s*"
)


def parse_multivector(expr: str, m: int) -> Multivector:
    """Parse expressions such as ``e12``, ``0.6e1+0.8e2`` or ``-e23``.

    A number written directly before ``e`` is a coefficient, not an exponent:
    ``0.6e1`` means ``0.6 * e1``.  Generator digits are multiplied in the
    order written, so ``e21 == -e12``.
    """
    m = _check_dim(m)
    out = Multivector.zero(m)
    pos = 0
    text = expr.strip()
    if not text:
        raise CliffordError("empty multivector expression")
    while pos < len(text):
        match = _TERM.match(text, pos)
        if match is None or match.end() == pos or not (match["num"] or match["gens"]):
            raise CliffordError(f"cannot parse {expr!r} near position {pos}")
        coef = float(match["num"]) if match["num"] else 1.0
        if match["sign"] == "-":
            coef = -coef
        gens = [int(d) for d in match["gens"]] if match["gens"] else []
        out = out + coef * Multivector.blade(m, *gens)
        pos = match.end()
        if pos < len(text) and text[pos] not in "+-":
            raise CliffordError(f"expected '+' or '-' in {expr!r} at position {pos}")
    return out


def parse_root(expr: str, m: int) -> RootOfMinusOne:
    return RootOfMinusOne(parse_multivector(expr, m))
