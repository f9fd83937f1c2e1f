import csv
import io
import math

import numpy as np
import pytest

from cliffconv import approach_a as aa
from cliffconv.clifford import Multivector, planes_product
from cliffconv.special import RadialProfile, TruncationError
from cliffconv.verify import acceptance_presets

RNG_POINTS = np.random.default_rng(0)
XS = RNG_POINTS.standard_normal((6, 4))
YS = RNG_POINTS.standard_normal((6, 4))


def gauss(r):
    return np.exp(-np.asarray(r) ** 2 / 2)


@pytest.mark.parametrize("angle", [math.pi / 2, math.pi / 3, -2.0])
def test_classical_kernel_is_the_chirped_exponential(angle):
    planes, _ = aa.kernel_planes(aa.classical(4, angle), XS, YS)
    chirp = np.exp(0.5j / math.tan(angle) * (np.sum(XS**2, 1) + np.sum(YS**2, 1)))
    want = chirp * np.exp(-1j * np.sum(XS * YS, 1) / math.sin(angle))
    assert np.max(np.abs(planes[0] - want)) < 1e-12
    assert np.max(np.abs(planes[1:])) == 0


def test_inverse_classical_kernel():
    planes, _ = aa.kernel_planes(aa.inverse_spec(aa.classical()), XS, YS)
    assert np.max(np.abs(planes[0] - np.exp(1j * np.sum(XS * YS, 1)))) < 1e-12


def test_classical_eigenvalues_are_powers_of_minus_i():
    spec = aa.classical()
    for j in range(4):
        for k in range(4):
            assert aa.eigenvalue_A(spec, "even", j, k) == pytest.approx((-1j) ** (2 * j + k), abs=1e-14)
            assert aa.eigenvalue_A(spec, "odd", j, k) == pytest.approx((-1j) ** (2 * j + 1 + k), abs=1e-14)


def test_rho_at_right_angle():
    assert aa.classical().rho == pytest.approx((2 * math.pi) ** -2, rel=1e-14)


def _hermite_planes(parity, j, k, pts):
    f0 = aa.hermite_radial(4, parity, j, k)(np.linalg.norm(pts, axis=-1))
    out = np.empty((16, len(pts)), dtype=complex)
    for i, p in enumerate(pts):
        mv = aa.monogenic(k, p)
        if parity == "odd":
            mv = Multivector.vector(p) * mv
        out[:, i] = f0[i] * mv.coeffs
    return out


@pytest.fixture(scope="module")
def hermite_nodes():
    # e^{-x^2/2}-weighted Gauss rule per axis; the Hermite functions carry that weight
    g, w = np.polynomial.hermite_e.hermegauss(12)
    pts = np.stack(np.meshgrid(g, g, g, g, indexing="ij"), -1).reshape(-1, 4)
    wts = np.prod(np.stack(np.meshgrid(w, w, w, w, indexing="ij"), -1).reshape(-1, 4), 1)
    return pts, wts * np.exp(np.sum(pts**2, 1) / 2)


@pytest.mark.parametrize("preset", ["clifford_minus", "fractional_cft"])
@pytest.mark.parametrize("parity,j,k", [("even", 0, 1), ("odd", 1, 0)])
def test_eigenvalues_by_direct_four_dimensional_quadrature(hermite_nodes, preset, parity, j, k):
    pts, wts = hermite_nodes
    spec = aa.preset(preset, angle=math.pi / 2, beta=math.pi / 4).truncated(40)
    f = _hermite_planes(parity, j, k, pts)
    y = np.array([[0.3, -0.5, 0.2, 0.4]])
    kern, _ = aa.kernel_planes(spec, pts, y[0])
    got = spec.rho * (planes_product(kern, f, 4) @ wts)
    want = aa.eigenvalue_A(spec, parity, j, k) * _hermite_planes(parity, j, k, y)[:, 0]
    assert np.linalg.norm(got - want) < 1e-8 * np.linalg.norm(want)


@pytest.mark.parametrize("spec", acceptance_presets(), ids=lambda s: s.name)
def test_radial_eigen_relation(spec):
    for parity in ("even", "odd"):
        for k in (0, 1):
            for j in range(4):
                f = RadialProfile.sample(aa.hermite_radial(4, parity, j, k))
                h = aa.radial_transform(spec, f, k, parity)
                ev = aa.eigenvalue_A(spec, parity, j, k)
                assert np.max(np.abs(h.values - ev * f.values)) < 1e-10


@pytest.mark.parametrize("spec", [aa.clifford_minus(), aa.fractional_cft(math.pi / 3, math.pi / 4),
                                  aa.classical(4, 1.0)], ids=lambda s: s.name)
def test_radial_round_trip_of_a_mixed_profile(spec):
    # (1 + r^2) e^{-r^2/2} mixes two Laguerre modes with different eigenvalues
    f = RadialProfile.sample(lambda r: (1 + r**2) * gauss(r))
    h = aa.radial_transform(spec, f)
    assert np.max(np.abs(h.values - aa.eigenvalue_A(spec, "even", 0, 0) * f.values)) > 1e-2
    back = aa.radial_transform(aa.inverse_spec(spec), h)
    assert np.max(np.abs(back.values - f.values)) < 1e-10


def test_inverse_eigenvalues_are_reciprocal():
    for spec in acceptance_presets():
        inv = aa.inverse_spec(spec)
        for p in ("even", "odd"):
            for j in range(3):
                for k in range(6):
                    assert aa.eigenvalue_A(spec, p, j, k) * aa.eigenvalue_A(inv, p, j, k) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("spec", [aa.clifford_minus(), aa.fractional_cft(math.pi / 3, math.pi / 4),
                                  aa.classical(4, math.pi / 3)], ids=lambda s: s.name)
def test_sphere_series_against_direct_quadrature(spec):
    x = np.array([0.5, -0.3, 0.8, 0.1])
    y = np.array([-0.2, 0.6, 0.1, 0.4])
    series = aa.sphere_integral_check(spec, 1.2, x, y, 40)
    quad = aa.sphere_integral_quadrature(spec, 1.2, x, y, 20)
    assert np.max(np.abs(quad.coeffs - series.lhs.coeffs)) < 1e-10
    assert series.gap < 1e-10 and series.wedge < 1e-12


def test_sphere_identity_on_random_arguments():
    rng = np.random.default_rng(1)
    for angle in (math.pi / 2, math.pi / 3):
        for spec in (aa.classical(4, angle), aa.fractional_cft(angle, 0.7)):
            for _ in range(10):
                x, y = rng.uniform(-1, 1, (2, 4))
                c = aa.sphere_integral_check(spec, rng.uniform(0, 2), x, y, 40)
                assert c.gap < 1e-6 and c.wedge < 1e-8


def test_translation_of_gaussian_is_a_shift():
    f0 = RadialProfile.sample(gauss)
    rng = np.random.default_rng(2)
    x = rng.uniform(-2, 2, (50, 4))
    y = np.array([1.0, -0.5, 0.3, 2.0])
    got = aa.translate_radial(aa.classical(), f0, y, x)
    assert np.max(np.abs(got - np.exp(-np.sum((x - y) ** 2, 1) / 2))) < 1e-10
    assert aa.translation_constant(aa.classical()) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("spec", [aa.classical(4, math.pi / 3), aa.fractional_cft(math.pi / 3, math.pi / 4)],
                         ids=lambda s: s.name)
def test_translation_routes_agree_off_the_right_angle(spec):
    f0 = RadialProfile.sample(gauss)
    x = np.array([[0.3, 0.2, -0.1, 0.5], [1.0, 0.0, 0.0, 0.0]])
    y = np.array([0.4, -0.2, 0.3, 0.1])
    a = aa.translate_radial(spec, f0, y, x)
    b = aa.translate_radial_series(spec, f0, y, x)
    assert np.max(np.abs(a - b)) < 1e-10


@pytest.mark.parametrize("variant", aa.VARIANTS)
def test_convolutions_of_gaussians(variant):
    # int_{R^4} e^{-|x-y|^2/2} e^{-|y|^2/2} dy = pi^2 e^{-|x|^2/4}
    s = np.linspace(0, 3, 5)
    got = aa.convolve_radial(aa.classical(), gauss, gauss, variant, s)
    assert np.max(np.abs(got - math.pi**2 * np.exp(-s**2 / 4))) < 1e-10


def test_spec_validation():
    with pytest.raises(aa.SpecError):
        aa.classical(m=2)
    with pytest.raises(aa.SpecError):
        aa.classical(angle=0.0)
    with pytest.raises(aa.SpecError):
        aa.preset("nope")
    with pytest.raises(aa.SpecError):
        aa.preset("clifford_minus", angle=1.0)
    with pytest.raises(aa.SpecError):
        aa.preset("fractional_cft", angle=1.0)
    with pytest.raises(aa.SpecError):
        aa.KernelSpecA(4, 1.0, np.ones(4), np.ones(4))
    with pytest.raises(aa.SpecError):
        aa.classical().truncated(500)
    with pytest.raises(aa.SpecError):
        aa.monogenic(2, [0, 0, 0, 0])
    with pytest.raises(aa.SpecError):
        aa.convolve_radial(aa.classical(), gauss, gauss, "x", [0.0])
    with pytest.raises(aa.SpecError):
        aa.kernel_planes(aa.classical(), np.zeros(3), np.zeros(3))


def test_non_invertible_spec_is_rejected():
    a = np.array([1.0, 0.0, 1.0])
    with pytest.raises(aa.SpecError):
        aa.inverse_spec(aa.KernelSpecA(4, 1.0, a, np.zeros(3)))


def test_truncation_is_reported():
    with pytest.raises(TruncationError):
        aa.kernel_planes(aa.classical(kmax=10), np.array([5.0, 0, 0, 0]), np.array([5.0, 0, 0, 0]))
    slow = RadialProfile.sample(lambda r: 1 / (1 + r**2))
    with pytest.raises(TruncationError):
        aa.radial_transform(aa.classical(), slow)


def test_coefficient_csv_parses_back():
    spec = aa.clifford_minus(kmax=8)
    rows = list(csv.DictReader(io.StringIO(aa.coefficients_csv(spec))))
    assert len(rows) == 9
    for k, row in enumerate(rows):
        assert int(row["k"]) == k
        assert complex(float(row["re_alpha"]), float(row["im_alpha"])) == spec.alpha_k[k]
        assert complex(float(row["re_beta"]), float(row["im_beta"])) == spec.beta_k[k]
