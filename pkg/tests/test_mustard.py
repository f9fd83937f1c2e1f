import numpy as np
import pytest

from cliffconv.clifford import Multivector, RootOfMinusOne, parse_root, planes_product
from cliffconv.gft import GftPlan, GridError, GridSpec, MultivectorField, generalized_translate, gft_forward
from cliffconv.mustard import (
    AXIS_TRIPLES,
    admissible_j,
    classical_convolve,
    mustard_convolve_direct,
    mustard_convolve_reversed,
    mustard_convolve_spectral,
    reflection_pairs,
    sign_c,
    tau_convolve,
    translate_closed_form,
)
from cliffconv.qft import mustard_q
from cliffconv.verify import standard_plan
from helpers import brute_convolve, rel


def test_enumeration_sizes():
    for m in (1, 2, 3):
        js = list(admissible_j(m))
        assert len(js) == 4**m
        assert all(tuple(j[:3, k]) in AXIS_TRIPLES and j[3, k] == 0 for j in js for k in range(m))
        assert len(list(reflection_pairs(m))) == 4**m


def test_sign_is_plus_minus_one():
    for j in admissible_j(2):
        for phi, gamma in reflection_pairs(2):
            assert sign_c(j, phi, gamma) in (-1, 1)


def test_classical_convolution_against_double_sum():
    rng = np.random.default_rng(0)
    grid = GridSpec((4, 3))
    f = MultivectorField.random(grid, rng, True)
    g = MultivectorField.random(grid, rng, True)
    assert rel(classical_convolve(f, g).data, brute_convolve(f.data, g.data)) < 1e-12


@pytest.mark.parametrize("m,n", [(1, 16), (2, 8), (3, 6)])
def test_direct_equals_spectral(m, n):
    rng = np.random.default_rng(m)
    grid = GridSpec.periodic(n, m)
    plan = standard_plan(grid)
    for _ in range(3):
        f = MultivectorField.random(grid, rng, True)
        g = MultivectorField.random(grid, rng, True)
        spec = mustard_convolve_spectral(plan, f, g)
        assert mustard_convolve_direct(plan, f, g).relative_gap(spec) < 1e-10


def test_literal_term_list_matches_grouped_route():
    rng = np.random.default_rng(1)
    grid = GridSpec((4, 6))
    mu = parse_root("0.6e1+0.8e2", 2)
    plan = GftPlan.from_roots([mu], [parse_root("e12", 2)], grid)
    f = MultivectorField.random(grid, rng, True)
    g = MultivectorField.random(grid, rng, True)
    lit = mustard_convolve_direct(plan, f, g, literal=True)
    assert lit.relative_gap(mustard_convolve_direct(plan, f, g)) < 1e-12
    assert lit.relative_gap(mustard_convolve_spectral(plan, f, g)) < 1e-10


def test_general_route_matches_quaternionic_formula():
    rng = np.random.default_rng(2)
    grid = GridSpec((6, 8))
    mu, nu = parse_root("e1", 2), parse_root("0.6e2+0.8e12", 2)
    plan = GftPlan.from_roots([mu], [nu], grid)
    f = MultivectorField.random(grid, rng, True)
    g = MultivectorField.random(grid, rng, True)
    assert mustard_convolve_direct(plan, f, g).relative_gap(mustard_q(mu, nu, f, g)) < 1e-10


def test_commutative_case_is_classical_convolution():
    # real coefficients in Cl(0,1) form the complex numbers; the product is the usual one
    rng = np.random.default_rng(3)
    grid = GridSpec.periodic(10, 1)
    plan = GftPlan.from_roots([RootOfMinusOne(Multivector.blade(1, 1))], [], grid)
    f = MultivectorField.random(grid, rng)
    g = MultivectorField.random(grid, rng)
    assert mustard_convolve_spectral(plan, f, g).relative_gap(classical_convolve(f, g)) < 1e-12


def test_reversed_product_swaps_arguments():
    rng = np.random.default_rng(4)
    grid = GridSpec.periodic(6, 2)
    plan = standard_plan(grid)
    f = MultivectorField.random(grid, rng, True)
    g = MultivectorField.random(grid, rng, True)
    assert mustard_convolve_reversed(plan, f, g).relative_gap(mustard_convolve_spectral(plan, g, f)) == 0


@pytest.mark.parametrize("m,n", [(1, 12), (2, 8), (3, 6)])
def test_translation_closed_form(m, n):
    rng = np.random.default_rng(5 + m)
    grid = GridSpec.periodic(n, m)
    plan = standard_plan(grid)
    f = MultivectorField.random(grid, rng, True)
    for _ in range(3):
        y = tuple(int(v) for v in rng.integers(-n, n, m))
        assert translate_closed_form(plan, f, y).relative_gap(generalized_translate(plan, f, y)) < 1e-10


def test_tau_convolution_routes():
    rng = np.random.default_rng(6)
    grid = GridSpec((4, 5))
    plan = GftPlan.from_roots([parse_root("e12", 2)], [parse_root("e1", 2)], grid)
    f = MultivectorField.random(grid, rng, True)
    g = MultivectorField.random(grid, rng, True)
    assert tau_convolve(plan, f, g).relative_gap(tau_convolve(plan, f, g, "sum")) < 1e-10


def test_tau_convolution_of_qft_is_classical():
    rng = np.random.default_rng(7)
    grid = GridSpec.periodic(8, 2)
    plan = standard_plan(grid)
    f = MultivectorField.random(grid, rng, True)
    g = MultivectorField.random(grid, rng, True)
    assert tau_convolve(plan, f, g).relative_gap(classical_convolve(f, g)) < 1e-12


def test_mustard_convolution_theorem():
    rng = np.random.default_rng(8)
    grid = GridSpec.periodic(6, 3)
    plan = standard_plan(grid)
    f = MultivectorField.random(grid, rng, True)
    g = MultivectorField.random(grid, rng, True)
    lhs = gft_forward(plan, mustard_convolve_spectral(plan, f, g))
    F, G = gft_forward(plan, f), gft_forward(plan, g)
    rhs = planes_product(F.data, G.data, 3) * grid.convolution_prefactor()
    assert rel(lhs.data, rhs) < 1e-12


def test_calibrated_gaussian_mustard_convolution():
    # a box of half-width 16 keeps the circular wrap of e^{-r^2/4} below rounding
    grid = GridSpec.calibrated(128, 2, 0.25)
    plan = standard_plan(grid)
    x1, x2 = grid.mesh()
    r2 = x1**2 + x2**2
    g = MultivectorField.from_scalar(grid, np.exp(-r2 / 2))
    want = MultivectorField.from_scalar(grid, np.pi * np.exp(-r2 / 4))
    assert mustard_convolve_spectral(plan, g, g).relative_gap(want) < 1e-10


def test_expansions_need_periodic_grids():
    grid = GridSpec.calibrated(8, 2, 0.5)
    plan = standard_plan(grid)
    z = MultivectorField.zeros(grid)
    with pytest.raises(GridError):
        mustard_convolve_direct(plan, z, z)
    with pytest.raises(GridError):
        translate_closed_form(plan, z, (1.0, 0.5))
    with pytest.raises(GridError):
        tau_convolve(plan, z, z)


def test_sign_rejects_inadmissible_index_arrays():
    j = np.zeros((4, 2), dtype=int)
    j[0, 0] = 1  # odd column sum
    with pytest.raises(ValueError):
        sign_c(j, (0, 0), (0, 0))
    with pytest.raises(ValueError):
        sign_c(np.zeros((3, 2), dtype=int), (0, 0), (0, 0))
