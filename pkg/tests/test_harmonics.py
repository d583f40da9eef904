"""Tests for spherical-harmonic construction, norms, and nodal sets."""

import math

import numpy as np
import pytest
import scipy.special

from invsqhardy.harmonics import (
    eigenvalue_of_degree,
    evaluate,
    gegenbauer,
    harmonicity_residual,
    homogeneous_poly,
    monomial_sphere_integral,
    on_nodal_set,
    planar,
    product,
    sample_off_nodal,
    solid_harmonic,
    stencil_noise_floor,
    zonal,
)
from invsqhardy.quadrature import integrate_sphere_mc, sphere_surface_area

RE_Z4_3D = [((4, 0, 0), 1.0), ((2, 2, 0), -6.0), ((0, 4, 0), 1.0)]


def zonal_norm_sq_closed(dimension, degree):
    """Closed-form L2(S^(N-1)) norm of C_l^((N-2)/2)(omega_1), N >= 3.

    Classical Gegenbauer orthogonality weight integral times the area of
    the equatorial sphere S^(N-2); an oracle independent of the package's
    quadrature path.
    """
    alpha = 0.5 * (dimension - 2)
    weight = (math.pi * 2.0 ** (1.0 - 2.0 * alpha)
              * math.gamma(degree + 2.0 * alpha)
              / (math.factorial(degree) * (degree + alpha)
                 * math.gamma(alpha) ** 2))
    return sphere_surface_area(dimension - 1) * weight


# ---------------------------------------------------------------------------
# eigenvalues

def test_eigenvalue_examples():
    assert eigenvalue_of_degree(3, 0) == 0
    assert eigenvalue_of_degree(3, 1) == 2
    assert eigenvalue_of_degree(4, 4) == 24
    assert eigenvalue_of_degree(2, 5) == 25


def test_eigenvalue_monotone_and_zero_iff_degree_zero():
    for n in range(2, 9):
        values = [eigenvalue_of_degree(n, l) for l in range(10)]
        assert values[0] == 0
        assert all(b > a for a, b in zip(values, values[1:]))
        assert all(v > 0 for v in values[1:])


def test_eigenvalue_domain_errors():
    with pytest.raises(ValueError):
        eigenvalue_of_degree(1, 0)
    with pytest.raises(ValueError):
        eigenvalue_of_degree(3, -1)


# ---------------------------------------------------------------------------
# Gegenbauer recurrence

def test_gegenbauer_against_scipy():
    t = np.linspace(-1.0, 1.0, 41)
    for alpha in (0.5, 1.0, 1.5, 2.5):
        for degree in range(9):
            ours = gegenbauer(degree, alpha, t)
            ref = scipy.special.eval_gegenbauer(degree, alpha, t)
            scale = max(1.0, float(np.max(np.abs(ref))))
            assert np.max(np.abs(ours - ref)) <= 1e-12 * scale


def test_gegenbauer_degree_one_at_north_pole():
    assert gegenbauer(1, 0.5, 1.0) == pytest.approx(1.0, abs=1e-15)


# ---------------------------------------------------------------------------
# monomial sphere integrals

def test_monomial_integral_closed_forms():
    assert monomial_sphere_integral((0, 0)) == pytest.approx(2.0 * math.pi,
                                                             rel=1e-14)
    assert monomial_sphere_integral((2, 2)) == pytest.approx(math.pi / 4.0,
                                                             rel=1e-14)
    assert monomial_sphere_integral((1, 2)) == 0.0
    assert monomial_sphere_integral((2, 2, 2)) == pytest.approx(
        4.0 * math.pi / 105.0, rel=1e-14)


def test_monomial_integral_against_monte_carlo():
    exps = (4, 2, 0, 2)
    closed = monomial_sphere_integral(exps)
    mc = integrate_sphere_mc(
        lambda p: p[:, 0] ** 4 * p[:, 1] ** 2 * p[:, 3] ** 2,
        4, 400_000, seed=42)
    assert abs(mc.value - closed) <= 4.0 * mc.error_estimate


def test_monomial_integral_validation():
    with pytest.raises(ValueError):
        monomial_sphere_integral((2,))
    with pytest.raises(ValueError):
        monomial_sphere_integral((-2, 2))


# ---------------------------------------------------------------------------
# spec factories

def test_zonal_specs():
    spec = zonal(3, 0)
    assert (spec.family, spec.degree, spec.eigenvalue) == ("zonal", 0, 0)
    assert spec.norm == pytest.approx(math.sqrt(4.0 * math.pi), rel=1e-12)
    spec = zonal(3, 1)
    assert spec.eigenvalue == 2
    assert spec.norm == pytest.approx(math.sqrt(4.0 * math.pi / 3.0),
                                      rel=1e-12)


def test_zonal_norms_match_closed_form_grid():
    for n in (3, 4, 5, 6):
        for l in range(6):
            expected = math.sqrt(zonal_norm_sq_closed(n, l))
            assert zonal(n, l).norm == pytest.approx(expected, rel=1e-11)


def test_zonal_two_dimensions_needs_planar():
    assert zonal(2, 0).eigenvalue == 0  # the constant is fine
    with pytest.raises(ValueError):
        zonal(2, 1)


def test_planar_specs():
    spec = planar(1)
    assert (spec.dimension, spec.eigenvalue) == (2, 1)
    assert spec.norm == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert planar(3, "sin").norm == pytest.approx(math.sqrt(math.pi),
                                                  rel=1e-12)
    assert planar(0).norm == pytest.approx(math.sqrt(2.0 * math.pi),
                                           rel=1e-12)
    with pytest.raises(ValueError):
        planar(0, "sin")
    with pytest.raises(ValueError):
        planar(1, "tan")


def test_product_specs():
    spec = product(2)
    assert (spec.degree, spec.eigenvalue) == (2, 4)
    assert spec.norm == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-12)
    spec = product(4)
    assert (spec.degree, spec.eigenvalue) == (4, 24)
    assert spec.norm ** 2 == pytest.approx(
        2.0 * math.gamma(1.5) ** 4 / math.gamma(6.0), rel=1e-12)


def test_product_eigenvalue_formula_all_dimensions():
    for n in range(2, 9):
        assert product(n).eigenvalue == 2 * n * (n - 1)


def test_homogeneous_poly_accepts_harmonics():
    spec = homogeneous_poly([((1, 1), 1.0)])
    assert (spec.degree, spec.eigenvalue) == (2, 4)
    assert spec.norm == pytest.approx(product(2).norm, rel=1e-14)
    spec = homogeneous_poly(RE_Z4_3D)
    assert (spec.dimension, spec.degree, spec.eigenvalue) == (3, 4, 20)
    # degree-3 harmonic x^3 - 3 x y^2
    spec = homogeneous_poly([((3, 0), 1.0), ((1, 2), -3.0)])
    assert spec.eigenvalue == 9


def test_homogeneous_poly_norm_invariances():
    base = homogeneous_poly([((2, 1, 0), 1.0), ((0, 1, 2), -1.0)])
    flipped = homogeneous_poly([((2, 1, 0), -1.0), ((0, 1, 2), 1.0)])
    permuted = homogeneous_poly([((0, 2, 1), 1.0), ((2, 0, 1), -1.0)])
    assert flipped.norm == pytest.approx(base.norm, rel=1e-14)
    assert permuted.norm == pytest.approx(base.norm, rel=1e-14)


def test_homogeneous_poly_rejections():
    with pytest.raises(ValueError):
        homogeneous_poly([((2, 0), 1.0)])  # x^2 is not harmonic
    with pytest.raises(ValueError):
        homogeneous_poly([((2, 0), 1.0), ((1, 0), 1.0)])  # inhomogeneous
    with pytest.raises(ValueError):
        homogeneous_poly([((1, 1), 0.0)])  # identically zero
    with pytest.raises(ValueError):
        homogeneous_poly([])
    with pytest.raises(ValueError):
        homogeneous_poly([((1, -1), 1.0)])
    with pytest.raises(ValueError):
        homogeneous_poly([((1, 1), 1.0), ((1, 1, 0), 1.0)])


# ---------------------------------------------------------------------------
# evaluation and nodal sets

def test_evaluate_examples():
    assert evaluate(product(3), np.array([1.0, 0.0, 0.0])) == 0.0
    s = 1.0 / math.sqrt(2.0)
    assert evaluate(product(2), np.array([s, s])) == pytest.approx(0.5,
                                                                   rel=1e-14)
    north = np.array([1.0, 0.0, 0.0])
    assert evaluate(zonal(3, 1), north) == pytest.approx(1.0, abs=1e-15)


def test_evaluate_is_vectorised():
    rng = np.random.Generator(np.random.PCG64(5))
    pts = rng.standard_normal((100, 3))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    vals = evaluate(product(3), pts)
    assert vals.shape == (100,)
    assert np.allclose(vals, pts[:, 0] * pts[:, 1] * pts[:, 2])


def test_evaluate_validation():
    with pytest.raises(ValueError):
        evaluate(product(3), np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        evaluate(product(3), np.array([1.001, 0.0, 0.0]))


def test_on_nodal_set_examples():
    assert on_nodal_set(product(3), np.array([0.0, 1.0, 0.0]), 1e-12)
    theta_half_pi = np.array([0.0, 1.0])
    assert on_nodal_set(planar(1), theta_half_pi, 1e-12)
    rng = np.random.Generator(np.random.PCG64(6))
    pts = rng.standard_normal((50, 5))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    assert not np.any(on_nodal_set(zonal(5, 0), pts, 1e-12))


def test_on_nodal_set_product_coordinate_band():
    # |x1...xN| <= tol if some coordinate is <= tol, and conversely a
    # product below tol forces min |x_i| <= tol^(1/N)
    spec = product(3)
    rng = np.random.Generator(np.random.PCG64(7))
    pts = rng.standard_normal((400, 3))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    tol = 1e-3
    flags = on_nodal_set(spec, pts, tol)
    mins = np.min(np.abs(pts), axis=1)
    assert np.all(flags[mins <= tol])
    assert np.all(mins[flags] <= tol ** (1.0 / 3.0))


def test_solid_harmonic_homogeneity():
    spec = zonal(4, 3)
    rng = np.random.Generator(np.random.PCG64(8))
    x = rng.standard_normal(4)
    for lam in (0.5, 2.0, 17.0):
        assert solid_harmonic(spec, lam * x) == pytest.approx(
            lam ** 3 * solid_harmonic(spec, x), rel=1e-12)
    with pytest.raises(ValueError):
        solid_harmonic(spec, np.zeros(4))


# ---------------------------------------------------------------------------
# harmonicity residuals

def test_residual_product_two_dimensions():
    # x1 x2 is harmonic and multilinear, so the stencil differentiates it
    # exactly; the residual is pure roundoff, far below the 1e-5 bound
    res = harmonicity_residual(product(2), np.array([1.0, 1.0]), 1e-3)
    assert res <= 1e-5
    assert res <= stencil_noise_floor(2, 1.0, 1e-3)


def test_residual_constant_is_zero():
    for x in (np.array([0.7, -0.3, 0.1]), np.array([2.0, 0.0, 0.0])):
        assert harmonicity_residual(zonal(3, 0), x, 1e-3) == 0.0


def test_residual_low_degree_extensions_are_stencil_exact():
    # solid extensions of degree <= 3 (and multilinear products) have no
    # fourth derivatives, so halving h only rescales roundoff: ratios
    # carry no information and the residual stays at the noise floor
    x3 = np.array([0.3, 0.4, 0.5])
    for spec, x in ((zonal(3, 1), x3), (zonal(4, 2), np.array([0.3, 0.4, 0.5, 0.6])),
                    (zonal(5, 3), np.array([0.2, 0.3, 0.4, 0.5, 0.6])),
                    (product(3), x3)):
        mag = abs(float(solid_harmonic(spec, x))) + 1.0
        for h in (1e-3, 5e-4):
            res = harmonicity_residual(spec, x, h)
            assert res <= stencil_noise_floor(spec.dimension, mag, h)


def test_residual_second_order_for_degree_four():
    x = np.array([0.3, 0.4, 0.5])
    r1 = harmonicity_residual(zonal(3, 4), x, 1e-2)
    r2 = harmonicity_residual(zonal(3, 4), x, 5e-3)
    assert r1 / r2 == pytest.approx(4.0, abs=0.01)
    # frozen: the h^2 error of the (2N+1)-point stencil on this solid
    # extension is (h^2/12)|sum_i d^4_i|, a constant 42/12 here
    assert r1 == pytest.approx(42.0 / 12.0 * 1e-4, rel=1e-5)


def test_residual_order_two_at_many_sphere_points():
    # fourth-order terms exist only for degree >= 4 non-multilinear
    # extensions; there the halving order is 2 at every sampled point
    specs = [zonal(3, 4), zonal(4, 5), zonal(6, 4), homogeneous_poly(RE_Z4_3D)]
    rng = np.random.Generator(np.random.PCG64(20240915))
    orders = []
    for spec in specs:
        pts = rng.standard_normal((250, spec.dimension))
        pts /= np.linalg.norm(pts, axis=1)[:, None]
        for w in pts:
            r1 = harmonicity_residual(spec, w, 1e-2)
            r2 = harmonicity_residual(spec, w, 5e-3)
            mag = abs(float(solid_harmonic(spec, w))) + 1.0
            if r2 > 4.0 * stencil_noise_floor(spec.dimension, mag, 5e-3):
                orders.append(math.log2(r1 / r2))
    orders = np.array(orders)
    assert len(orders) >= 900
    assert abs(float(np.median(orders)) - 2.0) <= 0.05
    assert np.all(orders >= 1.7) and np.all(orders <= 2.3)


def test_residual_validation():
    spec = zonal(3, 2)
    with pytest.raises(ValueError):
        harmonicity_residual(spec, np.array([1e-4, 0.0, 0.0]), 1e-3)
    with pytest.raises(ValueError):
        harmonicity_residual(spec, np.array([1.0, 0.0, 0.0]), 0.0)
    with pytest.raises(ValueError):
        harmonicity_residual(spec, np.zeros((2, 3)), 1e-3)


def test_stencil_noise_floor_validation():
    assert stencil_noise_floor(3, 2.0, 1e-3) == 2.0 * stencil_noise_floor(3, 1.0, 1e-3)
    with pytest.raises(ValueError):
        stencil_noise_floor(1, 1.0, 1e-3)
    with pytest.raises(ValueError):
        stencil_noise_floor(3, 1.0, 0.0)


# ---------------------------------------------------------------------------
# off-nodal sampling

def test_sample_off_nodal_determinism_and_margin():
    spec = product(3)
    a = sample_off_nodal(spec, 20, np.random.Generator(np.random.PCG64(3)))
    b = sample_off_nodal(spec, 20, np.random.Generator(np.random.PCG64(3)))
    assert np.array_equal(a, b)
    assert a.shape == (20, 3)
    assert np.allclose(np.linalg.norm(a, axis=1), 1.0, atol=1e-12)
    assert np.all(np.abs(evaluate(spec, a)) > 0.0)


def test_sample_off_nodal_validation():
    with pytest.raises(ValueError):
        sample_off_nodal(product(3), 0, np.random.Generator(np.random.PCG64(1)))
