"""Spherical harmonics on S^(N-1) and their Laplace-Beltrami data.

A degree-l spherical harmonic P satisfies

    -Delta_{S^(N-1)} P = l (N - 2 + l) P,

and its solid extension |x|^l P(x/|x|) is a harmonic homogeneous
polynomial on R^N.  Four families are supported:

* ``zonal``    -- Gegenbauer polynomial C_l^alpha of the first
                  coordinate, alpha = (N-2)/2, for N >= 3 (and the
                  constant l = 0 in any dimension);
* ``planar``   -- cos(l theta) or sin(l theta) on the circle, the
                  N = 2 replacement for the degenerate alpha = 0 case;
* ``product``  -- x_1 x_2 ... x_N restricted to the sphere, degree N;
* ``poly``     -- an explicit harmonic homogeneous polynomial given by
                  (exponent vector, coefficient) terms.

Norms are L^2(S^(N-1)) norms of the *unnormalised* representatives:
zonal and planar ones by adaptive quadrature of the classical
single-angle reduction, product and poly ones by the closed-form
Gamma-function value of monomial sphere integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import integrate_line, sphere_surface_area

_UNIT_TOL = 1e-12
_FAMILIES = ("zonal", "planar", "product", "poly")


def eigenvalue_of_degree(dimension: int, degree: int) -> int:
    """Eigenvalue l (N - 2 + l) of -Delta_{S^(N-1)} on degree-l harmonics."""
    if dimension < 2:
        raise ValueError("dimension must be at least 2")
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return degree * (dimension - 2 + degree)


@dataclass(frozen=True)
class HarmonicSpec:
    """Immutable description of one spherical harmonic.

    ``eigenvalue`` and ``norm`` are derived quantities filled in by the
    factory functions below; construct specs through those.
    """

    family: str
    dimension: int
    degree: int
    eigenvalue: int
    norm: float
    parity: str = "cos"
    terms: tuple = field(default=())

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError("unknown family %r" % (self.family,))
        if not self.norm > 0:
            raise ValueError("harmonic has zero norm")


def gegenbauer(degree: int, alpha: float, t):
    """C_l^alpha(t) by the three-term recurrence, vectorised in t."""
    t = np.asarray(t, dtype=float)
    if degree == 0:
        return np.ones_like(t)
    prev = np.ones_like(t)
    cur = 2.0 * alpha * t
    for j in range(2, degree + 1):
        prev, cur = cur, (2.0 * t * (j + alpha - 1.0) * cur
                          - (j + 2.0 * alpha - 2.0) * prev) / j
    return cur


def monomial_sphere_integral(exponents) -> float:
    """Integral over S^(N-1) of x_1^p_1 ... x_N^p_N.

    Zero if any exponent is odd; otherwise
    2 prod Gamma((p_i + 1)/2) / Gamma((sum p_i + N)/2).
    """
    exponents = tuple(int(p) for p in exponents)
    if len(exponents) < 2:
        raise ValueError("need at least two exponents")
    if any(p < 0 for p in exponents):
        raise ValueError("exponents must be nonnegative")
    if any(p % 2 for p in exponents):
        return 0.0
    log_num = sum(math.lgamma(0.5 * (p + 1)) for p in exponents)
    log_den = math.lgamma(0.5 * (sum(exponents) + len(exponents)))
    return 2.0 * math.exp(log_num - log_den)


def _zonal_norm(dimension: int, degree: int) -> float:
    alpha = 0.5 * (dimension - 2)

    def integrand(theta):
        c = gegenbauer(degree, alpha, np.cos(theta))
        return c * c * np.sin(theta) ** (dimension - 2)

    res = integrate_line(integrand, 0.0, math.pi, tol=1e-13, rtol=1e-13)
    return math.sqrt(sphere_surface_area(dimension - 1) * res.value)


def _poly_laplacian_terms(terms):
    """Laplacian of sum c x^a as a merged {exponents: coefficient} map."""
    out: dict = {}
    for exps, coeff in terms:
        for i, p in enumerate(exps):
            if p >= 2:
                reduced = list(exps)
                reduced[i] = p - 2
                key = tuple(reduced)
                out[key] = out.get(key, 0.0) + coeff * p * (p - 1)
    return out


def _poly_norm(terms) -> float:
    total = 0.0
    for exps_a, ca in terms:
        for exps_b, cb in terms:
            combined = tuple(pa + pb for pa, pb in zip(exps_a, exps_b))
            total += ca * cb * monomial_sphere_integral(combined)
    if total <= 0.0:
        raise ValueError("polynomial has zero L2 norm on the sphere")
    return math.sqrt(total)


def zonal(dimension: int, degree: int) -> HarmonicSpec:
    """Gegenbauer harmonic C_l^((N-2)/2)(omega_1)."""
    lam = eigenvalue_of_degree(dimension, degree)
    if dimension == 2 and degree > 0:
        raise ValueError(
            "the Gegenbauer parameter vanishes for N = 2; use planar()")
    return HarmonicSpec("zonal", dimension, degree, lam,
                        _zonal_norm(dimension, degree))


def planar(degree: int, parity: str = "cos") -> HarmonicSpec:
    """cos(l theta) or sin(l theta) on S^1 (two dimensions only)."""
    lam = eigenvalue_of_degree(2, degree)
    if parity not in ("cos", "sin"):
        raise ValueError("parity must be 'cos' or 'sin'")
    if parity == "sin" and degree == 0:
        raise ValueError("sin(0 theta) vanishes identically")

    def integrand(theta):
        v = np.cos(degree * theta) if parity == "cos" else np.sin(degree * theta)
        return v * v

    res = integrate_line(integrand, 0.0, 2.0 * math.pi, tol=1e-13, rtol=1e-13)
    return HarmonicSpec("planar", 2, degree, lam, math.sqrt(res.value),
                        parity=parity)


def product(dimension: int) -> HarmonicSpec:
    """The full coordinate product x_1 ... x_N, degree N."""
    if dimension < 2:
        raise ValueError("dimension must be at least 2")
    lam = eigenvalue_of_degree(dimension, dimension)
    norm = math.sqrt(monomial_sphere_integral((2,) * dimension))
    return HarmonicSpec("product", dimension, dimension, lam, norm)


def homogeneous_poly(terms) -> HarmonicSpec:
    """Explicit harmonic from (exponent vector, coefficient) pairs.

    The terms must all share one total degree and the polynomial must be
    harmonic; both are checked exactly up to floating-point roundoff in
    the coefficients.
    """
    cleaned = []
    for exps, coeff in terms:
        exps = tuple(int(p) for p in exps)
        if any(p < 0 for p in exps):
            raise ValueError("exponents must be nonnegative")
        cleaned.append((exps, float(coeff)))
    if not cleaned:
        raise ValueError("need at least one term")
    dimension = len(cleaned[0][0])
    if dimension < 2:
        raise ValueError("dimension must be at least 2")
    if any(len(exps) != dimension for exps, _ in cleaned):
        raise ValueError("all exponent vectors must have the same length")
    degrees = {sum(exps) for exps, _ in cleaned}
    if len(degrees) != 1:
        raise ValueError("polynomial is not homogeneous: degrees %s"
                         % sorted(degrees))
    degree = degrees.pop()
    scale = max(abs(c) for _, c in cleaned)
    if scale == 0.0:
        raise ValueError("polynomial is identically zero")
    residual = _poly_laplacian_terms(cleaned)
    worst = max((abs(c) for c in residual.values()), default=0.0)
    # degree^2 absorbs the growth of the second-derivative coefficients
    if worst > 1e-10 * scale * max(1, degree) ** 2:
        raise ValueError(
            "polynomial is not harmonic (Laplacian coefficient %.3e)" % worst)
    lam = eigenvalue_of_degree(dimension, degree)
    return HarmonicSpec("poly", dimension, degree, lam, _poly_norm(cleaned),
                        terms=tuple(cleaned))


def _check_directions(spec: HarmonicSpec, omega):
    omega = np.asarray(omega, dtype=float)
    if omega.shape[-1] != spec.dimension:
        raise ValueError("expected %d components, got %d"
                         % (spec.dimension, omega.shape[-1]))
    norms = np.linalg.norm(omega, axis=-1)
    if np.any(np.abs(norms - 1.0) > _UNIT_TOL):
        raise ValueError("sphere points must have unit norm within %g"
                         % _UNIT_TOL)
    return omega


def evaluate(spec: HarmonicSpec, omega):
    """Value of the (unnormalised) harmonic at unit vectors omega.

    ``omega`` may be a single vector or an array of shape (..., N).
    """
    omega = _check_directions(spec, omega)
    if spec.family == "zonal":
        return gegenbauer(spec.degree, 0.5 * (spec.dimension - 2),
                          omega[..., 0])
    if spec.family == "planar":
        theta = np.arctan2(omega[..., 1], omega[..., 0])
        trig = np.cos if spec.parity == "cos" else np.sin
        return trig(spec.degree * theta)
    if spec.family == "product":
        return np.prod(omega, axis=-1)
    out = np.zeros(omega.shape[:-1])
    for exps, coeff in spec.terms:
        term = np.full(omega.shape[:-1], coeff)
        for i, p in enumerate(exps):
            if p:
                term = term * omega[..., i] ** p
        out = out + term
    return out


def on_nodal_set(spec: HarmonicSpec, omega, tol: float = 1e-12):
    """Whether |P(omega)| <= tol.

    The comparison uses the raw (unnormalised) harmonic value, so the
    meaning of ``tol`` scales with ``spec.norm``; for the product family
    |P(omega)| <= tol whenever some coordinate is below tol in size.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return np.abs(evaluate(spec, omega)) <= tol


def solid_harmonic(spec: HarmonicSpec, x):
    """Homogeneous extension |x|^l P(x/|x|), defined away from 0."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != spec.dimension:
        raise ValueError("expected %d components, got %d"
                         % (spec.dimension, x.shape[-1]))
    r = np.linalg.norm(x, axis=-1)
    if np.any(r == 0.0):
        raise ValueError("solid harmonic is evaluated away from the origin")
    return r ** spec.degree * evaluate(spec, x / r[..., None])


def stencil_noise_floor(dimension: int, magnitude: float, h: float) -> float:
    """Roundoff level of a (2N+1)-point Laplacian stencil.

    Each stencil value of size ``magnitude`` carries a rounding error of
    a few machine epsilons, and the second difference divides the summed
    noise by h^2.  Residuals below this level measure roundoff, not
    discretisation error, so halving-ratio diagnostics are meaningless
    there.  Solid extensions of degree at most three, and multilinear
    ones such as the coordinate product, are differentiated *exactly* by
    the stencil: their residuals sit at this floor for every h.
    """
    if dimension < 2 or magnitude < 0 or h <= 0:
        raise ValueError("need dimension >= 2, magnitude >= 0, h > 0")
    return 8.0 * (2 * dimension + 1) * math.ulp(1.0) * magnitude / h ** 2


def harmonicity_residual(spec: HarmonicSpec, x, h: float) -> float:
    """|Discrete Laplacian of the solid extension| at x.

    Central second differences along each axis; the solid extension is
    harmonic, so this is pure discretisation error and decays like h^2
    (down to roundoff) as h shrinks.  The stencil must not reach the
    origin, hence the requirement |x| > h.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != spec.dimension:
        raise ValueError("x must be a single point in R^%d" % spec.dimension)
    if h <= 0:
        raise ValueError("h must be positive")
    r = float(np.linalg.norm(x))
    if r <= h:
        raise ValueError("stencil would cross the origin: |x| <= h")
    n = spec.dimension
    stencil = np.concatenate((x[None, :],
                              x[None, :] + h * np.eye(n),
                              x[None, :] - h * np.eye(n)))
    vals = solid_harmonic(spec, stencil)
    return abs(float(np.sum(vals[1:]) - 2.0 * n * vals[0])) / h ** 2


def sample_off_nodal(spec: HarmonicSpec, count: int, rng, level: float = 0.5):
    """Draw unit vectors where the harmonic is comfortably nonzero.

    Rejection sampling against ``level`` times the median of |P| over a
    pilot sample; deterministic for a given generator state.
    """
    if count < 1:
        raise ValueError("count must be positive")
    pilot = rng.standard_normal((512, spec.dimension))
    pilot /= np.linalg.norm(pilot, axis=1)[:, None]
    threshold = level * float(np.median(np.abs(evaluate(spec, pilot))))
    out = []
    while len(out) < count:
        cand = rng.standard_normal((4 * count, spec.dimension))
        cand /= np.linalg.norm(cand, axis=1)[:, None]
        keep = np.abs(evaluate(spec, cand)) > threshold
        out.extend(cand[keep])
    return np.array(out[:count])
