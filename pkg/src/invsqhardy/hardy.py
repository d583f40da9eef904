"""Sharp Hardy-type inequality machinery for inverse-square potentials.

For a degree-l spherical harmonic P on S^(N-1) with eigenvalue
lambda = l (N - 2 + l), the weight

    psi(x) = |x|^(1 - N/2) P(x / |x|)

satisfies  Delta psi = -((N-2)^2/4 + lambda) psi / |x|^2  away from the
origin, and the sharp constant of the Hardy inequality restricted to
separable functions u = f(|x|) P(x/|x|) vanishing near the nodal set is

    C(N, l) = ((N - 2)/2)^2 + l (N - 2 + l).

The infimum of the Rayleigh quotient is not attained; it is approached
by the explicit sequence

    u_m(x) = m^(-1/2) phi(log|x| / m) psi(x),        m = 1, 2, ...

built from an L^2-normalised profile phi supported on [-1, 1].  Along
this sequence the quotient equals  C(N, l) + ||phi'||^2 / m^2  exactly,
which is what the sweep utilities at the bottom of the module verify
numerically.

All radial integrals are computed in the logarithmic variable
s = log rho, where the minimising sequence turns into a fixed profile
and no large powers of rho appear:

    int f(rho)^2 rho^(N-3) drho = int (f(e^s) e^((N-2)s/2))^2 ds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .harmonics import HarmonicSpec, eigenvalue_of_degree, evaluate
from .quadrature import integrate_line

_BUMP_KINDS = ("mollifier", "cosine")
_DEFAULT_TOL = 1e-9
_DEFAULT_RTOL = 1e-12


def sharp_constant(dimension: int, degree: int) -> float:
    """((N-2)/2)^2 + l (N-2+l); exact for quarter-integer values."""
    return (dimension - 2) ** 2 / 4.0 + eigenvalue_of_degree(dimension, degree)


# ---------------------------------------------------------------------------
# bump profiles

@dataclass(frozen=True)
class BumpProfile:
    """C^1 profile on [-1, 1] with unit L^2 norm.

    ``value`` and ``derivative`` are vectorised callables vanishing
    outside (-1, 1); ``derivative_energy`` is int phi'(t)^2 dt.
    """

    kind: str
    value: Callable
    derivative: Callable
    l2_norm: float
    derivative_energy: float


def _mollifier_raw(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ti * ti))
    return out


def _mollifier_raw_derivative(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    onemt2 = 1.0 - ti * ti
    out[inside] = np.exp(-1.0 / onemt2) * (-2.0 * ti / onemt2 ** 2)
    return out


def _cosine_raw(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    out[inside] = np.cos(0.5 * math.pi * t[inside]) ** 2
    return out


def _cosine_raw_derivative(t):
    # d/dt cos^2(pi t / 2) = -(pi/2) sin(pi t)
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    out[inside] = -0.5 * math.pi * np.sin(math.pi * t[inside])
    return out


def make_bump(kind: str = "mollifier") -> BumpProfile:
    """Construct an L^2-normalised profile.

    ``mollifier`` is exp(-1/(1 - t^2)), smooth with all derivatives
    vanishing at the endpoints; ``cosine`` is cos^2(pi t / 2), merely
    C^1 but with the closed-form derivative energy pi^2 / 3 after
    normalisation.
    """
    if kind == "mollifier":
        raw, raw_d = _mollifier_raw, _mollifier_raw_derivative
    elif kind == "cosine":
        raw, raw_d = _cosine_raw, _cosine_raw_derivative
    else:
        raise ValueError("kind must be one of %s" % (_BUMP_KINDS,))
    raw_sq = integrate_line(lambda t: raw(t) ** 2, -1.0, 1.0,
                            tol=1e-13, rtol=1e-13).value
    c = 1.0 / math.sqrt(raw_sq)
    value = lambda t: c * raw(t)
    derivative = lambda t: c * raw_d(t)
    norm_sq = integrate_line(lambda t: value(t) ** 2, -1.0, 1.0,
                             tol=1e-12, rtol=1e-13).value
    energy = integrate_line(lambda t: derivative(t) ** 2, -1.0, 1.0,
                            tol=1e-12, rtol=1e-13).value
    return BumpProfile(kind, value, derivative, math.sqrt(norm_sq), energy)


# ---------------------------------------------------------------------------
# the singular weight

def weight_psi(spec: HarmonicSpec, x):
    """psi(x) = |x|^(1-N/2) P(x/|x|) for the unnormalised harmonic P."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != spec.dimension:
        raise ValueError("expected %d components, got %d"
                         % (spec.dimension, x.shape[-1]))
    r = np.linalg.norm(x, axis=-1)
    if np.any(r == 0.0):
        raise ValueError("weight is singular at the origin")
    return r ** (1.0 - 0.5 * spec.dimension) * evaluate(spec, x / r[..., None])


def delta_psi_residual(spec: HarmonicSpec, x, h: float) -> float:
    """|Delta_h psi(x) + C psi(x)/|x|^2| with C the sharp constant.

    Delta_h is the (2N+1)-point central-difference Laplacian.  Away from
    roundoff the residual is O(h^2); the identity it probes is exact.
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
    vals = weight_psi(spec, stencil)
    lap = (float(np.sum(vals[1:])) - 2.0 * n * float(vals[0])) / h ** 2
    c = sharp_constant(spec.dimension, spec.degree)
    return abs(lap + c * float(vals[0]) / r ** 2)


# ---------------------------------------------------------------------------
# separable test functions

@dataclass(frozen=True)
class SeparableTestFunction:
    """u(x) = angular_scale * f(|x|) P(x/|x|) with f supported in [a, b].

    ``radial`` and ``radial_derivative`` must be vectorised over rho and
    vanish outside the support; construction checks that f is finite,
    not identically zero, and vanishes at both endpoints.
    """

    radial: Callable
    radial_derivative: Callable
    support: tuple
    angular: HarmonicSpec
    label: str = ""
    angular_scale: float = 1.0

    def __post_init__(self):
        a, b = self.support
        if not (0.0 < a < b < math.inf):
            raise ValueError("support must satisfy 0 < a < b < inf")
        if not (self.angular_scale > 0 and math.isfinite(self.angular_scale)):
            raise ValueError("angular_scale must be positive and finite")
        probe = np.exp(np.linspace(math.log(a), math.log(b), 257))
        vals = np.asarray(self.radial(probe), dtype=float)
        dvals = np.asarray(self.radial_derivative(probe), dtype=float)
        if not (np.all(np.isfinite(vals)) and np.all(np.isfinite(dvals))):
            raise ValueError("radial profile must be finite on its support")
        peak = float(np.max(np.abs(vals)))
        if peak == 0.0:
            raise ValueError("radial profile is identically zero")
        ends = np.abs(np.asarray(self.radial(np.array([a, b])), dtype=float))
        if np.any(ends > 1e-9 * peak):
            raise ValueError("radial profile must vanish at the support ends")


def scaled(u: SeparableTestFunction, sigma: float) -> SeparableTestFunction:
    """The dilation u(sigma x); support shrinks by 1/sigma."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    f, df = u.radial, u.radial_derivative
    a, b = u.support
    return replace(
        u,
        radial=lambda rho: f(sigma * np.asarray(rho, dtype=float)),
        radial_derivative=lambda rho: sigma * df(sigma * np.asarray(rho, dtype=float)),
        support=(a / sigma, b / sigma),
        label=u.label + "-scaled")


def minimizer_element(spec: HarmonicSpec, bump: BumpProfile,
                      m: float) -> SeparableTestFunction:
    """m-th element of the minimising sequence for the sharp constant.

    u_m(x) = m^(-1/2) phi(log|x|/m) psi(x), supported on the annulus
    e^-m <= |x| <= e^m.  The angular factor is normalised internally, so
    the weighted L^2 norm of u_m is 1 and the Rayleigh quotient is
    C(N, l) + ||phi'||^2 / m^2 up to quadrature error.
    """
    if not m >= 1:
        raise ValueError("m must be at least 1")
    n = spec.dimension
    inv_sqrt_m = 1.0 / math.sqrt(m)
    expo = 1.0 - 0.5 * n

    def radial(rho):
        rho = np.asarray(rho, dtype=float)
        s = np.log(rho)
        return inv_sqrt_m * bump.value(s / m) * rho ** expo

    def radial_derivative(rho):
        rho = np.asarray(rho, dtype=float)
        s = np.log(rho)
        inner = bump.derivative(s / m) / m + expo * bump.value(s / m)
        return inv_sqrt_m * rho ** (expo - 1.0) * inner

    return SeparableTestFunction(
        radial, radial_derivative, (math.exp(-m), math.exp(m)), spec,
        label="minimizer-m%g" % m, angular_scale=1.0 / spec.norm)


# ---------------------------------------------------------------------------
# quadratic forms

def _log_endpoints(u: SeparableTestFunction):
    a, b = u.support
    return math.log(a), math.log(b)


def weighted_l2_norm_sq(u: SeparableTestFunction,
                        tol: float = _DEFAULT_TOL) -> float:
    """int |u|^2 / |x|^2 dx = ||P||^2 int f^2 rho^(N-3) drho."""
    n = u.angular.dimension
    f = u.radial
    sa, sb = _log_endpoints(u)

    def integrand(s):
        rho = np.exp(s)
        return (f(rho) * np.exp(0.5 * (n - 2) * s)) ** 2

    val = integrate_line(integrand, sa, sb, tol=tol, rtol=_DEFAULT_RTOL).value
    return (u.angular_scale * u.angular.norm) ** 2 * val


def dirichlet_energy(u: SeparableTestFunction,
                     tol: float = _DEFAULT_TOL) -> float:
    """int |grad u|^2 dx for the separable function u.

    Separates as ||P||^2 [ int f'^2 rho^(N-1) drho
                           + lambda int f^2 rho^(N-3) drho ].
    """
    n = u.angular.dimension
    lam = u.angular.eigenvalue
    f, df = u.radial, u.radial_derivative
    sa, sb = _log_endpoints(u)

    def grad_part(s):
        rho = np.exp(s)
        return (df(rho) * np.exp(0.5 * n * s)) ** 2

    def weight_part(s):
        rho = np.exp(s)
        return (f(rho) * np.exp(0.5 * (n - 2) * s)) ** 2

    total = integrate_line(grad_part, sa, sb, tol=tol, rtol=_DEFAULT_RTOL).value
    if lam:
        total += lam * integrate_line(weight_part, sa, sb,
                                      tol=tol, rtol=_DEFAULT_RTOL).value
    return (u.angular_scale * u.angular.norm) ** 2 * total


def rayleigh_quotient(u: SeparableTestFunction,
                      tol: float = _DEFAULT_TOL) -> float:
    """Dirichlet energy over weighted norm; scale invariant."""
    denom = weighted_l2_norm_sq(u, tol=tol)
    if denom <= 0.0:
        raise ValueError("weighted norm vanished; degenerate test function")
    return dirichlet_energy(u, tol=tol) / denom


def form_value(u: SeparableTestFunction, coupling: float,
               tol: float = _DEFAULT_TOL) -> float:
    """Quadratic form int |grad u|^2 + k int |u|^2/|x|^2 at coupling k."""
    return dirichlet_energy(u, tol=tol) + coupling * weighted_l2_norm_sq(u, tol=tol)


# ---------------------------------------------------------------------------
# optimality sweeps

@dataclass(frozen=True)
class OptimalitySweepRow:
    m: float
    rayleigh: float
    predicted: float
    gap: float


def optimality_sweep(spec: HarmonicSpec, bump: BumpProfile, m_values,
                     tol: float = _DEFAULT_TOL):
    """Rayleigh quotients along the minimising sequence.

    For each m the predicted value is C(N, l) + ||phi'||^2 / m^2; the
    returned gap is (computed - predicted) and should sit at the
    quadrature noise floor.
    """
    m_values = [float(m) for m in m_values]
    if not m_values:
        raise ValueError("need at least one m")
    if any(m < 1 for m in m_values):
        raise ValueError("all m must be at least 1")
    if sorted(m_values) != m_values:
        raise ValueError("m values must be nondecreasing")
    c = sharp_constant(spec.dimension, spec.degree)
    rows = []
    for m in m_values:
        u = minimizer_element(spec, bump, m)
        rq = rayleigh_quotient(u, tol=tol)
        predicted = c + bump.derivative_energy / m ** 2
        rows.append(OptimalitySweepRow(m, rq, predicted, rq - predicted))
    return rows


def random_test_function(spec: HarmonicSpec, rng,
                         max_modes: int = 4) -> SeparableTestFunction:
    """Random compactly supported separable test function.

    The radial part is a random sine series in s = log rho vanishing at
    the ends of a random window; smooth inside, H^1 across the ends.
    Useful for probing the inequality from above: its Rayleigh quotient
    must never drop below the sharp constant.
    """
    sa = float(rng.uniform(-3.0, 0.0))
    width = float(rng.uniform(0.75, 4.0))
    modes = int(rng.integers(1, max_modes + 1))
    coeffs = rng.uniform(-1.0, 1.0, size=modes)
    while float(np.max(np.abs(coeffs))) < 0.2:
        coeffs = rng.uniform(-1.0, 1.0, size=modes)
    freqs = np.arange(1, modes + 1) * math.pi / width

    def radial(rho):
        rho = np.asarray(rho, dtype=float)
        s = np.log(rho) - sa
        inside = (s >= 0.0) & (s <= width)
        out = np.zeros_like(rho)
        si = s[inside]
        acc = np.zeros_like(si)
        for cj, wj in zip(coeffs, freqs):
            acc += cj * np.sin(wj * si)
        out[inside] = acc
        return out

    def radial_derivative(rho):
        rho = np.asarray(rho, dtype=float)
        s = np.log(rho) - sa
        inside = (s >= 0.0) & (s <= width)
        out = np.zeros_like(rho)
        si = s[inside]
        acc = np.zeros_like(si)
        for cj, wj in zip(coeffs, freqs):
            acc += cj * wj * np.cos(wj * si)
        out[inside] = acc / rho[inside]
        return out

    return SeparableTestFunction(
        radial, radial_derivative, (math.exp(sa), math.exp(sa + width)),
        spec, label="random-sine-%d" % modes)
