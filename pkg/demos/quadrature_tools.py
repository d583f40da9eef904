"""The integration helpers behind the energy computations.

Two workhorses: an adaptive Gauss-Legendre rule on an interval (used for
all radial energies) and a seeded Monte Carlo rule on the unit sphere
(used to cross-check angular norms).  Both are deterministic: the line
rule refines worst-panel-first with a stable tie-break, the sphere rule
draws from an explicit generator.
"""

import math

import numpy as np

from invsqhardy.quadrature import (
    integrate_line,
    integrate_sphere_mc,
    sphere_surface_area,
)


def main():
    # a smooth integrand with a known antiderivative
    exact = (math.exp(2.0) * (math.cos(6.0) + 3.0 * math.sin(6.0)) - 1.0) / 10.0
    res = integrate_line(lambda t: np.exp(t) * np.cos(3.0 * t), 0.0, 2.0,
                         tol=1e-12)
    print("line rule on exp(t) cos(3t) over [0, 2]:")
    print("  value %.15g  (exact %.15g)" % (res.value, exact))
    print("  error estimate %.2e, actual error %.2e, %d evaluations"
          % (res.error_estimate, abs(res.value - exact), res.evaluations))

    # a narrow feature forces local refinement
    res = integrate_line(lambda t: 1.0 / (1e-6 + t * t), -1.0, 1.0, tol=1e-10)
    exact = 2.0 * math.atan(1e3) * 1e3
    print()
    print("line rule on a spike of width 1e-3:")
    print("  value %.12g (exact %.12g), %d evaluations"
          % (res.value, exact, res.evaluations))

    print()
    print("unit-sphere surface areas:")
    for dim in (2, 3, 4, 5):
        print("  N=%d: %.12g" % (dim, sphere_surface_area(dim)))

    # Monte Carlo moments against the closed form for x1^2 x2^2
    dim = 3
    exact = sphere_surface_area(dim) / 15.0
    res = integrate_sphere_mc(lambda w: w[..., 0] ** 2 * w[..., 1] ** 2,
                              dim, samples=200_000, seed=20240915)
    print()
    print("Monte Carlo moment of x1^2 x2^2 on the 2-sphere:")
    print("  value %.6g +- %.2g (exact %.6g, off by %.2f sigma)"
          % (res.value, res.error_estimate, exact,
             abs(res.value - exact) / res.error_estimate))


if __name__ == "__main__":
    main()
