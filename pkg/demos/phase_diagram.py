"""Phase diagram of boundedness over the (k, l) plane.

Each cell answers: is -Laplacian + k/|x|^2 bounded below on functions
vanishing on the nodal cone of a degree-l harmonic?  The algebraic
condition k >= -C(N, l) draws the boundary; a handful of truncation
scans spot-check it numerically.

The command-line tool writes the same diagram to CSV:

    invsqhardy phase-diagram --N 3 --k-min -10 --k-max 2 --out phase.csv
"""

import numpy as np

from invsqhardy.radial import RadialProblem, fall_to_center_scan


def main():
    n = 3
    k_values = np.linspace(-10.0, 2.0, 13)
    degrees = range(0, 5)

    print("N = %d; '#' bounded below, '.' unbounded" % n)
    print("  k: " + "".join("%4g" % k for k in k_values))
    for ell in degrees:
        cells = "".join(
            "%4s" % ("#" if RadialProblem(n, ell, float(k)).condition else ".")
            for k in k_values)
        print("l=%d %s" % (ell, cells))

    print()
    print("spot checks by truncation scan (eps = 1e-2, 1e-3, 1e-4):")
    for ell, k in ((0, -1.0), (1, -1.0), (2, -10.0), (3, -10.0)):
        problem = RadialProblem(n, ell, k)
        report = fall_to_center_scan(problem, [1e-2, 1e-3, 1e-4])
        print("  l=%d, k=%+g: %-11s (condition %s, lambda_min(1e-4) = %.4g)"
              % (ell, k, report.classification,
                 "holds" if problem.condition else "fails",
                 report.lambda_mins[-1]))


if __name__ == "__main__":
    main()
