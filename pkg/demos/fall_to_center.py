"""Fall to the center, watched through truncated spectra.

Separating off a degree-l harmonic reduces -Laplacian + k/|x|^2 to the
half-line operator -g'' + c g/rho^2 with effective coupling

    c = l (N - 2 + l) + k + (N - 1)(N - 3)/4.

For c >= -1/4 the truncated operators on [eps, R] stay uniformly
bounded below as eps -> 0.  For c < -1/4 the ground state dives like
-kappa / eps^2: each decade of eps costs two decades of eigenvalue.
The scan below shows both behaviours and the stabilising product
lambda_min * eps^2 in the unbounded case.
"""

from invsqhardy.radial import RadialProblem, fall_to_center_scan


def scan(problem, eps_list):
    print()
    print("N=%d, l=%d, k=%g: effective coupling c = %g, condition %s"
          % (problem.dimension, problem.degree, problem.coupling,
             problem.coupling_effective,
             "holds" if problem.condition else "fails"))
    report = fall_to_center_scan(problem, eps_list)
    print("%10s %22s %16s" % ("eps", "lambda_min", "lambda * eps^2"))
    for eps, lam in zip(report.epsilons, report.lambda_mins):
        print("%10g %22.10g %16.6g" % (eps, lam, lam * eps * eps))
    print("classification: %s (expected %s)"
          % (report.classification, report.expected))
    return report


def main():
    # c = -1 < -1/4: unbounded, lambda * eps^2 converges to -kappa
    scan(RadialProblem(3, 0, -1.0), [1e-1, 1e-2, 1e-3, 1e-4])
    # same coupling, but the l = 1 harmonic lifts c to +1: bounded
    scan(RadialProblem(3, 1, -1.0), [1e-1, 1e-2, 1e-3, 1e-4])
    # borderline c = -1/4 exactly: still bounded, though barely
    scan(RadialProblem(2, 0, 0.0), [1e-1, 1e-2, 1e-3])
    print()
    print("the same coupling k = -1 is catastrophic for radial functions")
    print("and harmless once the l = 1 nodal condition is imposed.")


if __name__ == "__main__":
    main()
