"""The minimising sequence that shows the sharp constant is attained.

With psi(x) = |x|^(1 - N/2) P(x/|x|) and a smooth bump phi on [-1, 1],
the functions

    u_m(x) = m^(-1/2) phi(log|x| / m) psi(x)

have Rayleigh quotient

    D(u_m) / W(u_m) = C(N, l) + |phi'|^2 / m^2,

so the weighted Hardy constant C(N, l) is approached at rate 1/m^2 and
cannot be improved.  The sweep below prints the measured quotient next
to that prediction; the gap column is pure quadrature noise.
"""

from invsqhardy.harmonics import product, zonal
from invsqhardy.hardy import make_bump, optimality_sweep, sharp_constant


def main():
    bump = make_bump("mollifier")
    print("bump derivative energy |phi'|^2 = %.12g" % bump.derivative_energy)
    for spec in (zonal(3, 0), product(4)):
        sharp = sharp_constant(spec.dimension, spec.degree)
        print()
        print("case N=%d, l=%d (%s family), sharp constant %.6g"
              % (spec.dimension, spec.degree, spec.family, sharp))
        print("%6s %18s %18s %12s" % ("m", "rayleigh", "predicted", "gap"))
        for row in optimality_sweep(spec, bump, [1, 2, 4, 8, 16, 32, 64]):
            print("%6g %18.12f %18.12f %12.2e"
                  % (row.m, row.rayleigh, row.predicted, row.gap))
        print("the quotient approaches %.6g like 1/m^2" % sharp)


if __name__ == "__main__":
    main()
