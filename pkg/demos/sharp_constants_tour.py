"""Tour of the sharp constants and admissibility thresholds.

For -Laplacian + k/|x|^2 acting on functions that vanish on the nodal
cone of a degree-l spherical harmonic, the quadratic form is bounded
below exactly when k >= -C(N, l) with

    C(N, l) = ((N - 2)/2)^2 + l (N - 2 + l).

C grows quadratically in l, so every coupling -- however negative --
becomes admissible once the harmonic degree is large enough.  This
script prints the constant over a small (N, l) range, the classical
regime thresholds, and the minimal admissible degree for a few strongly
attractive couplings.
"""

from invsqhardy import sharp_constant
from invsqhardy.radial import minimal_degree, regime_thresholds


def main():
    dims = range(2, 8)
    degrees = range(0, 7)

    print("sharp constant C(N, l)")
    print("  l:  " + "".join("%9d" % l for l in degrees))
    for n in dims:
        row = "".join("%9.2f" % sharp_constant(n, l) for l in degrees)
        print("N=%d  %s" % (n, row))

    print()
    print("classical thresholds on the coupling k")
    header = "%4s %12s %14s %10s %18s" % ("N", "friedrichs",
                                          "essential_sa", "quadrant",
                                          "nodal_restricted")
    print(header)
    for n in dims:
        t = regime_thresholds(n)
        print("%4d %12.4g %14.4g %10.4g %18s" % (
            n, t["friedrichs"], t["essential_sa"], t["quadrant"],
            t["nodal_restricted"]))

    print()
    print("minimal admissible degree l(N, k)")
    couplings = (-1.0, -10.0, -100.0, -1000.0)
    print("  k:  " + "".join("%9g" % k for k in couplings))
    for n in dims:
        row = "".join("%9d" % minimal_degree(n, k) for k in couplings)
        print("N=%d  %s" % (n, row))
    print()
    print("every row is finite: no coupling is beyond repair, it just")
    print("needs a harmonic of sufficiently high degree.")


if __name__ == "__main__":
    main()
