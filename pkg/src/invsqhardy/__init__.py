"""Numerics for -Delta + k/|x|^2 on nodal-complement domains.

The package verifies, across dimensions N >= 2 and all real couplings k,
that restricting the inverse-square Schrodinger operator to the
complement of the nodal cone of a well-chosen spherical harmonic renders
its quadratic form nonnegative, and that the associated Hardy constant
((N-2)/2)^2 + l(N-2+l) is sharp.
"""

from .harmonics import (
    HarmonicSpec,
    eigenvalue_of_degree,
    evaluate,
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
from .hardy import (
    BumpProfile,
    OptimalitySweepRow,
    SeparableTestFunction,
    delta_psi_residual,
    dirichlet_energy,
    form_value,
    make_bump,
    minimizer_element,
    optimality_sweep,
    random_test_function,
    rayleigh_quotient,
    scaled,
    sharp_constant,
    weight_psi,
    weighted_l2_norm_sq,
)
from .quadrature import (
    IntegralResult,
    QuadratureError,
    integrate_line,
    integrate_sphere_mc,
    sphere_surface_area,
)
from .radial import (
    GridSpec,
    RadialProblem,
    ScanReport,
    SpectrumResult,
    TridiagonalMatrix,
    assemble,
    condition_holds,
    effective_coupling,
    fall_to_center_scan,
    lowest_eigenvalues,
    minimal_degree,
    regime_thresholds,
    solve_spectrum,
    sturm_count,
)

__version__ = "0.1.0"
