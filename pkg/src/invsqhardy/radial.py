"""Radial reduction of -Delta + k/|x|^2 and fall-to-the-center scans.

On the invariant subspace spanned by a degree-l harmonic, the operator
reduces (after the substitution g = rho^((N-1)/2) f) to the half-line
Schrodinger operator

    -g'' + c g / rho^2,    c = lambda_l + k + (N-1)(N-3)/4,

whose quadratic form on C_0^inf(0, inf) is nonnegative exactly when
c >= -1/4.  That inequality is algebraically identical to

    lambda_l >= -(N-2)^2/4 - k,

the admissibility condition for the coupling on the nodal-complement
domain.  Both sides are evaluated with Fraction-friendly arithmetic, so
exact rational inputs give exact answers.

The discrete side truncates to [eps, R] with Dirichlet ends, assembles
a symmetric tridiagonal matrix (lumped-mass symmetrisation of the
variable-step second difference), and locates the lowest eigenvalues by
bisection on Sturm-sequence inertia counts.  When c < -1/4 the lowest
truncated eigenvalue dives like -const/eps^2; when c >= -1/4 it stays
nonnegative however small eps becomes.  ``fall_to_center_scan`` turns
that dichotomy into a BOUNDED / UNBOUNDED classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

from .harmonics import eigenvalue_of_degree

# classification cutoffs for the truncated-spectrum scan
BOUNDED_TOL = 1e-8
UNBOUNDED_THRESHOLD = -1e3

_BISECTION_REL_WIDTH = 1e-10
_BISECTION_MAX_ITER = 300


# ---------------------------------------------------------------------------
# exact condition arithmetic

def effective_coupling(dimension: int, degree: int, coupling):
    """c = lambda_l + k + (N-1)(N-3)/4.

    The quarter-integer offset is added as a Fraction, so rational
    ``coupling`` inputs propagate exactly; float inputs give floats.
    """
    lam = eigenvalue_of_degree(dimension, degree)
    return coupling + Fraction((dimension - 1) * (dimension - 3), 4) + lam


def condition_holds(dimension: int, degree: int, coupling) -> bool:
    """lambda_l >= -(N-2)^2/4 - k, equivalently c >= -1/4."""
    lam = eigenvalue_of_degree(dimension, degree)
    return coupling + Fraction((dimension - 2) ** 2, 4) + lam >= 0


def minimal_degree(dimension: int, coupling) -> int:
    """Smallest harmonic degree for which the condition holds.

    Exists for every coupling because lambda_l grows like l^2; equals 0
    whenever k >= -(N-2)^2/4.
    """
    if not math.isfinite(float(coupling)):
        raise ValueError("coupling must be finite")
    degree = 0
    while not condition_holds(dimension, degree, coupling):
        degree += 1
    return degree


def regime_thresholds(dimension: int) -> dict:
    """Coupling thresholds of the classical selfadjointness regimes.

    friedrichs        -- form-boundedness on all of R^N via the Hardy
                         inequality, k >= -(N-2)^2/4;
    essential_sa      -- essential selfadjointness on C_0^inf(R^N\\{0}),
                         k >= -(N-2)^2/4 + 1;
    quadrant          -- nonnegativity after removing the coordinate
                         hyperplanes, k >= -N/4;
    nodal_restricted  -- no lower limit at all once the domain excludes
                         the nodal cone of a suitable harmonic.
    """
    if dimension < 2:
        raise ValueError("dimension must be at least 2")
    base = -((dimension - 2) ** 2) / 4.0
    return {
        "friedrichs": base,
        "essential_sa": base + 1.0,
        "quadrant": -dimension / 4.0,
        "nodal_restricted": -math.inf,
    }


# ---------------------------------------------------------------------------
# discretisation

@dataclass(frozen=True)
class RadialProblem:
    """Half-line operator data for (N, l, k)."""

    dimension: int
    degree: int
    coupling: float

    def __post_init__(self):
        eigenvalue_of_degree(self.dimension, self.degree)  # validates
        if not math.isfinite(self.coupling):
            raise ValueError("coupling must be finite")

    @property
    def coupling_effective(self) -> float:
        return float(effective_coupling(self.dimension, self.degree,
                                        self.coupling))

    @property
    def condition(self) -> bool:
        return condition_holds(self.dimension, self.degree, self.coupling)


@dataclass(frozen=True)
class GridSpec:
    """Interior nodes of a Dirichlet grid on [inner, outer].

    ``log`` spacing places node j at inner (outer/inner)^(j/(n+1)) and
    needs inner > 0; ``uniform`` spacing allows inner = 0 because only
    interior nodes enter the matrix.
    """

    inner: float
    outer: float
    points: int
    spacing: str = "log"

    def __post_init__(self):
        if self.spacing not in ("log", "uniform"):
            raise ValueError("spacing must be 'log' or 'uniform'")
        if self.spacing == "log" and not self.inner > 0:
            raise ValueError("log spacing needs inner > 0")
        if self.inner < 0 or not self.outer > self.inner:
            raise ValueError("need 0 <= inner < outer")
        if self.points < 16:
            raise ValueError("need at least 16 interior points")

    def nodes(self):
        """All n+2 nodes including the Dirichlet endpoints."""
        j = np.arange(self.points + 2, dtype=float)
        if self.spacing == "log":
            return self.inner * (self.outer / self.inner) ** (j / (self.points + 1))
        return self.inner + j * (self.outer - self.inner) / (self.points + 1)


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Symmetric tridiagonal matrix stored as two arrays."""

    diagonal: np.ndarray
    offdiagonal: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diagonal, dtype=float)
        e = np.asarray(self.offdiagonal, dtype=float)
        if d.ndim != 1 or e.ndim != 1 or e.shape[0] != d.shape[0] - 1:
            raise ValueError("need n diagonal and n-1 off-diagonal entries")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise RuntimeError("assembly produced non-finite entries")
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "offdiagonal", e)

    @property
    def dimension(self) -> int:
        return self.diagonal.shape[0]

    def to_dense(self):
        a = np.diag(self.diagonal)
        idx = np.arange(self.dimension - 1)
        a[idx, idx + 1] = self.offdiagonal
        a[idx + 1, idx] = self.offdiagonal
        return a


def assemble(problem: RadialProblem, grid: GridSpec) -> TridiagonalMatrix:
    """Discretise -g'' + c g/rho^2 with Dirichlet ends.

    Finite-volume (lumped mass) symmetrisation of the variable-step
    second difference: with steps h_j = rho_j - rho_(j-1) and masses
    M_j = (h_j + h_(j+1))/2,

        A_jj     = (1/h_j + 1/h_(j+1)) / M_j + c / rho_j^2,
        A_j,j+1  = -1 / (h_(j+1) sqrt(M_j M_(j+1))).

    On a uniform grid this is the standard (2/h^2, -1/h^2) stencil.
    """
    rho = grid.nodes()
    # an inner radius of zero is fine: only interior nodes carry c/rho^2
    h = np.diff(rho)
    mass = 0.5 * (h[:-1] + h[1:])
    interior = rho[1:-1]
    c = problem.coupling_effective
    diag = (1.0 / h[:-1] + 1.0 / h[1:]) / mass + c / interior ** 2
    off = -1.0 / h[1:-1] / np.sqrt(mass[:-1] * mass[1:])
    return TridiagonalMatrix(diag, off)


# ---------------------------------------------------------------------------
# Sturm bisection

@njit(cache=True)
def _inertia_kernel(diag, offsq, sigma):
    # number of negative pivots of the LDL^T factorisation of A - sigma I,
    # i.e. the number of eigenvalues strictly below sigma
    count = 0
    d = diag[0] - sigma
    if d < 0.0:
        count += 1
    for i in range(1, diag.shape[0]):
        if d == 0.0:
            d = 1e-300
        d = (diag[i] - sigma) - offsq[i - 1] / d
        if d < 0.0:
            count += 1
    return count


def sturm_count(matrix: TridiagonalMatrix, sigma: float) -> int:
    """Number of eigenvalues of ``matrix`` below ``sigma``."""
    offsq = matrix.offdiagonal * matrix.offdiagonal
    return int(_inertia_kernel(matrix.diagonal, offsq, float(sigma)))


def _gershgorin(matrix: TridiagonalMatrix):
    radius = np.zeros(matrix.dimension)
    radius[:-1] += np.abs(matrix.offdiagonal)
    radius[1:] += np.abs(matrix.offdiagonal)
    return (float(np.min(matrix.diagonal - radius)),
            float(np.max(matrix.diagonal + radius)))


def lowest_eigenvalues(matrix: TridiagonalMatrix, count: int):
    """The ``count`` smallest eigenvalues, each bisected to a bracket of
    width 1e-10 max(1, |lambda|).

    Raises RuntimeError if a bracket fails to shrink within the
    iteration cap (it cannot for finite inputs, but the cap turns a
    logic error into a loud failure instead of a hang).
    """
    if not 1 <= count <= matrix.dimension:
        raise ValueError("count must be between 1 and the matrix dimension")
    offsq = matrix.offdiagonal * matrix.offdiagonal
    diag = matrix.diagonal
    lo0, hi0 = _gershgorin(matrix)
    out = []
    for j in range(count):
        lo, hi = lo0, hi0
        for _ in range(_BISECTION_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if hi - lo <= _BISECTION_REL_WIDTH * max(1.0, abs(mid)):
                break
            if _inertia_kernel(diag, offsq, mid) >= j + 1:
                hi = mid
            else:
                lo = mid
        else:
            raise RuntimeError("bisection failed to converge for "
                               "eigenvalue %d" % j)
        out.append(0.5 * (lo + hi))
    return out


@dataclass(frozen=True)
class SpectrumResult:
    """Lowest eigenvalues of a truncated radial problem."""

    problem: RadialProblem
    grid: GridSpec
    eigenvalues: tuple
    sturm_counts_verified: bool

    def __post_init__(self):
        eigs = tuple(float(v) for v in self.eigenvalues)
        if any(b <= a for a, b in zip(eigs, eigs[1:])):
            raise RuntimeError("eigenvalues are not strictly increasing")
        object.__setattr__(self, "eigenvalues", eigs)


def solve_spectrum(problem: RadialProblem, grid: GridSpec,
                   count: int = 1) -> SpectrumResult:
    """Assemble, solve, and re-verify inertia counts at the results.

    The verification evaluates the Sturm count just below and above each
    returned eigenvalue and checks it matches the eigenvalue's index,
    which ties the output back to matrix inertia independently of the
    bisection bookkeeping.
    """
    matrix = assemble(problem, grid)
    eigs = lowest_eigenvalues(matrix, count)
    verified = True
    for j, lam in enumerate(eigs):
        delta = 4.0 * _BISECTION_REL_WIDTH * max(1.0, abs(lam))
        if not (sturm_count(matrix, lam - delta) <= j
                and sturm_count(matrix, lam + delta) >= j + 1):
            verified = False
    return SpectrumResult(problem, grid, tuple(eigs), verified)


# ---------------------------------------------------------------------------
# fall to the center

@dataclass(frozen=True)
class ScanReport:
    """Outcome of a truncation scan eps -> lambda_min."""

    problem: RadialProblem
    epsilons: tuple
    lambda_mins: tuple
    classification: str
    expected: str
    consistent: bool


def fall_to_center_scan(problem: RadialProblem, eps_list, outer: float = 100.0,
                        points: int = 2000) -> ScanReport:
    """Classify the truncated spectra as BOUNDED or UNBOUNDED.

    BOUNDED:    every lowest eigenvalue is >= -1e-8;
    UNBOUNDED:  the lowest eigenvalues strictly decrease and the final
                one lies below -1e3;
    INCONCLUSIVE otherwise (e.g. the scan was not pushed deep enough).

    The report records whether the classification agrees with the
    algebraic condition; callers treat disagreement as a diagnostic
    failure rather than quietly picking a side.
    """
    eps_list = [float(e) for e in eps_list]
    if len(eps_list) < 2:
        raise ValueError("need at least two truncation radii")
    if any(e <= 0 for e in eps_list):
        raise ValueError("truncation radii must be positive")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("truncation radii must strictly decrease")
    if eps_list[0] >= outer:
        raise ValueError("largest truncation radius must be below outer")

    lam_mins = []
    for eps in eps_list:
        grid = GridSpec(eps, outer, points, "log")
        result = solve_spectrum(problem, grid, count=1)
        lam_mins.append(result.eigenvalues[0])

    if all(lm >= -BOUNDED_TOL for lm in lam_mins):
        classification = "BOUNDED"
    elif (all(b < a for a, b in zip(lam_mins, lam_mins[1:]))
          and lam_mins[-1] < UNBOUNDED_THRESHOLD):
        classification = "UNBOUNDED"
    else:
        classification = "INCONCLUSIVE"
    expected = "BOUNDED" if problem.condition else "UNBOUNDED"
    return ScanReport(problem, tuple(eps_list), tuple(lam_mins),
                      classification, expected,
                      classification == expected)
