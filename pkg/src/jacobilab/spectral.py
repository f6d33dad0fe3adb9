"""Spectrum of the stability operator J = Laplacian + q on flat tori.

Eigenvalues follow the convention J f + lambda f = 0, i.e. they are the
eigenvalues of -Laplacian - q, so strong stability reads lambda_1 >= 0.

For potentials constant along the fibers the problem on the L x ell torus
reduces to the circle of length L: fiber modes only add (2 pi k / ell)^2 >= 0
and never lower the bottom of the spectrum.  Two independent discretizations
of the reduced problem are provided:

* ``fourier`` (primary): Galerkin in the orthonormal trigonometric basis
  [1, cos_k, sin_k] / norms, k = 1..K.  The kinetic part is diagonal with
  entries (2 pi k / L)^2 and the potential couples modes through the real
  Fourier coefficients of q; the assembled matrix is real symmetric of size
  2K + 1.  Spectrally accurate for smooth potentials.

* ``fd`` (oracle): second-order central differences on a periodic grid of N
  points, optionally Richardson-extrapolated from the N/2 and N solves.

Both backends diagonalize with dense symmetric LAPACK routines; matrix sizes
stay in the few-thousands, so no sparse machinery is involved.  A full 2D
tensor solve over both mode directions (:func:`solve_torus_2d`) is available
to check the reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, FieldError, JacobilabError
from .fields import ScalarField1D
from .surface import HopfTorus, HorizontalSlice, SurfaceModel, potential_field

DEFAULT_TRUNCATION = 64
DEFAULT_FD_TRUNCATION = 2048
DEFAULT_CONV_TOL = 1e-6


@dataclass(frozen=True)
class SpectralProblem:
    """Operator -Laplacian - q on the flat torus circle_length x fiber_length.

    ``potential`` must be periodic with period circle_length and is taken
    constant along the fibers.  ``truncation`` is the Fourier mode count K
    for the Galerkin backend and the grid size N for the finite-difference
    backend.
    """

    circle_length: float
    fiber_length: float
    potential: ScalarField1D
    truncation: int = DEFAULT_TRUNCATION
    conv_tol: float = DEFAULT_CONV_TOL

    def __post_init__(self):
        if not (math.isfinite(self.circle_length) and self.circle_length > 0):
            raise FieldError(f"circle_length must be positive, got {self.circle_length}")
        if not (math.isfinite(self.fiber_length) and self.fiber_length > 0):
            raise FieldError(f"fiber_length must be positive, got {self.fiber_length}")
        if not self.potential.is_periodic or \
                not math.isclose(self.potential.period, self.circle_length, rel_tol=1e-12):
            raise FieldError("potential period must equal circle_length")
        if self.truncation < 4:
            raise FieldError("truncation must be >= 4")

    @property
    def area(self) -> float:
        return self.circle_length * self.fiber_length


@dataclass(frozen=True)
class SpectralResult:
    """Lowest part of the spectrum plus the positive ground state.

    ``ground_state`` is sign-fixed to positive mean and normalized so that
    its squared surface integral equals the torus area.  ``eigenvalues`` are
    the lowest m values in ascending order (with multiplicity).
    """

    lambda1: float
    eigenvalues: np.ndarray
    ground_state: ScalarField1D
    backend: str
    convergence_estimate: float
    truncation: int
    area: float

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", np.asarray(self.eigenvalues, dtype=float))


# --- Fourier-Galerkin backend ------------------------------------------------

def real_fourier_coefficients(samples: np.ndarray, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients a[0..nmax], b[0..nmax] of q = a0 + sum a_n cos + b_n sin.

    Computed from the DFT of the samples; harmonics beyond the grid Nyquist
    are taken as zero (exact for band-limited potentials, spectrally accurate
    otherwise).
    """
    n = samples.size
    c = np.fft.rfft(samples) / n
    a = np.zeros(nmax + 1)
    b = np.zeros(nmax + 1)
    # stop below the Nyquist mode of even grids, where cos amplitudes alias
    avail = min(nmax, (n - 1) // 2)
    a[0] = c[0].real
    a[1:avail + 1] = 2.0 * c[1:avail + 1].real
    b[1:avail + 1] = -2.0 * c[1:avail + 1].imag
    return a, b


def assemble_fourier(length: float, q_samples: np.ndarray, K: int) -> np.ndarray:
    """Real symmetric Galerkin matrix of -d^2/ds^2 - q, size 2K + 1.

    Basis order [const, cos_1..cos_K, sin_1..sin_K]; potential entries come
    from product-to-sum identities for the trigonometric basis, e.g.
    <cos_k| q |cos_j> = a_{k+j}/2 + a_{|k-j|}/2 (a_0 on the diagonal).
    """
    a, b = real_fourier_coefficients(q_samples, 2 * K)
    n = 2 * K + 1
    k = np.arange(1, K + 1)
    om2 = (2.0 * np.pi / length) ** 2

    H = np.zeros((n, n))
    H[np.arange(1, K + 1), np.arange(1, K + 1)] = om2 * k.astype(float) ** 2
    H[np.arange(K + 1, n), np.arange(K + 1, n)] = om2 * k.astype(float) ** 2

    V = np.zeros((n, n))
    V[0, 0] = a[0]
    V[0, 1:K + 1] = a[1:K + 1] / np.sqrt(2.0)
    V[0, K + 1:] = b[1:K + 1] / np.sqrt(2.0)
    V[1:K + 1, 0] = V[0, 1:K + 1]
    V[K + 1:, 0] = V[0, K + 1:]
    kk, jj = np.meshgrid(k, k, indexing="ij")
    plus = kk + jj
    diff = np.abs(kk - jj)
    sgn = np.sign(kk - jj)
    Vcc = 0.5 * a[plus] + np.where(kk == jj, a[0], 0.5 * a[diff])
    Vss = np.where(kk == jj, a[0], 0.5 * a[diff]) - 0.5 * a[plus]
    Vcs = 0.5 * b[plus] - 0.5 * sgn * b[diff]
    V[1:K + 1, 1:K + 1] = Vcc
    V[K + 1:, K + 1:] = Vss
    V[1:K + 1, K + 1:] = Vcs
    V[K + 1:, 1:K + 1] = Vcs.T

    H -= V
    _require_symmetric(H)
    return H


def _require_symmetric(H: np.ndarray) -> None:
    skew = np.max(np.abs(H - H.T))
    if skew > 1e-12 * max(1.0, np.max(np.abs(H))):
        raise JacobilabError(f"assembled operator is not symmetric (skew {skew:g})")


def _trig_basis(length: float, K: int, grid: np.ndarray) -> np.ndarray:
    n = 2 * K + 1
    B = np.empty((grid.size, n))
    B[:, 0] = 1.0 / math.sqrt(length)
    arg = (2.0 * np.pi / length) * np.outer(grid, np.arange(1, K + 1))
    B[:, 1:K + 1] = math.sqrt(2.0 / length) * np.cos(arg)
    B[:, K + 1:] = math.sqrt(2.0 / length) * np.sin(arg)
    return B


def _fourier_lambda1(length: float, q_samples: np.ndarray, K: int) -> float:
    return float(np.linalg.eigvalsh(assemble_fourier(length, q_samples, K))[0])


def _normalize_ground_state(values: np.ndarray, length: float) -> np.ndarray:
    """Sign-fix to positive mean and scale so the circle integral of rho^2 is
    the circle length (hence the surface integral is the torus area)."""
    if np.mean(values) < 0:
        values = -values
    if np.min(values) <= 0:
        raise JacobilabError("computed ground state is not strictly positive")
    norm2 = np.sum(values**2) * (length / values.size)
    return values * math.sqrt(length / norm2)


# --- finite-difference backend ------------------------------------------------

def assemble_fd(length: float, q_samples: np.ndarray) -> np.ndarray:
    """Periodic second-order central-difference matrix of -d^2/ds^2 - q."""
    n = q_samples.size
    h = length / n
    A = np.diag(2.0 / h**2 - q_samples)
    idx = np.arange(n)
    A[idx, (idx + 1) % n] -= 1.0 / h**2
    A[idx, (idx - 1) % n] -= 1.0 / h**2
    return A


def _fd_eigs(problem: SpectralProblem, n_grid: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    q = problem.potential.resampled(n_grid).samples
    A = assemble_fd(problem.circle_length, q)
    _require_symmetric(A)
    w, v = np.linalg.eigh(A)
    return w[:m], v[:, 0]


# --- public solves -------------------------------------------------------------

def solve(problem: SpectralProblem, m: int = 6, backend: str = "fourier",
          richardson: bool = False) -> SpectralResult:
    """Lowest ``m`` eigenvalues and the ground state of -Laplacian - q.

    The reported convergence_estimate is |lambda1(T) - lambda1(T/2)| over the
    problem truncation T; a value above the problem's conv_tol raises
    :class:`ConvergenceError`.  ``richardson`` applies h^2 extrapolation to
    the fd eigenvalues (the fourier backend ignores it).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    L = problem.circle_length
    q_field = problem.potential

    if backend == "fourier":
        K = problem.truncation
        H = assemble_fourier(L, q_field.samples, K)
        w, vecs = np.linalg.eigh(H)
        eigenvalues = w[:m]
        estimate = abs(w[0] - _fourier_lambda1(L, q_field.samples, max(4, K // 2)))
        rho = _trig_basis(L, K, q_field.grid) @ vecs[:, 0]
        grid_period = L
    elif backend == "fd":
        n_grid = problem.truncation
        if n_grid < MIN_FD_GRID:
            raise FieldError(f"fd backend needs truncation >= {MIN_FD_GRID}")
        w_full, v0 = _fd_eigs(problem, n_grid, m)
        w_half, _ = _fd_eigs(problem, n_grid // 2, m)
        estimate = abs(w_full[0] - w_half[0])
        if richardson:
            eigenvalues = (4.0 * w_full - w_half) / 3.0
        else:
            eigenvalues = w_full.copy()
        rho = v0
        grid_period = L
    else:
        raise ValueError(f"unknown backend {backend!r}")

    if estimate > problem.conv_tol:
        raise ConvergenceError(
            f"convergence estimate {estimate:g} above tolerance {problem.conv_tol:g}; "
            f"increase the truncation")

    rho = _normalize_ground_state(rho, L)
    return SpectralResult(
        lambda1=float(eigenvalues[0]),
        eigenvalues=eigenvalues,
        ground_state=ScalarField1D(rho, period=grid_period),
        backend=backend if not (backend == "fd" and richardson) else "fd_richardson",
        convergence_estimate=float(estimate),
        truncation=problem.truncation,
        area=problem.area,
    )


MIN_FD_GRID = 16


def solve_torus_2d(problem: SpectralProblem, m: int = 6,
                   fiber_truncation: int = 8) -> SpectralResult:
    """Full tensor-mode Galerkin solve on the L x ell torus.

    Couples circle modes through the potential and carries fiber modes
    |k| <= fiber_truncation explicitly; for fiber-constant potentials the
    bottom of the spectrum must coincide with the reduced 1D solve.
    """
    L, ell = problem.circle_length, problem.fiber_length
    K1 = problem.truncation
    H1 = assemble_fourier(L, problem.potential.samples, K1)
    n1 = 2 * K1 + 1
    k_fiber = np.concatenate(([0.0],
                              np.arange(1, fiber_truncation + 1, dtype=float),
                              np.arange(1, fiber_truncation + 1, dtype=float)))
    fiber_kinetic = (2.0 * np.pi / ell) ** 2 * k_fiber**2
    n2 = k_fiber.size
    H = np.kron(np.eye(n2), H1) + np.kron(np.diag(fiber_kinetic), np.eye(n1))
    _require_symmetric(H)
    w, v = np.linalg.eigh(H)
    # the ground state is fiber-constant: read it off the zero fiber-mode block
    v0 = v[:n1, 0]
    leak = float(np.linalg.norm(v[n1:, 0]))
    if leak > 1e-8:
        raise JacobilabError(f"2D ground state leaks into fiber modes (norm {leak:g})")
    rho = _trig_basis(L, K1, problem.potential.grid) @ v0
    rho = _normalize_ground_state(rho, L)
    estimate = abs(w[0] - _fourier_lambda1(L, problem.potential.samples, max(4, K1 // 2)))
    return SpectralResult(
        lambda1=float(w[0]),
        eigenvalues=w[:m],
        ground_state=ScalarField1D(rho, period=L),
        backend="fourier_2d",
        convergence_estimate=float(estimate),
        truncation=problem.truncation,
        area=problem.area,
    )


def surface_spectral_problem(s: HopfTorus, truncation: int = DEFAULT_TRUNCATION,
                             conv_tol: float = DEFAULT_CONV_TOL) -> SpectralProblem:
    """Stability-operator eigenvalue problem of a Hopf torus."""
    q = potential_field(s)
    return SpectralProblem(circle_length=s.curve_length, fiber_length=s.fiber_length,
                           potential=q, truncation=truncation, conv_tol=conv_tol)


def solve_surface(s: SurfaceModel, m: int = 6, backend: str = "fourier",
                  truncation: int | None = None, richardson: bool = False,
                  conv_tol: float = DEFAULT_CONV_TOL) -> SpectralResult:
    """Spectrum of the stability operator of a surface.

    Horizontal slices are totally geodesic with vanishing normal Ricci
    curvature, so their operator is the plain Laplacian: the bottom eigenpair
    (0, constant) is exact on any closed surface and is returned in closed
    form.  Hopf tori are solved numerically on their reduced circle.
    """
    if isinstance(s, HorizontalSlice):
        rho = ScalarField1D.constant(1.0, period=1.0, n=8)
        return SpectralResult(lambda1=0.0, eigenvalues=np.array([0.0]),
                              ground_state=rho, backend="closed_form",
                              convergence_estimate=0.0, truncation=0, area=s.area)
    if truncation is None:
        truncation = DEFAULT_FD_TRUNCATION if backend == "fd" else DEFAULT_TRUNCATION
    problem = surface_spectral_problem(s, truncation=truncation, conv_tol=conv_tol)
    return solve(problem, m=m, backend=backend, richardson=richardson)


# --- variational quantities -----------------------------------------------------

def rayleigh_quotient(problem: SpectralProblem, f: ScalarField1D) -> float:
    """(integral |f'|^2 - integral q f^2) / integral f^2 on the circle.

    Uses spectral differentiation and trapezoid quadrature; by the min-max
    characterization the value is always >= lambda1.
    """
    if not f.same_grid(problem.potential):
        raise FieldError("test function must live on the potential grid")
    f2 = f.samples**2
    denom = float(np.sum(f2))
    if denom == 0.0:
        raise ValueError("test function must be nonzero")
    df = f.derivative("spectral").samples
    num = float(np.sum(df**2) - np.sum(problem.potential.samples * f2))
    return num / denom


def alpha_invariant(rho: ScalarField1D, area: float) -> float:
    """Surface integral of |grad log rho|^2 for a positive fiber-constant rho.

    Independent of the normalization of rho; zero exactly for constants.
    """
    if np.min(rho.samples) <= 0.0:
        raise ValueError("rho must be strictly positive")
    if not (math.isfinite(area) and area > 0):
        raise ValueError("area must be positive")
    L = rho.period
    if L is None:
        raise FieldError("rho must be periodic")
    ell = area / L
    dr = rho.derivative("spectral").samples
    integrand = (dr / rho.samples) ** 2
    return ell * float(np.sum(integrand)) * (L / rho.n)


def lambda1_identity_check(s: SurfaceModel, result: SpectralResult) -> float:
    """Residual of lambda1 = -(alpha + integral of q) / area.

    ``result`` must come from the surface's own spectral problem; alpha is
    evaluated on the computed ground state.
    """
    if isinstance(s, HorizontalSlice):
        return abs(result.lambda1)
    q = potential_field(s)
    alpha = alpha_invariant(result.ground_state, s.area)
    total_q = s.surface_integral(q.samples)
    return abs(result.lambda1 + (alpha + total_q) / s.area)
