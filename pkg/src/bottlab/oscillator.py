"""Truncated harmonic-oscillator model with Clifford-valued coefficients.

The Hilbert space is spanned by products of normalized Hermite functions
``psi_k1(x_1) .. psi_kn(x_n)`` with total level ``k_1 + .. + k_n <= level``,
tensored with the ``2^n`` blades of the Euclidean Clifford algebra; blade
degree provides the grading.  On it live the odd operators

    C = sum_i  (x_i .) (x) lambda(e_i)        (position part)
    D = sum_i  (d/dx_i) (x) rho~(e_i)         (derivative part)
    B = C + D                                 (the supercharge)

where lambda is left multiplication and rho~ the grading-twisted right
multiplication.  The square B^2 = C^2 + D^2 + N holds exactly on the
interior window (total level <= level - 2); outside it, truncation edge
effects appear, which is why every spectral statement here is windowed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .clifford import (
    MultiVector,
    Signature,
    blade_parities,
    left_mult_operator,
    number_operator,
)
from .funcalc import GradedFunction, matrix_function
from .graded import GradedMatrix


# ---------------------------------------------------------------------------
# one-dimensional building blocks


def position_matrix(level: int) -> np.ndarray:
    """Multiplication by x on Hermite functions 0..level (tridiagonal)."""
    if level < 1:
        raise ValueError("level must be >= 1")
    off = np.sqrt((np.arange(level) + 1) / 2.0)
    return np.diag(off, 1) + np.diag(off, -1)


def derivative_matrix(level: int) -> np.ndarray:
    """d/dx on Hermite functions 0..level (antisymmetric tridiagonal).

    Column k holds +sqrt(k/2) at row k-1 and -sqrt((k+1)/2) at row k+1,
    from d/dx psi_k = sqrt(k/2) psi_{k-1} - sqrt((k+1)/2) psi_{k+1}.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    off = np.sqrt((np.arange(level) + 1) / 2.0)
    return np.diag(off, 1) - np.diag(off, -1)


@lru_cache(maxsize=64)
def _gh_nodes(count: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Hermite nodes/weights for the weight exp(-x^2)."""
    x, w = np.polynomial.hermite.hermgauss(count)
    return x, w


def hermite_rows(kmax: int, x: np.ndarray) -> np.ndarray:
    """Values of the Gaussian-stripped normalized Hermite functions.

    Row k evaluated at the points x equals psi_k(x) * exp(x^2 / 2); against
    the Gauss-Hermite weight exp(-x^2) these rows are orthonormal, so
    quadrature Gram matrices built from them converge to Hermite-function
    matrix elements.
    """
    rows = np.empty((kmax + 1, len(x)))
    rows[0] = math.pi ** -0.25
    if kmax >= 1:
        rows[1] = math.sqrt(2.0) * x * rows[0]
    for k in range(1, kmax):
        rows[k + 1] = math.sqrt(2.0 / (k + 1)) * x * rows[k] - math.sqrt(k / (k + 1)) * rows[k - 1]
    return rows


# ---------------------------------------------------------------------------
# basis


@lru_cache(maxsize=None)
def _simplex_mindices(dim: int, level: int) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], budget: int):
        if len(prefix) == dim:
            out.append(prefix)
            return
        for k in range(budget + 1):
            rec(prefix + (k,), budget - k)

    rec((), level)
    out.sort(key=lambda m: (sum(m), m))
    return tuple(out)


@dataclass(frozen=True)
class HermiteBasis:
    """Indexing data for the truncated oscillator space.

    Basis order is spatial-major: full index = mindex_position * 2^dim +
    blade_mask, with multi-indices sorted by total level then
    lexicographically.
    """

    dim: int
    level: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.level < 4:
            raise ValueError("level must be >= 4")

    @property
    def sig(self) -> Signature:
        return Signature(self.dim, 0)

    @property
    def mindices(self) -> tuple[tuple[int, ...], ...]:
        return _simplex_mindices(self.dim, self.level)

    @property
    def spatial_size(self) -> int:
        return len(self.mindices)

    @property
    def blade_count(self) -> int:
        return 1 << self.dim

    @property
    def size(self) -> int:
        return self.spatial_size * self.blade_count

    def mindex_position(self, m: tuple[int, ...]) -> int:
        return _mindex_lookup(self.dim, self.level)[m]

    def parity(self) -> np.ndarray:
        """Blade parity of every full basis index."""
        return np.tile(blade_parities(self.sig), self.spatial_size)

    def total_levels(self) -> np.ndarray:
        """Total spatial level of every full basis index."""
        per_m = np.array([sum(m) for m in self.mindices])
        return np.repeat(per_m, self.blade_count)

    def interior_mask(self, depth: int = 2) -> np.ndarray:
        """Boolean mask of states with total level <= level - depth."""
        return self.total_levels() <= self.level - depth


@lru_cache(maxsize=None)
def _mindex_lookup(dim: int, level: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(_simplex_mindices(dim, level))}


def _axis_raising(basis: HermiteBasis, axis: int) -> np.ndarray:
    """Matrix with entries sqrt((k_axis + 1)/2) from m to m + e_axis."""
    s = basis.spatial_size
    out = np.zeros((s, s))
    lookup = _mindex_lookup(basis.dim, basis.level)
    for i, m in enumerate(basis.mindices):
        if sum(m) < basis.level:
            up = m[:axis] + (m[axis] + 1,) + m[axis + 1:]
            out[lookup[up], i] = math.sqrt((m[axis] + 1) / 2.0)
    return out


def axis_position(basis: HermiteBasis, axis: int) -> np.ndarray:
    """Multiplication by x_axis on the truncated simplex (symmetric)."""
    u = _axis_raising(basis, axis)
    return u + u.T


def axis_derivative(basis: HermiteBasis, axis: int) -> np.ndarray:
    """d/dx_axis on the truncated simplex (antisymmetric)."""
    u = _axis_raising(basis, axis)
    return u.T - u


# ---------------------------------------------------------------------------
# operator assembly


@dataclass
class OscillatorRep:
    """Assembled operator family on one truncated basis."""

    basis: HermiteBasis
    clifford: GradedMatrix  # position part C
    dirac: GradedMatrix     # derivative part D
    bott: GradedMatrix      # supercharge B = C + D
    number: GradedMatrix    # blade number operator N

    @property
    def interior(self) -> np.ndarray:
        return self.basis.interior_mask()

    def restricted(self, mat: np.ndarray, depth: int = 2) -> np.ndarray:
        """Interior block of a full-space matrix."""
        mask = self.basis.interior_mask(depth)
        return mat[np.ix_(mask, mask)]


def clifford_operator(basis: HermiteBasis) -> GradedMatrix:
    """C = sum_i x_i (x) lambda(e_i); odd, symmetric."""
    out = np.zeros((basis.size, basis.size))
    for axis in range(basis.dim):
        e = MultiVector.generator(basis.sig, axis + 1)
        out += np.kron(axis_position(basis, axis), left_mult_operator(e))
    return GradedMatrix(out, basis.parity())


def dirac_operator(basis: HermiteBasis) -> GradedMatrix:
    """D = sum_i d/dx_i (x) rho~(e_i); odd, symmetric.

    Both factors of each summand are antisymmetric, so their Kronecker
    product is symmetric even though neither factor is.
    """
    from .clifford import twisted_right_mult_operator

    out = np.zeros((basis.size, basis.size))
    for axis in range(basis.dim):
        e = MultiVector.generator(basis.sig, axis + 1)
        out += np.kron(axis_derivative(basis, axis), twisted_right_mult_operator(e))
    return GradedMatrix(out, basis.parity())


def bott_operator(basis: HermiteBasis) -> GradedMatrix:
    return clifford_operator(basis) + dirac_operator(basis)


def blade_number_operator(basis: HermiteBasis) -> GradedMatrix:
    """N = 1 (x) sum_i rho~(e_i) lambda(e_i); diagonal, eigenvalue 2d - n."""
    n_blades = number_operator(basis.sig)
    out = np.kron(np.eye(basis.spatial_size), n_blades)
    return GradedMatrix(out, basis.parity())


@lru_cache(maxsize=8)
def oscillator_rep(dim: int, level: int) -> OscillatorRep:
    basis = HermiteBasis(dim, level)
    c = clifford_operator(basis)
    d = dirac_operator(basis)
    return OscillatorRep(basis, c, d, c + d, blade_number_operator(basis))


def b_squared_identity_check(rep: OscillatorRep) -> float:
    """Interior-windowed residual of B^2 = C^2 + D^2 + N (spectral norm)."""
    lhs = (rep.bott @ rep.bott).mat
    rhs = (rep.clifford @ rep.clifford).mat + (rep.dirac @ rep.dirac).mat + rep.number.mat
    return float(np.linalg.norm(rep.restricted(lhs - rhs), 2))


# ---------------------------------------------------------------------------
# spectra


@dataclass
class SpectrumResult:
    operator: str
    eigenvalues: np.ndarray
    clusters: list[tuple[float, int]]
    window: float
    kernel_overlap: float | None = None

    def cluster_dict(self) -> dict[float, int]:
        return dict(self.clusters)


def _cluster(values: np.ndarray, tol: float) -> list[tuple[float, int]]:
    clusters: list[tuple[float, int]] = []
    for v in values:
        if clusters and abs(v - clusters[-1][0]) <= tol:
            val, mult = clusters[-1]
            clusters[-1] = (val, mult + 1)
        else:
            snapped = round(v) if abs(v - round(v)) <= tol else v
            clusters.append((float(snapped), 1))
    return clusters


def spectrum(rep: OscillatorRep, operator: str = "bott-squared",
             cluster_tol: float = 1e-8) -> SpectrumResult:
    """Interior-windowed eigenvalues with multiplicities.

    Only eigenvalues up to the truncation level are reported: the interior
    block of B^2 is exactly diagonal, but levels near the cut have no room
    left for the full multiplet structure, so clusters above the window mix
    truncated and untruncated states.
    """
    if operator == "bott-squared":
        full = (rep.bott @ rep.bott).mat
    elif operator == "harmonic":
        full = (rep.clifford @ rep.clifford).mat + (rep.dirac @ rep.dirac).mat
    elif operator == "number":
        full = rep.number.mat
    else:
        raise ValueError(f"unknown operator {operator!r}")

    block = rep.restricted(full)
    vals, vecs = np.linalg.eigh(block)

    if operator == "number":
        window = float(rep.basis.dim)
        keep = vals <= window + cluster_tol
    else:
        window = float(rep.basis.level)
        keep = vals <= window + cluster_tol
    clusters = _cluster(vals[keep], cluster_tol)

    overlap = None
    if operator == "bott-squared":
        # ground state: the Gaussian times the scalar blade
        mask = rep.basis.interior_mask()
        ground_full = rep.basis.mindex_position((0,) * rep.basis.dim) * rep.basis.blade_count
        ground = int(np.cumsum(mask)[ground_full] - 1)
        kernel_vec = vecs[:, int(np.argmin(vals))]
        overlap = float(abs(kernel_vec[ground]) / np.linalg.norm(kernel_vec))

    return SpectrumResult(operator, vals, clusters, window, overlap)


def level_multiplicity(dim: int, half_eigenvalue: int) -> int:
    """Count of basis states with total level + blade degree = m.

    Splitting m = (spatial level) + (blade degree d) gives
    sum_d  C(dim, d) * C(m - d + dim - 1, dim - 1).
    """
    m = half_eigenvalue
    total = 0
    for d in range(0, min(dim, m) + 1):
        total += math.comb(dim, d) * math.comb(m - d + dim - 1, dim - 1)
    return total


# ---------------------------------------------------------------------------
# Clifford-valued multiplication operators


@dataclass
class CliffFunction:
    """Function on R^dim with values in the Euclidean Clifford algebra.

    ``coeff_fn`` maps an (m, dim) array of points to an (m, 2^dim) array of
    blade coefficients.  ``parity`` is the blade parity of the values (0, 1,
    or None when mixed).
    """

    dim: int
    coeff_fn: Callable[[np.ndarray], np.ndarray]
    name: str
    parity: int | None = None

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        vals = self.coeff_fn(pts)
        expected = (pts.shape[0], 1 << self.dim)
        if vals.shape != expected:
            raise ValueError(f"coefficient array has shape {vals.shape}, expected {expected}")
        return vals

    def sup_norm(self, radius: float = 10.0, samples: int = 101) -> float:
        """Max Euclidean length of the coefficient vector on an axis grid."""
        grids = np.meshgrid(*([np.linspace(-radius, radius, samples)] * self.dim), indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=-1)
        return float(np.linalg.norm(self(pts), axis=1).max())


def cliff_scalar(fn: Callable[[np.ndarray], np.ndarray], dim: int, name: str,
                 parity: int | None = 0) -> CliffFunction:
    """Scalar-blade-valued function from a map (m, dim) -> (m,)."""

    def coeffs(pts: np.ndarray) -> np.ndarray:
        out = np.zeros((pts.shape[0], 1 << dim))
        out[:, 0] = fn(pts)
        return out

    return CliffFunction(dim, coeffs, name, parity)


def rescale(h: CliffFunction, t: float) -> CliffFunction:
    """Flattened function v -> h(v / t); defined for t >= 1."""
    if not t >= 1:
        raise ValueError(f"rescaling parameter must be >= 1, got {t}")
    fn = h.coeff_fn
    return CliffFunction(h.dim, lambda pts: fn(pts / t), f"{h.name}@t={t:g}", h.parity)


def multiplication_operator(h: CliffFunction, basis: HermiteBasis,
                            nodes: int | None = None) -> GradedMatrix:
    """Gauss-Hermite discretization of pointwise multiplication by h.

    Each blade coefficient contributes kron(Gram, lambda(blade)) where the
    Gram matrix pairs truncated Hermite functions against the coefficient.
    The default node count (2 * level + 16 per axis) is converged for the
    Gaussian-type symbols used here; passing ``nodes=level + 1`` instead
    reproduces functional calculus of the position operator exactly, since
    the quadrature built on the eigenvalues of the truncated position matrix
    *is* evaluation at those eigenvalues.
    """
    if h.dim != basis.dim:
        raise ValueError(f"function dimension {h.dim} != basis dimension {basis.dim}")
    q = nodes if nodes is not None else 2 * basis.level + 16
    x, w = _gh_nodes(q)
    rows = hermite_rows(basis.level, x)

    # tensor grid of node indices; points and weights follow from it
    idx_grids = np.meshgrid(*([np.arange(q)] * basis.dim), indexing="ij")
    node_idx = np.stack([g.ravel() for g in idx_grids], axis=-1)  # (points, dim)
    pts = x[node_idx]
    weights = w[node_idx].prod(axis=1)

    # spatial basis values on the grid, one row per multi-index
    psi = np.ones((basis.spatial_size, len(pts)))
    for axis in range(basis.dim):
        k_of_m = np.array([m[axis] for m in basis.mindices])
        psi *= rows[k_of_m][:, node_idx[:, axis]]

    values = h(pts)  # (points, blades)
    out = np.zeros((basis.size, basis.size))
    for c in range(basis.blade_count):
        col = values[:, c]
        if not np.any(col):
            continue
        gram = (psi * (weights * col)) @ psi.T
        blade_op = left_mult_operator(MultiVector.blade(basis.sig, c))
        out += np.kron(gram, blade_op)
    return GradedMatrix(out, basis.parity())


@dataclass
class CompactnessProfile:
    """Singular-value decay of f(B) M_h."""

    singular_values: np.ndarray
    tol: float

    @property
    def tail_start(self) -> int:
        """Index of the first singular value below tol (len if none is)."""
        below = np.nonzero(self.singular_values < self.tol)[0]
        return int(below[0]) if len(below) else len(self.singular_values)

    @property
    def decayed(self) -> bool:
        return bool(self.singular_values[-1] < self.tol)


def compactness_profile(f: GradedFunction, h: CliffFunction, rep: OscillatorRep,
                        tol: float = 1e-8) -> CompactnessProfile:
    """Singular values of f(B) M_h, sorted descending.

    For vanishing-at-infinity symbols this product is a compact operator in
    the untruncated model; finitely many singular values above any
    threshold is the finite-dimensional shadow of that.
    """
    op = matrix_function(f, rep.bott).mat @ multiplication_operator(h, rep.basis).mat
    svals = np.linalg.svd(op, compute_uv=False)
    return CompactnessProfile(svals, tol)
