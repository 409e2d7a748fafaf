"""Verification sweeps: decay curves and pass/fail reports for the operator model.

Each suite measures one analytic statement at finite truncation: commutator
decay of the asymptotic morphism, the Mehler factorization of the harmonic
semigroup, the composition/homotopy behaviour of the supercharge calculus,
and the algebraic endpoint identities.  A suite produces a
:class:`VerificationReport` with a datapoint curve, an optional fitted decay
exponent, and explicit pass criteria.

Truncation policy: operator-norm claims are evaluated on interior windows
(total Hermite level bounded away from the cut) because the truncated
supercharge has one spurious near-kernel state concentrated at the top
level; see the notes emitted by the affected suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .clifford import (
    MultiVector,
    Signature,
    algebra_isomorphism_check,
    mv_multiply,
    regular_representation,
)
from .funcalc import (
    GradedFunction,
    delta_via_xr_check,
    gaussian,
    matrix_function,
    scale,
    x_gaussian,
)
from .graded import (
    GradedMatrix,
    flip_simple,
    flip_unitary,
    graded_commutator,
    graded_tensor,
    grading_signs,
    involution,
    iota,
)
from .oscillator import (
    CliffFunction,
    HermiteBasis,
    OscillatorRep,
    b_squared_identity_check,
    compactness_profile,
    level_multiplicity,
    multiplication_operator,
    oscillator_rep,
    rescale,
    spectrum,
)

DEFAULT_T_GRID = tuple(float(t) for t in np.geomspace(1.0, 32.0, 11))
DEFAULT_S_GRID = tuple(float(s) for s in np.geomspace(1.0, 0.05, 9))
DEFAULT_MEHLER_S = (0.5, 0.3, 0.2, 0.1, 0.05)

# below this magnitude, curve values are floating-point noise and monotonicity
# is not meaningful
NOISE_FLOOR = 1e-12

DELTA_LEVELS = (12, 18, 24)


@dataclass
class SweepConfig:
    """Shared parameters for the verification suites."""

    dim: int = 1
    level: int = 12
    t_grid: tuple = DEFAULT_T_GRID
    s_grid: tuple = DEFAULT_S_GRID
    mehler_s: tuple = DEFAULT_MEHLER_S
    tol: float | None = None  # per-suite default when None
    h_choices: tuple = ("uP", "vP", "bump")

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.level < 4:
            raise ValueError("levels must be >= 4")
        ts = tuple(float(t) for t in self.t_grid)
        if len(ts) < 2 or any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("t_grid must be strictly increasing")
        if ts[0] < 1.0:
            raise ValueError("t_grid must start at t >= 1")
        self.t_grid = ts
        ss = tuple(float(s) for s in self.s_grid)
        if any(s <= 0 for s in ss) or any(b >= a for a, b in zip(ss, ss[1:])):
            raise ValueError("s_grid must be strictly decreasing and positive")
        self.s_grid = ss
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive")

    def params_dict(self) -> dict:
        return {
            "dim": self.dim,
            "levels": self.level,
            "t_grid": [round(t, 12) for t in self.t_grid],
            "s_grid": [round(s, 12) for s in self.s_grid],
            "h_choices": list(self.h_choices),
        }


@dataclass
class VerificationReport:
    """Outcome of one suite: datapoints, fit, verdict, and diagnostics."""

    suite: str
    params: dict
    datapoints: list  # (t, value) pairs
    curves: dict      # curve name -> list of values aligned with datapoints
    fit: tuple | None  # (exponent, r_squared)
    passed: bool
    tol: float
    notes: list

    def to_json_dict(self) -> dict:
        return {
            "schema": "v1",
            "suite": self.suite,
            "params": self.params,
            "datapoints": [{"t": t, "value": v} for t, v in self.datapoints],
            "fit": None if self.fit is None else {"exponent": self.fit[0], "r2": self.fit[1]},
            "pass": bool(self.passed),
            "tol": self.tol,
            "notes": list(self.notes),
        }

    def csv_rows(self) -> list:
        """(suite, curve, t, value) rows, one per curve per grid point."""
        rows = []
        ts = [t for t, _ in self.datapoints]
        for name in sorted(self.curves):
            for t, v in zip(ts, self.curves[name]):
                rows.append((self.suite, name, t, v))
        return rows


# ---------------------------------------------------------------------------
# numerical helpers


def operator_norm(mat) -> float:
    m = mat.mat if isinstance(mat, GradedMatrix) else np.asarray(mat)
    return float(np.linalg.norm(m, 2))


def power_iteration_norm(mat, max_iter: int = 1000, tol: float = 1e-14, seed: int = 7) -> float:
    """Largest singular value by power iteration on A^T A (independent route)."""
    m = mat.mat if isinstance(mat, GradedMatrix) else np.asarray(mat)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(m.shape[1])
    nx = np.linalg.norm(x)
    if nx == 0 or not np.any(m):
        return 0.0
    x /= nx
    sigma = 0.0
    for _ in range(max_iter):
        z = m.T @ (m @ x)
        nz = np.linalg.norm(z)
        if nz == 0:
            return 0.0
        x = z / nz
        new_sigma = float(np.linalg.norm(m @ x))
        if abs(new_sigma - sigma) <= tol * max(new_sigma, 1.0):
            sigma = new_sigma
            break
        sigma = new_sigma
    return sigma


def _crosscheck_norms(samples: list) -> tuple[bool, str]:
    """SVD norm vs power iteration on up to 3 sampled matrices."""
    if not samples:
        return True, "norm cross-check: no samples"
    picks = [samples[0], samples[len(samples) // 2], samples[-1]][: len(samples)]
    worst = 0.0
    for m in picks:
        a = operator_norm(m)
        b = power_iteration_norm(m)
        worst = max(worst, abs(a - b) / max(1.0, a))
    ok = worst <= 1e-8
    return ok, f"norm cross-check (svd vs power iteration, {len(picks)} samples): max deviation {worst:.2e}"


def windowed_norm(mat, basis: HermiteBasis, depth: int = 2) -> float:
    """Spectral norm of the interior block (total level <= level - depth)."""
    m = mat.mat if isinstance(mat, GradedMatrix) else np.asarray(mat)
    mask = basis.interior_mask(depth)
    return float(np.linalg.norm(m[np.ix_(mask, mask)], 2))


def decay_fit(ts: Sequence[float], vals: Sequence[float]) -> tuple | None:
    """Least-squares slope and r^2 of log(value) against log(t)."""
    pts = [(t, v) for t, v in zip(ts, vals) if v > 1e-300 and t > 0]
    if len(pts) < 2:
        return None
    lx = np.log([p[0] for p in pts])
    ly = np.log([p[1] for p in pts])
    if np.ptp(lx) == 0:
        return None
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(slope), float(r2)


def monotone_after(ts: Sequence[float], vals: Sequence[float], start: float = 2.0,
                   jitter: float = 1.05, floor: float = NOISE_FLOOR) -> bool:
    """Non-increasing after burn-in, with jitter allowance and a noise floor."""
    idx = [i for i, t in enumerate(ts) if t >= start]
    for i, j in zip(idx, idx[1:]):
        if vals[j] <= floor and vals[i] <= floor:
            continue
        if vals[j] > vals[i] * jitter + floor:
            return False
    return True


# ---------------------------------------------------------------------------
# test-function constructions


def bott_map(f: GradedFunction, dim: int) -> CliffFunction:
    """Radial Clifford-valued extension of a scalar function.

    At a point v one applies f to the odd element sum_i v_i e_i, whose
    square is ||v||^2: functional calculus on the two eigenvalues +-||v||
    gives f_even(r) on the scalar blade plus (f_odd(r)/r) v_i on each e_i,
    smooth through r = 0 for the Gaussian generators.
    """
    fe, fo = f.even_part(), f.odd_part()

    def coeffs(pts: np.ndarray) -> np.ndarray:
        out = np.zeros((pts.shape[0], 1 << dim))
        r = np.linalg.norm(pts, axis=1)
        out[:, 0] = fe(r)
        safe = np.maximum(r, 1e-12)
        ratio = fo(safe) / safe
        for i in range(dim):
            out[:, 1 << i] = ratio * pts[:, i]
        return out

    return CliffFunction(dim, coeffs, f"cliff[{f.name}]", f.parity)


def shifted_bump(dim: int, center: float = 0.8, width: float = 1.0) -> CliffFunction:
    """Off-center Gaussian bump times the first generator (odd values)."""

    def coeffs(pts: np.ndarray) -> np.ndarray:
        out = np.zeros((pts.shape[0], 1 << dim))
        shifted = pts.copy()
        shifted[:, 0] -= center
        out[:, 1] = np.exp(-(shifted ** 2).sum(axis=1) / width)
        return out

    return CliffFunction(dim, coeffs, "bump*e1", 1)


def resolve_h_choices(cfg: SweepConfig) -> list:
    """Named defaults or caller-provided CliffFunction objects."""
    named = {
        "uP": lambda: bott_map(gaussian(), cfg.dim),
        "vP": lambda: bott_map(x_gaussian(), cfg.dim),
        "bump": lambda: shifted_bump(cfg.dim),
    }
    out = []
    for h in cfg.h_choices:
        if isinstance(h, CliffFunction):
            out.append(h)
        elif h in named:
            fn = named[h]()
            fn.name = h
            out.append(fn)
        else:
            raise ValueError(f"unknown test function {h!r}; expected one of {sorted(named)}")
    return out


def alpha(f: GradedFunction, h: CliffFunction, t: float, rep: OscillatorRep) -> GradedMatrix:
    """The asymptotic-morphism image f(t^{-1} D) M_{h(./t)} at parameter t >= 1."""
    if not t >= 1:
        raise ValueError(f"morphism parameter must be >= 1, got {t}")
    fd = matrix_function(scale(f, t), rep.dirac)
    mh = multiplication_operator(rescale(h, t), rep.basis)
    return fd @ mh


# ---------------------------------------------------------------------------
# suites


def _mehler_default_tol(level: int) -> float:
    # truncation error of the factorization shrinks with the level; these
    # bounds are calibrated on the deep observation window used below
    if level >= 18:
        return 1e-6
    if level >= 16:
        return 1e-5
    if level >= 13:
        return 1e-4
    return 1e-3


def suite_spectrum(cfg: SweepConfig) -> VerificationReport:
    """Eigenvalue ladder of the squared supercharge on the interior window."""
    rep = oscillator_rep(cfg.dim, cfg.level)
    tol = cfg.tol if cfg.tol is not None else 1e-8
    sp = spectrum(rep)
    b2 = b_squared_identity_check(rep)

    datapoints = []
    deviations = []
    for val, mult in sp.clusters:
        half = round(val / 2.0)
        dev = abs(val - 2.0 * half) + abs(mult - level_multiplicity(cfg.dim, int(half)))
        datapoints.append((float(val), float(dev)))
        deviations.append(float(dev))

    zero_ok = bool(sp.clusters and sp.clusters[0] == (0.0, 1))
    overlap_ok = sp.kernel_overlap is not None and sp.kernel_overlap >= 1.0 - 1e-10
    passed = (
        all(d <= tol for d in deviations)
        and zero_ok
        and overlap_ok
        and b2 <= 1e-12
    )
    cluster_str = ", ".join(f"{v:g}:{m}" for v, m in sp.clusters)
    notes = [
        f"clusters (eigenvalue:multiplicity): {cluster_str}",
        f"kernel eigenvector overlap with Gaussian ground state: {sp.kernel_overlap:.12f}",
        f"squared-supercharge identity residual on interior: {b2:.3e}",
        f"eigenvalues reported up to the truncation level {cfg.level}",
    ]
    return VerificationReport(
        "spectrum", cfg.params_dict(), datapoints,
        {"cluster-deviation": deviations}, None, passed, tol, notes,
    )


def suite_clifford_iso(cfg: SweepConfig) -> VerificationReport:
    """Generator relations at low rank plus two explicit embedding witnesses."""
    from .graded import tensor_product_witness

    tol = cfg.tol if cfg.tol is not None else 1e-10
    datapoints = []
    values = []
    for n in range(1, 6):
        worst = 0.0
        for p in range(n + 1):
            sig = Signature(p, n - p)
            gens = regular_representation(sig)
            eye = np.eye(sig.blade_count)
            for i, gi in enumerate(gens):
                for j, gj in enumerate(gens):
                    target = 2.0 * sig.square_sign(i + 1) * eye if i == j else 0.0
                    worst = max(worst, float(np.abs(gi @ gj + gj @ gi - target).max()))
        datapoints.append((float(n), worst))
        values.append(worst)

    wit = algebra_isomorphism_check(Signature(8, 0), Signature(4, 4))
    gens2, worst2, span2 = tensor_product_witness(Signature(1, 0), Signature(1, 0))

    passed = (
        all(v <= tol for v in values)
        and wit.found and wit.max_residual <= tol
        and worst2 <= tol and span2 == 4
    )
    notes = [
        f"relations exact for all signatures with rank <= 5 (max residual {max(values):.1e})",
        f"rank-8 Euclidean algebra inside signature (4,4): found={wit.found}, "
        f"residual {wit.max_residual:.1e}, images {wit.image_labels()}",
        f"graded tensor square of rank-1 algebras realizes rank 2: residual {worst2:.1e}, "
        f"spanned dimension {span2}",
    ]
    return VerificationReport(
        "clifford-iso", cfg.params_dict(), datapoints,
        {"relation-residual": values}, None, passed, tol, notes,
    )


def _commutator_suite(cfg: SweepConfig, suite_id: str, use_cd: bool) -> VerificationReport:
    rep = oscillator_rep(cfg.dim, cfg.level)
    u, v = gaussian(), x_gaussian()
    rel = cfg.tol if cfg.tol is not None else 0.25

    curves: dict[str, list[float]] = {}
    samples = []
    if use_cd:
        pairs = [(f, g) for f in (("u", u), ("v", v)) for g in (("u", u), ("v", v))]
        for (fname, f), (gname, g) in pairs:
            vals = []
            for t in cfg.t_grid:
                fc = matrix_function(scale(f, t), rep.clifford)
                gd = matrix_function(scale(g, t), rep.dirac)
                comm = graded_commutator(fc, gd)
                vals.append(windowed_norm(comm, rep.basis))
                if t in (cfg.t_grid[0], cfg.t_grid[-1]):
                    samples.append(comm.mat)
            curves[f"[{fname}(C/t),{gname}(D/t)]"] = vals
    else:
        hs = resolve_h_choices(cfg)
        for fname, f in (("u", u), ("v", v)):
            for h in hs:
                vals = []
                for t in cfg.t_grid:
                    fd = matrix_function(scale(f, t), rep.dirac)
                    mh = multiplication_operator(rescale(h, t), rep.basis)
                    comm = graded_commutator(fd, mh)
                    vals.append(windowed_norm(comm, rep.basis))
                    if t in (cfg.t_grid[0], cfg.t_grid[-1]):
                        samples.append(comm.mat)
                curves[f"[{fname}(D/t),M_{h.name}]"] = vals

    ts = list(cfg.t_grid)
    envelope = [max(c[i] for c in curves.values()) for i in range(len(ts))]
    datapoints = list(zip(ts, envelope))
    fit = decay_fit(ts, envelope)
    tol_abs = rel * envelope[0]

    ratio_notes = []
    per_curve_ok = True
    for name in sorted(curves):
        c = curves[name]
        ratio = c[-1] / c[0] if c[0] > 0 else 0.0
        ok = ratio <= rel and monotone_after(ts, c)
        per_curve_ok = per_curve_ok and ok
        ratio_notes.append(f"{name}: final/initial = {ratio:.3e}")

    cross_ok, cross_note = _crosscheck_norms(samples)
    passed = (
        per_curve_ok
        and envelope[-1] <= tol_abs
        and monotone_after(ts, envelope)
        and fit is not None and fit[0] < 0
        and cross_ok
    )
    notes = [
        f"pass threshold: final <= {rel:g} x initial per curve, norms on interior window",
        *ratio_notes,
        cross_note,
    ]
    return VerificationReport(suite_id, cfg.params_dict(), datapoints, curves,
                              fit, passed, tol_abs, notes)


def suite_dirac_commutator(cfg: SweepConfig) -> VerificationReport:
    """Decay of [f(t^{-1}D), M_{h_t}] for the generators against each symbol."""
    return _commutator_suite(cfg, "dirac-commutator", use_cd=False)


def suite_cd_commutator(cfg: SweepConfig) -> VerificationReport:
    """Decay of [f(t^{-1}C), g(t^{-1}D)] for all four generator pairs."""
    return _commutator_suite(cfg, "cd-commutator", use_cd=True)


def mehler_coefficients(s: float) -> tuple[float, float]:
    """The factorization coefficients s1 = (cosh 2s - 1)/sinh 2s, s2 = sinh(2s)/2."""
    if not s > 0:
        raise ValueError("s must be positive")
    s1 = (math.cosh(2 * s) - 1.0) / math.sinh(2 * s)
    s2 = math.sinh(2 * s) / 2.0
    return s1, s2


def _gaussian_of(a: float, mat: np.ndarray) -> np.ndarray:
    """exp(-a * mat^2) for symmetric mat, via one eigendecomposition."""
    w, q = np.linalg.eigh(mat)
    return (q * np.exp(-a * w * w)) @ q.T


def suite_mehler(cfg: SweepConfig) -> VerificationReport:
    """Sandwich factorization of the harmonic semigroup at small s.

    Compares exp(-s(C^2+D^2)) with exp(-s1/2 C^2) exp(-s2 D^2) exp(-s1/2 C^2)
    and the variant with the roles of C and D exchanged.  The identity is
    exact in the untruncated model; at finite level the residual lives near
    the cut, so it is measured on a deep observation window (total level
    <= max(2, level//3)) and the default tolerance scales with the level.
    """
    rep = oscillator_rep(cfg.dim, cfg.level)
    window_cap = max(2, cfg.level // 3)
    depth = cfg.level - window_cap
    tol = cfg.tol if cfg.tol is not None else _mehler_default_tol(cfg.level)

    c_mat, d_mat = rep.clifford.mat, rep.dirac.mat
    h_mat = c_mat @ c_mat + d_mat @ d_mat
    wh, qh = np.linalg.eigh(h_mat)

    s_values = tuple(sorted(cfg.mehler_s, reverse=True))
    curves = {"c-outside": [], "d-outside": []}
    samples = []
    for s in s_values:
        s1, s2 = mehler_coefficients(s)
        direct = (qh * np.exp(-s * wh)) @ qh.T
        ec = _gaussian_of(s1 / 2.0, c_mat)
        ed = _gaussian_of(s2, d_mat)
        route_c = ec @ ed @ ec
        ec2 = _gaussian_of(s2, c_mat)
        ed2 = _gaussian_of(s1 / 2.0, d_mat)
        route_d = ed2 @ ec2 @ ed2
        curves["c-outside"].append(windowed_norm(direct - route_c, rep.basis, depth))
        curves["d-outside"].append(windowed_norm(direct - route_d, rep.basis, depth))
        samples.append(direct - route_c)

    envelope = [max(curves["c-outside"][i], curves["d-outside"][i]) for i in range(len(s_values))]
    datapoints = list(zip(s_values, envelope))
    cross_ok, cross_note = _crosscheck_norms(samples)
    # datapoints are ordered s descending: values must fall in stored order
    passed = (
        all(v <= tol for v in envelope)
        and monotone_after(range(len(envelope)), envelope, start=0.0)
        and cross_ok
    )
    s1_top, s2_top = mehler_coefficients(s_values[0])
    notes = [
        f"observation window: total level <= {window_cap}; residual is truncation-limited",
        f"coefficients at s={s_values[0]:g}: s1={s1_top:.12f}, s2={s2_top:.12f}",
        "datapoints ordered by decreasing s; both sides tend to the identity as s -> 0",
        cross_note,
    ]
    return VerificationReport("mehler", cfg.params_dict(), datapoints, curves,
                              None, passed, tol, notes)


def suite_s1s2_asymptotics(cfg: SweepConfig) -> VerificationReport:
    """Replacing the factorization coefficients by t^{-2} is harmless as t grows.

    For X in {C, D} and both coefficients: plain and t^{-1}X-weighted norms
    of exp(-coef/2 X^2) - exp(-t^{-2}/2 X^2) along the t-grid.
    """
    rep = oscillator_rep(cfg.dim, cfg.level)
    tol = cfg.tol if cfg.tol is not None else 1e-3
    mats = {"C": rep.clifford.mat, "D": rep.dirac.mat}

    curves: dict[str, list[float]] = {}
    samples = []
    for xname, x in mats.items():
        wx, qx = np.linalg.eigh(x)
        for cname, pick in (("s1", 0), ("s2", 1)):
            plain, weighted = [], []
            for t in cfg.t_grid:
                coef = mehler_coefficients(t ** -2)[pick]
                diag = np.exp(-coef / 2.0 * wx * wx) - np.exp(-(t ** -2) / 2.0 * wx * wx)
                diff = (qx * diag) @ qx.T
                wdiff = (qx * (wx / t * diag)) @ qx.T
                plain.append(windowed_norm(diff, rep.basis))
                weighted.append(windowed_norm(wdiff, rep.basis))
                if t == cfg.t_grid[-1]:
                    samples.append(diff)
            curves[f"{xname}:{cname}"] = plain
            curves[f"{xname}:{cname}:weighted"] = weighted

    ts = list(cfg.t_grid)
    envelope = [max(c[i] for c in curves.values()) for i in range(len(ts))]
    datapoints = list(zip(ts, envelope))
    fit = decay_fit(ts, envelope)
    cross_ok, cross_note = _crosscheck_norms(samples)

    # scalar sanity: the coefficient defect shrinks like t^-6
    t_ref = ts[-1]
    s1_defect = abs(mehler_coefficients(t_ref ** -2)[0] - t_ref ** -2)
    passed = (
        all(c[-1] <= tol for c in curves.values())
        and monotone_after(ts, envelope)
        and cross_ok
        and s1_defect <= t_ref ** -6
    )
    notes = [
        f"coefficient defect at t={t_ref:g}: |s1 - t^-2| = {s1_defect:.3e} (<= t^-6 = {t_ref ** -6:.3e})",
        "t=1 datapoint recorded without any claim",
        cross_note,
    ]
    return VerificationReport("s1s2-asymptotics", cfg.params_dict(), datapoints,
                              curves, fit, passed, tol, notes)


def suite_composition_gamma(cfg: SweepConfig) -> VerificationReport:
    """Heat-kernel composition identities for the supercharge.

    u-curve: || exp(-t^-2 B^2) - exp(-t^-2 C^2) exp(-t^-2 D^2) ||
    v-curve: || t^-1 B exp(-t^-2 B^2) - t^-1 (C+D) exp(-t^-2 C^2) exp(-t^-2 D^2) ||
    both on the interior window, expected to shrink relative to their t=1
    values.  Additionally pins the multiplication-operator route against
    position functional calculus: with one quadrature node per basis level
    they coincide to rounding, because Gauss quadrature through level+1
    nodes is evaluation on the spectrum of the truncated position matrix.
    """
    rep = oscillator_rep(cfg.dim, cfg.level)
    u, v = gaussian(), x_gaussian()
    rel = cfg.tol if cfg.tol is not None else 1e-2

    b_mat = rep.bott.mat
    curves = {"gamma-u": [], "gamma-v": []}
    samples = []
    for t in cfg.t_grid:
        ub = matrix_function(scale(u, t), rep.bott).mat
        uc = matrix_function(scale(u, t), rep.clifford).mat
        ud = matrix_function(scale(u, t), rep.dirac).mat
        prod = uc @ ud
        vb = matrix_function(scale(v, t), rep.bott).mat
        rhs_v = (b_mat / t) @ prod
        curves["gamma-u"].append(windowed_norm(ub - prod, rep.basis))
        curves["gamma-v"].append(windowed_norm(vb - rhs_v, rep.basis))
        if t in (cfg.t_grid[0], cfg.t_grid[-1]):
            samples.append(ub - prod)

    ts = list(cfg.t_grid)
    envelope = [max(curves["gamma-u"][i], curves["gamma-v"][i]) for i in range(len(ts))]
    datapoints = list(zip(ts, envelope))
    fit = decay_fit(ts, envelope)
    tol_abs = rel * envelope[0]

    # multiplication operator vs position functional calculus, matched nodes
    hu = bott_map(u, cfg.dim)
    m_matched = multiplication_operator(hu, rep.basis, nodes=cfg.level + 1)
    uc1 = matrix_function(u, rep.clifford)
    m_identity = float(np.linalg.norm(m_matched.mat - uc1.mat, 2))
    m_conv = multiplication_operator(hu, rep.basis)
    m_conv_full = float(np.linalg.norm(m_conv.mat - uc1.mat, 2))
    m_conv_win = windowed_norm(m_conv.mat - uc1.mat, rep.basis)

    ratios = {k: (c[-1] / c[0] if c[0] > 0 else 0.0) for k, c in curves.items()}
    cross_ok, cross_note = _crosscheck_norms(samples)
    passed = (
        all(r <= rel for r in ratios.values())
        and all(monotone_after(ts, c) for c in curves.values())
        and fit is not None and fit[0] < 0
        and m_identity <= 1e-6
        and cross_ok
    )
    notes = [
        f"final/initial ratios: gamma-u {ratios['gamma-u']:.3e}, gamma-v {ratios['gamma-v']:.3e}",
        f"multiplication vs position calculus (matched {cfg.level + 1} nodes): {m_identity:.3e}",
        f"same comparison with converged quadrature: {m_conv_full:.3e} full, "
        f"{m_conv_win:.3e} on interior window (difference concentrates at the cut)",
        f"largest-t norms: lhs {operator_norm(matrix_function(scale(u, ts[-1]), rep.bott)):.6f} "
        "(tends to the kernel-projection-dominated limit)",
        cross_note,
    ]
    return VerificationReport("composition-gamma", cfg.params_dict(), datapoints,
                              curves, fit, passed, tol_abs, notes)


def suite_homotopy_projection(cfg: SweepConfig) -> VerificationReport:
    """u(s^{-1}B) converges to the kernel projection as s -> 0.

    The kernel of B is spanned by the Gaussian ground state; the first
    nonzero eigenvalue of B^2 on the interior window is 2, so the interior
    norm of u(s^{-1}B) - p is exactly exp(-2/s^2) and the odd generator
    curve ||v(s^{-1}B)|| decays like (sqrt(2)/s) exp(-2/s^2).
    """
    rep = oscillator_rep(cfg.dim, cfg.level)
    u, v = gaussian(), x_gaussian()
    tol = cfg.tol if cfg.tol is not None else 1e-6

    ground = rep.basis.mindex_position((0,) * cfg.dim) * rep.basis.blade_count
    g_vec = np.zeros(rep.basis.size)
    g_vec[ground] = 1.0
    p = np.outer(g_vec, g_vec)

    curves = {"u-to-projection": [], "v-to-zero": []}
    samples = []
    for s in cfg.s_grid:
        ub = matrix_function(scale(u, s), rep.bott).mat
        vb = matrix_function(scale(v, s), rep.bott).mat
        curves["u-to-projection"].append(windowed_norm(ub - p, rep.basis))
        curves["v-to-zero"].append(windowed_norm(vb, rep.basis))
        samples.append(ub - p)

    ss = list(cfg.s_grid)
    envelope = [max(curves["u-to-projection"][i], curves["v-to-zero"][i]) for i in range(len(ss))]
    datapoints = list(zip(ss, envelope))

    # exact endpoint identities on the full space
    s_min = ss[-1]
    ub_min = matrix_function(scale(u, s_min), rep.bott).mat
    vb_min = matrix_function(scale(v, s_min), rep.bott).mat
    kernel_fixed = float(np.linalg.norm(ub_min @ g_vec - g_vec))
    v_kills_kernel = float(np.linalg.norm(vb_min @ g_vec))

    cross_ok, cross_note = _crosscheck_norms(samples)
    passed = (
        envelope[-1] <= tol
        and monotone_after(range(len(envelope)), envelope, start=0.0)
        and kernel_fixed <= 1e-12
        and v_kills_kernel <= 1e-12
        and cross_ok
    )
    gap_val = math.exp(-2.0 / (ss[-1] ** 2)) if 2.0 / ss[-1] ** 2 < 700 else 0.0
    notes = [
        "norms on interior window; datapoints ordered by decreasing s",
        f"kernel vector fixed by u(s^-1 B): deviation {kernel_fixed:.3e}",
        f"odd generator annihilates the kernel vector: {v_kills_kernel:.3e}",
        f"spectral-gap prediction exp(-2/s^2) at s={ss[-1]:g}: {gap_val:.3e}",
        cross_note,
    ]
    return VerificationReport("homotopy-projection", cfg.params_dict(), datapoints,
                              curves, None, passed, tol, notes)


def suite_delta_xr(cfg: SweepConfig) -> VerificationReport:
    """Comultiplication formulas against direct functional calculus.

    Truncation levels are fixed (the 1-D check is independent of the
    oscillator level); residuals are rounding noise at every level, so the
    monotonicity requirement only applies above the noise floor.
    """
    tol = cfg.tol if cfg.tol is not None else 1e-8
    levels = DELTA_LEVELS
    curves = {"u": [], "v": []}
    radii = []
    for lev in levels:
        cu = delta_via_xr_check(lev, "u")
        cv = delta_via_xr_check(lev, "v")
        curves["u"].append(cu.residual)
        curves["v"].append(cv.residual)
        radii.append(cu.effective_radius)

    envelope = [max(curves["u"][i], curves["v"][i]) for i in range(len(levels))]
    datapoints = [(float(l), envelope[i]) for i, l in enumerate(levels)]
    passed = (
        all(r <= 1e-10 for r in curves["u"])
        and all(r <= 1e-8 for r in curves["v"])
        and monotone_after([float(l) for l in levels], envelope, start=0.0)
    )
    notes = [
        f"truncation levels {list(levels)}; effective radii {[round(r, 3) for r in radii]}",
        "even-generator residual gated at 1e-10 (full norm), odd at 1e-8 (interior)",
        f"residuals are at rounding noise; monotonicity enforced above {NOISE_FLOOR:g} only",
    ]
    return VerificationReport("delta-xr", cfg.params_dict(), datapoints, curves,
                              None, passed, tol, notes)


def suite_compactness(cfg: SweepConfig) -> VerificationReport:
    """Singular-value decay of u(B) M_h for each test symbol."""
    rep = oscillator_rep(cfg.dim, cfg.level)
    u = gaussian()
    tol = cfg.tol if cfg.tol is not None else 1e-8
    hs = resolve_h_choices(cfg)

    curves = {}
    tails = {}
    for h in hs:
        prof = compactness_profile(u, h, rep, tol=tol)
        curves[f"sv:{h.name}"] = [float(s) for s in prof.singular_values]
        tails[h.name] = prof.tail_start

    count = len(next(iter(curves.values())))
    envelope = [max(c[i] for c in curves.values()) for i in range(count)]
    datapoints = [(float(i), envelope[i]) for i in range(count)]
    passed = all(c[-1] <= tol for c in curves.values()) and all(
        t < count for t in tails.values()
    )
    notes = [
        f"first singular value below {tol:g}, per symbol: "
        + ", ".join(f"{k}: {v}/{count}" for k, v in sorted(tails.items())),
        "singular values sorted descending; finite-rank shadow of compactness",
    ]
    return VerificationReport("compactness", cfg.params_dict(), datapoints, curves,
                              None, passed, tol, notes)


def suite_flip_endpoints(cfg: SweepConfig) -> VerificationReport:
    """Endpoint identities of the flip on tensor squares (rank-1 base only).

    For each t and test symbol, the element u(t^{-1}D) M_{h_t} (x) u(C) is
    assembled twice: directly, and by building the opposite-order tensor and
    conjugating with the signed swap.  The two routes exercise the Koszul
    sign bookkeeping through independent arithmetic; mismatched signs would
    show up at the odd-odd parity combinations.  Sampled product identities
    for the flip and the grading automorphism are checked alongside.
    """
    notes = []
    if cfg.dim != 1:
        notes.append(f"tensor-square dimensions force dim=1 (requested {cfg.dim})")
    level = min(cfg.level, 10)
    if level != cfg.level:
        notes.append(f"level capped at 10 for the tensor square (requested {cfg.level})")
    rep = oscillator_rep(1, level)
    u, v = gaussian(), x_gaussian()
    tol = cfg.tol if cfg.tol is not None else 1e-8

    par = rep.basis.parity()
    swap = flip_unitary(par, par)
    uc = matrix_function(u, rep.clifford)
    vc = matrix_function(v, rep.clifford)
    sub = SweepConfig(dim=1, level=level, t_grid=cfg.t_grid, h_choices=cfg.h_choices)
    hs = resolve_h_choices(sub)

    def flip_route_residual(a: GradedMatrix, b: GradedMatrix) -> float:
        direct = flip_simple(a, b).mat
        routed = swap @ graded_tensor(a, b).mat @ swap.T
        return float(np.abs(direct - routed).max())

    curves: dict[str, list[float]] = {h.name: [] for h in hs}
    for t in cfg.t_grid:
        for h in hs:
            a_even = alpha(u, h, t, rep)
            a_odd = alpha(v, h, t, rep)
            worst = 0.0
            for left in (a_even, a_odd):
                for right in (uc, vc):
                    worst = max(worst, flip_route_residual(left, right))
            # the grading automorphism is invisible on the even second leg
            f_mat = graded_tensor(a_even, uc).mat
            gam = np.kron(np.eye(rep.basis.size), np.diag(grading_signs(par)))
            worst = max(worst, float(np.abs(gam @ f_mat @ gam - f_mat).max()))
            curves[h.name].append(worst)

    ts = list(cfg.t_grid)
    envelope = [max(c[i] for c in curves.values()) for i in range(len(ts))]
    datapoints = list(zip(ts, envelope))

    # l o l = id as signed permutations
    ll = float(np.abs(swap.T @ swap - np.eye(swap.shape[0])).max())

    # flip multiplicativity: product-then-flip vs flip-then-product
    mult_worst = 0.0
    inv_worst = 0.0
    for x1 in (uc, vc):
        for y1 in (uc, vc):
            for x2 in (uc, vc):
                for y2 in (uc, vc):
                    t1 = graded_tensor(x1, y1)
                    t2 = graded_tensor(x2, y2)
                    lhs = swap @ (t1 @ t2).mat @ swap.T
                    rhs = (swap @ t1.mat @ swap.T) @ (swap @ t2.mat @ swap.T)
                    mult_worst = max(mult_worst, float(np.abs(lhs - rhs).max()))
            z = graded_tensor(x1, y1)
            lhs = involution(GradedMatrix(swap @ z.mat @ swap.T, z.parity)).mat
            rhs = swap @ involution(z).mat @ swap.T
            inv_worst = max(inv_worst, float(np.abs(lhs - rhs).max()))

    # grading automorphism is multiplicative: oracle = direct Clifford products
    rng = np.random.default_rng(2024)
    iota_worst = 0.0
    for sig in (Signature(2, 0), Signature(1, 1), Signature(2, 1)):
        for _ in range(8):
            m1 = MultiVector(sig, rng.standard_normal(sig.blade_count))
            m2 = MultiVector(sig, rng.standard_normal(sig.blade_count))
            lhs = iota(mv_multiply(m1, m2))
            rhs = mv_multiply(iota(m1), iota(m2))
            iota_worst = max(iota_worst, (lhs - rhs).norm())
            back = iota(iota(m1))
            iota_worst = max(iota_worst, (back - m1).norm())

    passed = (
        all(val <= tol for c in curves.values() for val in c)
        and ll <= 1e-14
        and mult_worst <= tol
        and inv_worst <= tol
        and iota_worst <= tol
    )
    notes += [
        f"two assembly routes agree at every t (worst {max(envelope):.3e})",
        f"double flip deviation from identity: {ll:.1e}",
        f"flip multiplicativity on 16 sampled products: worst {mult_worst:.3e}",
        f"flip respects the involution on sampled tensors: worst {inv_worst:.3e}",
        f"grading automorphism multiplicative on 24 sampled pairs: worst {iota_worst:.3e}",
    ]
    # params describe what was actually computed; the notes record coercion
    return VerificationReport("flip-endpoints", sub.params_dict(), datapoints, curves,
                              None, passed, tol, notes)


SUITES = {
    "clifford-iso": suite_clifford_iso,
    "spectrum": suite_spectrum,
    "dirac-commutator": suite_dirac_commutator,
    "cd-commutator": suite_cd_commutator,
    "mehler": suite_mehler,
    "s1s2-asymptotics": suite_s1s2_asymptotics,
    "composition-gamma": suite_composition_gamma,
    "homotopy-projection": suite_homotopy_projection,
    "delta-xr": suite_delta_xr,
    "compactness": suite_compactness,
    "flip-endpoints": suite_flip_endpoints,
}


def run_suite(suite_id: str, cfg: SweepConfig) -> VerificationReport:
    if suite_id not in SUITES:
        raise ValueError(f"unknown suite {suite_id!r}; expected one of {sorted(SUITES)}")
    return SUITES[suite_id](cfg)
