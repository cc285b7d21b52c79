"""Metric extraction from the fibration of an invariant curve.

A curve in a flat chart (canonical first two coefficients, conjugation
constraint between the last two) is a point of a parameter space that
carries three symplectic forms, one per quaternionic complex structure.
Pairing tangent directions through fiberwise point derivatives and
fitting the parameter dependence recovers all three at once; the metric
must then come out constant across charts, which is the flatness test.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .acm_curve.curve import ACMCurve, LinearMatrix, random_real_curve
from .acm_curve.fibers import fiber_points
from .exact_algebra.linalg import ExactMatrix
from .exact_algebra.scalars import GaussianRational
from .pencil import canonical_pair, kronecker_reduce
from .reality import reality_conjugate

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)
_I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class Chart:
    """Matrix tuple with the A3/A4 slots treated as local coordinates.

    sigma_fixed marks a flat chart: first two coefficients canonical and
    A4 the conjugate of A3, so the coordinates are honest invariant data.
    Raw charts skip that normalization and are only useful as a control.
    """

    r: int
    A1: ExactMatrix
    A2: ExactMatrix
    A3: ExactMatrix
    A4: ExactMatrix
    sigma_fixed: bool

    def curve(self) -> ACMCurve:
        return ACMCurve(LinearMatrix(self.r, self.A1, self.A2, self.A3, self.A4))

    def numeric(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return tuple(np.array(A.to_complex()) for A in (self.A1, self.A2, self.A3, self.A4))


FlatChart = Chart


def normalize_to_flat_chart(curve: ACMCurve) -> Chart:
    """Reduce the pencil part to canonical form and verify the reality tie.

    The reduction is exact; the transported last two coefficients are
    unique because the canonical pair has no continuous symmetry acting
    on them, so the conjugation constraint must hold exactly or the
    curve was not invariant in the first place.
    """
    red = kronecker_reduce(curve.coeffs[0], curve.coeffs[1])
    S, T = canonical_pair(curve.r)
    A3 = red.P @ curve.coeffs[2] @ red.Q
    A4 = red.P @ curve.coeffs[3] @ red.Q
    if A4 != reality_conjugate(A3):
        raise ValueError("conjugation constraint fails in the flat chart")
    return Chart(r=curve.r, A1=S, A2=T, A3=A3, A4=A4, sigma_fixed=True)


def raw_chart(curve: ACMCurve) -> Chart:
    """The curve's own gauge used directly as a chart; control path only."""
    A1, A2, A3, A4 = curve.coeffs
    return Chart(r=curve.r, A1=A1, A2=A2, A3=A3, A4=A4, sigma_fixed=False)


# ---------------------------------------------------------------------------
# tangent sections and quaternionic operators


@dataclass(frozen=True)
class TangentSection:
    """First-order move of the chart coordinates: (dA3, dA4)."""

    dA3: ExactMatrix
    dA4: ExactMatrix

    def scale(self, c: GaussianRational) -> "TangentSection":
        return TangentSection(self.dA3.scale(c), self.dA4.scale(c))

    def __add__(self, other: "TangentSection") -> "TangentSection":
        return TangentSection(self.dA3 + other.dA3, self.dA4 + other.dA4)


def _unit_matrix(r: int, i: int, j: int, value: GaussianRational) -> ExactMatrix:
    rows = [[_ZERO] * r for _ in range(r + 1)]
    rows[i][j] = value
    return ExactMatrix(rows)


def real_tangent_basis(r: int) -> List[TangentSection]:
    """Real coordinates on the invariant chart: unit moves then their i-moves.

    Each move of A3 drags A4 along through the conjugation, so the span
    stays inside the invariant locus; the first r(r+1) entries are the
    real parts, the rest the imaginary parts, both row-major.
    """
    out = []
    for value in (_ONE, _I):
        for i in range(r + 1):
            for j in range(r):
                d = _unit_matrix(r, i, j, value)
                out.append(TangentSection(d, reality_conjugate(d)))
    return out


def section_I(x: TangentSection) -> TangentSection:
    return TangentSection(x.dA3.scale(_I), x.dA4.scale(-_I))


def section_J(x: TangentSection) -> TangentSection:
    return TangentSection(x.dA4.scale(_I), x.dA3.scale(_I))


def section_K(x: TangentSection) -> TangentSection:
    return section_I(section_J(x))


def section_structure_at(zeta: GaussianRational, x: TangentSection) -> TangentSection:
    """The complex structure of the fiber direction zeta, on one section."""
    n = zeta.norm()
    denom = GaussianRational(1 + n)
    c1 = GaussianRational(1 - n) / denom
    c2 = GaussianRational(2 * zeta.re) / denom
    c3 = GaussianRational(2 * zeta.im) / denom
    return (
        section_I(x).scale(c1)
        + section_J(x).scale(c2)
        + section_K(x).scale(c3)
    )


def _operator_matrix(r: int, op) -> ExactMatrix:
    """Matrix of a section operator on the real tangent basis, exact."""
    basis = real_tangent_basis(r)
    m = r * (r + 1)
    n = 2 * m
    # coordinates of dA3 on the basis: entry (i, j) real and imaginary parts
    cols = []
    for x in basis:
        y = op(x)
        col = [_ZERO] * n
        for i in range(r + 1):
            for j in range(r):
                v = y.dA3[i, j]
                col[i * r + j] = GaussianRational(v.re)
                col[m + i * r + j] = GaussianRational(v.im)
        cols.append(col)
    return ExactMatrix([[cols[j][i] for j in range(n)] for i in range(n)])


def complex_structures(r: int) -> Tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Exact matrices of the three quaternionic operators on real coordinates."""
    return (
        _operator_matrix(r, section_I),
        _operator_matrix(r, section_J),
        _operator_matrix(r, section_K),
    )


# ---------------------------------------------------------------------------
# fiberwise point derivatives


def _column_replaced_det(n: np.ndarray, c: int, col: np.ndarray) -> complex:
    m = n.copy()
    m[:, c] = col
    return complex(np.linalg.det(m))


def point_derivative(
    chart: Chart,
    t: GaussianRational,
    point: Tuple[complex, complex],
    section: TangentSection,
    consistency_tol: float = 1e-8,
    _cache: Optional[dict] = None,
) -> Tuple[complex, complex]:
    """First-order move of one fiber point under a chart move.

    The point solves every maximal minor of the chart matrix at its
    plane; differentiating the two best-conditioned minors gives a 2x2
    linear solve, and a second minor pair must agree within tolerance.
    """
    A1n, A2n, A3n, A4n = chart.numeric() if _cache is None else _cache["mats"]
    r = chart.r
    u, v = point
    tn = complex(t)
    M = A1n * u + A2n * v + A3n + tn * A4n
    dA3n = np.array(section.dA3.to_complex())
    dA4n = np.array(section.dA4.to_complex())
    D = dA3n + tn * dA4n
    if _cache is not None and "grads" in _cache:
        grads = _cache["grads"]
    else:
        grads = []
        for k in range(r + 1):
            rows = [a for a in range(r + 1) if a != k]
            N = M[rows]
            gu = sum(_column_replaced_det(N, c, A1n[rows][:, c]) for c in range(r))
            gv = sum(_column_replaced_det(N, c, A2n[rows][:, c]) for c in range(r))
            grads.append((gu, gv, rows, N))
        if _cache is not None:
            _cache["grads"] = grads
    deltas = []
    for gu, gv, rows, N in grads:
        dd = sum(_column_replaced_det(N, c, D[rows][:, c]) for c in range(r))
        deltas.append(dd)
    pairs = sorted(
        (
            (abs(grads[a][0] * grads[b][1] - grads[a][1] * grads[b][0]), a, b)
            for a in range(r + 1)
            for b in range(a + 1, r + 1)
        ),
        reverse=True,
    )
    best = None
    for det_ab, a, b in pairs[:2]:
        if det_ab == 0:
            continue
        J = np.array([[grads[a][0], grads[a][1]], [grads[b][0], grads[b][1]]])
        rhs = -np.array([deltas[a], deltas[b]])
        sol = np.linalg.solve(J, rhs)
        if best is None:
            best = sol
        else:
            scale = max(1.0, float(np.abs(best).max()))
            if float(np.abs(sol - best).max()) > consistency_tol * scale:
                raise ArithmeticError("minor pairs disagree on the point derivative")
    if best is None:
        raise ArithmeticError("all minor gradient pairs are singular at the point")
    return complex(best[0]), complex(best[1])


# ---------------------------------------------------------------------------
# sampling and fitting


def sample_parameters(count: int = 7, skip: int = 0) -> List[GaussianRational]:
    """Exact plane parameters near two circles, small denominators.

    Radii 1/2 and 2 straddle the unit circle so a quadratic in t is
    well conditioned; `skip` walks further along the deterministic
    candidate list when a fiber had to be rejected.
    """
    out = []
    k = skip
    while len(out) < count:
        radius = 0.5 if k % 2 == 0 else 2.0
        angle = 2.0 * cmath.pi * ((k * 5) % 16) / 16.0 + 0.17
        z = radius * cmath.exp(1j * angle)
        out.append(GaussianRational.from_complex(z, limit=16))
        k += 1
    return out


def fit_quadratic(ts: Sequence[complex], ws: np.ndarray) -> Tuple[np.ndarray, float]:
    """Least squares c0 + c1 t + c2 t^2 for each sample column of ws.

    ws has shape (num_t, ...); returns coefficients of shape (3, ...)
    and the largest absolute fit residual.
    """
    tarr = np.array(ts, dtype=complex)
    V = np.stack([np.ones_like(tarr), tarr, tarr**2], axis=1)
    flat = ws.reshape(len(ts), -1)
    coeffs, *_ = np.linalg.lstsq(V, flat, rcond=None)
    resid = float(np.abs(V @ coeffs - flat).max()) if flat.size else 0.0
    return coeffs.reshape((3,) + ws.shape[1:]), resid


# ---------------------------------------------------------------------------
# metric extraction


@dataclass(frozen=True)
class HKFrame:
    """Constant-coefficient metric data of one chart."""

    r: int
    gram: np.ndarray                  # real symmetric, 2r(r+1) square
    omega_I: np.ndarray
    omega_J: np.ndarray
    omega_K: np.ndarray
    I: np.ndarray
    J: np.ndarray
    K: np.ndarray
    signature: Tuple[int, int]
    fit_residual: float
    quaternion_residuals: Dict[str, float]
    parameters: Tuple[GaussianRational, ...]


def extract_metric(
    chart: Chart,
    num_fibers: int = 7,
    min_fibers: int = 5,
    fit_tol: float = 1e-8,
) -> HKFrame:
    """All three symplectic pairings of a chart from fiberwise sampling.

    Every tangent basis pair is paired on each sampled fiber through the
    point derivatives; the parameter dependence of the pairing is an
    exact quadratic whose three coefficients carry the three forms.  The
    metric is the I-pairing composed with I, and the J and K pairings
    are checked against it as quaternionic residuals.
    """
    r = chart.r
    curve = chart.curve()
    basis = real_tangent_basis(r)
    n = len(basis)
    ts: List[GaussianRational] = []
    all_deltas: List[np.ndarray] = []
    skip = 0
    while len(ts) < num_fibers and skip < 8 * num_fibers:
        t = sample_parameters(1, skip=skip)[0]
        skip += 1
        if t in ts:
            continue
        try:
            pts = fiber_points(curve, t)
            cache: dict = {"mats": chart.numeric()}
            deltas = np.empty((n, len(pts), 2), dtype=complex)
            for p_idx, (u, v) in enumerate(pts):
                cache.pop("grads", None)
                for s_idx, section in enumerate(basis):
                    deltas[s_idx, p_idx] = point_derivative(
                        chart, t, (complex(u), complex(v)), section, _cache=cache
                    )
        except (ArithmeticError, np.linalg.LinAlgError):
            continue
        ts.append(t)
        all_deltas.append(deltas)
    if len(ts) < min_fibers:
        raise ArithmeticError(
            f"only {len(ts)} usable fibers of {min_fibers} needed"
        )
    # omega samples: W[k, a, b] = sum_p du_a dv_b - dv_a du_b at t_k
    W = np.empty((len(ts), n, n), dtype=complex)
    for k, deltas in enumerate(all_deltas):
        du = deltas[:, :, 0]
        dv = deltas[:, :, 1]
        W[k] = du @ dv.T - dv @ du.T
    coeffs, resid = fit_quadratic([complex(t) for t in ts], W)
    if resid > fit_tol * max(1.0, float(np.abs(W).max())):
        raise ArithmeticError(f"parameter fit residual {resid:.2e} too large")
    c0, c1, c2 = coeffs[0], coeffs[1], coeffs[2]
    omega_I = 0.5j * c1
    omega_J = (c0 - c2) / 2j
    omega_K = -0.5 * (c0 + c2)
    Iex, Jex, Kex = complex_structures(r)
    Imat = np.array(Iex.to_complex()).real
    Jmat = np.array(Jex.to_complex()).real
    Kmat = np.array(Kex.to_complex()).real
    gram_c = omega_I @ Imat
    scale = max(1.0, float(np.abs(gram_c).max()))
    residuals = {
        "gram_imag": float(np.abs(gram_c.imag).max()) / scale,
        "gram_symmetry": float(np.abs(gram_c - gram_c.T).max()) / scale,
        "I_compatibility": float(np.abs(Imat.T @ gram_c.real @ Imat - gram_c.real).max()) / scale,
        "omega_J": float(np.abs(omega_J - Jmat.T @ gram_c).max()) / scale,
        "omega_K": float(np.abs(omega_K - Kmat.T @ gram_c).max()) / scale,
    }
    gram = gram_c.real
    eigs = np.linalg.eigvalsh(0.5 * (gram + gram.T))
    cut = 1e-8 * max(1.0, float(np.abs(eigs).max()))
    signature = (int((eigs > cut).sum()), int((eigs < -cut).sum()))
    return HKFrame(
        r=r,
        gram=gram,
        omega_I=omega_I,
        omega_J=omega_J,
        omega_K=omega_K,
        I=Imat,
        J=Jmat,
        K=Kmat,
        signature=signature,
        fit_residual=resid,
        quaternion_residuals=residuals,
        parameters=tuple(ts),
    )


# ---------------------------------------------------------------------------
# flatness scan


def _random_invertible(size: int, rng: random.Random, span: int = 2) -> ExactMatrix:
    while True:
        m = ExactMatrix(
            [
                [
                    GaussianRational(rng.randint(-span, span), rng.randint(-span, span))
                    for _ in range(size)
                ]
                for _ in range(size)
            ]
        )
        if not m.det().is_zero():
            return m


def random_scrambled_curve(r: int, seed: int) -> ACMCurve:
    """Invariant certified curve pushed out of its canonical gauge."""
    curve = random_real_curve(r, seed=seed * 7919 + 11)
    rng = random.Random(seed * 104729 + r)
    G = _random_invertible(r + 1, rng)
    H = _random_invertible(r, rng)
    return curve.gauge(G, H)


@dataclass(frozen=True)
class MetricReport:
    r: int
    num_points: int
    skip_sigma_gauge: bool
    signatures: Tuple[Tuple[int, int], ...]
    max_relative_deviation: float
    max_fit_residual: float
    max_quaternion_residual: float
    signature_constant: bool
    passed: bool


def scan_chart(
    r: int, seed: int, num_points: int, index: int, skip_sigma_gauge: bool = False
) -> Chart:
    """Chart number `index` of a flatness scan, one derivation for all callers."""
    curve = random_scrambled_curve(r, seed * num_points + index)
    return raw_chart(curve) if skip_sigma_gauge else normalize_to_flat_chart(curve)


def frames_report(
    r: int,
    frames: Sequence[HKFrame],
    skip_sigma_gauge: bool,
    deviation_tol: float = 1e-6,
) -> MetricReport:
    """Constancy verdict over already extracted frames."""
    grams = [frame.gram for frame in frames]
    signatures = [frame.signature for frame in frames]
    fit_res = max(frame.fit_residual for frame in frames)
    quat_res = max(max(frame.quaternion_residuals.values()) for frame in frames)
    stack = np.stack(grams)
    mean = stack.mean(axis=0)
    scale = max(1.0, float(np.abs(mean).max()))
    deviation = float(np.abs(stack - mean).max()) / scale
    sig_const = len(set(signatures)) == 1
    return MetricReport(
        r=r,
        num_points=len(frames),
        skip_sigma_gauge=skip_sigma_gauge,
        signatures=tuple(signatures),
        max_relative_deviation=deviation,
        max_fit_residual=fit_res,
        max_quaternion_residual=quat_res,
        signature_constant=sig_const,
        passed=deviation < deviation_tol and sig_const,
    )


def flatness_scan(
    r: int,
    num_points: int,
    seed: int,
    skip_sigma_gauge: bool = False,
    deviation_tol: float = 1e-6,
) -> MetricReport:
    """Extract the metric at several random charts and compare.

    Each sample is an invariant curve in a scrambled gauge.  The honest
    path normalizes to the flat chart first, so every sample reports in
    one coordinate system and the constancy of the metric is the
    verification target.  Skipping the normalization reads each sample
    in its own gauge, which must break constancy; that failure is the
    control that the test can fail at all.
    """
    frames = [
        extract_metric(scan_chart(r, seed, num_points, k, skip_sigma_gauge))
        for k in range(num_points)
    ]
    return frames_report(r, frames, skip_sigma_gauge, deviation_tol)
