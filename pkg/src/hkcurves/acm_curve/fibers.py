"""Planar slices of a curve along the pencil of planes x3 = t * x2.

The slice over a finite parameter t lives in the affine chart x2 = 1 with
coordinates (u, v) = (x0/x2, x1/x2); the chart at infinity uses x3 = 1
and the reciprocal parameter.  Slices are finite schemes of length
r(r+1)/2; their Hilbert functions, read off a degree-graded echelon of
the truncated ideal, stratify the parameter line.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exact_algebra.ideals import Row, combine_rows, monic_row
from ..exact_algebra.linalg import ExactMatrix
from ..exact_algebra.scalars import GaussianRational

Bivar = Dict[Tuple[int, int], GaussianRational]

_ZERO = GaussianRational(0, 0)
_ONE = GaussianRational(1, 0)


def fiber_generators(curve, t: GaussianRational, at_infinity: bool = False) -> List[Bivar]:
    """Generators of the slice ideal in (u, v), from the curve's minors.

    Finite chart: x0 = u, x1 = v, x2 = 1, x3 = t.  Infinity chart:
    x0 = u, x1 = v, x2 = t, x3 = 1 (t is the reciprocal parameter there).
    """
    out: List[Bivar] = []
    for minor in curve.minors:
        acc: Bivar = {}
        for (m0, m1, m2, m3), c in minor.coeffs.items():
            power = m2 if at_infinity else m3
            val = c
            for _ in range(power):
                val = val * t
            key = (m0, m1)
            acc[key] = acc.get(key, _ZERO) + val
        out.append({k: v for k, v in acc.items() if not v.is_zero()})
    return [g for g in out if g]


def _bivar_degree(g: Bivar) -> int:
    return max(i + j for i, j in g)


def _columns(cutoff: int) -> List[Tuple[int, int]]:
    """Monomials of total degree <= cutoff, highest degree first."""
    cols = [(i, j) for i in range(cutoff + 1) for j in range(cutoff + 1 - i)]
    cols.sort(key=lambda m: (-(m[0] + m[1]), -m[0]))
    return cols


class AffineFiber:
    """Echelonized truncation of a slice ideal up to a degree cutoff."""

    def __init__(self, generators: Sequence[Bivar], cutoff: int):
        if not generators:
            raise ValueError("no nonzero slice generators")
        self.cutoff = cutoff
        self.columns = _columns(cutoff)
        self.col_index = {m: i for i, m in enumerate(self.columns)}
        rows: List[Row] = []
        for g in generators:
            gdeg = _bivar_degree(g)
            for mi in range(cutoff - gdeg + 1):
                for mj in range(cutoff - gdeg - mi + 1):
                    row = sorted(
                        (self.col_index[(i + mi, j + mj)], v) for (i, j), v in g.items()
                    )
                    rows.append(list(row))
        pivots: Dict[int, Row] = {}
        deferred: List[Row] = []
        for row in rows:
            if row[0][0] in pivots:
                deferred.append(row)
            else:
                pivots[row[0][0]] = monic_row(row)
        for row in deferred:
            while row:
                piv = pivots.get(row[0][0])
                if piv is None:
                    break
                row = combine_rows(row, piv)
            if row:
                pivots[row[0][0]] = monic_row(row)
        self.echelon = [pivots[c] for c in sorted(pivots)]
        self.pivot_cols = set(pivots)
        self._nf_table: Optional[Dict[int, Dict[int, GaussianRational]]] = None

    def _col_degree(self, col: int) -> int:
        m = self.columns[col]
        return m[0] + m[1]

    def hilbert(self, k: int) -> int:
        """dim of polynomials of degree <= k modulo the truncated ideal."""
        if k < 0:
            return 0
        k = min(k, self.cutoff)
        total = (k + 1) * (k + 2) // 2
        inside = sum(1 for row in self.echelon if self._col_degree(row[0][0]) <= k)
        return total - inside

    def profile(self) -> Tuple[int, ...]:
        return tuple(self.hilbert(k) for k in range(self.cutoff + 1))

    def stabilized(self) -> bool:
        return self.hilbert(self.cutoff - 1) == self.hilbert(self.cutoff) and self.hilbert(
            self.cutoff - 2
        ) == self.hilbert(self.cutoff)

    def length(self) -> int:
        return self.hilbert(self.cutoff)

    def quotient_basis(self) -> List[Tuple[int, int]]:
        """Non-pivot monomials; valid as a module basis once stabilized."""
        return [m for i, m in enumerate(self.columns) if i not in self.pivot_cols]

    def _normal_forms(self) -> Dict[int, Dict[int, GaussianRational]]:
        if self._nf_table is not None:
            return self._nf_table
        table: Dict[int, Dict[int, GaussianRational]] = {}
        for row in reversed(self.echelon):
            acc: Dict[int, GaussianRational] = {}
            for col, val in row[1:]:
                sub = table.get(col)
                if sub is None:
                    acc[col] = acc.get(col, _ZERO) - val
                else:
                    for c2, v2 in sub.items():
                        acc[c2] = acc.get(c2, _ZERO) - val * v2
            table[row[0][0]] = {c: v for c, v in acc.items() if not v.is_zero()}
        self._nf_table = table
        return table

    def multiplication_matrices(self) -> Tuple[ExactMatrix, ExactMatrix]:
        """Matrices of multiplication by u and v on the quotient basis.

        Requires a stabilized profile so the basis sits two degrees below
        the cutoff and products stay inside the truncation.
        """
        if not self.stabilized():
            raise ValueError("profile not stabilized; cutoff too small")
        basis = self.quotient_basis()
        basis_index = {m: i for i, m in enumerate(basis)}
        table = self._normal_forms()
        dim = len(basis)
        cols_u: List[List[GaussianRational]] = []
        cols_v: List[List[GaussianRational]] = []
        for m in basis:
            for shift, cols in (((1, 0), cols_u), ((0, 1), cols_v)):
                prod = (m[0] + shift[0], m[1] + shift[1])
                col_vec = [_ZERO] * dim
                pcol = self.col_index[prod]
                sub = table.get(pcol)
                if sub is None:
                    col_vec[basis_index[prod]] = _ONE
                else:
                    for c2, v2 in sub.items():
                        col_vec[basis_index[self.columns[c2]]] = v2
                cols.append(col_vec)
        mu = ExactMatrix([[cols_u[j][i] for j in range(dim)] for i in range(dim)])
        mv = ExactMatrix([[cols_v[j][i] for j in range(dim)] for i in range(dim)])
        return mu, mv


class FiberClass(Enum):
    GENERIC = "generic"
    SPECIAL = "special"


@dataclass(frozen=True)
class FiberReport:
    t_is_infinity: bool
    profile: Tuple[int, ...]
    length: int
    stabilized: bool
    fiber_class: FiberClass


def hilbert_profile(curve, t: GaussianRational, at_infinity: bool = False) -> Tuple[int, ...]:
    gens = fiber_generators(curve, t, at_infinity=at_infinity)
    return AffineFiber(gens, curve.r + 2).profile()


def classify_fiber(curve, t: GaussianRational, at_infinity: bool = False) -> FiberReport:
    """Hilbert data of one slice; generic means independent conditions.

    A generic slice of a degree-d curve has H(k) = min((k+1)(k+2)/2, d),
    which already reaches d at k = r-1.
    """
    gens = fiber_generators(curve, t, at_infinity=at_infinity)
    fib = AffineFiber(gens, curve.r + 2)
    profile = fib.profile()
    d = curve.degree
    generic = all(
        profile[k] == min((k + 1) * (k + 2) // 2, d) for k in range(len(profile))
    )
    return FiberReport(
        t_is_infinity=at_infinity,
        profile=profile,
        length=fib.length(),
        stabilized=fib.stabilized(),
        fiber_class=FiberClass.GENERIC if generic else FiberClass.SPECIAL,
    )


def fiber_multiplication_matrices(
    curve, t: GaussianRational, at_infinity: bool = False
) -> Tuple[ExactMatrix, ExactMatrix]:
    gens = fiber_generators(curve, t, at_infinity=at_infinity)
    return AffineFiber(gens, curve.r + 2).multiplication_matrices()


def fiber_points(
    curve,
    t: GaussianRational,
    at_infinity: bool = False,
    residual_tol: float = 1e-8,
) -> np.ndarray:
    """Slice points as complex (u, v) pairs, via commuting multiplication ops.

    The matrices are exact; only the eigensolve is numeric.  Points are
    validated against every generator and sorted deterministically.
    Raises ArithmeticError when the slice is not reduced enough for the
    eigenvector method (clustered spectrum, large residuals).
    """
    mu, mv = fiber_multiplication_matrices(curve, t, at_infinity=at_infinity)
    nu = np.array(mu.to_complex())
    nv = np.array(mv.to_complex())
    rng = np.random.default_rng(2)
    for _ in range(6):
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        comb = a * nu + b * nv
        vals, vecs = np.linalg.eig(comb)
        if len(vals) > 1:
            gap = min(
                abs(vals[i] - vals[j]) for i in range(len(vals)) for j in range(i)
            )
            if gap < 1e-9 * max(1.0, np.abs(vals).max()):
                continue
        try:
            inv = np.linalg.inv(vecs)
        except np.linalg.LinAlgError:
            continue
        du = np.diag(inv @ nu @ vecs)
        dv = np.diag(inv @ nv @ vecs)
        off_u = inv @ nu @ vecs - np.diag(du)
        off_v = inv @ nv @ vecs - np.diag(dv)
        if max(np.abs(off_u).max(), np.abs(off_v).max()) > residual_tol * max(
            1.0, np.abs(du).max(), np.abs(dv).max()
        ):
            continue
        gens = fiber_generators(curve, t, at_infinity=at_infinity)
        pts = np.stack([du, dv], axis=1)
        resid = max(
            abs(sum(complex(c) * (u ** i) * (v ** j) for (i, j), c in g.items()))
            for g in gens
            for u, v in pts
        )
        if resid > residual_tol:
            continue
        order = np.lexsort(
            (np.round(pts[:, 1].imag, 9), np.round(pts[:, 1].real, 9),
             np.round(pts[:, 0].imag, 9), np.round(pts[:, 0].real, 9))
        )
        return pts[order]
    raise ArithmeticError("slice spectrum not separable; slice may be non-reduced")


def expected_hilbert(r: int, k: int) -> int:
    """Slice Hilbert value when the points impose independent conditions."""
    if k < 0:
        return 0
    return (k + 1) * (k + 2) // 2 if k < r else r * (r + 1) // 2


@dataclass(frozen=True)
class FiberScheme:
    """One certified slice: parameter, chart, generators, echelon."""

    r: int
    d: int
    t: GaussianRational
    at_infinity: bool
    generators: Tuple[Bivar, ...]
    fiber: AffineFiber

    def hilbert_function(self) -> Tuple[int, ...]:
        return self.fiber.profile()

    def length(self) -> int:
        return self.fiber.length()


def restrict_to_fiber(curve, t: GaussianRational, at_infinity: bool = False) -> FiberScheme:
    """Slice of a certified curve over one plane of the pencil.

    Refuses uncertified curves: the length and Hilbert statements below
    only follow from the resolution, so the certificate runs first.
    """
    if not curve.certificate().ok:
        raise ValueError("resolution certificate failed; slice data unreliable")
    gens = fiber_generators(curve, t, at_infinity=at_infinity)
    fib = AffineFiber(gens, curve.r + 2)
    return FiberScheme(
        r=curve.r,
        d=curve.degree,
        t=t,
        at_infinity=at_infinity,
        generators=tuple(gens),
        fiber=fib,
    )


def fiber_hilbert_function(scheme: FiberScheme) -> Tuple[int, ...]:
    """H(0), ..., H(r+2) of the slice."""
    return scheme.hilbert_function()


def stratum_check(scheme: FiberScheme) -> bool:
    """True when the slice sits in the open stratum: full Hilbert growth
    below degree r, then constant at the curve degree."""
    profile = scheme.hilbert_function()
    return all(profile[k] == expected_hilbert(scheme.r, k) for k in range(len(profile)))
