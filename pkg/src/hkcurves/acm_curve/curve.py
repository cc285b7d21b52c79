"""Curve construction, invariants, and the resolution certificate."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..exact_algebra.ideals import GradedIdeal
from ..exact_algebra.linalg import ExactMatrix
from ..exact_algebra.polys import HomogPoly, monomial_count
from ..exact_algebra.scalars import GaussianRational
from ..pencil import canonical_pair, is_injective_pencil
from ..reality import is_sigma_invariant_ideal, reality_conjugate

_ZERO = GaussianRational(0, 0)

CoeffTuple = Tuple[ExactMatrix, ExactMatrix, ExactMatrix, ExactMatrix]


def curve_degree(r: int) -> int:
    return r * (r + 1) // 2


def curve_genus(r: int) -> int:
    return (r - 1) * (r - 2) * (2 * r + 3) // 6


def invariants(r: int) -> Tuple[int, int]:
    """(degree, genus) of the rank-drop curve of an (r+1) x r linear matrix."""
    if r < 1:
        raise ValueError("need r >= 1")
    return curve_degree(r), curve_genus(r)


def predicted_ideal_dimension(r: int, k: int) -> int:
    """dim I_k forced by the length-one resolution by free modules."""
    if k < r:
        return 0
    return (r + 1) * monomial_count(4, k - r) - r * monomial_count(4, k - r - 1)


@dataclass(frozen=True)
class LinearMatrix:
    """Coefficient tuple of the (r+1) x r matrix of linear forms Sum Ai*xi."""

    r: int
    A1: ExactMatrix
    A2: ExactMatrix
    A3: ExactMatrix
    A4: ExactMatrix

    def __post_init__(self):
        shapes = {m.shape for m in self.coeffs}
        if shapes != {(self.r + 1, self.r)} or self.r < 1:
            raise ValueError(f"expected (r+1) x r coefficient matrices, got {shapes}")

    @property
    def coeffs(self) -> CoeffTuple:
        return (self.A1, self.A2, self.A3, self.A4)

    def entry_polys(self) -> List[List[HomogPoly]]:
        return _entry_polys(self.coeffs)

    def gauge(self, P: ExactMatrix, Q: ExactMatrix) -> "LinearMatrix":
        return LinearMatrix(self.r, *(P @ A @ Q for A in self.coeffs))


def _entry_polys(coeffs: CoeffTuple) -> List[List[HomogPoly]]:
    A1, A2, A3, A4 = coeffs
    r = A1.cols
    out = []
    for i in range(r + 1):
        row = []
        for j in range(r):
            row.append(
                HomogPoly.linear_form([A1[i, j], A2[i, j], A3[i, j], A4[i, j]])
            )
        out.append(row)
    return out


def signed_maximal_minors(entries: List[List[HomogPoly]]) -> List[HomogPoly]:
    """(-1)^i * det(matrix with row i deleted), i = 0..r.

    All minors come from one pass of Laplace expansion along columns,
    carrying determinants of every row subset of each size.
    """
    nrows = len(entries)
    ncols = len(entries[0]) if entries else 0
    if nrows != ncols + 1:
        raise ValueError(f"expected (r+1) x r entries, got {nrows} x {ncols}")
    num_vars = entries[0][0].num_vars
    # dets[frozen rowset] = det of those rows against columns 0..len-1
    dets: Dict[frozenset, HomogPoly] = {frozenset(): HomogPoly(num_vars, 0, {(0,) * num_vars: GaussianRational(1)})}
    for col in range(ncols):
        nxt: Dict[frozenset, HomogPoly] = {}
        for rowset in itertools.combinations(range(nrows), col + 1):
            acc = HomogPoly(num_vars, col + 1, {})
            for pos, i in enumerate(rowset):
                prev = dets[frozenset(rowset) - {i}]
                if prev.is_zero():
                    continue
                term = prev * entries[i][col]
                # expansion along the last column: sign (-1)^(pos + col)
                acc = acc + (term if (pos + col) % 2 == 0 else -term)
            nxt[frozenset(rowset)] = acc
        dets = nxt
    full = frozenset(range(nrows))
    out = []
    for skip in range(nrows):
        d = dets[full - {skip}]
        out.append(d if skip % 2 == 0 else -d)
    return out


def maximal_minors(matrix: LinearMatrix) -> List[HomogPoly]:
    """Signed maximal minors of the linear matrix, degree r each."""
    return signed_maximal_minors(matrix.entry_polys())


@dataclass
class CertifiedFlags:
    base_avoidance: Optional[bool] = None
    sigma_invariance: Optional[bool] = None
    exactness: Optional[bool] = None


class ACMCurve:
    """Curve data: linear matrix, minor generators, graded ideal, flags."""

    def __init__(self, matrix):
        if not isinstance(matrix, LinearMatrix):
            coeffs = tuple(matrix)
            matrix = LinearMatrix(coeffs[0].cols, *coeffs)
        self.matrix = matrix
        self.r = matrix.r
        self.coeffs = matrix.coeffs
        self.d, self.g = invariants(self.r)
        self.entries = matrix.entry_polys()
        self.minors = signed_maximal_minors(self.entries)
        if all(m.is_zero() for m in self.minors):
            raise ValueError("all maximal minors vanish identically")
        self.ideal = GradedIdeal([m for m in self.minors if not m.is_zero()])
        self.ideal.set_certified_bound(lambda k: predicted_ideal_dimension(self.r, k))
        self.certified = CertifiedFlags(
            base_avoidance=is_injective_pencil(matrix.A1, matrix.A2).ok,
            sigma_invariance=is_sigma_invariant_ideal(
                [m for m in self.minors if not m.is_zero()], self.r
            ),
        )
        self._certificate: Optional["ResolutionCertificate"] = None

    @property
    def degree(self) -> int:
        return self.d

    @property
    def genus(self) -> int:
        return self.g

    @classmethod
    def from_real_pair(cls, A3: ExactMatrix) -> "ACMCurve":
        """Canonical-gauge curve with the reality constraint built in."""
        r = A3.cols
        S, T = canonical_pair(r)
        return cls(LinearMatrix(r, S, T, A3, reality_conjugate(A3)))

    def certificate(self) -> "ResolutionCertificate":
        if self._certificate is None:
            self._certificate = certify_resolution(self)
        return self._certificate

    def gauge(self, P: ExactMatrix, Q: ExactMatrix) -> "ACMCurve":
        return ACMCurve(self.matrix.gauge(P, Q))


@dataclass(frozen=True)
class ResolutionCertificate:
    ok: bool
    cofactor_identity: bool      # minors compose to zero against the matrix
    syzygy_injective: bool       # some maximal minor is a nonzero form
    dimensions: Tuple[int, ...]  # dim I_k for k = 0 .. 2r+2
    expected: Tuple[int, ...]
    mismatches: Tuple[Tuple[int, int, int], ...]  # (k, actual, predicted)


def certify_resolution(curve: ACMCurve) -> ResolutionCertificate:
    """Exact certificate that the minors resolve with the matrix as syzygies.

    The cofactor identities prove the composition is zero; a nonzero
    maximal minor makes the syzygy map injective in every degree; together
    they force dim I_k <= expected, so the dimension sweep certifies
    equality through the window k = 0 .. 2r+2.
    """
    r = curve.r
    cofactor = True
    for j in range(r):
        acc = HomogPoly(4, r + 1, {})
        for i in range(r + 1):
            acc = acc + curve.minors[i] * curve.entries[i][j]
        if not acc.is_zero():
            cofactor = False
            break
    injective = any(not m.is_zero() for m in curve.minors)
    window = range(0, 2 * r + 3)
    expected = tuple(predicted_ideal_dimension(r, k) for k in window)
    if cofactor and injective:
        dims = tuple(curve.ideal.dimension(k) for k in window)
    else:
        # bound not proven, stay on the exact path
        bare = GradedIdeal([m for m in curve.minors if not m.is_zero()])
        dims = tuple(bare.dimension(k) for k in window)
    mismatches = tuple(
        (k, dims[k], expected[k]) for k in window if dims[k] != expected[k]
    )
    ok = cofactor and injective and not mismatches
    curve.certified.exactness = ok
    return ResolutionCertificate(
        ok=ok,
        cofactor_identity=cofactor,
        syzygy_injective=injective,
        dimensions=dims,
        expected=expected,
        mismatches=mismatches,
    )


def avoids_base_line(curve: ACMCurve) -> bool:
    """True when the curve misses the line x2 = x3 = 0.

    On that line the matrix restricts to the pencil of the first two
    coefficients; full rank everywhere on the line keeps the projection
    to the parameter line defined on all of the curve.
    """
    return is_injective_pencil(curve.coeffs[0], curve.coeffs[1]).ok


def random_real_curve(
    r: int, seed: int, span: int = 3, max_tries: int = 64
) -> ACMCurve:
    """Random canonical-gauge curve with the reality constraint, certified.

    Draws integer matrices until the resolution certificate passes; the
    base line is avoided automatically in the canonical gauge.
    """
    rng = random.Random(seed)
    for _ in range(max_tries):
        A3 = ExactMatrix(
            [
                [
                    GaussianRational(rng.randint(-span, span), rng.randint(-span, span))
                    for _ in range(r)
                ]
                for _ in range(r + 1)
            ]
        )
        try:
            curve = ACMCurve.from_real_pair(A3)
        except ValueError:
            continue
        if curve.certificate().ok:
            return curve
    raise RuntimeError(f"no certified curve after {max_tries} draws (r={r}, seed={seed})")


def random_sigma_curve(r: int, seed: int, max_tries: int = 64) -> ACMCurve:
    """Random sigma-paired curve in its raw gauge, drawn until certified."""
    from ..reality import make_sigma_invariant_pencil

    for attempt in range(max_tries):
        matrix = make_sigma_invariant_pencil(r, seed * max_tries + attempt)
        try:
            curve = ACMCurve(matrix)
        except ValueError:
            continue
        if curve.certificate().ok:
            return curve
    raise RuntimeError(f"no certified curve after {max_tries} draws (r={r}, seed={seed})")
