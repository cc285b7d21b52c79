"""Pencils of (r+1) x r matrices and their reduction to the shift pair.

A pencil (A1, A2) is the family A1 + lambda*A2, lambda running over the
projective line with A2 alone as the point at infinity.  The pencil is
injective when every member has full column rank r; an injective pencil
is equivalent, by exact left/right gauge matrices, to the canonical pair
(S, T) with S the identity stacked on a zero row and T the down-shift.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .exact_algebra.linalg import ExactMatrix
from .exact_algebra.modp import PRIMES, BadPrime, rank_mod, rows_mod
from .exact_algebra.polys import UniPoly, uni_gcd, uni_interpolate
from .exact_algebra.scalars import GaussianRational

_ZERO = GaussianRational(0, 0)
_ONE = GaussianRational(1, 0)


def canonical_pair(r: int) -> Tuple[ExactMatrix, ExactMatrix]:
    """(S, T): S[i,j] = [i==j], T[i,j] = [i==j+1], both (r+1) x r."""
    if r < 1:
        raise ValueError("need r >= 1")
    s_rows = [[_ONE if i == j else _ZERO for j in range(r)] for i in range(r + 1)]
    t_rows = [[_ONE if i == j + 1 else _ZERO for j in range(r)] for i in range(r + 1)]
    return ExactMatrix(s_rows), ExactMatrix(t_rows)


def _check_shape(A1: ExactMatrix, A2: ExactMatrix) -> int:
    if A1.shape != A2.shape:
        raise ValueError(f"shape mismatch {A1.shape} vs {A2.shape}")
    rows, cols = A1.shape
    if rows != cols + 1 or cols < 1:
        raise ValueError(f"expected (r+1) x r, got {A1.shape}")
    return cols


def pencil_minors(A1: ExactMatrix, A2: ExactMatrix) -> List[UniPoly]:
    """Maximal minors of A1 + lambda*A2 as polynomials in lambda.

    Each minor has degree at most r, so r+1 evaluations determine it.
    """
    r = _check_shape(A1, A2)
    points = [GaussianRational(k) for k in range(r + 1)]
    samples: List[List[GaussianRational]] = []
    for lam in points:
        member = A1 + A2.scale(lam)
        dets = []
        for skip in range(r + 1):
            rows = [
                [member[i, j] for j in range(r)] for i in range(r + 1) if i != skip
            ]
            dets.append(ExactMatrix(rows).det())
        samples.append(dets)
    return [
        uni_interpolate(points, [samples[k][skip] for k in range(r + 1)])
        for skip in range(r + 1)
    ]


@dataclass(frozen=True)
class InjectivityReport:
    ok: bool
    # point (mu, lam) with mu*A1 + lam*A2 of deficient rank, when one is known
    witness: Optional[Tuple[GaussianRational, GaussianRational]]
    # non-constant gcd of the maximal minors, when rank drops at a finite
    # point the gcd does not factor rationally
    minor_gcd: Optional[UniPoly]


def is_injective_pencil(A1: ExactMatrix, A2: ExactMatrix) -> InjectivityReport:
    r = _check_shape(A1, A2)
    minors = pencil_minors(A1, A2)
    if all(m.is_zero() for m in minors):
        # rank deficient at every point; lambda = 0 is a concrete witness
        return InjectivityReport(False, (_ONE, _ZERO), None)
    if A2.rank() < r:
        return InjectivityReport(False, (_ZERO, _ONE), None)
    g = uni_gcd(minors)
    if g.degree == 0:
        return InjectivityReport(True, None, None)
    reduced = g
    while reduced.degree > 1:
        # strip repeated factors; a linear squarefree part gives an exact root
        square_part = uni_gcd([reduced, reduced.derivative()])
        if square_part.degree == 0:
            break
        reduced, rem = reduced.divmod(square_part)
        assert rem.is_zero()
    if reduced.degree == 1:
        lam = -(reduced.coeffs[0] / reduced.coeffs[1])
        return InjectivityReport(False, (_ONE, lam), g)
    return InjectivityReport(False, None, g)


@dataclass(frozen=True)
class KroneckerReduction:
    P: ExactMatrix  # (r+1) x (r+1)
    Q: ExactMatrix  # r x r
    r: int


def kronecker_reduce(A1: ExactMatrix, A2: ExactMatrix) -> KroneckerReduction:
    """Exact gauge (P, Q) with P*A1*Q = S and P*A2*Q = T.

    Requires an injective pencil.  The left kernel of A2 + lambda*A1 over
    polynomials of degree r is one-dimensional; writing its coefficient
    rows as c_0..c_r, the rows c_k*A1 (k < r) are invertible and conjugate
    the pair onto (S, -T), fixed up by alternating sign flips.
    """
    r = _check_shape(A1, A2)
    report = is_injective_pencil(A1, A2)
    if not report.ok:
        if report.witness is not None:
            mu, lam = report.witness
            raise ValueError(f"pencil drops rank at [{mu}:{lam}]; cannot reduce")
        raise ValueError(
            f"pencil drops rank where {report.minor_gcd!r} vanishes; cannot reduce"
        )
    n = r + 1
    # unknowns: c_k[i], flattened as k*n + i; equations indexed by (k, j):
    # sum_i c_k[i] A2[i,j] + c_{k-1}[i] A1[i,j] = 0 for k = 0..r+1
    rows = []
    for k in range(r + 2):
        for j in range(r):
            row = [_ZERO] * (n * n)
            if k <= r:
                for i in range(n):
                    row[k * n + i] = row[k * n + i] + A2[i, j]
            if k >= 1:
                for i in range(n):
                    row[(k - 1) * n + i] = row[(k - 1) * n + i] + A1[i, j]
            rows.append(row)
    kernel = ExactMatrix(rows, cols=n * n).kernel_basis()
    if kernel.shape[1] != 1:
        raise ValueError(
            f"left kernel dimension {kernel.shape[1]} != 1; pencil not injective"
        )
    c = kernel.column(0)
    what = ExactMatrix([[c[k * n + i] for i in range(n)] for k in range(n)])
    rprime = what @ A1  # last row is zero by the kernel equations
    rp = ExactMatrix([[rprime[k, j] for j in range(r)] for k in range(r)])
    rp_inv = rp.inverse()
    sign_left = ExactMatrix(
        [
            [(_ONE if (i % 2 == 0) else -_ONE) if i == j else _ZERO for j in range(n)]
            for i in range(n)
        ]
    )
    sign_right = ExactMatrix(
        [
            [(_ONE if (i % 2 == 0) else -_ONE) if i == j else _ZERO for j in range(r)]
            for i in range(r)
        ]
    )
    P = sign_left @ what
    Q = rp_inv @ sign_right
    S, T = canonical_pair(r)
    if P @ A1 @ Q != S or P @ A2 @ Q != T:
        raise AssertionError("reduction verification failed")
    return KroneckerReduction(P=P, Q=Q, r=r)


def apply_gauge(
    A1: ExactMatrix, A2: ExactMatrix, P: ExactMatrix, Q: ExactMatrix
) -> Tuple[ExactMatrix, ExactMatrix]:
    return P @ A1 @ Q, P @ A2 @ Q


def stabilizer_dimension(pair: Tuple[ExactMatrix, ExactMatrix]) -> int:
    """dim {(X, Y) : X*S + S*Y = 0, X*T + T*Y = 0} for the canonical pair."""
    S, T = pair
    return pair_stabilizer_dimension(S, T)


def pair_stabilizer_dimension(A1: ExactMatrix, A2: ExactMatrix) -> int:
    """dim of {(X, Y) : X*Ai + Ai*Y = 0, i = 1, 2}.

    One for the canonical pair: only (zI, -zI) survives, which pins the
    gauge freedom of any further matrices transported along with (S, T).
    """
    r = _check_shape(A1, A2)
    n = r + 1
    # unknowns: X (n x n) flattened first, then Y (r x r)
    num = n * n + r * r
    sparse = []
    for A in (A1, A2):
        for i in range(n):
            for j in range(r):
                entries = {}
                for l in range(n):
                    if not A[l, j].is_zero():
                        entries[i * n + l] = A[l, j]
                for l in range(r):
                    if not A[i, l].is_zero():
                        entries[n * n + l * r + j] = A[i, l]
                sparse.append(sorted(entries.items()))
    # (zI, -zI) always solves the system, so the kernel holds a line and
    # the rank stays below num; a modular rank of num - 1 is then exact
    for p, s in PRIMES:
        try:
            if rank_mod(rows_mod(sparse, num, p, s), p, stop_rank=num - 1) == num - 1:
                return 1
        except BadPrime:
            continue
    rows = []
    for row_entries in sparse:
        row = [_ZERO] * num
        for col, v in row_entries:
            row[col] = v
        rows.append(row)
    return ExactMatrix(rows, cols=num).kernel_basis().shape[1]


def random_injective_pencil(
    r: int, seed: int, span: int = 3, max_tries: int = 64
) -> Tuple[ExactMatrix, ExactMatrix]:
    """Seeded (A1, A2) with every member of full column rank."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        mats = []
        for _k in range(2):
            rows = [
                [
                    GaussianRational(rng.randint(-span, span), rng.randint(-span, span))
                    for _j in range(r)
                ]
                for _i in range(r + 1)
            ]
            mats.append(ExactMatrix(rows))
        if is_injective_pencil(mats[0], mats[1]).ok:
            return mats[0], mats[1]
    raise ValueError("no injective pencil found within the retry bound")
