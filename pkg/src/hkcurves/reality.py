"""Real structure: a fixed antiholomorphic involution of projective 3-space.

On points, sigma sends [x0:x1:x2:x3] to [-conj(x1): conj(x0): -conj(x3):
conj(x2)]; it squares to the identity on points and has no fixed points.
On forms it acts by conjugating coefficients and substituting x0 -> -x1,
x1 -> x0, x2 -> -x3, x3 -> x2, so that (sigma f)(p) = conj(f(sigma p)).

In the canonical pencil gauge (S, T) the involution is implemented by a
fixed pair of real sign-reversal matrices (g0, h0); a matrix pair (A3, A4)
cuts out a sigma-invariant curve exactly when A4 = conj(g0 * A3 * h0).
"""

from __future__ import annotations

import random
from typing import Sequence, Tuple

from .exact_algebra.ideals import GradedIdeal
from .exact_algebra.linalg import ExactMatrix
from .exact_algebra.polys import HomogPoly
from .exact_algebra.scalars import GaussianRational
from .pencil import is_injective_pencil

_ZERO = GaussianRational(0, 0)
_ONE = GaussianRational(1, 0)


def sigma_point(p: Sequence[GaussianRational]) -> Tuple[GaussianRational, ...]:
    if len(p) != 4:
        raise ValueError("expected 4 homogeneous coordinates")
    x0, x1, x2, x3 = p
    return (-x1.conj(), x0.conj(), -x3.conj(), x2.conj())


def sigma_form(f: HomogPoly) -> HomogPoly:
    """Pullback on forms; applied twice gives (-1)^degree times the form."""
    if f.num_vars != 4:
        raise ValueError("expected a form in 4 variables")
    coeffs = {}
    for (m0, m1, m2, m3), c in f.coeffs.items():
        val = c.conj()
        if (m0 + m2) % 2:
            val = -val
        mono = (m1, m0, m3, m2)
        coeffs[mono] = coeffs.get(mono, _ZERO) + val
    return HomogPoly(4, f.degree, {m: v for m, v in coeffs.items() if not v.is_zero()})


def sigma_matrix_tuple(
    A: Tuple[ExactMatrix, ExactMatrix, ExactMatrix, ExactMatrix]
) -> Tuple[ExactMatrix, ExactMatrix, ExactMatrix, ExactMatrix]:
    """Image of the coefficient tuple of A1*x0 + A2*x1 + A3*x2 + A4*x3."""
    A1, A2, A3, A4 = A
    return (A2.conj(), -A1.conj(), A4.conj(), -A3.conj())


def is_sigma_invariant_ideal(generators: Sequence[HomogPoly], degree: int) -> bool:
    """True when the span of the generators equals the span of their images.

    The span is stable exactly when adjoining the transformed forms does
    not grow the degree piece; invariance of the curve is a property of
    the span, not of any one generating set.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("no generators")
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator of degree {g.degree}, stated degree {degree}")
    gens = [g for g in gens if g.coeffs]
    if not gens:
        raise ValueError("no nonzero generators")
    base = GradedIdeal(gens).dimension(degree)
    both = GradedIdeal(gens + [sigma_form(g) for g in gens]).dimension(degree)
    return base == both


def _sigma_linear_coeffs(
    c: Tuple[GaussianRational, GaussianRational, GaussianRational, GaussianRational]
) -> Tuple[GaussianRational, GaussianRational, GaussianRational, GaussianRational]:
    """Coefficient rule of the induced action on linear forms."""
    c0, c1, c2, c3 = c
    return (c1.conj(), -c0.conj(), c3.conj(), -c2.conj())


def make_sigma_invariant_pencil(r: int, seed: int, span: int = 3, max_tries: int = 64):
    """Random linear matrix whose minor ideal is invariant under the involution.

    For odd r the r+1 rows come in pairs (row, image row); for even r the
    r columns pair up instead.  Either way the entrywise image of the
    matrix is a signed block permutation of itself, so the minors span an
    invariant space.  Draws integer coefficients until the leading pencil
    is injective; deterministic per (r, seed).
    """
    from .acm_curve.curve import LinearMatrix

    if r < 1:
        raise ValueError("need r >= 1")
    rng = random.Random(1000003 * seed + r)

    def draw():
        return tuple(
            GaussianRational(rng.randint(-span, span), rng.randint(-span, span))
            for _ in range(4)
        )

    n = r + 1
    for _ in range(max_tries):
        entries = [[None] * r for _ in range(n)]
        if r % 2 == 1:
            for k in range(n // 2):
                for j in range(r):
                    c = draw()
                    entries[2 * k][j] = c
                    entries[2 * k + 1][j] = _sigma_linear_coeffs(c)
        else:
            for k in range(r // 2):
                for i in range(n):
                    c = draw()
                    entries[i][2 * k] = c
                    entries[i][2 * k + 1] = _sigma_linear_coeffs(c)
        mats = tuple(
            ExactMatrix([[entries[i][j][v] for j in range(r)] for i in range(n)])
            for v in range(4)
        )
        if is_injective_pencil(mats[0], mats[1]).ok:
            return LinearMatrix(r, *mats)
    raise RuntimeError(
        f"no injective draw after {max_tries} tries (r={r}, seed={seed})"
    )


def conjugation_matrices(r: int) -> Tuple[ExactMatrix, ExactMatrix]:
    """(g0, h0): real anti-diagonal sign matrices with

    g0 S h0 = T,  g0 T h0 = -S,  g0^2 = (-1)^r I,  h0^2 = (-1)^(r-1) I.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    g0 = ExactMatrix(
        [
            [
                (GaussianRational((-1) ** j) if i + j == r else _ZERO)
                for j in range(r + 1)
            ]
            for i in range(r + 1)
        ]
    )
    h0 = ExactMatrix(
        [
            [
                (GaussianRational((-1) ** i) if i + j == r - 1 else _ZERO)
                for j in range(r)
            ]
            for i in range(r)
        ]
    )
    return g0, h0


def reality_conjugate(A3: ExactMatrix) -> ExactMatrix:
    """The antilinear involution-up-to-sign tau(B) = conj(g0 B h0); tau^2 = -id."""
    r = A3.cols
    if A3.rows != r + 1:
        raise ValueError(f"expected (r+1) x r, got {A3.shape}")
    g0, h0 = conjugation_matrices(r)
    return (g0 @ A3 @ h0).conj()


def is_real_pair(A3: ExactMatrix, A4: ExactMatrix) -> bool:
    return A4 == reality_conjugate(A3)


def sigma_pair_A34(
    M: ExactMatrix, t: GaussianRational
) -> Tuple[ExactMatrix, ExactMatrix]:
    """Unique real pair (A3, A4) with A3 + t*A4 = M.

    Solving A3 + t*tau(A3) = M with tau antilinear and tau^2 = -id gives
    A3 = (M - t*tau(M)) / (1 + |t|^2); the denominator never vanishes.
    """
    tau_m = reality_conjugate(M)
    denom = _ONE + t * t.conj()
    A3 = (M - tau_m.scale(t)).scale(_ONE / denom)
    A4 = reality_conjugate(A3)
    if A3 + A4.scale(t) != M:
        raise AssertionError("real pair reconstruction failed")
    return A3, A4
