"""The antiholomorphic involution on points, forms, and matrix tuples."""

import random
from fractions import Fraction

from hkcurves.acm_curve import ACMCurve
from hkcurves.exact_algebra.linalg import ExactMatrix
from hkcurves.exact_algebra.polys import HomogPoly, monomial_basis
from hkcurves.exact_algebra.scalars import GaussianRational
from hkcurves.reality import (
    conjugation_matrices,
    is_real_pair,
    is_sigma_invariant_ideal,
    make_sigma_invariant_pencil,
    reality_conjugate,
    sigma_form,
    sigma_matrix_tuple,
    sigma_point,
)

ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)


def _rand_point(rng):
    return tuple(
        GaussianRational(
            Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
            Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
        )
        for _ in range(4)
    )


def _proportional(p, q):
    # projective equality: p = c*q for some nonzero scalar c
    for a, b in zip(p, q):
        if not b.is_zero():
            c = a / b
            break
    else:
        return all(a.is_zero() for a in p)
    return all(a == c * b for a, b in zip(p, q))


def test_sigma_point_squares_to_identity_projectively():
    rng = random.Random(3)
    for _ in range(30):
        p = _rand_point(rng)
        if all(x.is_zero() for x in p):
            continue
        assert _proportional(sigma_point(sigma_point(p)), p)


def test_sigma_point_has_no_fixed_points():
    rng = random.Random(4)
    for _ in range(30):
        p = _rand_point(rng)
        if all(x.is_zero() for x in p):
            continue
        assert not _proportional(sigma_point(p), p)


def test_sigma_form_pairing_with_points():
    # defining property: (sigma f)(p) = conj(f(sigma p))
    rng = random.Random(5)
    for d in (1, 2):
        coeffs = {
            m: GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
            for m in monomial_basis(4, d)
        }
        f = HomogPoly(4, d, {m: c for m, c in coeffs.items() if not c.is_zero()})
        sf = sigma_form(f)
        for _ in range(10):
            p = _rand_point(rng)
            assert sf.evaluate(p) == f.evaluate(sigma_point(p)).conj()


def test_sigma_form_applied_twice():
    rng = random.Random(6)
    for d in (1, 2, 3):
        coeffs = {
            m: GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
            for m in monomial_basis(4, d)
        }
        f = HomogPoly(4, d, {m: c for m, c in coeffs.items() if not c.is_zero()})
        twice = sigma_form(sigma_form(f))
        expected = f if d % 2 == 0 else -f
        assert twice == expected


def test_sigma_matrix_tuple_matches_form_action():
    # the tuple action mirrors sigma on the linear form A1 x0 + ... + A4 x3
    rng = random.Random(7)
    r = 2

    def rand_mat():
        return ExactMatrix(
            [
                [
                    GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
                    for _ in range(r)
                ]
                for _ in range(r + 1)
            ]
        )

    A = tuple(rand_mat() for _ in range(4))
    B = sigma_matrix_tuple(A)
    # entries of the matrix linear form transform like degree-1 forms
    for i in range(r + 1):
        for j in range(r):
            f = HomogPoly(
                4,
                1,
                {
                    m: A[k][i, j]
                    for k, m in enumerate(
                        [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
                    )
                    if not A[k][i, j].is_zero()
                },
            )
            g_coeffs = sigma_form(f).coeffs if sigma_form(f).coeffs else {}
            got = [
                g_coeffs.get(m, ZERO)
                for m in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
            ]
            assert got == [B[k][i, j] for k in range(4)]


def test_conjugation_matrices_are_real_signs():
    g0, h0 = conjugation_matrices(2)
    assert g0.shape == (3, 3) and h0.shape == (2, 2)
    prod_g = g0 @ g0.conj()
    prod_h = h0 @ h0.conj()
    # squares are scalar (plus or minus identity), the usual quaternionic sign
    eye3, eye2 = ExactMatrix.identity(3), ExactMatrix.identity(2)
    assert prod_g == eye3 or prod_g == eye3.scale(-ONE)
    assert prod_h == eye2 or prod_h == eye2.scale(-ONE)


def test_reality_conjugate_squares_to_minus_one():
    rng = random.Random(8)
    for r in (1, 2, 3):
        A3 = ExactMatrix(
            [
                [
                    GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
                    for _ in range(r)
                ]
                for _ in range(r + 1)
            ]
        )
        assert reality_conjugate(reality_conjugate(A3)) == A3.scale(-ONE)


def test_real_pair_detection():
    rng = random.Random(9)
    for r in (1, 2):
        A3 = ExactMatrix(
            [
                [
                    GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
                    for _ in range(r)
                ]
                for _ in range(r + 1)
            ]
        )
        A4 = reality_conjugate(A3)
        assert is_real_pair(A3, A4)
        bump = [[ZERO] * r for _ in range(r + 1)]
        bump[0][0] = ONE
        assert not is_real_pair(A3, A4 + ExactMatrix(bump))


def test_make_sigma_invariant_pencil_yields_invariant_span():
    for seed in range(5):
        r = 2 + seed % 2
        mats = make_sigma_invariant_pencil(r, seed)
        curve = ACMCurve(mats)
        minors = [m for m in curve.minors if m.coeffs]
        assert is_sigma_invariant_ideal(minors, r)


def test_is_sigma_invariant_rejects_generic_span():
    rng = random.Random(10)
    while True:
        coeffs = {
            m: GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
            for m in monomial_basis(4, 2)
        }
        f = HomogPoly(4, 2, {m: c for m, c in coeffs.items() if not c.is_zero()})
        if f.coeffs and sigma_form(f) != f and sigma_form(f) != -f:
            break
    assert not is_sigma_invariant_ideal([f], 2)
