"""Homogeneous and univariate polynomial layers, graded matrices."""

import random
from math import comb

import pytest

from hkcurves.exact_algebra.ideals import GradedIdeal
from hkcurves.exact_algebra.polys import (
    HomogPoly,
    UniPoly,
    graded_matrix,
    monomial_basis,
    monomial_count,
    monomial_index,
    uni_gcd,
    uni_interpolate,
)
from hkcurves.exact_algebra.scalars import GaussianRational

ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)


def test_monomial_counts():
    for n in (2, 3, 4):
        for d in range(6):
            assert monomial_count(n, d) == comb(d + n - 1, n - 1)
            basis = monomial_basis(n, d)
            assert len(basis) == monomial_count(n, d)
            assert all(sum(m) == d and len(m) == n for m in basis)
            index = monomial_index(n, d)
            assert [index[m] for m in basis] == list(range(len(basis)))


def test_homog_add_requires_same_degree():
    f = HomogPoly(4, 1, {(1, 0, 0, 0): ONE})
    g = HomogPoly(4, 2, {(2, 0, 0, 0): ONE})
    with pytest.raises(ValueError):
        f + g


def test_homog_ring_identities():
    rng = random.Random(2)

    def rand_poly(d):
        coeffs = {
            m: GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
            for m in monomial_basis(4, d)
        }
        return HomogPoly(4, d, {m: c for m, c in coeffs.items() if not c.is_zero()})

    for _ in range(15):
        f = rand_poly(1)
        g = rand_poly(2)
        h = rand_poly(1)
        assert f * g == g * f
        assert f * (g + h * h) == f * g + f * (h * h)
        assert (f * g).degree == 3


def test_mul_monomial_shifts_degree():
    f = HomogPoly(4, 1, {(1, 0, 0, 0): ONE, (0, 0, 0, 1): GaussianRational(0, 1)})
    g = f.mul_monomial((0, 1, 0, 0))
    assert g.degree == 2
    assert g.coeffs[(1, 1, 0, 0)] == ONE


def test_conj_coeffs_is_coefficientwise():
    f = HomogPoly(4, 1, {(1, 0, 0, 0): GaussianRational(1, 2)})
    assert f.conj_coeffs().coeffs[(1, 0, 0, 0)] == GaussianRational(1, -2)


def test_evaluate_agrees_with_coefficients():
    f = HomogPoly(4, 2, {(1, 1, 0, 0): GaussianRational(3, 0)})
    pt = [GaussianRational(2, 0), GaussianRational(0, 1), ONE, ONE]
    assert f.evaluate(pt) == GaussianRational(0, 6)


def test_graded_matrix_multiplication_by_variable():
    # multiplication by x0 from degree 1 to degree 2 is injective: rank 4
    x0 = HomogPoly(4, 1, {(1, 0, 0, 0): ONE})
    gm = graded_matrix([[x0]], 1, 4)
    assert gm.matrix.shape == (monomial_count(4, 2), monomial_count(4, 1))
    assert gm.matrix.rank() == 4


def test_graded_matrix_respects_linearity():
    rng = random.Random(4)
    basis = monomial_basis(4, 1)
    f = HomogPoly(4, 1, {basis[0]: GaussianRational(2, 1)})
    g = HomogPoly(4, 1, {basis[2]: GaussianRational(0, -1)})
    mf = graded_matrix([[f]], 2, 4).matrix
    mg = graded_matrix([[g]], 2, 4).matrix
    mfg = graded_matrix([[f + g]], 2, 4).matrix
    assert mfg == mf + mg


def test_graded_ideal_dimension_of_principal_ideal():
    # (x0): dimension in degree k is monomial_count(4, k-1)
    x0 = HomogPoly(4, 1, {(1, 0, 0, 0): ONE})
    ideal = GradedIdeal([x0])
    for k in range(1, 5):
        assert ideal.dimension(k) == monomial_count(4, k - 1)


def test_graded_ideal_normal_form_is_projection():
    x0 = HomogPoly(4, 1, {(1, 0, 0, 0): ONE})
    ideal = GradedIdeal([x0])
    # x0*x1 reduces to zero, x1*x2 survives
    inside = HomogPoly(4, 2, {(1, 1, 0, 0): ONE})
    outside = HomogPoly(4, 2, {(0, 1, 1, 0): ONE})
    assert ideal.normal_form(inside) == {}
    nf = ideal.normal_form(outside)
    assert len(nf) == 1 and list(nf.values())[0] == ONE


def test_unipoly_divmod_round_trip():
    rng = random.Random(6)
    for _ in range(25):
        a = UniPoly([rng.randint(-4, 4) for _ in range(6)])
        b = UniPoly([rng.randint(-4, 4) for _ in range(3)])
        if b.is_zero():
            continue
        q, rem = a.divmod(b)
        assert q * b + rem == a
        assert rem.degree < b.degree or rem.is_zero()


def test_uni_gcd_of_common_factor():
    f = UniPoly([1, 1])  # x + 1
    g = UniPoly([-1, 1])  # x - 1
    a = f * g
    b = f * UniPoly([2, 1])
    got = uni_gcd([a, b])
    assert got == f.monic()


def test_uni_gcd_coprime_is_constant():
    got = uni_gcd([UniPoly([1, 1]), UniPoly([2, 1])])
    assert got.is_constant() and not got.is_zero()


def test_uni_gcd_single_argument_family():
    with pytest.raises(TypeError):
        uni_gcd(UniPoly([1, 1]), UniPoly([1]))  # two positional args is an error


def test_uni_interpolate_recovers_polynomial():
    target = UniPoly([3, -2, 1])
    pts = [GaussianRational(k, 0) for k in range(3)]
    vals = [target.evaluate(p) for p in pts]
    assert uni_interpolate(pts, vals) == target
