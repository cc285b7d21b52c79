"""Determinantal curves: invariants, certificates, and planar slices."""

import random
from fractions import Fraction

import pytest

from hkcurves.acm_curve import (
    ACMCurve,
    LinearMatrix,
    avoids_base_line,
    certify_resolution,
    curve_degree,
    curve_genus,
    expected_hilbert,
    fiber_hilbert_function,
    hilbert_profile,
    invariants,
    predicted_ideal_dimension,
    random_real_curve,
    random_sigma_curve,
    restrict_to_fiber,
    signed_maximal_minors,
    stratum_check,
)
from hkcurves.exact_algebra.ideals import GradedIdeal
from hkcurves.exact_algebra.linalg import ExactMatrix
from hkcurves.exact_algebra.polys import HomogPoly
from hkcurves.exact_algebra.scalars import GaussianRational
from hkcurves.pencil import canonical_pair

ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)


def test_invariants_table():
    # degree r(r+1)/2, genus (r-1)(r-2)(2r+3)/6
    # cross-check for r = 3: h0(O_C(4)) = 35 - dim I_4 = 35 - 13 = 22 and
    # chi = 6*4 + 1 - g with vanishing h1 forces g = 3
    assert [invariants(r) for r in range(1, 6)] == [
        (1, 0),
        (3, 0),
        (6, 3),
        (10, 11),
        (15, 26),
    ]
    for r in range(1, 6):
        assert curve_degree(r) == r * (r + 1) // 2
        assert curve_genus(r) == (r - 1) * (r - 2) * (2 * r + 3) // 6


def test_invariants_reject_bad_r():
    with pytest.raises(ValueError):
        invariants(0)


def test_cofactor_identity_of_signed_minors():
    # Laplace: the signed minors are a syzygy of every column
    for seed in range(4):
        curve = random_real_curve(2, seed=seed)
        entries = curve.entries
        minors = curve.minors
        r = curve.r
        for j in range(r):
            acc = HomogPoly(4, r + 1, {})
            for i in range(r + 1):
                acc = acc + entries[i][j] * minors[i]
            assert acc == HomogPoly(4, r + 1, {})


def test_signed_minors_match_unsigned_up_to_sign():
    curve = random_real_curve(2, seed=1)
    plain = signed_maximal_minors(curve.entries)
    assert plain == list(curve.minors)


def test_constructor_rejects_identically_singular_matrix():
    r = 2
    zero = ExactMatrix([[ZERO] * r for _ in range(r + 1)])
    with pytest.raises(ValueError):
        ACMCurve(LinearMatrix(r, zero, zero, zero, zero))


def test_linear_matrix_shape_validation():
    good = ExactMatrix([[ONE, ZERO], [ZERO, ONE], [ZERO, ZERO]])
    bad = ExactMatrix([[ONE, ZERO], [ZERO, ONE]])
    with pytest.raises(ValueError):
        LinearMatrix(2, good, good, good, bad)


def test_certificate_matches_predicted_dimensions():
    for r, seed in ((1, 0), (2, 0), (3, 1)):
        curve = random_real_curve(r, seed=seed)
        cert = curve.certificate()
        assert cert.ok
        assert cert.cofactor_identity and cert.syzygy_injective
        assert cert.mismatches == ()
        assert list(cert.dimensions) == [
            predicted_ideal_dimension(r, k) for k in range(len(cert.dimensions))
        ]


def test_fresh_ideal_agrees_with_prediction():
    # independent recount: a bare echelon with no certified bound
    curve = random_real_curve(2, seed=3)
    fresh = GradedIdeal(list(curve.minors))
    for k in range(0, 6):
        assert fresh.dimension(k) == predicted_ideal_dimension(2, k)


def test_certificate_fails_for_non_injective_pencil():
    # shared pencil root forces a codimension-1 component; dims must mismatch
    A1 = ExactMatrix([[ONE, ZERO], [ZERO, ZERO], [ZERO, ZERO]])
    A2 = ExactMatrix([[ZERO, ZERO], [ZERO, ONE], [ONE, ZERO]])
    zero = ExactMatrix([[ZERO, ZERO], [ZERO, ZERO], [ZERO, ZERO]])
    curve = ACMCurve(LinearMatrix(2, A1, A2, zero, zero))
    cert = curve.certificate()
    assert not cert.ok
    assert cert.mismatches != ()
    assert curve.certified.exactness is False


def test_from_real_pair_builds_invariant_curve():
    rng = random.Random(12)
    r = 2
    A3 = ExactMatrix(
        [
            [GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(r)]
            for _ in range(r + 1)
        ]
    )
    curve = ACMCurve.from_real_pair(A3)
    assert (curve.matrix.A1, curve.matrix.A2) == canonical_pair(r)
    assert curve.certified.sigma_invariance


def test_random_curves_are_deterministic():
    a = random_real_curve(2, seed=7)
    b = random_real_curve(2, seed=7)
    assert a.matrix == b.matrix
    c = random_sigma_curve(2, 7)
    d = random_sigma_curve(2, 7)
    assert c.matrix == d.matrix


def test_random_sigma_curve_is_certified_invariant():
    for r in (2, 3):
        curve = random_sigma_curve(r, 0)
        assert curve.certified.base_avoidance
        assert curve.certified.sigma_invariance
        assert curve.certificate().ok
        assert avoids_base_line(curve)


def test_gauge_preserves_ideal_dimensions():
    curve = random_real_curve(2, seed=5)
    rng = random.Random(5)

    def inv(n):
        while True:
            m = ExactMatrix(
                [
                    [
                        GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))
                        for _ in range(n)
                    ]
                    for _ in range(n)
                ]
            )
            if not m.det().is_zero():
                return m

    gauged = curve.gauge(inv(3), inv(2))
    for k in (2, 3, 4):
        assert gauged.ideal.dimension(k) == curve.ideal.dimension(k)
    assert gauged.degree == curve.degree and gauged.genus == curve.genus


# ---------------------------------------------------------------------------
# planar slices


def test_expected_hilbert_display():
    # triangular numbers capped at the curve degree
    assert [expected_hilbert(2, k) for k in range(-1, 5)] == [0, 1, 3, 3, 3, 3]
    assert [expected_hilbert(3, k) for k in range(5)] == [1, 3, 6, 6, 6]


def test_fiber_length_and_profile():
    for r in (2, 3):
        curve = random_sigma_curve(r, 1)
        d = curve.degree
        for t in (GaussianRational(1, 1), GaussianRational(Fraction(2, 3), -2)):
            scheme = restrict_to_fiber(curve, t)
            assert scheme.length() == d
            profile = fiber_hilbert_function(scheme)
            assert profile == tuple(
                expected_hilbert(r, k) for k in range(len(profile))
            )
            assert stratum_check(scheme)


def test_fiber_at_infinity_chart():
    curve = random_sigma_curve(2, 2)
    scheme = restrict_to_fiber(curve, GaussianRational(0, 0), at_infinity=True)
    assert scheme.at_infinity
    assert scheme.length() == curve.degree
    assert stratum_check(scheme)


def test_hilbert_profile_matches_scheme():
    curve = random_sigma_curve(2, 3)
    t = GaussianRational(Fraction(1, 2), 1)
    assert hilbert_profile(curve, t) == restrict_to_fiber(curve, t).hilbert_function()


def test_restrict_to_fiber_requires_certificate():
    A1 = ExactMatrix([[ONE, ZERO], [ZERO, ZERO], [ZERO, ZERO]])
    A2 = ExactMatrix([[ZERO, ZERO], [ZERO, ONE], [ONE, ZERO]])
    zero = ExactMatrix([[ZERO, ZERO], [ZERO, ZERO], [ZERO, ZERO]])
    bad = ACMCurve(LinearMatrix(2, A1, A2, zero, zero))
    with pytest.raises(ValueError):
        restrict_to_fiber(bad, GaussianRational(1, 0))


def test_certify_resolution_is_idempotent():
    curve = random_real_curve(2, seed=9)
    first = certify_resolution(curve)
    second = curve.certificate()
    assert first == second
