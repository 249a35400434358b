"""Tests for weight construction, deficit sums, and stencil properties.

The closed-form expected stencils below are written out independently of the
builder (which assembles base + head + tail additively), so these tests catch
any drift in either representation.  Deficit reference values come from
mpmath at 40 digits.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from caputofd import (
    HarmonicDeficit,
    SchemeId,
    build_weights,
    expansion_coefficients,
    harmonic_deficit,
    k1_coefficient,
    k2_coefficient,
    midpoint_tail_deficit,
    nominal_order,
    normalized_lambda,
    scheme_norm,
    validate_weights,
    zeta,
)

ALPHAS = [0.25, 0.5, 0.75]


def _assert_vector(scheme, alpha, expected):
    wv = build_weights(scheme, alpha, len(expected) - 1)
    np.testing.assert_allclose(wv.weights, expected, rtol=0.0, atol=1e-12)


# ---------------------------------------------------------------------------
# closed-form stencils, small n
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("a", ALPHAS)
def test_l1_two_point(a):
    _assert_vector(SchemeId.L1, a, [1.0, 2.0 ** (1 - a) - 2.0, 1.0 - 2.0 ** (1 - a)])


@pytest.mark.parametrize("a", ALPHAS)
def test_l1_second_four_point(a):
    z1 = zeta(a - 1.0)
    expected = [
        1.0 - z1,
        2.0 ** (1 - a) - 2.0 + 2.0 * z1,
        3.0 ** (1 - a) - 2.0 ** (2 - a) + 1.0 - z1,
        4.0 ** (1 - a) - 2.0 * 3.0 ** (1 - a) + 2.0 ** (1 - a),
        3.0 ** (1 - a) - 4.0 ** (1 - a),
    ]
    _assert_vector(SchemeId.L1Second, a, expected)


@pytest.mark.parametrize("a", ALPHAS)
def test_mid_low_small_n(a):
    _assert_vector(SchemeId.MidLow, a, [1.0, 0.0, -1.0])
    _assert_vector(SchemeId.MidLow, a, [1.0, 2.0 ** -a, -1.0, -(2.0 ** -a)])


@pytest.mark.parametrize("a", ALPHAS)
def test_mid_raw_three_point(a):
    z = zeta(a)
    expected = [1.0 - 2.0 * z, 2.0 ** -a + 2.0 * z, -1.0, -(2.0 ** -a)]
    _assert_vector(SchemeId.MidRaw, a, expected)


@pytest.mark.parametrize("a", ALPHAS)
def test_mid_corrected_two_point(a):
    z = zeta(a)
    q = 2.0 ** (2 - a) / (1 - a)
    expected = [1.0 - 2.0 * z, 4.0 * z + q - 2.0, 1.0 - 2.0 * z - q]
    _assert_vector(SchemeId.Mid2mAlpha, a, expected)


@pytest.mark.parametrize("a", ALPHAS)
def test_mid_second_two_point(a):
    z, z1 = zeta(a), zeta(a - 1.0)
    q = 2.0 ** (2 - a) / (1 - a)
    expected = [
        1.0 + 2.0 * z1 - 3.0 * z,
        -4.0 * z1 + 6.0 * z + q - 2.0,
        1.0 + 2.0 * z1 - 3.0 * z - q,
    ]
    _assert_vector(SchemeId.Mid2, a, expected)


@pytest.mark.parametrize("a", ALPHAS)
def test_mid_second_three_point(a):
    z, z1 = zeta(a), zeta(a - 1.0)
    expected = [
        1.0 + 2.0 * z1 - 3.0 * z,
        2.0 ** -a - 4.0 * z1 + 4.0 * z,
        2.0 * z1 + z - 2.0 * (2.0 ** -a - 3.0 ** (1 - a) / (1 - a)) - 3.0,
        2.0 - 2.0 * z - 2.0 * 3.0 ** (1 - a) / (1 - a) + 2.0 ** -a,
    ]
    _assert_vector(SchemeId.Mid2, a, expected)


@pytest.mark.parametrize("a", ALPHAS)
def test_right_low_four_point(a):
    s = 1.0 + 2.0 ** (-1 - a) + 3.0 ** (-1 - a) - zeta(1 + a)
    expected = [-zeta(1 + a), 1.0, 2.0 ** (-1 - a), 3.0 ** (-1 - a), -s]
    _assert_vector(SchemeId.RightLow, a, expected)


@pytest.mark.parametrize("a", ALPHAS)
def test_right_raw_three_point(a):
    s = 1.0 + 2.0 ** (-1 - a) - zeta(1 + a)
    expected = [
        zeta(a) - zeta(1 + a),
        1.0 - zeta(a),
        2.0 ** (-1 - a),
        -s,
    ]
    _assert_vector(SchemeId.RightRaw, a, expected)


@pytest.mark.parametrize("a", ALPHAS)
def test_right_corrected_two_point(a):
    z, z1 = zeta(a), zeta(1 + a)
    q = 2.0 ** (1 - a) / (a * (1 - a))
    expected = [z - z1, 2.0 * z1 - 2.0 * z - q, z - z1 + q]
    _assert_vector(SchemeId.Right2mAlpha, a, expected)


@pytest.mark.parametrize("a", ALPHAS)
def test_right_third_two_point(a):
    expected = [
        (a + 2.0) / (2.0 ** a * a * (a - 1.0) * (2.0 - a)),
        4.0 / (2.0 ** a * (2.0 - a) * (1.0 - a)),
        (2.0 - 3.0 * a) / (2.0 ** a * (2.0 - a) * (1.0 - a) * a),
    ]
    _assert_vector(SchemeId.Right3mAlpha, a, expected)


@pytest.mark.parametrize("a", ALPHAS)
def test_right_third_three_point(a):
    z, zm, zp = zeta(a), zeta(a - 1.0), zeta(a + 1.0)
    expected = [
        -0.5 * zm + 1.5 * z - zp,
        1.5 * zm + 3.0 * zp - 4.5 * z - 3.0 ** (1 - a) * (a + 4.0) / (2.0 * a * (1 - a) * (2 - a)),
        -1.5 * zm + 4.5 * z - 3.0 * zp + 2.0 * 3.0 ** (1 - a) * (a + 1.0) / (a * (1 - a) * (2 - a)),
        0.5 * zm + zp - 1.5 * z - 3.0 ** (2 - a) / (2.0 * (1 - a) * (2 - a)),
    ]
    _assert_vector(SchemeId.Right3mAlpha, a, expected)


# ---------------------------------------------------------------------------
# closed-form stencils, general n
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("n", [6, 11, 40])
def test_mid_corrected_general(a, n):
    w = [1.0 - 2.0 * zeta(a), 2.0 ** -a + 2.0 * zeta(a)]
    w += [(j + 1.0) ** -a - (j - 1.0) ** -a for j in range(2, n - 1)]
    deficit = math.fsum(float(k) ** -a for k in range(1, n)) - zeta(a) - float(
        n
    ) ** (1 - a) / (1 - a)
    w.append(-((n - 2.0) ** -a) - 2.0 * deficit)
    w.append(-((n - 1.0) ** -a) + 2.0 * deficit)
    _assert_vector(SchemeId.Mid2mAlpha, a, w)


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("n", [6, 11, 40])
def test_right_corrected_general(a, n):
    s1 = math.fsum(float(k) ** -(1 + a) for k in range(1, n)) - zeta(1 + a)
    s0 = math.fsum(float(k) ** -a for k in range(1, n)) - zeta(a)
    q = float(n) ** (1 - a) / (a * (1 - a))
    w = [zeta(a) - zeta(1 + a), 1.0 - zeta(a)]
    w += [float(k) ** -(1 + a) for k in range(2, n - 1)]
    w.append((n - 1.0) ** -(1 + a) - q - n * s1 + s0)
    w.append((n - 1.0) * s1 - s0 + q)
    _assert_vector(SchemeId.Right2mAlpha, a, w)


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("n", [6, 8, 10, 12, 14, 16])
def test_right_third_general(a, n):
    """Base-plus-tail closed form with the deficit sums evaluated directly."""
    s1 = math.fsum(float(k) ** -(1 + a) for k in range(1, n)) - zeta(1 + a)
    s0 = math.fsum(float(k) ** -a for k in range(1, n)) - zeta(a)
    sm = math.fsum(float(k) ** -(a - 1) for k in range(1, n)) - zeta(a - 1)
    kay1 = n * s1 - s0 + float(n) ** (1 - a) / (a * (1 - a))
    kay2 = (
        0.5 * n * n * s1
        - n * s0
        + 0.5 * sm
        + float(n) ** (2 - a) / (a * (a - 1) * (a - 2))
    )
    z, zm, zp = zeta(a), zeta(a - 1.0), zeta(a + 1.0)
    w = [-zp + 1.5 * z - 0.5 * zm, 1.0 - 2.0 * z + zm, 2.0 ** -(1 + a) + 0.5 * z - 0.5 * zm]
    w += [float(k) ** -(1 + a) for k in range(3, n - 2)]
    w.append((n - 2.0) ** -(1 + a) + 0.5 * kay1 - kay2)
    w.append((n - 1.0) ** -(1 + a) - 2.0 * kay1 + 2.0 * kay2)
    w.append(-s1 + 1.5 * kay1 - kay2)
    wv = build_weights(SchemeId.Right3mAlpha, a, n)
    np.testing.assert_allclose(wv.weights, w, rtol=0.0, atol=1e-10)


# ---------------------------------------------------------------------------
# deficit sums
# ---------------------------------------------------------------------------

# mpmath dps=40
HARMONIC_CASES = [
    (0.5, 3, 3.1674612899961345),
    (1.5, 2, -1.6123753486854884),
    (1.5, 10, -0.6486616319415704),
    (1.5, 100, -0.2005012499817719),
    (-0.5, 4, 4.354150594919327),
]


@pytest.mark.parametrize("s,n,expected", HARMONIC_CASES)
def test_harmonic_deficit_values(s, n, expected):
    assert harmonic_deficit(s, n) == pytest.approx(expected, rel=1e-12)


def test_harmonic_deficit_start_and_extend():
    d = HarmonicDeficit.start(0.5)
    assert d.n == 2
    assert d.value == pytest.approx(1.0 - zeta(0.5), rel=1e-14)
    d = d.extended()
    assert d.n == 3
    assert d.value == pytest.approx(harmonic_deficit(0.5, 3), rel=1e-13)


@given(
    st.floats(min_value=-0.9, max_value=1.9).filter(lambda s: abs(s - 1.0) > 1e-3),
    st.integers(min_value=2, max_value=400),
)
def test_harmonic_deficit_recurrence(s, n):
    left = harmonic_deficit(s, n + 1)
    right = harmonic_deficit(s, n) + float(n) ** -s
    assert left == pytest.approx(right, rel=1e-10, abs=1e-12)


# mpmath dps=40; n = 50 exercises the summed path, n = 51 the asymptotic one
DEFICIT_CASES = [
    (midpoint_tail_deficit, 0.5, 50, -0.07082852630301605),
    (midpoint_tail_deficit, 0.5, 51, -0.07012840342045604),
    (midpoint_tail_deficit, 0.5, 2560, -0.009882439371541608),
    (midpoint_tail_deficit, 0.75, 64, -0.022140244439910133),
    (k1_coefficient, 0.5, 50, -0.00023568458714319347),
    (k1_coefficient, 0.5, 51, -0.00022878744532018182),
    (k1_coefficient, 0.5, 100, -8.333177093097736e-05),
    (k1_coefficient, 0.5, 2560, -6.433670185739946e-07),
    (k1_coefficient, 0.25, 64, -0.0004603401743811969),
    (k1_coefficient, 0.4, 64, -0.0002466885428801633),
    (k2_coefficient, 0.5, 50, 3.5345523231934413e-07),
    (k2_coefficient, 0.5, 51, 3.3638658400780674e-07),
    (k2_coefficient, 0.5, 100, 6.249566028606808e-08),
    (k2_coefficient, 0.5, 2560, 1.8848641664275212e-11),
    (k2_coefficient, 0.4, 64, 2.69784009941429e-07),
]


@pytest.mark.parametrize("fn,a,n,expected", DEFICIT_CASES)
def test_deficit_reference_values(fn, a, n, expected):
    assert fn(a, n) == pytest.approx(expected, rel=1e-11)


@pytest.mark.parametrize("a", [0.1, 0.3, 0.5, 0.7, 0.9])
@pytest.mark.parametrize("n", [2, 5, 17, 50, 51, 200, 5000])
def test_deficit_signs_and_bound(a, n):
    w = midpoint_tail_deficit(a, n)
    assert -(float(n) ** -a) < w < 0.0
    assert k1_coefficient(a, n) < 0.0
    assert k2_coefficient(a, n) > 0.0


# ---------------------------------------------------------------------------
# scheme metadata and invariants
# ---------------------------------------------------------------------------


def test_scheme_norms():
    g = math.gamma
    assert scheme_norm(SchemeId.L1, 0.4) == pytest.approx(g(1.6))
    assert scheme_norm(SchemeId.L1Second, 0.4) == pytest.approx(g(1.6))
    for s in (SchemeId.MidLow, SchemeId.MidRaw, SchemeId.Mid2mAlpha, SchemeId.Mid2):
        assert scheme_norm(s, 0.4) == pytest.approx(2.0 * g(0.6))
    for s in (
        SchemeId.RightLow,
        SchemeId.RightRaw,
        SchemeId.Right2mAlpha,
        SchemeId.Right3mAlpha,
    ):
        assert scheme_norm(s, 0.4) == pytest.approx(-3.7229806220320425, rel=1e-13)
        assert scheme_norm(s, 0.4) < 0.0


def test_nominal_orders():
    a = 0.3
    assert nominal_order(SchemeId.L1, a) == pytest.approx(1.7)
    assert nominal_order(SchemeId.L1Second, a) == 2.0
    assert nominal_order(SchemeId.MidLow, a) == pytest.approx(0.7)
    assert nominal_order(SchemeId.MidRaw, a) == pytest.approx(1.7)
    assert nominal_order(SchemeId.Mid2mAlpha, a) == pytest.approx(1.7)
    assert nominal_order(SchemeId.Mid2, a) == 2.0
    assert nominal_order(SchemeId.RightLow, a) == pytest.approx(0.7)
    assert nominal_order(SchemeId.RightRaw, a) == pytest.approx(1.7)
    assert nominal_order(SchemeId.Right2mAlpha, a) == pytest.approx(1.7)
    assert nominal_order(SchemeId.Right3mAlpha, a) == pytest.approx(2.7)


def test_build_weights_validation():
    with pytest.raises(ValueError):
        build_weights(SchemeId.L1, 0.5, 1)
    with pytest.raises(ValueError):
        build_weights(SchemeId.L1, 1.2, 8)


def test_weight_vector_is_frozen():
    wv = build_weights(SchemeId.L1, 0.5, 6)
    assert not wv.weights.flags.writeable
    with pytest.raises(ValueError):
        wv.weights[0] = 0.0


@pytest.mark.parametrize(
    "scheme", [SchemeId.L1, SchemeId.Mid2mAlpha, SchemeId.Right3mAlpha]
)
def test_normalized_lambda_orientation(scheme):
    wv = build_weights(scheme, 0.35, 9)
    lam = normalized_lambda(wv)
    assert lam[0] * wv.norm == pytest.approx(wv.weights[0], rel=1e-14)
    np.testing.assert_allclose(-lam[1:] * wv.norm, wv.weights[1:], rtol=1e-14)
    assert lam[0] > 0.0


def test_expansion_coefficients_values():
    # mpmath dps=40
    expected = {
        0.25: (0.14541205906283106, 0.22277844560562363, 0.06932699193854631),
        0.5: (0.23457448539057768, 0.29467115838339564, 0.17665738986552004),
        0.75: (0.35354191139193436, 0.3861947271461214, 0.3227905995525849),
    }
    for a, (c1, c9, c12) in expected.items():
        c = expansion_coefficients(a)
        assert c.c1 == pytest.approx(c1, rel=1e-13)
        assert c.c9 == pytest.approx(c9, rel=1e-13)
        assert c.c12 == pytest.approx(c12, rel=1e-13)


def test_expansion_coefficients_ordering():
    """All three leading-error constants are positive and the right-sum one
    is smallest for every alpha."""
    for k in range(1, 20):
        c = expansion_coefficients(k / 20)
        assert 0.0 < c.c12 < c.c1
        assert 0.0 < c.c12 < c.c9


@given(
    st.sampled_from(sorted(SchemeId, key=lambda s: s.value)),
    st.floats(min_value=0.05, max_value=0.95),
    st.integers(min_value=2, max_value=64),
)
@settings(deadline=None, max_examples=200)
def test_stencil_properties_hold(scheme, alpha, n):
    report = validate_weights(build_weights(scheme, alpha, n))
    assert report.all_passed, [
        (c.name, c.detail) for c in report.failures()
    ]


@given(
    st.floats(min_value=0.02, max_value=0.98),
    st.integers(min_value=2, max_value=300),
)
def test_l1_first_moment(alpha, n):
    """sum k*w_k recovers -n^(1-alpha) exactly for the two-point-difference
    stencil; this is what makes it exact on linear data."""
    wv = build_weights(SchemeId.L1, alpha, n)
    moment = math.fsum(float(k) * wv.weights[k] for k in range(1, n + 1))
    assert moment == pytest.approx(-(float(n) ** (1.0 - alpha)), rel=1e-11)
