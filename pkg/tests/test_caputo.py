"""Tests for exact Caputo derivatives, stencil application, and the oracles."""

import math

import numpy as np
import pytest

from caputofd import (
    QuadratureError,
    SampledPath,
    SchemeId,
    apply_stencil,
    build_weights,
    caputo_quadrature,
    exact_caputo_cos2pix,
    exact_caputo_exp,
    exact_caputo_power,
    fourth_order_eval,
    function_catalog,
    gamma,
    mittag_leffler_1,
    sample_path,
)

CATALOG_NAMES = {
    "t",
    "t2",
    "t3",
    "t4",
    "exp",
    "cos2pi",
    "arctan",
    "log1p",
    "zeta_shift2",
}


def test_catalog_contents():
    cat = function_catalog()
    assert set(cat) == CATALOG_NAMES
    for f in cat.values():
        assert len(f.derivatives) == 4
    assert cat["zeta_shift2"].exact_caputo is None


def test_catalog_derivative_chain():
    """Each stored derivative matches a central difference of the previous
    order; this is the smoke-level consistency check for the catalog."""
    h = 1e-5
    for f in function_catalog().values():
        chain = [lambda t, f=f: float(np.asarray(f.eval(t), dtype=float))]
        chain += [(lambda g: lambda t: float(g(t)))(d) for d in f.derivatives]
        for level in range(1, 5):
            for t in (0.15, 0.6, 1.1):
                fd = (chain[level - 1](t + h) - chain[level - 1](t - h)) / (2.0 * h)
                assert abs(fd - chain[level](t)) < 1e-6, (f.name, level, t)


def test_catalog_zero_data():
    for f in function_catalog().values():
        assert float(np.asarray(f.eval(0.0), float)) == pytest.approx(
            f.value_at_zero, abs=1e-14
        )
        assert f.derivatives[0](0.0) == pytest.approx(
            f.first_deriv_at_zero, abs=1e-14
        )


# mpmath dps=30
def test_zeta_shift_values():
    f = function_catalog()["zeta_shift2"]
    assert float(f.eval(0.0)) == pytest.approx(math.pi**2 / 6.0, rel=1e-14)
    assert float(f.eval(1.0)) == pytest.approx(1.2020569031595942, rel=1e-14)
    assert f.derivatives[0](0.0) == pytest.approx(-0.9375482543158438, rel=1e-13)
    assert f.derivatives[1](1.5) == pytest.approx(0.11830650424820012, rel=1e-12)
    assert f.derivatives[3](0.5) == pytest.approx(3.1615875358483434, rel=1e-12)
    vec = f.eval(np.array([0.0, 1.0]))
    assert vec == pytest.approx([math.pi**2 / 6.0, 1.2020569031595942])


def test_exact_power():
    assert exact_caputo_power(2.0, 0.5, 1.0) == pytest.approx(
        1.5045055561273502, rel=1e-13
    )
    # p = 1 reduces to x^(1-alpha)/Gamma(2-alpha)
    for a, x in ((0.3, 0.7), (0.6, 1.4)):
        assert exact_caputo_power(1.0, a, x) == pytest.approx(
            x ** (1.0 - a) / gamma(2.0 - a), rel=1e-13
        )
    with pytest.raises(ValueError):
        exact_caputo_power(0.5, 0.5, 1.0)


def test_exact_exp():
    assert exact_caputo_exp(0.5, 0.0) == 0.0
    assert exact_caputo_exp(0.5, 1.0) == pytest.approx(2.290698252303238, rel=1e-12)


def test_exact_cos():
    assert exact_caputo_cos2pix(0.5, 0.0) == 0.0
    # mpmath series references
    assert exact_caputo_cos2pix(0.5, 0.75) == pytest.approx(
        1.138114547921291, rel=1e-12
    )
    assert exact_caputo_cos2pix(0.25, 1.0) == pytest.approx(
        0.6522930558642273, rel=1e-12
    )
    assert exact_caputo_cos2pix(0.6, 1.0) == pytest.approx(
        1.3290290870091586, rel=1e-12
    )
    with pytest.raises(ValueError):
        exact_caputo_cos2pix(0.5, 2.5)


@pytest.mark.parametrize("a,x", [(0.25, 0.5), (0.5, 1.0), (0.75, 1.5), (0.4, 2.0)])
def test_cos_series_matches_complex_form(a, x):
    """The real series equals Re(2*pi*i*x^(1-a)*E_{1,2-a}(2*pi*i*x))."""
    lam = 2.0j * math.pi
    complex_form = (lam * x ** (1.0 - a) * mittag_leffler_1(2.0 - a, lam * x)).real
    assert exact_caputo_cos2pix(a, x) == pytest.approx(complex_form, abs=1e-10)


def test_sample_path_layout():
    f = function_catalog()["t2"]
    p = sample_path(f, 1.0, 4)
    np.testing.assert_allclose(p.values, [1.0, 0.5625, 0.25, 0.0625, 0.0])
    assert p.h == 0.25
    assert not p.values.flags.writeable


def test_sampled_path_validation():
    with pytest.raises(ValueError):
        SampledPath(x=1.0, n=4, values=np.zeros(4))
    with pytest.raises(ValueError):
        SampledPath(x=0.0, n=4, values=np.zeros(5))
    with pytest.raises(ValueError):
        SampledPath(x=1.0, n=1, values=np.zeros(2))


def test_apply_stencil_annihilates_constants():
    path = SampledPath(x=1.0, n=12, values=np.full(13, 3.7))
    for scheme in SchemeId:
        wv = build_weights(scheme, 0.45, 12)
        h = path.h
        assert abs(apply_stencil(wv, path)) <= 1e-10 * 3.7 / h**0.45


def test_apply_stencil_exact_on_linear():
    wv = build_weights(SchemeId.Mid2mAlpha, 0.5, 16)
    path = sample_path(function_catalog()["t"], 1.0, 16)
    exact = exact_caputo_power(1.0, 0.5, 1.0)
    assert apply_stencil(wv, path) == pytest.approx(exact, rel=1e-10)


def test_apply_stencil_linearity():
    rng = np.random.default_rng(42)
    wv = build_weights(SchemeId.Right2mAlpha, 0.3, 20)
    u = rng.standard_normal(21)
    v = rng.standard_normal(21)
    pa = SampledPath(x=1.0, n=20, values=u)
    pb = SampledPath(x=1.0, n=20, values=v)
    combo = SampledPath(x=1.0, n=20, values=2.5 * u - 1.25 * v)
    lhs = apply_stencil(wv, combo)
    rhs = 2.5 * apply_stencil(wv, pa) - 1.25 * apply_stencil(wv, pb)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_apply_stencil_length_mismatch():
    wv = build_weights(SchemeId.L1, 0.5, 8)
    path = SampledPath(x=1.0, n=10, values=np.zeros(11))
    with pytest.raises(ValueError):
        apply_stencil(wv, path)


def test_l1_order_on_quartic():
    """Error ratios approach 2^(2-alpha); at alpha=0.25 the pure-h^2 error
    term decays only h^0.25 faster, so the observed order creeps up slowly
    (1.672 at n=64->128, 1.710 at n=512->1024)."""
    a = 0.25
    f = function_catalog()["t4"]
    exact = exact_caputo_power(4.0, a, 1.0)
    errs = []
    for n in (64, 128, 512, 1024):
        wv = build_weights(SchemeId.L1, a, n)
        errs.append(abs(apply_stencil(wv, sample_path(f, 1.0, n)) - exact))
    early = math.log2(errs[0] / errs[1])
    late = math.log2(errs[2] / errs[3])
    assert early == pytest.approx(2.0 - a, abs=0.1)
    assert early < late < 2.0 - a


def test_fourth_order_ladder_on_arctan():
    f = function_catalog()["arctan"]
    ref = f.exact_caputo(0.4, 1.0)
    errs = [
        abs(fourth_order_eval(f, 0.4, 1.0, round(1.0 / h)) - ref)
        for h in (0.05, 0.025, 0.0125)
    ]
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert orders == pytest.approx([4.0, 4.0], abs=0.02)


def test_fourth_order_on_linear():
    """No closed cancellation for y=t, but the O(h^4) remainder shrinks on
    schedule through the derivative corrections."""
    f = function_catalog()["t"]
    exact = exact_caputo_power(1.0, 0.4, 1.0)
    e8 = abs(fourth_order_eval(f, 0.4, 1.0, 8) - exact)
    e64 = abs(fourth_order_eval(f, 0.4, 1.0, 64) - exact)
    assert math.log2(e8 / e64) / 3.0 == pytest.approx(4.0, abs=0.05)


def test_fourth_order_coefficient_on_cubic():
    f = function_catalog()["t3"]
    ref = exact_caputo_power(3.0, 0.4, 1.0)
    cs = [
        abs(fourth_order_eval(f, 0.4, 1.0, n) - ref) * float(n) ** 4
        for n in (32, 64, 128)
    ]
    assert cs[1] == pytest.approx(cs[0], rel=0.01)
    assert cs[2] == pytest.approx(cs[1], rel=0.01)


def test_fourth_order_validation():
    f = function_catalog()["exp"]
    with pytest.raises(ValueError):
        fourth_order_eval(f, 0.4, 1.0, 3)
    with pytest.raises(ValueError):
        fourth_order_eval(f, 0.4, 0.0, 8)


def test_quadrature_trivial_cases():
    assert caputo_quadrature(lambda t: 0.0, 0.5, 1.0) == 0.0
    for a, x in ((0.3, 0.8), (0.7, 1.6)):
        got = caputo_quadrature(lambda t: 1.0, a, x, 1e-12)
        assert got == pytest.approx(exact_caputo_power(1.0, a, x), abs=1e-11)


def test_quadrature_matches_exp():
    got = caputo_quadrature(math.exp, 0.5, 1.0, 1e-12)
    assert got == pytest.approx(exact_caputo_exp(0.5, 1.0), abs=1e-11)


def test_quadrature_validation():
    with pytest.raises(ValueError):
        caputo_quadrature(lambda t: 1.0, 0.5, 1.0, 1e-13)
    with pytest.raises(QuadratureError) as exc:
        caputo_quadrature(lambda t: math.cos(3e5 * t * t), 0.5, 1.0)
    assert exc.value.estimate > 0.0


def test_quadrature_agrees_with_closed_forms():
    """Oracle agreement across the catalog at randomized (alpha, x)."""
    rng = np.random.default_rng(7)
    cat = function_catalog()
    for name in ("t", "t2", "t3", "t4", "exp", "cos2pi", "arctan", "log1p"):
        f = cat[name]
        for _ in range(3):
            a = float(rng.uniform(0.1, 0.9))
            x = float(rng.uniform(0.2, 2.0 if name == "cos2pi" else 2.5))
            closed = f.exact_caputo(a, x)
            quad_val = caputo_quadrature(f.derivatives[0], a, x, 1e-12)
            assert quad_val == pytest.approx(closed, rel=1e-8, abs=1e-10), (
                name,
                a,
                x,
            )
