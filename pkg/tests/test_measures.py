import math
from fractions import Fraction as F

import mpmath
import pytest

from q2dpoly.context import GaussianRational as GR
from q2dpoly.context import QContext, TruncationPolicy
from q2dpoly.measures import (RadialMeasure, angular_quadrature_check,
                              gram_positivity, h_radial_moment, inner_product,
                              moment, orthonormal_seq_check, qbeta_check)

TR = TruncationPolicy(max_terms=400, tail_tol=1e-36)


@pytest.fixture(scope="module")
def fctx():
    return QContext(F(1, 4), sqrt_q="auto", backend="float", precision_bits=160,
                    default_trunc=TR)


@pytest.fixture(scope="module")
def fctx2():
    return QContext(F(1, 2), sqrt_q="auto", backend="float", precision_bits=160,
                    default_trunc=TR)


def test_discrete_moments(fctx):
    val, tail = moment(fctx, RadialMeasure("H_discrete", K=80), 1, 1)
    assert abs(val - fctx.qq(1)) < 1e-20 + tail
    off, _ = moment(fctx, RadialMeasure("H_discrete", K=80), 2, 1)
    assert off == 0
    # indices up to 6: (q;q)_n
    for n in range(7):
        v, t = moment(fctx, RadialMeasure("H_discrete", K=80), n, n)
        assert abs(v - fctx.qq(n)) / abs(fctx.qq(n)) < 1e-10


def test_h_moments_match_closed_form(fctx2):
    # int x^j/(-x;q)inf dx == (q;q)_j log(1/q) q^{-j(j+1)/2}
    with fctx2.workprec():
        for j in range(7):
            val, err = h_radial_moment(fctx2, j)
            closed = fctx2.qq(j) * mpmath.log(2) / fctx2.qpow(j * (j + 1) // 2)
            assert abs(val - closed) / abs(closed) < 1e-10, j
    v0, _ = moment(fctx2, RadialMeasure("h_continuous"), 0, 0)
    with fctx2.workprec():
        assert abs(v0 - mpmath.log(2)) < 1e-12


def test_H_inner_products(fctx):
    r = inner_product(fctx, "Hq", (1, 0), (0, 1), K=80)
    assert fctx.mag(r.value) < 1e-14  # angular selection
    r = inner_product(fctx, "Hq", (1, 1), (1, 1), K=80)
    assert r.rel_error < 1e-12
    # closed form q^{mn}(q;q)_m(q;q)_n/(q;q)inf at (1,1)
    with fctx.workprec():
        expected = fctx.qpow(1) * fctx.qq(1) ** 2 / mpmath.qp(fctx.q, fctx.q)
        assert abs(r.value - expected) < 1e-12


def test_p_inner_products(fctx):
    r = inner_product(fctx, "pq", (2, 1), (2, 1), b=F(1, 4), K=80)
    assert r.rel_error < 1e-12
    r0 = inner_product(fctx, "pq", (2, 1), (2, 1), b=0, K=80)
    rH = inner_product(fctx, "Hq", (2, 1), (2, 1), K=80)
    assert fctx.mag(r0.value - rH.value) < 1e-13


def test_h_inner_products(fctx2):
    r = inner_product(fctx2, "hq", (2, 1), (2, 1))
    assert r.rel_error < 1e-10
    off = inner_product(fctx2, "hq", (2, 1), (1, 2))
    assert fctx2.mag(off.value) < 1e-10


def test_qbeta_trivial_and_generic(fctx2):
    rep = qbeta_check(fctx2, "H_beta", {"u1": 0, "u2": 0, "v1": 0, "v2": 0, "cap": 2})
    assert rep.passed
    rep = qbeta_check(fctx2, "H_beta", {"cap": 22})
    assert rep.passed, rep.residual
    rep = qbeta_check(fctx2, "h_beta", {"cap": 16, "tol": 1e-10})
    assert rep.passed, rep.residual


def test_truncation_doubling_decreases_residual(fctx2):
    # convergence monotonicity: doubling the multisum caps shrinks the residual
    r1 = qbeta_check(fctx2, "H_beta", {"cap": 8})
    r2 = qbeta_check(fctx2, "H_beta", {"cap": 16})
    assert float(r2.residual) < float(r1.residual)


def test_angular_askey_roy(fctx2):
    rep = angular_quadrature_check(fctx2, "AskeyRoy", {}, M=48)
    assert rep.passed, rep.residual
    # a = b = 0 specialization still matches
    rep0 = angular_quadrature_check(fctx2, "AskeyRoy", {"a": 0, "b": 0}, M=48)
    assert rep0.passed


def test_angular_askey_roy_doubling(fctx2):
    r1 = angular_quadrature_check(fctx2, "AskeyRoy", {}, M=12)
    r2 = angular_quadrature_check(fctx2, "AskeyRoy", {}, M=24)
    assert float(r2.extra["doubling_decrease"]) <= float(r1.extra["doubling_decrease"]) * 1.01


def test_angular_askey_wilson(fctx2):
    rep = angular_quadrature_check(fctx2, "AskeyWilsonOrtho", {"p": 2, "s": 2}, M=48)
    assert rep.passed, rep.residual
    rep = angular_quadrature_check(fctx2, "AskeyWilsonOrtho", {"p": 3, "s": 2}, M=48)
    assert rep.passed and float(rep.residual) < 1e-10


def test_angular_rejects_unit_circle(fctx2):
    with pytest.raises(ValueError):
        angular_quadrature_check(fctx2, "AskeyRoy", {"a": 1}, M=8)


def test_gram_positivity_trivial_and_small():
    ctx = QContext(F(1, 2))
    rep = gram_positivity(ctx, "doH", 0, 1)
    assert rep.passed and rep.extra["minors"] == "1"
    for kind in ("doH", "doh"):
        rep = gram_positivity(ctx, kind, 2, 1)
        assert rep.passed


def test_gram_rejects_zero_point():
    ctx = QContext(F(1, 2))
    with pytest.raises(ValueError):
        gram_positivity(ctx, "doH", 2, 0)


def test_orthonormal_seq_exact_and_numeric(fctx2):
    ctx = QContext(F(9, 25), sqrt_q=F(3, 5))
    for kind in ("do7", "do8"):
        for (j, k) in ((0, 0), (1, 2), (3, 3)):
            rep = orthonormal_seq_check(ctx, kind, j, k, F(3, 2))
            assert rep.passed, (kind, j, k, rep.residual)
    rep = orthonormal_seq_check(fctx2, "do8", 2, 2, 1.5)
    assert rep.passed
