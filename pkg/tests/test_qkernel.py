from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from q2dpoly.context import GaussianRational as GR
from q2dpoly.context import QContext, TruncationPolicy
from q2dpoly.qkernel import (INF, aq_function, bessel_i2_series, phi_series,
                             qbinom, qintegral, qop, qpoch, qpoch_inf,
                             schur_a, schur_b, theta4)


@pytest.fixture(scope="module")
def ctx():
    return QContext(F(1, 2))


@pytest.fixture(scope="module")
def fctx():
    return QContext(F(1, 2), sqrt_q="auto", backend="float", precision_bits=180,
                    default_trunc=TruncationPolicy(max_terms=500, tail_tol=1e-40))


def test_qpoch_empty_product(ctx):
    assert qpoch(ctx, F(3, 7), 0) == 1


def test_qpoch_single_factor(ctx):
    assert qpoch(ctx, ctx.q, 1) == F(1, 2)


def test_qpoch_vanishing_factor(ctx):
    assert qpoch(ctx, 2, 3) == 0


def test_qpoch_negative_index(ctx):
    # (a;q)_{-n} == 1 / (a q^{-n};q)_n
    a = F(3, 5)
    for n in range(1, 6):
        assert qpoch(ctx, a, -n) == 1 / qpoch(ctx, a * ctx.qpow(-n), n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8),
       st.fractions(min_value=F(-2), max_value=F(2)))
def test_qpoch_splitting(m, n, a):
    ctx = QContext(F(2, 5))
    lhs = qpoch(ctx, a, m + n)
    rhs = qpoch(ctx, a, m) * qpoch(ctx, a * ctx.qpow(m), n)
    assert lhs == rhs


def test_qpoch_inf_tail_reported(fctx):
    val, tail = qpoch_inf(fctx, fctx.scalar(F(1, 3)))
    with mpmath.workdps(45):
        direct = mpmath.qp(mpmath.mpf(1) / 3, mpmath.mpf(1) / 2)
        assert abs(val - direct) < 1e-30
    assert tail >= 0


def test_qbinom_conventions(ctx):
    assert qbinom(ctx, 5, 0) == 1
    assert qbinom(ctx, 2, 3) == 0
    assert qbinom(ctx, -1, 0) == 0
    q = ctx.q
    assert qbinom(ctx, 4, 2) == (1 + q**2) * (1 + q + q**2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10))
def test_qbinom_symmetry(m, k):
    ctx = QContext(F(1, 3))
    assert qbinom(ctx, m, k) == qbinom(ctx, m, m - k)


def test_terminating_qbt(ctx):
    # sum_k [n k] q^C(k,2) (-z)^k == (z;q)_n
    z = GR(F(3, 2), F(1, 2))
    for n in range(11):
        s = sum((qbinom(ctx, n, k) * ctx.qpow(k * (k - 1) // 2) * (-z) ** k
                 for k in range(n + 1)), start=F(0))
        assert s == qpoch(ctx, z, n)


def test_qop_constant_and_monomial(ctx):
    assert qop(ctx, lambda t: F(7), F(1, 3), "Dq") == 0
    n = 6
    z = F(2, 3)
    assert qop(ctx, lambda t: t**n, z, "Dq") == (1 - ctx.qpow(n)) / (1 - ctx.q) * z ** (n - 1)
    assert qop(ctx, lambda t: t * t, z, "Dilate") == ctx.qpow(2) * z * z


def test_qop_power_reproduces_qfactorial(ctx):
    # D_q^n z^n == (q;q)_n / (1-q)^n
    for n in range(1, 6):
        val = qop(ctx, lambda t, n=n: t**n, F(5, 7), "Dq", order=n)
        assert val == ctx.qq(n) / (1 - ctx.q) ** n


def test_leibniz_rule(ctx):
    # D_q^n (f g) == sum_k [n k] D^k f * eta^k D^{n-k} g for monomials
    x = F(2, 3)
    for a in range(6):
        for b in range(6):
            for n in range(1, 6):
                lhs = qop(ctx, lambda t: t ** (a + b), x, "Dq", order=n)
                rhs = F(0)
                for k in range(n + 1):
                    dkf = qop(ctx, lambda t: t**a, x, "Dq", order=k) if k else x**a
                    arg = ctx.qpow(k) * x
                    dng = (qop(ctx, lambda t: t**b, arg, "Dq", order=n - k)
                           if n - k else arg**b)
                    rhs += qbinom(ctx, n, k) * dkf * dng
                assert lhs == rhs, (a, b, n)


def test_qop_rejects_zero(ctx):
    with pytest.raises(ZeroDivisionError):
        qop(ctx, lambda t: t, 0, "Dq")


def test_qintegral_zero(fctx):
    val, tail = qintegral(fctx, lambda t: fctx.zero())
    assert val == 0


def test_qintegral_rambeta3(fctx):
    # integrand of the c = 1 Ramanujan q-beta sum: closed form (q;q)_inf
    q = fctx.q
    tr = fctx.default_trunc

    def f(t):
        return 1 / (qpoch_inf(fctx, -t, tr)[0] * qpoch_inf(fctx, -q / t, tr)[0])

    val, tail = qintegral(fctx, f)
    with fctx.workprec():
        target = (1 - q) * qpoch_inf(fctx, q, tr)[0]
        # d_q t / (1 - q) convention: the bilateral sum itself carries (1-q)
        assert abs(val - target) < 1e-25 + tail


def test_phi_series_trivial(fctx):
    assert phi_series(fctx, [fctx.scalar(F(1, 3))], [fctx.scalar(F(1, 5))], fctx.zero()) == 1
    # terminating at order 0: numerator q^0 = 1
    ctx = QContext(F(1, 2))
    assert phi_series(ctx, [1, F(1, 3)], [F(1, 5)], F(1, 7)) == 1


def test_phi_series_q_gauss(fctx):
    # 2phi1(a, b; c; q, c/(ab)) == (c/a, c/b;q)inf / (c, c/ab;q)inf
    with fctx.workprec():
        a, b, c = fctx.scalar(F(1, 3)), fctx.scalar(F(1, 4)), fctx.scalar(F(1, 16))
        tr = fctx.default_trunc
        lhs = phi_series(fctx, [a, b], [c], c / (a * b), tr)
        rhs = (qpoch_inf(fctx, c / a, tr)[0] * qpoch_inf(fctx, c / b, tr)[0]
               / (qpoch_inf(fctx, c, tr)[0] * qpoch_inf(fctx, c / (a * b), tr)[0]))
        assert abs(lhs - rhs) < 1e-30


def test_aq_trivial(fctx):
    val, tail = aq_function(fctx, 0)
    assert val == 1


def test_theta4_trivial_and_symmetry(fctx):
    w = fctx.scalar(F(5, 7))
    val, _ = theta4(fctx, w, fctx.scalar(1e-40))
    assert abs(val - 1) < 1e-30
    p = fctx.scalar(F(1, 3))
    v1, _ = theta4(fctx, w, p)
    v2, _ = theta4(fctx, F(7, 5), p)
    assert abs(v1 - v2) < 1e-35


def test_theta4_rejects_large_nome(fctx):
    with pytest.raises(ValueError):
        theta4(fctx, fctx.scalar(2), fctx.scalar(2))


def test_schur_small_values(ctx):
    q = ctx.q
    # finite sums under the Gaussian-binomial zero convention, with a_0 pinned
    assert schur_a(ctx, 0) == 1 and schur_b(ctx, 0) == 0
    assert schur_a(ctx, 1) == 0 and schur_b(ctx, 1) == 1
    assert schur_a(ctx, 2) == 1 and schur_b(ctx, 2) == 1
    assert schur_a(ctx, 3) == 1 and schur_b(ctx, 3) == 1 + q
    assert schur_a(ctx, 4) == 1 + q**2


def test_schur_gis_calibration(fctx):
    """The generalized Rogers-Ramanujan identity pins the m = 0 convention:
    a_0 = 1, b_0 = 0 (the bare zero-convention sum would give a_0 = 0).
    Verified here for m = 0..8."""
    q = fctx.q
    tr = fctx.default_trunc
    exact = QContext(F(1, 2))
    wp = fctx.workprec()
    wp.__enter__()

    def poch5(e):
        out = fctx.one()
        k = 0
        while fctx.mag(fctx.qpow(e + 5 * k)) > 1e-42:
            out *= 1 - fctx.qpow(e + 5 * k)
            k += 1
        return out

    d1, d2 = poch5(1) * poch5(4), poch5(2) * poch5(3)
    for m in range(9):
        lhs = mpmath.nsum(lambda n: fctx.qpow(int(n) ** 2 + m * int(n)) / fctx.qq(int(n)),
                          [0, mpmath.inf])
        am = fctx.scalar(schur_a(exact, m))
        bm = fctx.scalar(schur_b(exact, m))
        rhs = (-1) ** m * fctx.qpow(-(m * (m - 1) // 2)) * (am / d1 - bm / d2)
        assert abs(lhs - rhs) < 1e-32, m
    wp.__exit__(None, None, None)


def test_bessel_i2_value(fctx):
    # q^nu = q (nu = 1): compare against the defining series of I_1^(2)
    q = fctx.q
    tr = fctx.default_trunc
    y = fctx.scalar(F(1, 5))
    val, tail = bessel_i2_series(fctx, q, y, tr)
    with fctx.workprec():
        direct = fctx.zero()
        for n in range(60):
            direct += (fctx.qpow(n * (n + 1)) * y**n
                       / (fctx.qq(n) * qpoch(fctx, q * q, n)))
        direct *= qpoch_inf(fctx, q * q, tr)[0] / qpoch_inf(fctx, q, tr)[0]
        assert abs(val - direct) < 1e-30


def test_euler_identities_truncated(fctx):
    # sum z^n/(q;q)_n == 1/(z;q)inf and sum (-z)^n q^C(n,2)/(q;q)_n == (z;q)inf
    with fctx.workprec():
        z = fctx.scalar(F(2, 7))
        tr = fctx.default_trunc
        s1 = fctx.zero()
        s2 = fctx.zero()
        for n in range(200):
            s1 += z**n / fctx.qq(n)
            s2 += (-z) ** n * fctx.qpow(n * (n - 1) // 2) / fctx.qq(n)
        v, tail = qpoch_inf(fctx, z, tr)
        assert abs(s1 - 1 / v) <= 1e-38 + tail
        assert abs(s2 - v) <= 1e-38 + tail
