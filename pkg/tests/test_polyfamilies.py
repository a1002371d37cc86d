import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from q2dpoly.context import GaussianRational as GR
from q2dpoly.context import QContext
from q2dpoly.polyfamilies import (coeffs, eval_poly, eval_recurrence,
                                  little_q_jacobi, poly_from_json,
                                  poly_to_json, q_laguerre, radial_reduce,
                                  wall_poly)
from q2dpoly.qkernel import qpoch

Z1 = GR(F(3, 2), F(1, 2))
Z2 = GR(F(3, 2), F(-1, 2))
B = F(1, 3)


@pytest.fixture(scope="module")
def ctx():
    return QContext(F(2, 5))


def test_first_family_small(ctx):
    q = ctx.q
    H = coeffs(ctx, "Hq", 1, 1)
    assert H.coeff(1, 1) == 1 and H.coeff(0, 0) == -(1 - q)
    assert coeffs(ctx, "Hq", 0, 0).coeff(0, 0) == 1


def test_second_family_small(ctx):
    q = ctx.q
    h = coeffs(ctx, "hq", 1, 1)
    assert h.coeff(1, 1) == q and h.coeff(0, 0) == -(1 - q)
    hm0 = coeffs(ctx, "hq", 4, 0)
    assert hm0.coeff(4, 0) == 1 and len(hm0.coeffs) == 1


def test_disk_family_small(ctx):
    q = ctx.q
    p = coeffs(ctx, "pq", 1, 1, b=B)
    assert p.coeff(1, 1) == (1 - B * q) * (1 - B * q**2)
    assert p.coeff(0, 0) == -(1 - q) * (1 - B * q)


def test_disk_at_b_zero_is_first_family(ctx):
    for m in range(9):
        for n in range(9):
            assert coeffs(ctx, "pq", m, n, b=0) == coeffs(ctx, "Hq", m, n)


def test_eval_examples():
    ctx = QContext(F(1, 2))
    assert eval_poly(coeffs(ctx, "Hq", 1, 1), 1, 1) == F(1, 2)
    assert eval_poly(coeffs(ctx, "hq", 1, 1), 1, 1) == 2 * F(1, 2) - 1
    P = coeffs(ctx, "Hq", 4, 3)
    assert eval_poly(P, 0, 0) == P.coeff(0, 0)


def test_recurrence_oracle_equals_explicit(ctx):
    for fam in ("Hq", "hq"):
        for m in range(9):
            for n in range(9):
                a = eval_recurrence(ctx, fam, m, n, Z1, Z2)
                b = eval_poly(coeffs(ctx, fam, m, n), Z1, Z2)
                assert a == b, (fam, m, n)


def test_index_symmetry(ctx):
    for fam in ("Hq", "hq"):
        for m in range(9):
            for n in range(9):
                assert coeffs(ctx, fam, m, n).swap_vars() == coeffs(ctx, fam, n, m)
    for m in range(9):
        for n in range(9):
            assert (coeffs(ctx, "pq", m, n, b=B).swap_vars()
                    == coeffs(ctx, "pq", n, m, b=B))


def test_radial_reduce_roundtrip(ctx):
    for fam, b in (("Hq", None), ("hq", None), ("pq", B)):
        for m in range(9):
            for n in range(9):
                rf = radial_reduce(ctx, fam, m, n, b=b)
                assert rf.expand() == coeffs(ctx, fam, m, n, b=b), (fam, m, n)
                assert rf.angular_index == m - n
                assert len(rf.radial_coeffs) == min(m, n) + 1


def test_radial_prefactors_match_reductions(ctx):
    q = ctx.q
    # h_{n,n}: prefactor (-1)^n (q;q)_n with an order-0 q-Laguerre factor
    rf = radial_reduce(ctx, "hq", 3, 3)
    assert rf.prefactor == -ctx.qq(3) * -1 * -1  # (-1)^3 (q;q)_3
    assert rf.radial_kind == "qLaguerre" and rf.radial_params["alpha"] == 0
    # p_{m,m}: prefactor (-1)^m q^C(m,2) (bq;q)_m (q;q)_m
    rf = radial_reduce(ctx, "pq", 2, 2, b=B)
    assert rf.prefactor == ctx.qpow(1) * qpoch(ctx, B * q, 2) * ctx.qq(2)
    # Hq (1,1): -(q;q)_1 * Wall p_1(x; 1|q)
    rf = radial_reduce(ctx, "Hq", 1, 1)
    assert rf.prefactor == -(1 - q)


def test_univariate_values(ctx):
    x = F(3, 7)
    assert wall_poly(ctx, ctx.qpow(2), 0, x) == 1
    assert q_laguerre(ctx, 3, 0, x) == 1
    # Wall == little q-Jacobi at b = 0
    assert wall_poly(ctx, ctx.qpow(1), 5, x) == little_q_jacobi(ctx, ctx.qpow(1), 0, 5, x)


def test_wall_consistency_with_first_family(ctx):
    # plugging the Wall factor back reproduces values of the first family
    for m in range(2, 6):
        for n in range(m + 1):
            v1 = eval_poly(coeffs(ctx, "Hq", m, n), 2, F(3, 2))
            v2 = ((-1) ** n * ctx.qq(m) * ctx.qpow(n * (n - 1) // 2) / ctx.qq(m - n)
                  * 2 ** (m - n) * wall_poly(ctx, ctx.qpow(m - n), n, 3))
            assert v1 == v2


def test_degree_and_leading_coefficient_invariants(ctx):
    for m in range(7):
        for n in range(7):
            H = coeffs(ctx, "Hq", m, n)
            h = coeffs(ctx, "hq", m, n)
            p = coeffs(ctx, "pq", m, n, b=B)
            d1, d2 = H.degrees()
            assert d1 == m and d2 == n
            assert H.coeff(m, n) == 1
            assert h.coeff(m, n) == ctx.qpow(m * n)
            assert p.coeff(m, n) == qpoch(ctx, B * ctx.q, m + n)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6))
def test_monic_in_z1_z2_property(m, n):
    ctx = QContext(F(1, 3))
    P = coeffs(ctx, "Hq", m, n)
    assert all(i <= m and j <= n for (i, j) in P.coeffs)


def test_scaled_classical_limit():
    # q = 1 - eps: coefficients of H(z1 sqrt(eps), z2 sqrt(eps)|q)/eps^{(m+n)/2}
    # approach the Ito 2D Hermite coefficients monotonically in eps
    ref = coeffs(QContext(F(1, 2)), "H_classical", 3, 3)
    errs = []
    for e in (1, 2, 3):
        eps = F(1, 10**e)
        cq = QContext(1 - eps)
        P = coeffs(cq, "Hq", 3, 3)
        worst = 0.0
        for k in range(4):
            scaled = P.coeff(3 - k, 3 - k) / eps**k
            worst = max(worst, abs(float(scaled - ref.coeff(3 - k, 3 - k))))
        errs.append(worst)
    assert errs[0] > errs[1] > errs[2]


def test_json_roundtrip(ctx):
    for fam, b in (("Hq", None), ("pq", B)):
        P = coeffs(ctx, fam, 3, 2, b=b)
        assert poly_from_json(ctx, poly_to_json(P)) == P
    # complex coefficients survive
    P = coeffs(ctx, "Hq", 2, 2).dilate(GR(0, 1), 1)
    assert poly_from_json(ctx, poly_to_json(P)) == P
