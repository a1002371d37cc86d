import math
from fractions import Fraction as F

import mpmath
import pytest

from q2dpoly.context import QContext, TruncationPolicy
from q2dpoly.qkernel import aq_function
from q2dpoly.zeros import (aq_zeros, asymptotic_report, radial_zeros,
                           zero_limit_report)

TR = TruncationPolicy(max_terms=500, tail_tol=1e-36)


@pytest.fixture(scope="module")
def ctx():
    return QContext(F(1, 4), sqrt_q="auto", backend="float", precision_bits=180,
                    default_trunc=TR)


@pytest.fixture(scope="module")
def ctx2():
    return QContext(F(1, 2), sqrt_q="auto", backend="float", precision_bits=180,
                    default_trunc=TR)


def test_first_radius_closed_forms(ctx):
    q = 0.25
    zs = radial_zeros(ctx, "Hq", 1, 1)
    assert abs(float(zs.radii[0]) - math.sqrt(1 - q)) < 1e-14
    zs = radial_zeros(ctx, "hq", 1, 1)
    assert abs(float(zs.radii[0]) - math.sqrt((1 - q) / q)) < 1e-12
    zs = radial_zeros(ctx, "pq", 1, 1, b=F(1, 4))
    assert abs(float(zs.radii[0]) - math.sqrt((1 - q) / (1 - q * q / 4))) < 1e-12


def test_zero_counts_and_ordering(ctx, ctx2):
    for cc in (ctx, ctx2):
        for fam, b in (("Hq", None), ("hq", None), ("pq", F(1, 4)), ("pq", 0)):
            for (m, n) in ((1, 1), (2, 5), (6, 6), (12, 7), (18, 18)):
                zs = radial_zeros(cc, fam, m, n, b=b)
                assert len(zs.radii) == min(m, n), (fam, m, n)
                assert all(zs.radii[i] > zs.radii[i + 1]
                           for i in range(len(zs.radii) - 1))
                assert all(r > 0 for r in zs.radii)


def test_first_family_radii_inside_unit_disk(ctx):
    # consistent with accumulation on the radii ladder q^{k/2} <= 1; the
    # largest root sits within q^{O(M^2)} of 1, so the certified bracket
    # width is the honest slack on the strict inequality
    for (m, n) in ((10, 10), (18, 12), (25, 25)):
        zs = radial_zeros(ctx, "Hq", m, n, precision=12)
        slack = 2 * zs.certified_width
        assert all(float(r) < 1 + slack for r in zs.radii)
        assert all(float(r) < 1 for r in zs.radii[1:])


def test_no_roots_at_boundary_degree(ctx):
    zs = radial_zeros(ctx, "Hq", 5, 0)
    assert zs.radii == []


def test_aq_zeros_certified(ctx):
    zs = aq_zeros(ctx, 3, precision=22)
    assert all(zs[i] < zs[i + 1] for i in range(2)) and zs[0] > 0
    # |A_q| at each certified zero is below the certified bracket scale
    for z in zs:
        val, tail = aq_function(ctx, z, TR)
        assert ctx.mag(val) < 1e-15 * float(z) + 10 * tail


def test_aq_sign_alternation(ctx):
    zs = aq_zeros(ctx, 3, precision=12)
    probes = [float(zs[0]) / 2,
              (float(zs[0]) + float(zs[1])) / 2,
              (float(zs[1]) + float(zs[2])) / 2,
              float(zs[2]) * 2]
    with ctx.workprec():
        signs = [mpmath.sign(aq_function(ctx, x, TR)[0]) for x in probes]
    assert signs == [1, -1, 1, -1]


def test_zero_limit_reports_small(ctx):
    rep = zero_limit_report(ctx, "limH", 1, [6, 10, 14], precision=12)
    assert rep.monotone and rep.final_error < 5e-2
    rep = zero_limit_report(ctx, "limp", 1, [6, 10, 14], b=F(1, 4), precision=12)
    assert rep.monotone
    rep = zero_limit_report(ctx, "limh", 1, [4, 8, 16], precision=12)
    assert rep.monotone and rep.final_error < 1e-6


def test_limit_report_csv(ctx):
    rep = zero_limit_report(ctx, "limH", 1, [6, 10], precision=10)
    csv = rep.to_csv()
    assert csv.startswith("size,error") and "6," in csv


def test_asymptotics_monotone(ctx2):
    rep = asymptotic_report(ctx2, "Hmn_inf", [6, 12, 24], {"z1": 2, "z2": 2})
    assert rep.monotone and rep.final_error < 1e-6
    rep = asymptotic_report(ctx2, "p_inf", [6, 12, 24], {"z1": 2, "z2": 2, "b": F(1, 4)})
    assert rep.monotone
    rep = asymptotic_report(ctx2, "PR_h", [6, 12, 24], {"w1": 1, "w2": 1})
    assert rep.monotone
    rep = asymptotic_report(ctx2, "theta4_scaled", [5, 9, 17], {"z1": 1.1, "z2": 0.9})
    assert rep.monotone


def test_asymptotics_boundary_exact(ctx2):
    # z1^{-m} H_{m,0} == 1 exactly for every m
    rep = asymptotic_report(ctx2, "Hm_inf", [4, 8, 16], {"n": 0, "z1": 2, "z2": 2})
    assert all(e == 0.0 for e in rep.errors)


def test_theta4_scaled_rejects_bad_sizes(ctx2):
    with pytest.raises(ValueError):
        asymptotic_report(ctx2, "theta4_scaled", [6], {})
