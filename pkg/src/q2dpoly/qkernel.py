"""q-calculus primitives: shifted factorials, q-operators, the bilateral
q-integral, basic hypergeometric series and the special functions used by the
polynomial families (Ramanujan's entire function, theta_4, the second Jackson
q-Bessel functions, and the Schur polynomials of the generalized
Rogers--Ramanujan identity).

Truncated infinite objects carry an explicit tail bound: the sum/product is
cut once the next term times a geometric majorant drops below the requested
tolerance, and the majorant value is returned alongside the value.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence

import mpmath

from .context import QContext, TruncationPolicy, is_zero

__all__ = [
    "INF",
    "DivergenceError",
    "PoleError",
    "qpoch",
    "qpoch_inf",
    "qpoch_many",
    "qbinom",
    "qbinom_base",
    "qop",
    "qintegral",
    "phi_series",
    "aq_function",
    "theta4",
    "bessel_j2_ratio",
    "bessel_i2_series",
    "schur_a",
    "schur_b",
]

INF = math.inf


class DivergenceError(ArithmeticError):
    """A truncated sum failed to decay within the term budget."""


class PoleError(ArithmeticError):
    """A series parameter sits on a pole q**(-k) of the term ratio."""


# ---------------------------------------------------------------------------
# q-shifted factorials
# ---------------------------------------------------------------------------

def qpoch(ctx: QContext, a, n, trunc: Optional[TruncationPolicy] = None):
    """(a; q)_n.

    n may be a nonnegative integer (finite product), a negative integer
    (via (a;q)_{-n} = (-q/a)^n q^C(n,2) / (q/a;q)_n), or INF, in which case
    the truncated infinite product is returned (see :func:`qpoch_inf` for
    the tail bound).
    """
    if n is INF:
        return qpoch_inf(ctx, a, trunc)[0]
    n = int(n)
    a = ctx.scalar(a)
    if n >= 0:
        out = ctx.one()
        for k in range(n):
            out = out * (1 - a * ctx.qpow(k))
        return out
    m = -n
    inv = qpoch(ctx, ctx.q / a, m)
    if is_zero(inv) if ctx.is_exact else inv == 0:
        raise ZeroDivisionError(f"(a;q)_{{{n}}} undefined: (q/a;q)_{m} vanishes")
    return (-ctx.q / a) ** m * ctx.qpow(m * (m - 1) // 2) / inv


def qpoch_inf(ctx: QContext, a, trunc: Optional[TruncationPolicy] = None):
    """(a; q)_infty as (value, tail_bound).

    The product is cut at K with |a| q^K / (1-q) <= min(1/2, tail_tol); the
    remaining factors multiply the partial product by exp(+-eps) with
    eps = |a| q^K / (1-q), so |true - partial| <= 2 eps |partial| once
    eps <= 1/2.  On the exact backend the value is the truncated product and
    the bound is reported the same way.
    """
    with ctx.workprec():
        tr = trunc or ctx.default_trunc
        a = ctx.scalar(a)
        qf = float(ctx.q_fraction)
        amag = ctx.mag(a)
        out = ctx.one()
        k = 0
        while True:
            eps = amag * qf**k / (1 - qf)
            if eps <= min(0.5, tr.tail_tol) or k >= tr.max_terms:
                break
            out = out * (1 - a * ctx.qpow(k))
            k += 1
        eps = amag * qf**k / (1 - qf)
        if eps > 0.5:
            raise DivergenceError(
                f"(a;q)_inf truncation budget exhausted at {tr.max_terms} factors"
            )
        tail = 2 * eps * (ctx.mag(out) + 1e-300)
        return out, tail


def qpoch_many(ctx: QContext, bases: Iterable, n, trunc=None):
    """Product of (a;q)_n over the listed bases — the (a1,...,ak;q)_n shorthand."""
    out = ctx.one()
    for a in bases:
        out = out * qpoch(ctx, a, n, trunc)
    return out


def qbinom(ctx: QContext, m: int, k: int):
    """Gaussian binomial [m k]_q; zero outside 0 <= k <= m (negative m included)."""
    if k < 0 or m < 0 or k > m:
        return ctx.zero()
    return ctx.qq(m) / (ctx.qq(k) * ctx.qq(m - k))


def qbinom_base(ctx: QContext, base, m: int, k: int):
    """Gaussian binomial in an arbitrary base (used for inverted-base q**-1 checks)."""
    if k < 0 or m < 0 or k > m:
        return ctx.zero()
    num = ctx.one()
    den = ctx.one()
    for i in range(k):
        num = num * (1 - base ** (m - i))
        den = den * (1 - base ** (i + 1))
    return num / den


# ---------------------------------------------------------------------------
# q-difference / dilation operators on callables
# ---------------------------------------------------------------------------

def qop(ctx: QContext, f: Callable, z, mode: str = "Dq", order: int = 1):
    """Apply a q-operator to a scalar-valued callable at the point z.

    Modes: "Dq" (forward difference (f(z)-f(qz))/(z-qz)), "DqInverse" (base
    1/q), "Dilate" (f(qz)), and iterated powers via order > 1.  The iterated
    forward power uses

        D_q^n f(z) = ((1-q) z)^{-n} q^{-C(n,2)}
                     * sum_k [n k]_q (-1)^k q^{C(n-k,2)} f(q^k z),

    and the inverse-base power is the same formula with q -> 1/q.
    """
    z = ctx.scalar(z)
    if mode == "Dilate":
        out = f(ctx.qpow(order) * z)
        return out
    if mode not in ("Dq", "DqInverse"):
        raise ValueError(f"unknown qop mode {mode!r}")
    if is_zero(z) if ctx.is_exact else z == 0:
        raise ZeroDivisionError("Dq/DqInverse need z != 0")
    base = ctx.q if mode == "Dq" else 1 / ctx.q
    n = order
    acc = ctx.zero()
    for k in range(n + 1):
        # binomials in the operator's own base, so DqInverse powers are exact
        c = qbinom_base(ctx, base, n, k) * (-1) ** k * base ** ((n - k) * (n - k - 1) // 2)
        acc = acc + c * f(base**k * z)
    return acc * base ** (-(n * (n - 1) // 2)) / ((1 - base) * z) ** n


# ---------------------------------------------------------------------------
# Jackson's bilateral q-integral
# ---------------------------------------------------------------------------

def qintegral(ctx: QContext, f: Callable, trunc: Optional[TruncationPolicy] = None):
    """int_0^infty f(t) d_q t = (1-q) sum_{n in Z} q^n f(q^n), truncated.

    Returns (value, tail_bound).  Each tail is cut once the last few terms
    decay geometrically and the geometric majorant falls below tail_tol;
    non-decay within max_terms raises DivergenceError.
    """
    with ctx.workprec():
        tr = trunc or ctx.default_trunc
        total = ctx.zero()
        tail = 0.0

        for direction in (+1, -1):
            start = 0 if direction > 0 else -1
            prev_mag = None
            ratio_hist: List[float] = []
            zeros_run = 0
            n = start
            steps = 0
            while True:
                term = ctx.qpow(n) * f(ctx.qpow(n))
                total = total + term
                m = ctx.mag(term)
                if m == 0:
                    zeros_run += 1
                    if zeros_run >= 4:
                        break
                else:
                    zeros_run = 0
                if prev_mag is not None and prev_mag > 0:
                    ratio_hist.append(m / prev_mag)
                    ratio_hist = ratio_hist[-4:]
                prev_mag = m
                if len(ratio_hist) == 4 and max(ratio_hist) < 0.9:
                    r = max(ratio_hist)
                    est = m * r / (1 - r)
                    if est <= tr.tail_tol:
                        tail += est
                        break
                steps += 1
                if steps >= tr.max_terms:
                    if len(ratio_hist) >= 2 and min(ratio_hist) >= 1.0:
                        raise DivergenceError("q-integral terms do not decay")
                    if len(ratio_hist) == 4 and max(ratio_hist) < 1.0:
                        r = max(ratio_hist)
                        tail += m * r / (1 - r)
                        break
                    raise DivergenceError("q-integral truncation budget exhausted")
                n += direction
        return (1 - ctx.q) * total, tail


    # ---------------------------------------------------------------------------
    # basic hypergeometric series
    # ---------------------------------------------------------------------------

def _is_q_negative_power(ctx: QContext, a, limit: int = 4096) -> Optional[int]:
    """If a == q**-N exactly for some 0 <= N <= limit, return N."""
    if not ctx.is_exact:
        return None
    try:
        from .context import as_fraction

        av = as_fraction(a)
    except (ValueError, TypeError):
        return None
    if av <= 0:
        return None
    qf = ctx.q_fraction
    x = Fraction(1)
    for n in range(limit + 1):
        if x == av:
            return n
        x = x / qf
        if x > av and n > 0 and x > av * (1 / qf):
            break
    return None


def phi_series(
    ctx: QContext,
    numerators: Sequence,
    denominators: Sequence,
    z,
    trunc: Optional[TruncationPolicy] = None,
    terminating_order: Optional[int] = None,
):
    """The basic hypergeometric series r_phi_s(numerators; denominators; q, z).

    Term n carries the usual ((-1)^n q^C(n,2))^(1+s-r) factor.  A terminating
    series (a numerator q**-N on the exact backend, or terminating_order given)
    is summed exactly; otherwise terms must decay within the truncation budget
    and the value is returned with the geometric tail folded into it (bound is
    discarded here; callers needing the bound use the registry machinery).
    """
    with ctx.workprec():
        tr = trunc or ctx.default_trunc
        nums = [ctx.scalar(a) for a in numerators]
        dens = [ctx.scalar(b) for b in denominators]
        z = ctx.scalar(z)
        extra = 1 + len(dens) - len(nums)

        nmax = terminating_order
        if nmax is None and ctx.is_exact:
            cands = [_is_q_negative_power(ctx, a) for a in nums]
            cands = [c for c in cands if c is not None]
            if cands:
                nmax = min(cands)

        term = ctx.one()
        total = ctx.one()
        prev = ctx.mag(term)
        n = 0
        while True:
            if nmax is not None and n >= nmax:
                break
            # ratio from term n to n+1
            num_fac = ctx.one()
            for a in nums:
                num_fac = num_fac * (1 - a * ctx.qpow(n))
            den_fac = 1 - ctx.qpow(n + 1)
            for b in dens:
                f = 1 - b * ctx.qpow(n)
                if (is_zero(f) if ctx.is_exact else f == 0):
                    raise PoleError(f"denominator parameter {b!r} hits q**-{n}")
                den_fac = den_fac * f
            ratio = num_fac * z / den_fac
            if extra:
                ratio = ratio * ((-1) * ctx.qpow(n)) ** extra
            term = term * ratio
            total = total + term
            m = ctx.mag(term)
            if nmax is None:
                if m <= tr.tail_tol * max(1.0, ctx.mag(total)) and m <= prev:
                    break
                if n >= tr.max_terms:
                    raise DivergenceError("phi series did not converge in budget")
            prev = m
            n += 1
        return total


    # ---------------------------------------------------------------------------
    # special functions
    # ---------------------------------------------------------------------------

def aq_function(ctx: QContext, z, trunc: Optional[TruncationPolicy] = None):
    """Ramanujan's entire function A_q(z) = sum q^{n^2} (-z)^n / (q;q)_n.

    Returns (value, tail_bound); the q^{n^2} factor makes the tail bound a
    crude geometric majorant on the first omitted term.
    """
    with ctx.workprec():
        tr = trunc or ctx.default_trunc
        z = ctx.scalar(z)
        total = ctx.zero()
        qf = float(ctx.q_fraction)
        zmag = ctx.mag(z)
        for n in range(tr.max_terms):
            term = ctx.qpow(n * n) * (-z) ** n / ctx.qq(n)
            total = total + term
            nxt = qf ** ((n + 1) ** 2) * zmag ** (n + 1)
            ratio = qf ** (2 * n + 3) * zmag
            if nxt > 0 and ratio < 0.5:
                tail = 2 * nxt / (1 - qf)
                if tail <= tr.tail_tol:
                    return total, tail
            if nxt == 0:
                return total, 0.0
        raise DivergenceError("A_q series truncation budget exhausted")


def theta4(ctx: QContext, w, p, trunc: Optional[TruncationPolicy] = None):
    """theta_4(w; p) = sum_{n in Z} (-1)^n p^{n^2} w^n, |p| < 1, w != 0.

    Returns (value, tail_bound).  The convention (plain w^n, no half-integer
    characteristics) is the one calibrated against the scaled large-degree
    behaviour of the first 2D family; see the asymptotics module.
    """
    with ctx.workprec():
        tr = trunc or ctx.default_trunc
        w = ctx.scalar(w)
        p = ctx.scalar(p)
        pmag = ctx.mag(p)
        if pmag >= 1:
            raise ValueError("theta4 needs |p| < 1")
        wmag = ctx.mag(w)
        if wmag == 0:
            raise ZeroDivisionError("theta4 needs w != 0")
        total = ctx.one()
        winv = 1 / w
        for n in range(1, tr.max_terms):
            total = total + (-1) ** n * p ** (n * n) * (w**n + winv**n)
            nxt = pmag ** ((n + 1) ** 2) * max(wmag, 1 / wmag) ** (n + 1)
            if nxt < tr.tail_tol and pmag ** (2 * n + 3) * max(wmag, 1 / wmag) < 0.5:
                return total, 4 * nxt
        raise DivergenceError("theta4 truncation budget exhausted")


def bessel_i2_series(ctx: QContext, qnu, y, trunc: Optional[TruncationPolicy] = None):
    """The modified Jackson q-Bessel sum in its fractional-power-free form.

    With q^nu := qnu, returns
        ((qnu*q;q)_inf / (q;q)_inf) * sum_n q^{n^2} qnu^n y^n / ((q;q)_n (qnu*q;q)_n),
    which equals b^{-nu/2} I^{(2)}_nu(2 sqrt(b); q) at y = b.  Keeping qnu as a
    scalar sidesteps z^{nu} branch choices entirely.
    """
    with ctx.workprec():
        tr = trunc or ctx.default_trunc
        qnu = ctx.scalar(qnu)
        y = ctx.scalar(y)
        pref_num, t1 = qpoch_inf(ctx, qnu * ctx.q, tr)
        pref_den, t2 = qpoch_inf(ctx, ctx.q, tr)
        total = ctx.zero()
        term = ctx.one()
        tail = 0.0
        for n in range(tr.max_terms):
            total = total + term
            den = (1 - ctx.qpow(n + 1)) * (1 - qnu * ctx.qpow(n + 1))
            if den == 0:
                raise PoleError("q-Bessel denominator parameter on a pole")
            ratio = ctx.qpow(2 * n + 1) * qnu * y / den
            term = term * ratio
            if ctx.mag(term) <= tr.tail_tol and ctx.mag(ratio) < 0.5:
                tail = 2 * ctx.mag(term)
                break
        else:
            raise DivergenceError("q-Bessel series truncation budget exhausted")
        value = pref_num * total / pref_den
        bound = tail + t1 + t2  # crude: absolute tails of the two products
        return value, bound


def bessel_j2_ratio(ctx: QContext, qalpha, x2, trunc: Optional[TruncationPolicy] = None):
    """J^(2)_alpha(2x; q) / x^alpha with q^alpha := qalpha and x2 := x^2.

    Equals ((qalpha*q;q)_inf/(q;q)_inf) sum_n (-1)^n q^{n^2} qalpha^n x2^n
    / ((q;q)_n (qalpha*q;q)_n).
    """
    val, bound = bessel_i2_series(ctx, qalpha, -ctx.scalar(x2), trunc)
    return val, bound


def schur_a(ctx: QContext, m: int):
    """Schur polynomial a_m(q) = sum_j q^{j^2+j} [m-j-2 over j]_q.

    The Gaussian binomial is zero outside 0 <= j <= m-j-2.  The m = 0 value is
    pinned to 1: the generalized Rogers--Ramanujan identity at m = 0 is the
    first Rogers--Ramanujan identity, which forces a_0 = 1 (numerically
    confirmed for m = 0..8 in the test suite), while the bare sum would give 0.
    """
    if m == 0:
        return ctx.one()
    total = ctx.zero()
    for j in range(max(0, (m - 2) // 2) + 1):
        total = total + ctx.qpow(j * j + j) * qbinom(ctx, m - j - 2, j)
    return total


def schur_b(ctx: QContext, m: int):
    """Schur polynomial b_m(q) = sum_j q^{j^2} [m-j-1 over j]_q (zero convention).

    b_0 = 0 under the zero convention, which matches the generalized
    Rogers--Ramanujan identity at m = 0.
    """
    total = ctx.zero()
    for j in range(max(0, (m - 1) // 2) + 1):
        total = total + ctx.qpow(j * j) * qbinom(ctx, m - j - 1, j)
    return total
