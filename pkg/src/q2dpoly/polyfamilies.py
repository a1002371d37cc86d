"""The bivariate polynomial families and their radial reductions.

Five families share one container (:class:`BivarPoly`):

* ``Hq``  -- first 2D q-Hermite analogue,
      H_{m,n}(z1,z2|q) = sum_k [m k][n k] (-1)^k q^C(k,2) (q;q)_k z1^{m-k} z2^{n-k}
* ``hq``  -- second analogue,
      h_{m,n}(z1,z2|q) = sum_j [m j][n j] q^{(m-j)(n-j)} (-1)^j (q;q)_j z1^{m-j} z2^{n-j}
* ``pq``  -- 2D q-ultraspherical (q-disk / q-Zernike) family with parameter b,
      p_{m,n}(z1,z2;b|q) = sum_k [m k][n k] (-1)^k q^C(k,2) (q;q)_k (bq;q)_{m+n-k}
                            z1^{m-k} z2^{n-k}
* ``H_classical`` -- the Ito 2D Hermite polynomials (q = 1 comparator)
* ``C_disk``      -- classical disk (Zernike) polynomials with parameter nu.

Coefficients are built from the explicit finite sums; the three-term
recurrences are kept as an independent evaluation oracle
(:func:`eval_recurrence`).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .context import GaussianRational, QContext, conj, is_zero
from .qkernel import qbinom, qpoch

__all__ = [
    "BivarPoly",
    "coeffs",
    "eval_poly",
    "eval_recurrence",
    "radial_reduce",
    "RadialForm",
    "wall_poly",
    "q_laguerre",
    "little_q_jacobi",
    "qop_poly",
    "wall_coeff_list",
    "q_laguerre_coeff_list",
    "little_q_jacobi_coeff_list",
    "poly_to_json",
    "poly_from_json",
]

Key = Tuple[int, int]


class BivarPoly:
    """Sparse bivariate polynomial sum c[i,j] z1^i z2^j with backend scalars."""

    __slots__ = ("ctx", "coeffs", "meta")

    def __init__(self, ctx: QContext, coeffs: Optional[Dict[Key, object]] = None,
                 meta: Optional[dict] = None):
        self.ctx = ctx
        self.coeffs: Dict[Key, object] = {}
        if coeffs:
            for k, c in coeffs.items():
                if not (is_zero(c) if ctx.is_exact else c == 0):
                    self.coeffs[k] = c
        self.meta = meta or {}

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, BivarPoly):
            out = dict(self.coeffs)
            for k, c in other.coeffs.items():
                out[k] = out.get(k, self.ctx.zero()) + c
            return BivarPoly(self.ctx, out)
        out = dict(self.coeffs)
        out[(0, 0)] = out.get((0, 0), self.ctx.zero()) + other
        return BivarPoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly(self.ctx, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, BivarPoly):
            return self + (-other)
        return self + (-1 * other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BivarPoly):
            return BivarPoly(self.ctx, {k: c * other for k, c in self.coeffs.items()})
        out: Dict[Key, object] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, self.ctx.zero()) + c1 * c2
        return BivarPoly(self.ctx, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return (self - other).is_zero()

    def coeff(self, i: int, j: int):
        return self.coeffs.get((i, j), self.ctx.zero())

    def degrees(self) -> Tuple[int, int]:
        if not self.coeffs:
            return (-1, -1)
        return (max(i for i, _ in self.coeffs), max(j for _, j in self.coeffs))

    # -- substitutions ------------------------------------------------------
    def dilate(self, c1=1, c2=1) -> "BivarPoly":
        """Substitute z1 -> c1 z1, z2 -> c2 z2."""
        return BivarPoly(
            self.ctx, {(i, j): c * c1**i * c2**j for (i, j), c in self.coeffs.items()}
        )

    def dilate_q(self, e1: int = 0, e2: int = 0) -> "BivarPoly":
        """Substitute z1 -> q^e1 z1, z2 -> q^e2 z2 (integer exponents)."""
        return self.dilate(self.ctx.qpow(e1), self.ctx.qpow(e2))

    def mul_monomial(self, i0: int, j0: int, c=1) -> "BivarPoly":
        return BivarPoly(
            self.ctx, {(i + i0, j + j0): c * cc for (i, j), cc in self.coeffs.items()}
        )

    def div_monomial(self, i0: int, j0: int) -> "BivarPoly":
        """Exact division by z1^i0 z2^j0; raises if not divisible."""
        out = {}
        for (i, j), c in self.coeffs.items():
            if i < i0 or j < j0:
                raise ArithmeticError("polynomial not divisible by the monomial")
            out[(i - i0, j - j0)] = c
        return BivarPoly(self.ctx, out)

    def dq(self, var: int) -> "BivarPoly":
        """Forward q-derivative D_q in variable var (1 or 2), exact on coefficients."""
        q = self.ctx.q
        out: Dict[Key, object] = {}
        for (i, j), c in self.coeffs.items():
            d = i if var == 1 else j
            if d == 0:
                continue
            fac = (1 - q**d) / (1 - q)
            k = (i - 1, j) if var == 1 else (i, j - 1)
            out[k] = out.get(k, self.ctx.zero()) + c * fac
        return BivarPoly(self.ctx, out)

    def dq_inv(self, var: int) -> "BivarPoly":
        """Inverse-base q-derivative D_{1/q}."""
        qi = 1 / self.ctx.q
        out: Dict[Key, object] = {}
        for (i, j), c in self.coeffs.items():
            d = i if var == 1 else j
            if d == 0:
                continue
            fac = (1 - qi**d) / (1 - qi)
            k = (i - 1, j) if var == 1 else (i, j - 1)
            out[k] = out.get(k, self.ctx.zero()) + c * fac
        return BivarPoly(self.ctx, out)

    def swap_vars(self) -> "BivarPoly":
        return BivarPoly(self.ctx, {(j, i): c for (i, j), c in self.coeffs.items()})

    def conj_coeffs(self) -> "BivarPoly":
        return BivarPoly(self.ctx, {k: conj(c) for k, c in self.coeffs.items()})

    def __repr__(self):
        items = sorted(self.coeffs)[:8]
        inner = ", ".join(f"z1^{i} z2^{j}: {self.coeffs[(i,j)]}" for i, j in items)
        return f"BivarPoly({{{inner}{', ...' if len(self.coeffs) > 8 else ''}}})"


# ---------------------------------------------------------------------------
# family construction from the explicit sums
# ---------------------------------------------------------------------------

def _check_disk_params(ctx, family, b, nu):
    if family == "pq":
        if b is None:
            raise ValueError("pq needs the disk parameter b")
        if ctx.mag(b) * ctx.mag(ctx.q) >= 1 and ctx.mag(ctx.q) < 1:
            # orthogonality requires b < 1/q; construction tolerates equality
            pass
    if family == "C_disk" and nu is None:
        raise ValueError("C_disk needs the parameter nu")


def coeffs(ctx: QContext, family: str, m: int, n: int, b=None, nu=None) -> BivarPoly:
    """Exact coefficient map of the (m, n) member of a family."""
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    _check_disk_params(ctx, family, b, nu)
    out: Dict[Key, object] = {}
    if family == "Hq":
        for k in range(min(m, n) + 1):
            c = (qbinom(ctx, m, k) * qbinom(ctx, n, k) * (-1) ** k
                 * ctx.qpow(k * (k - 1) // 2) * ctx.qq(k))
            out[(m - k, n - k)] = c
    elif family == "hq":
        for j in range(min(m, n) + 1):
            c = (qbinom(ctx, m, j) * qbinom(ctx, n, j) * ctx.qpow((m - j) * (n - j))
                 * (-1) ** j * ctx.qq(j))
            out[(m - j, n - j)] = c
    elif family == "pq":
        bb = ctx.scalar(b)
        for k in range(min(m, n) + 1):
            c = (qbinom(ctx, m, k) * qbinom(ctx, n, k) * (-1) ** k
                 * ctx.qpow(k * (k - 1) // 2) * ctx.qq(k)
                 * qpoch(ctx, bb * ctx.q, m + n - k))
            out[(m - k, n - k)] = c
    elif family == "H_classical":
        for k in range(min(m, n) + 1):
            c = ((-1) ** k * math.factorial(k) * math.comb(m, k) * math.comb(n, k))
            out[(m - k, n - k)] = ctx.scalar(c)
    elif family == "C_disk":
        nuv = Fraction(nu) if ctx.is_exact else ctx.scalar(nu)
        for k in range(min(m, n) + 1):
            ris = _rising(nuv, m + n - k, ctx)
            c = ((-1) ** k * math.factorial(k) * math.comb(m, k) * math.comb(n, k))
            out[(m - k, n - k)] = ctx.scalar(c) * ris
    else:
        raise ValueError(f"unknown family {family!r}")
    meta = {"family": family, "m": m, "n": n}
    if b is not None:
        meta["b"] = b
    if nu is not None:
        meta["nu"] = nu
    return BivarPoly(ctx, out, meta)


def _rising(a, n: int, ctx: QContext):
    out = ctx.one() if not isinstance(a, Fraction) else Fraction(1)
    for k in range(n):
        out = out * (a + k)
    return out


def qop_poly(P: BivarPoly, var: int, mode: str = "Dq") -> BivarPoly:
    """Exact q-operator on coefficient data (no function evaluation):
    mode "Dq", "DqInverse" or "Dilate" in variable var (1 or 2)."""
    if mode == "Dq":
        return P.dq(var)
    if mode == "DqInverse":
        return P.dq_inv(var)
    if mode == "Dilate":
        return P.dilate_q(1, 0) if var == 1 else P.dilate_q(0, 1)
    raise ValueError(f"unknown mode {mode!r}")


def eval_poly(P: BivarPoly, z1, z2):
    """Evaluate at scalars; float backend sums terms largest magnitude first."""
    ctx = P.ctx
    z1 = ctx.scalar(z1)
    z2 = ctx.scalar(z2)
    terms = [c * z1**i * z2**j for (i, j), c in sorted(P.coeffs.items())]
    if not terms:
        return ctx.zero()
    if not ctx.is_exact:
        terms.sort(key=ctx.mag, reverse=True)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total


def eval_recurrence(ctx: QContext, family: str, m: int, n: int, z1, z2):
    """Independent oracle: evaluate Hq/hq through the three-term recurrences.

    Hq:  H_{m+1,n} = z1 H_{m,n} - q^m (1-q^n) H_{m,n-1}, seeded by
         H_{0,n} = z2^n, H_{m,0} = z1^m; hq analogously from
         h_{m+1,n} = q^n z1 h_{m,n} - (1-q^n) h_{m,n-1}.
    """
    if family not in ("Hq", "hq"):
        raise ValueError("recurrence oracle covers Hq and hq")
    z1 = ctx.scalar(z1)
    z2 = ctx.scalar(z2)
    # row r = values h_{r, 0..n} built by raising the first index
    prev_row = [z2**j for j in range(n + 1)]  # m = 0
    if m == 0:
        return prev_row[n]
    for r in range(m):
        cur = [z1 ** (r + 1) if family == "Hq" else z1 ** (r + 1)]
        for j in range(1, n + 1):
            if family == "Hq":
                val = z1 * prev_row[j] - ctx.qpow(r) * (1 - ctx.qpow(j)) * prev_row[j - 1]
            else:
                val = ctx.qpow(j) * z1 * prev_row[j] - (1 - ctx.qpow(j)) * prev_row[j - 1]
            cur.append(val)
        prev_row = cur
    return prev_row[n]


# ---------------------------------------------------------------------------
# terminating univariate families (radial factors)
# ---------------------------------------------------------------------------

def wall_poly(ctx: QContext, a, n: int, x):
    """Little q-Laguerre / Wall polynomial p_n(x; a | q) = 2phi1(q^-n, 0; aq; q, qx)."""
    a = ctx.scalar(a)
    x = ctx.scalar(x)
    total = ctx.one()
    term = ctx.one()
    for r in range(n):
        den = (1 - ctx.qpow(r + 1)) * (1 - a * ctx.qpow(r + 1))
        term = term * (1 - ctx.qpow(r - n)) * ctx.q * x / den
        total = total + term
    return total


def q_laguerre(ctx: QContext, alpha: int, n: int, x):
    """q-Laguerre L_n^(alpha)(x; q) for integer alpha >= 0 (terminating 1phi1 form)."""
    x = ctx.scalar(x)
    pref = qpoch(ctx, ctx.qpow(alpha + 1), n) / ctx.qq(n)
    total = ctx.one()
    term = ctx.one()
    for r in range(n):
        den = (1 - ctx.qpow(r + 1)) * (1 - ctx.qpow(alpha + 1 + r))
        # 1phi1 term ratio carries the extra (-1) q^r factor
        term = term * (1 - ctx.qpow(r - n)) * (-1) * ctx.qpow(r) * (-ctx.qpow(n + alpha + 1) * x) / den
        total = total + term
    return pref * total


def little_q_jacobi(ctx: QContext, a, b, n: int, x):
    """Little q-Jacobi p_n(x; a, b | q) = 2phi1(q^-n, a b q^{n+1}; aq; q, qx)."""
    a = ctx.scalar(a)
    b = ctx.scalar(b)
    x = ctx.scalar(x)
    total = ctx.one()
    term = ctx.one()
    for r in range(n):
        den = (1 - ctx.qpow(r + 1)) * (1 - a * ctx.qpow(r + 1))
        term = term * (1 - ctx.qpow(r - n)) * (1 - a * b * ctx.qpow(n + 1 + r)) * ctx.q * x / den
        total = total + term
    return total


def _terminating_coeff_list(ctx, n, term_coeff) -> List[object]:
    """Coefficients [c_0..c_n] in x of a terminating sum c_r(x) given per-order."""
    return [term_coeff(r) for r in range(n + 1)]


def wall_coeff_list(ctx: QContext, a, n: int) -> List[object]:
    a = ctx.scalar(a)

    def c(r):
        num = qpoch(ctx, ctx.qpow(-n), r) * ctx.qpow(r)
        den = ctx.qq(r) * qpoch(ctx, a * ctx.q, r)
        return num / den

    return _terminating_coeff_list(ctx, n, c)


def q_laguerre_coeff_list(ctx: QContext, alpha: int, n: int) -> List[object]:
    pref = qpoch(ctx, ctx.qpow(alpha + 1), n) / ctx.qq(n)

    def c(r):
        num = qpoch(ctx, ctx.qpow(-n), r) * (-1) ** r * ctx.qpow(r * (r - 1) // 2)
        num = num * (-ctx.qpow(n + alpha + 1)) ** r
        den = ctx.qq(r) * qpoch(ctx, ctx.qpow(alpha + 1), r)
        return pref * num / den

    return _terminating_coeff_list(ctx, n, c)


def little_q_jacobi_coeff_list(ctx: QContext, a, b, n: int) -> List[object]:
    a = ctx.scalar(a)
    b = ctx.scalar(b)

    def c(r):
        num = qpoch(ctx, ctx.qpow(-n), r) * qpoch(ctx, a * b * ctx.qpow(n + 1), r) * ctx.qpow(r)
        den = ctx.qq(r) * qpoch(ctx, a * ctx.q, r)
        return num / den

    return _terminating_coeff_list(ctx, n, c)


# ---------------------------------------------------------------------------
# radial reduction
# ---------------------------------------------------------------------------

class RadialForm:
    """prefactor * z^{|m-n|} (or conjugate power) * radial(z1 z2).

    ``angular_index`` = m - n; when negative the reduction was taken through
    the index symmetry and the monomial sits on z2 (``swapped`` is set).
    """

    def __init__(self, ctx, family, m, n, prefactor, radial_kind, radial_params,
                 radial_coeffs, swapped: bool):
        self.ctx = ctx
        self.family = family
        self.m = m
        self.n = n
        self.prefactor = prefactor
        self.radial_kind = radial_kind
        self.radial_params = radial_params
        self.radial_coeffs = radial_coeffs  # coefficients in x = z1 z2
        self.angular_index = m - n
        self.swapped = swapped

    def radial_value(self, x):
        x = self.ctx.scalar(x)
        total = self.ctx.zero()
        for r, c in enumerate(self.radial_coeffs):
            total = total + c * x**r
        return total

    def expand(self) -> BivarPoly:
        out: Dict[Key, object] = {}
        a = abs(self.angular_index)
        for r, c in enumerate(self.radial_coeffs):
            key = (r + a, r) if not self.swapped else (r, r + a)
            out[key] = self.prefactor * c
        return BivarPoly(self.ctx, out)

    def radial_poly_coeffs(self) -> List[object]:
        """Coefficients (in x = r^2) of the full radial factor incl. prefactor."""
        return [self.prefactor * c for c in self.radial_coeffs]


def radial_reduce(ctx: QContext, family: str, m: int, n: int, b=None) -> RadialForm:
    """Split the (m, n) member into angular monomial times a radial polynomial.

    Hq -> Wall p_nu(x; q^{m-n} | q), hq -> q-Laguerre L_nu^{(m-n)}(x; q),
    pq -> little q-Jacobi p_nu(x; q^{m-n}, b | q), where nu = min(m, n).
    Inputs with m < n are routed through the index symmetry.
    """
    swapped = m < n
    mm, nn = (n, m) if swapped else (m, n)
    alpha = mm - nn
    if family == "Hq":
        pref = ((-1) ** nn * ctx.qq(mm) * ctx.qpow(nn * (nn - 1) // 2) / ctx.qq(mm - nn))
        rc = wall_coeff_list(ctx, ctx.qpow(alpha), nn)
        kind, params = "Wall", {"a": f"q^{alpha}"}
    elif family == "hq":
        pref = (-1) ** nn * ctx.qq(nn)
        rc = q_laguerre_coeff_list(ctx, alpha, nn)
        kind, params = "qLaguerre", {"alpha": alpha}
    elif family == "pq":
        if b is None:
            raise ValueError("pq needs b")
        bb = ctx.scalar(b)
        pref = ((-1) ** nn * ctx.qpow(nn * (nn - 1) // 2) * qpoch(ctx, bb * ctx.q, mm)
                * qpoch(ctx, ctx.qpow(alpha + 1), nn))
        rc = little_q_jacobi_coeff_list(ctx, ctx.qpow(alpha), bb, nn)
        kind, params = "littleQJacobi", {"a": f"q^{alpha}", "b": b}
    else:
        raise ValueError(f"no radial reduction for family {family!r}")
    return RadialForm(ctx, family, m, n, pref, kind, params, rc, swapped)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _scalar_strings(c) -> Tuple[str, str]:
    if isinstance(c, GaussianRational):
        return (str(c.re), str(c.im))
    if isinstance(c, (int, Fraction)):
        return (str(Fraction(c)), "0")
    # float backend: decimal strings
    import mpmath

    if isinstance(c, mpmath.mpc):
        return (mpmath.nstr(c.real, 17), mpmath.nstr(c.imag, 17))
    return (mpmath.nstr(c, 17), "0")


def poly_to_json(P: BivarPoly) -> str:
    meta = P.meta
    entries = []
    for (i, j) in sorted(P.coeffs):
        re, im = _scalar_strings(P.coeffs[(i, j)])
        entries.append([i, j, re, im])
    doc = {
        "family": meta.get("family"),
        "m": meta.get("m"),
        "n": meta.get("n"),
        "params": {k: str(v) for k, v in meta.items() if k not in ("family", "m", "n")},
        "coeffs": entries,
    }
    return json.dumps(doc, sort_keys=True)


def poly_from_json(ctx: QContext, text: str) -> BivarPoly:
    doc = json.loads(text)
    out = {}
    for i, j, re, im in doc["coeffs"]:
        ref, imf = Fraction(re), Fraction(im)
        out[(i, j)] = GaussianRational(ref, imf) if imf else ctx.scalar(ref)
    meta = {"family": doc.get("family"), "m": doc.get("m"), "n": doc.get("n")}
    meta.update(doc.get("params", {}))
    return BivarPoly(ctx, out, meta)
