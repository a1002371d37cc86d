#!/usr/bin/env python3
"""Orthogonality audit at the acceptance scales.

Emits one CSV per family (header m,n,s,t,value_re,value_im,closed_re,
closed_im,rel_error) and prints the worst deviations:

* first family at q = 1/4, K = 80, indices <= 5,
* disk family, same grid, b = 1/4,
* second family at q = 1/2, indices <= 4 (geometric-grid quadrature).
"""

from fractions import Fraction as F

import mpmath

from q2dpoly.context import QContext, TruncationPolicy
from q2dpoly.measures import inner_product

TR = TruncationPolicy(max_terms=500, tail_tol=1e-36)


def audit(ctx, family, N, b, path):
    rows = ["m,n,s,t,value_re,value_im,closed_re,closed_im,rel_error"]
    worst_d = worst_o = 0.0
    for m in range(N + 1):
        for n in range(N + 1):
            for s in range(N + 1):
                for t in range(N + 1):
                    r = inner_product(ctx, family, (m, n), (s, t), b=b)
                    rows.append(
                        f"{m},{n},{s},{t},{mpmath.nstr(mpmath.re(r.value), 12)},"
                        f"{mpmath.nstr(mpmath.im(r.value), 12)},"
                        f"{mpmath.nstr(mpmath.re(r.closed_form), 12)},"
                        f"{mpmath.nstr(mpmath.im(r.closed_form), 12)},{r.rel_error!r}")
                    if (m, n) == (s, t):
                        worst_d = max(worst_d, r.rel_error)
                    else:
                        worst_o = max(worst_o, ctx.mag(r.value))
    with open(path, "w") as fh:
        fh.write("\n".join(rows) + "\n")
    print(f"{family}: worst diagonal rel {worst_d:.3e}, worst off-diagonal {worst_o:.3e} -> {path}")
    return worst_d, worst_o


def main():
    ctx14 = QContext(F(1, 4), sqrt_q="auto", backend="float",
                     precision_bits=160, default_trunc=TR)
    ctx12 = QContext(F(1, 2), sqrt_q="auto", backend="float",
                     precision_bits=160, default_trunc=TR)
    bad = 0
    d, o = audit(ctx14, "Hq", 5, None, "ortho_H.csv")
    bad += d > 1e-10 or o > 1e-10
    d, o = audit(ctx14, "pq", 5, F(1, 4), "ortho_p.csv")
    bad += d > 1e-10 or o > 1e-10
    d, o = audit(ctx12, "hq", 4, None, "ortho_h.csv")
    bad += d > 1e-8 or o > 1e-8
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
