#!/usr/bin/env python3
"""Zero-circle limits and large-degree asymptotics study.

Writes plot-ready CSVs (size,error) for the zero-circle limits of the three
families and the four asymptotic regimes, and prints the certified zeros of
the Ramanujan function used by the second family's limit.
"""

from fractions import Fraction as F

import mpmath

from q2dpoly.context import QContext, TruncationPolicy
from q2dpoly.zeros import aq_zeros, asymptotic_report, zero_limit_report

TR = TruncationPolicy(max_terms=500, tail_tol=1e-36)


def main():
    ctx = QContext(F(1, 4), sqrt_q="auto", backend="float",
                   precision_bits=200, default_trunc=TR)
    ctx12 = QContext(F(1, 2), sqrt_q="auto", backend="float",
                     precision_bits=200, default_trunc=TR)

    print("A_q zeros at q = 1/4:",
          [mpmath.nstr(z, 12) for z in aq_zeros(ctx, 3, precision=25)])

    for target, kwargs, sizes in (
        ("limH", {}, [10, 20, 40]),
        ("limp", {"b": F(1, 4)}, [10, 20, 40]),
        ("limh", {}, [5, 10, 20]),
    ):
        rep = zero_limit_report(ctx, target, 1, sizes, **kwargs)
        path = f"zerolimit_{target}.csv"
        with open(path, "w") as fh:
            fh.write(rep.to_csv())
        print(f"{target}: final {rep.final_error:.3e} monotone={rep.monotone} -> {path}")

    for target, pt, sizes in (
        ("Hmn_inf", {"z1": 2, "z2": 2}, [8, 16, 32, 64]),
        ("p_inf", {"z1": 2, "z2": 2, "b": F(1, 4)}, [8, 16, 32, 64]),
        ("PR_h", {"w1": 1, "w2": 1}, [8, 16, 32, 64]),
        ("theta4_scaled", {"z1": 1.1, "z2": 0.9}, [5, 9, 17, 33]),
    ):
        rep = asymptotic_report(ctx12, target, sizes, pt)
        path = f"asym_{target}.csv"
        with open(path, "w") as fh:
            fh.write(rep.to_csv())
        print(f"{target}: final {rep.final_error:.3e} monotone={rep.monotone} -> {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
