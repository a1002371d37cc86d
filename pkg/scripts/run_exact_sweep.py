#!/usr/bin/env python3
"""Full exact verification sweep at the headline parameters.

Runs every EXACT-POLY entry for 0 <= m,n <= 6 at q = 2/5 (b = 1/3, c = 1/5)
and every EXACT-SERIES entry to total order 8 at q = 9/25 (s = 3/5), then
writes one JSON report per entry to exact_sweep.json.
"""

import json
import sys
import time
from fractions import Fraction as F

from q2dpoly.context import QContext
from q2dpoly.identities import check_identity, exact_ids, exact_series_ids

OUT = sys.argv[1] if len(sys.argv) > 1 else "exact_sweep.json"


def main():
    t0 = time.time()
    reports = []
    ctx = QContext(F(2, 5))
    for id_ in exact_ids():
        rep = check_identity(ctx, id_, {"max_m": 6, "max_n": 6,
                                        "b": F(1, 3), "c": F(1, 5)})
        reports.append(rep.to_dict())
        print(f"{'PASS' if rep.passed else 'FAIL'} {id_}")
    ctx_s = QContext(F(9, 25), sqrt_q=F(3, 5))
    for id_ in exact_series_ids():
        rep = check_identity(ctx_s, id_, {"order": 8, "max_j": 2, "max_k": 2})
        reports.append(rep.to_dict())
        print(f"{'PASS' if rep.passed else 'FAIL'} {id_}")
    with open(OUT, "w") as fh:
        json.dump(reports, fh, indent=1, sort_keys=True)
    n_fail = sum(not r["pass"] for r in reports)
    print(f"{len(reports)} entries, {n_fail} failures, {time.time() - t0:.1f}s -> {OUT}")
    return 1 if n_fail else 0


if __name__ == "__main__":
    raise SystemExit(main())
