"""Run every identity check on a batch of random covers.

Usage: python3 demos/campaign.py [count] [seed]
"""
from __future__ import annotations

import sys
import time
from collections import Counter

from prymvol.generate import random_cover
from prymvol.homology import check_homology_identities
from prymvol.volumes import route_agreement, verify_deformation_moves, verify_free_volume, verify_thm_a


def main(count: int = 30, seed: int = 0) -> int:
    tally: Counter = Counter()
    failures = []
    start = time.perf_counter()
    for i in range(count):
        mode = ("free", "edge-free", "general")[i % 3]
        v = 2 + i % 5
        e = v + 1 + i % 4
        cover = random_cover(v, e, mode, seed + i)
        checks = [verify_thm_a(cover), route_agreement(cover), verify_free_volume(cover)]
        checks += verify_deformation_moves(cover)
        for r in checks:
            tally[r.status] += 1
            if not r.ok:
                failures.append((mode, v, e, seed + i, r.name, r.detail))
        for name, ok in check_homology_identities(cover).items():
            tally["pass" if ok else "fail"] += 1
            if not ok:
                failures.append((mode, v, e, seed + i, name, ""))
    elapsed = time.perf_counter() - start
    print(f"{count} covers, {sum(tally.values())} checks in {elapsed:.1f}s: {dict(tally)}")
    for f in failures:
        print("FAIL", *f)
    return 1 if failures else 0


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    sys.exit(main(*args))
