"""Contract an odd undilated loop and watch the volume drop by half.

The left cover has a loop f at a dilated vertex whose preimage is a single
cycle. Sending the length of f to zero in the polynomial gives one value, the
contracted cover (demos/data/disc_right.json) gives half of it.
"""
from __future__ import annotations

from pathlib import Path

from prymvol import catalog
from prymvol.io import load_cover
from prymvol.volumes import prym_volume_combinatorial, verify_deformation_moves

DATA = Path(__file__).parent / "data"


def main() -> None:
    left = catalog.disc_left_cover()
    right = load_cover(DATA / "disc_right.json")
    before = prym_volume_combinatorial(left)
    print("before contraction:", before)
    print("limit as f -> 0:   ", before.subs({"f": 0}))
    print("after contraction: ", prym_volume_combinatorial(right))
    for r in verify_deformation_moves(left):
        if r.name == "discontinuity":
            print("check:", r.status, r.detail)


if __name__ == "__main__":
    main()
