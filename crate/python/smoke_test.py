"""Smoke test for the qquandle extension module.

Build with `maturin develop -m crates/py/Cargo.toml`, or copy
target/release/libqquandle.so next to this file as qquandle.so.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import qquandle

TREFOIL = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"


def main():
    assert qquandle.kappas(7) == [0, 3, 4]

    by_pd = qquandle.compute(2, 1, pd=TREFOIL, brute_check=True)
    by_braid = qquandle.compute(2, 1, braid="2:1,1,1")
    assert by_pd["phi_text"] == by_braid["phi_text"], (by_pd, by_braid)
    assert by_pd["brute_agrees"] is True
    assert by_pd["consistent"]

    t = qquandle.torus(5, 15, 2, 1)
    assert t["phi_text"] == "544 + 480*u", t

    k = qquandle.twobridge(3, 1, 2, 1)
    assert k["phi_text"] == by_pd["phi_text"], (k, by_pd)

    assert qquandle.identity_check(2)

    try:
        qquandle.compute(7, 2, pd=TREFOIL)
    except ValueError:
        pass
    else:
        raise AssertionError("reducible h accepted")

    print("smoke test ok:", by_pd["phi_text"], t["phi_text"])


if __name__ == "__main__":
    main()
