#!/usr/bin/env python3
"""Regenerate tests/data/fp16_numpy_add.csv: binary16 sums computed by numpy."""
import argparse
import pathlib

import numpy as np


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=20000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument(
        "--out",
        type=pathlib.Path,
        default=pathlib.Path(__file__).resolve().parent.parent / "data" / "fp16_numpy_add.csv",
    )
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    a = rng.integers(0, 1 << 16, args.count, dtype=np.uint16)
    b = rng.integers(0, 1 << 16, args.count, dtype=np.uint16)
    # A quarter of the pairs get nearby exponents so cancellation is common.
    near = rng.random(args.count) < 0.25
    b[near] = (a[near] ^ 0x8000) + rng.integers(-64, 65, near.sum()).astype(np.uint16)
    finite = ((a & 0x7C00) != 0x7C00) & ((b & 0x7C00) != 0x7C00)
    a, b = a[finite], b[finite]

    with np.errstate(over="ignore"):
        s = (a.view(np.float16) + b.view(np.float16)).view(np.uint16)

    with args.out.open("w") as f:
        f.write("# a,b,a+b as binary16 bits (numpy float16)\n")
        for x, y, z in zip(a, b, s):
            f.write(f"{x:04X},{y:04X},{z:04X}\n")


if __name__ == "__main__":
    main()
