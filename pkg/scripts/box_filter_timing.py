#!/usr/bin/env python3
"""Box filter timing across window radii.

The integral-image formulation should make runtime flat in the radius.
Prints median wall time per radius on a fixed random image.
"""

import argparse
import sys
import time

import numpy as np

from lepfuse import Image, box_mean


def median_ms(img: Image, radius: int, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        box_mean(img, radius)
        times.append(time.perf_counter() - t0)
    return float(np.median(times)) * 1e3


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--side", type=int, default=1024)
    parser.add_argument("--repeats", type=int, default=10)
    parser.add_argument("--radii", type=int, nargs="+",
                        default=[1, 2, 5, 10, 25, 50, 100])
    args = parser.parse_args(argv)

    rng = np.random.default_rng(0)
    img = Image(rng.uniform(0, 255, (args.side, args.side)))
    box_mean(img, 1)  # warm up

    print(f"image {args.side}x{args.side}, median of {args.repeats} runs")
    print(f"{'radius':>6} {'ms':>8}")
    baseline = None
    for radius in args.radii:
        ms = median_ms(img, radius, args.repeats)
        if baseline is None:
            baseline = ms
        print(f"{radius:>6} {ms:>8.2f}  (x{ms / baseline:.2f})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
