"""
Deterministic demo corpus generator
===================================

Writes a small PPM image collection whose extracted descriptors cover the
chosen preset well: for the toy space, one image per brightness class; for
rgb9, banded images colored from a fixed palette. Usage:

    python demos/make_corpus.py --out /tmp/corpus --space toy
"""

import argparse
from pathlib import Path

import numpy as np

from facetdht import RasterImage, write_ppm
from facetdht.rng import Lcg64
from facetdht.space import toy_space

SIZE = 48


def banded(top_rgb, center_rgb, bottom_rgb) -> RasterImage:
    third = SIZE // 3
    pixels = np.zeros((SIZE, SIZE, 3), dtype=np.uint8)
    pixels[:third] = top_rgb
    pixels[third : 2 * third] = center_rgb
    pixels[2 * third :] = bottom_rgb
    return RasterImage(pixels)


def toy_corpus(out: Path) -> int:
    shade = {0: (40, 40, 40), 1: (215, 215, 215)}
    count = 0
    for bottom, center, top in toy_space().all_descriptors():
        img = banded(shade[top], shade[center], shade[bottom])
        write_ppm(out / f"shot-{bottom}{center}{top}.ppm", img)
        count += 1
    return count


PALETTE = [
    (20, 20, 20), (90, 90, 90), (160, 160, 160), (240, 240, 240),
    (220, 40, 30), (40, 200, 60), (40, 70, 220), (230, 220, 50),
    (250, 140, 20), (150, 40, 200), (40, 210, 200), (250, 250, 250),
]


def rgb9_corpus(out: Path, seed: int, count: int = 16) -> int:
    rng = Lcg64(seed)
    for k in range(count):
        colors = [PALETTE[rng.below(len(PALETTE))] for _ in range(3)]
        write_ppm(out / f"photo-{k:03d}.ppm", banded(*colors))
    return count


def main(argv=None) -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", required=True)
    parser.add_argument("--space", choices=["toy", "rgb9"], default="toy")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    n = toy_corpus(out) if args.space == "toy" else rgb9_corpus(out, args.seed)
    print(f"wrote {n} images to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
