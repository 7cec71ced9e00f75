"""Self-contained toy gateway for frontend tests.

Builds a seeded 8-node toy network, publishes one banded image per
brightness class, writes net.json and manifest.json into --workdir (tests
replay the very same snapshot through the CLI), then serves the gateway.
"""

import argparse
from pathlib import Path

import numpy as np
import uvicorn

from facetdht.cli import main as cli_main
from facetdht.gateway import create_app
from facetdht.images import RasterImage, write_ppm
from facetdht.overlay import SimNetwork

SHADE = {0: (40, 40, 40), 1: (215, 215, 215)}


def banded(top, center, bottom, size=48) -> RasterImage:
    third = size // 3
    pixels = np.zeros((size, size, 3), dtype=np.uint8)
    pixels[:third] = top
    pixels[third : 2 * third] = center
    pixels[2 * third :] = bottom
    return RasterImage(pixels)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--port", type=int, required=True)
    parser.add_argument("--workdir", required=True)
    args = parser.parse_args()

    work = Path(args.workdir)
    corpus = work / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)
    for b in (0, 1):
        for c in (0, 1):
            for t in (0, 1):
                write_ppm(corpus / f"shot-{b}{c}{t}.ppm", banded(SHADE[t], SHADE[c], SHADE[b]))

    net_path = work / "net.json"
    assert cli_main(["build-net", "--space", "toy", "--nodes", "8", "--seed", "3",
                     "--out", str(net_path)]) == 0
    assert cli_main(["ingest", "--dir", str(corpus), "--space", "toy", "--net", str(net_path),
                     "--manifest", str(work / "manifest.json")]) == 0

    app = create_app(SimNetwork.from_json(net_path.read_text()))
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
