import numpy as np
import pytest

from facetdht.images import Miniature, RasterImage
from facetdht.overlay import SimNetwork, build_network
from facetdht.rng import Lcg64
from facetdht.space import STAR, WildDescriptor, render_descriptor, rgb9_space, toy_space


@pytest.fixture(scope="session")
def toy():
    return toy_space()


@pytest.fixture(scope="session")
def rgb9():
    return rgb9_space()


@pytest.fixture(scope="session")
def rgb9_net(rgb9):
    """The reference 256-node network reused across randomized suites."""
    return build_network(rgb9, 256, 42)


@pytest.fixture()
def toy_net(toy):
    return build_network(toy, 8, 7)


def solid_image(rgb, width=12, height=12) -> RasterImage:
    pixels = np.zeros((height, width, 3), dtype=np.uint8)
    pixels[:, :] = rgb
    return RasterImage(pixels)


def hband_image(top_rgb, center_rgb, bottom_rgb, width=9, height=9) -> RasterImage:
    """Exact horizontal thirds (height must be divisible by 3)."""
    assert height % 3 == 0
    third = height // 3
    pixels = np.zeros((height, width, 3), dtype=np.uint8)
    pixels[:third] = top_rgb
    pixels[third : 2 * third] = center_rgb
    pixels[2 * third :] = bottom_rgb
    return RasterImage(pixels)


def blank_miniature(doc_id: str, shade: int = 0) -> Miniature:
    return Miniature(doc_id, np.full((64, 64, 3), shade, dtype=np.uint8))


def publish_all_classes(net: SimNetwork, skip=()) -> None:
    """One document per key-space class, except the descriptors in ``skip``."""
    for e in net.space.all_descriptors():
        if e in skip:
            continue
        text = render_descriptor(net.space, e)
        net.publish("doc-" + text, e, "peer-" + text, blank_miniature("doc-" + text))


def random_descriptor(space, rng: Lcg64):
    return space.index_to_digits(rng.below(space.size))


def random_wild(space, rng: Lcg64, stars: int) -> WildDescriptor:
    base = random_descriptor(space, rng)
    star_at = set(rng.distinct_below(len(space), stars))
    return WildDescriptor(
        tuple(STAR if i in star_at else base[i] for i in range(len(space)))
    )
