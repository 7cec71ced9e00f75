import numpy as np
import pytest

from conftest import hband_image, solid_image
from facetdht.images import (
    ImageError,
    Miniature,
    RasterImage,
    band_rows,
    extract_rgb9,
    extract_toy,
    ingest_directory,
    make_miniature,
    parse_ppm,
    partition,
    ppm_bytes,
    read_ppm,
    write_ppm,
)
from facetdht.rng import Lcg64

BLACK = (0, 0, 0)
WHITE = (255, 255, 255)


# ---------------------------------------------------------------------------
# partition
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "height,expected",
    [
        (9, (3, 3, 3)),
        (10, (3, 3, 4)),
        (3, (1, 1, 1)),
        (4, (1, 1, 2)),
    ],
)
def test_band_row_counts(height, expected):
    top, center, bottom = band_rows(height)
    assert (len(top), len(center), len(bottom)) == expected


def test_partition_disjoint_and_covering_fuzz():
    rng = Lcg64(21)
    for _ in range(20):
        w = 3 + rng.below(498)
        h = 3 + rng.below(498)
        img = solid_image(BLACK, width=w, height=h)
        p = partition(img)
        merged = np.concatenate([p.bottom, p.center, p.top])
        assert len(merged) == w * h
        assert len(np.unique(merged)) == w * h


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------


def test_extract_toy_black_and_white():
    assert extract_toy(solid_image(BLACK)) == (0, 0, 0)
    assert extract_toy(solid_image(WHITE)) == (1, 1, 1)


def test_extract_toy_half_split_pinned():
    # 4x4, top half white, bottom half black; bands are rows [0,1) / [1,2) / [2,4),
    # so the center band is the white row 1: digits (bottom, center, top) = 011
    pixels = np.zeros((4, 4, 3), dtype=np.uint8)
    pixels[:2] = 255
    assert extract_toy(RasterImage(pixels)) == (0, 1, 1)


def test_extract_toy_threshold_edge():
    assert extract_toy(solid_image((127, 127, 127))) == (0, 0, 0)
    assert extract_toy(solid_image((128, 128, 128))) == (1, 1, 1)


def test_extract_rgb9_solid():
    assert extract_rgb9(solid_image(WHITE)) == (3,) * 9
    assert extract_rgb9(solid_image(BLACK)) == (0,) * 9


def test_extract_rgb9_three_bands():
    img = hband_image(top_rgb=(255, 0, 0), center_rgb=(0, 255, 0), bottom_rgb=(0, 0, 255))
    assert extract_rgb9(img) == (0, 0, 3, 0, 3, 0, 3, 0, 0)


def test_extract_rgb9_quantizer_steps():
    assert extract_rgb9(solid_image((63, 64, 191))) == (0, 1, 2) * 3


def test_extract_rgb9_grayscale_has_equal_channels():
    rng = Lcg64(22)
    for _ in range(10):
        shade = rng.below(256)
        digits = extract_rgb9(solid_image((shade, shade, shade)))
        for area in range(3):
            r, g, b = digits[3 * area : 3 * area + 3]
            assert r == g == b


def test_extracted_digits_within_radix_fuzz(toy, rgb9):
    rng = Lcg64(23)
    for _ in range(10):
        w, h = 3 + rng.below(40), 3 + rng.below(40)
        raw = np.frombuffer(
            bytes(rng.below(256) for _ in range(w * h * 3)), dtype=np.uint8
        ).reshape(h, w, 3)
        img = RasterImage(raw.copy())
        toy.check_descriptor(extract_toy(img))
        rgb9.check_descriptor(extract_rgb9(img))


def test_extraction_deterministic():
    img = hband_image((10, 200, 30), (5, 5, 5), (250, 1, 2))
    again = RasterImage(img.pixels.copy())
    assert extract_rgb9(img) == extract_rgb9(again)
    assert np.array_equal(make_miniature(img).pixels, make_miniature(again).pixels)


# ---------------------------------------------------------------------------
# miniatures
# ---------------------------------------------------------------------------


def test_miniature_identity_at_64():
    rng = Lcg64(24)
    raw = np.frombuffer(
        bytes(rng.below(256) for _ in range(64 * 64 * 3)), dtype=np.uint8
    ).reshape(64, 64, 3)
    img = RasterImage(raw.copy())
    assert np.array_equal(make_miniature(img).pixels, img.pixels)


def test_miniature_exact_double():
    rng = Lcg64(25)
    raw = np.frombuffer(
        bytes(rng.below(256) for _ in range(128 * 128 * 3)), dtype=np.uint8
    ).reshape(128, 128, 3)
    img = RasterImage(raw.copy())
    mini = make_miniature(img)
    for x, y in [(0, 0), (5, 9), (63, 63), (31, 7)]:
        assert tuple(mini.pixels[y, x]) == tuple(img.pixels[2 * y, 2 * x])


def test_miniature_rectangular_source_corners():
    rng = Lcg64(26)
    raw = np.frombuffer(
        bytes(rng.below(256) for _ in range(100 * 60 * 3)), dtype=np.uint8
    ).reshape(60, 100, 3)
    img = RasterImage(raw.copy())
    mini = make_miniature(img)
    for x, y in [(0, 0), (63, 0), (0, 63), (63, 63)]:
        assert tuple(mini.pixels[y, x]) == tuple(img.pixels[(60 * y) // 64, (100 * x) // 64])


def test_miniature_shape_enforced():
    with pytest.raises(ImageError):
        Miniature("d", np.zeros((32, 32, 3), dtype=np.uint8))


def test_miniature_b64_roundtrip():
    mini = make_miniature(solid_image((9, 8, 7)), "doc")
    back = Miniature.from_b64("doc", mini.to_b64())
    assert np.array_equal(back.pixels, mini.pixels)


# ---------------------------------------------------------------------------
# PPM I/O
# ---------------------------------------------------------------------------


def test_ppm_roundtrip(tmp_path):
    img = hband_image((1, 2, 3), (4, 5, 6), (7, 8, 9))
    path = tmp_path / "img.ppm"
    write_ppm(path, img)
    back = read_ppm(path)
    assert np.array_equal(back.pixels, img.pixels)


def test_ppm_header_comments():
    img = parse_ppm(b"P6 # comment\n# another\n3 3\n255\n" + bytes(27))
    assert img.width == 3 and img.height == 3


@pytest.mark.parametrize(
    "data",
    [
        b"P5\n3 3\n255\n" + bytes(27),        # wrong magic
        b"P6\n3 3\n65535\n" + bytes(54),      # unsupported maxval
        b"P6\n3 3\n255\n" + bytes(5),         # truncated raster
        b"P6\n3 x\n255\n" + bytes(27),        # non-numeric header
    ],
)
def test_ppm_rejects_malformed(data):
    with pytest.raises(ImageError):
        parse_ppm(data)


def test_raster_invariants():
    with pytest.raises(ImageError):
        RasterImage(np.zeros((2, 10, 3), dtype=np.uint8))
    with pytest.raises(ImageError):
        RasterImage(np.zeros((10, 10, 3), dtype=np.int32))


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------


def test_ingest_empty_directory(tmp_path, toy):
    result = ingest_directory(tmp_path, toy)
    assert result.records == [] and result.errors == []


def test_ingest_black_and_white(tmp_path, toy):
    write_ppm(tmp_path / "a.ppm", solid_image(BLACK))
    write_ppm(tmp_path / "b.ppm", solid_image(WHITE))
    result = ingest_directory(tmp_path, toy)
    assert [(r.doc_id, r.descriptor) for r in result.records] == [
        ("a", (0, 0, 0)),
        ("b", (1, 1, 1)),
    ]
    assert result.errors == []
    assert all(r.miniature.pixels.shape == (64, 64, 3) for r in result.records)


def test_ingest_collects_errors_and_continues(tmp_path, toy):
    (tmp_path / "bad.ppm").write_bytes(b"P6\n3 3\n255\n abc")
    result = ingest_directory(tmp_path, toy)
    assert result.records == []
    assert len(result.errors) == 1 and result.errors[0][0] == "bad.ppm"


def test_ingest_order_is_lexicographic(tmp_path, toy):
    for name in ["zz.ppm", "aa.ppm", "mm.ppm"]:
        write_ppm(tmp_path / name, solid_image(BLACK))
    result = ingest_directory(tmp_path, toy)
    assert [r.doc_id for r in result.records] == ["aa", "mm", "zz"]
