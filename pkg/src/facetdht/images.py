"""Image ingestion: PPM I/O, band partition, descriptor extraction, miniatures.

Only binary PPM (P6, maxval 255) is supported; it is bit-exact and needs no
decoder dependency. Extraction quantizers:

* toy preset  -- per band, mean brightness (sum of R+G+B over the band,
  divided by 3*pixels, truncated); digit 0 below 128, else 1.
* rgb9 preset -- per band and channel, truncated mean divided by 64,
  clamped to 3.

Bands are horizontal thirds: top rows [0, h/3), center [h/3, 2h/3), bottom
the rest (integer division, remainder rows go to the bottom band). Digit
order within a descriptor is bottom, center, top.
"""

from __future__ import annotations

import base64
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .space import Descriptor, DescriptorSpace

MINIATURE_SIZE = 64


class ImageError(ValueError):
    """Malformed PPM data or unusable image dimensions."""


@dataclass(frozen=True)
class RasterImage:
    """Row-major 8-bit RGB raster; at least 3x3 so each band is non-empty."""

    pixels: np.ndarray  # shape (height, width, 3), dtype uint8

    def __post_init__(self):
        p = self.pixels
        if p.ndim != 3 or p.shape[2] != 3 or p.dtype != np.uint8:
            raise ImageError(f"expected (h, w, 3) uint8 pixels, got {p.shape} {p.dtype}")
        if p.shape[0] < 3 or p.shape[1] < 3:
            raise ImageError(f"image {p.shape[1]}x{p.shape[0]} too small, need at least 3x3")

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])


# ---------------------------------------------------------------------------
# PPM P6
# ---------------------------------------------------------------------------


def _parse_ppm_header(data: bytes) -> tuple[int, int, int]:
    """Return (width, height, offset of raster data)."""
    if not data.startswith(b"P6"):
        raise ImageError("not a P6 PPM file")
    pos = 2
    fields: list[int] = []
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":  # comment to end of line
            while pos < len(data) and data[pos] not in (0x0A, 0x0D):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise ImageError(f"bad PPM header token {token!r}")
        fields.append(int(token))
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise ImageError("missing whitespace after PPM maxval")
    pos += 1
    width, height, maxval = fields
    if maxval != 255:
        raise ImageError(f"unsupported PPM maxval {maxval}, need 255")
    return width, height, pos


def parse_ppm(data: bytes) -> RasterImage:
    width, height, offset = _parse_ppm_header(data)
    need = width * height * 3
    raster = data[offset : offset + need]
    if len(raster) != need:
        raise ImageError(f"truncated PPM raster: have {len(raster)} bytes, need {need}")
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3)
    return RasterImage(pixels.copy())


def ppm_bytes(pixels: np.ndarray) -> bytes:
    h, w = pixels.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + pixels.astype(np.uint8).tobytes()


def read_ppm(path: str | Path) -> RasterImage:
    return parse_ppm(Path(path).read_bytes())


def write_ppm(path: str | Path, image: RasterImage) -> None:
    Path(path).write_bytes(ppm_bytes(image.pixels))


# ---------------------------------------------------------------------------
# Area partition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AreaPartition:
    """Flat pixel-index sets of the three bands (row-major indexing)."""

    bottom: np.ndarray
    center: np.ndarray
    top: np.ndarray


def band_rows(height: int) -> tuple[range, range, range]:
    """(top, center, bottom) row ranges; remainder rows land in the bottom band."""
    third = height // 3
    return range(0, third), range(third, 2 * third), range(2 * third, height)


def partition(image: RasterImage) -> AreaPartition:
    top, center, bottom = band_rows(image.height)
    w = image.width

    def flat(rows: range) -> np.ndarray:
        return np.arange(rows.start * w, rows.stop * w, dtype=np.int64)

    return AreaPartition(bottom=flat(bottom), center=flat(center), top=flat(top))


# ---------------------------------------------------------------------------
# Descriptor extraction
# ---------------------------------------------------------------------------


def _band_pixels(image: RasterImage):
    """Pixel blocks of the bottom, center and top bands, in digit order."""
    top, center, bottom = band_rows(image.height)
    p = image.pixels
    return (
        p[bottom.start : bottom.stop],
        p[center.start : center.stop],
        p[top.start : top.stop],
    )


def extract_toy(image: RasterImage) -> Descriptor:
    """3 binary digits: bottom, center, top band brightness thresholded at 128."""
    digits = []
    for band in _band_pixels(image):
        total = int(band.astype(np.int64).sum())
        brightness = total // (3 * band.shape[0] * band.shape[1])
        digits.append(0 if brightness < 128 else 1)
    return tuple(digits)


def extract_rgb9(image: RasterImage) -> Descriptor:
    """9 digits: truncated R,G,B channel means per band, quantized by 64."""
    digits = []
    for band in _band_pixels(image):
        count = band.shape[0] * band.shape[1]
        for chan in range(3):
            mean = int(band[:, :, chan].astype(np.int64).sum()) // count
            digits.append(min(mean // 64, 3))
    return tuple(digits)


EXTRACTORS = {"toy": extract_toy, "rgb9": extract_rgb9}


def extract_descriptor(image: RasterImage, space: DescriptorSpace) -> Descriptor:
    try:
        extractor = EXTRACTORS[space.name]
    except KeyError:
        raise ImageError(f"no extractor for space {space.name!r}") from None
    return space.check_descriptor(extractor(image))


# ---------------------------------------------------------------------------
# Miniatures and document records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Miniature:
    """64x64 preview raster published alongside a document."""

    doc_id: str
    pixels: np.ndarray  # (64, 64, 3) uint8

    def __post_init__(self):
        if self.pixels.shape != (MINIATURE_SIZE, MINIATURE_SIZE, 3):
            raise ImageError(f"miniature must be 64x64x3, got {self.pixels.shape}")

    def to_ppm(self) -> bytes:
        return ppm_bytes(self.pixels)

    def to_b64(self) -> str:
        return base64.b64encode(self.to_ppm()).decode("ascii")

    @classmethod
    def from_b64(cls, doc_id: str, data: str) -> "Miniature":
        return cls(doc_id, parse_ppm(base64.b64decode(data)).pixels)


def make_miniature(image: RasterImage, doc_id: str = "") -> Miniature:
    """Nearest-neighbor downscale sampling source pixel floor(dst * src/64)."""
    cols = (np.arange(MINIATURE_SIZE) * image.width) // MINIATURE_SIZE
    rows = (np.arange(MINIATURE_SIZE) * image.height) // MINIATURE_SIZE
    return Miniature(doc_id, image.pixels[np.ix_(rows, cols)].copy())


@dataclass(frozen=True)
class DocumentRecord:
    doc_id: str
    descriptor: Descriptor
    owner: str
    miniature: Miniature
    source: str


@dataclass
class IngestResult:
    records: list[DocumentRecord]
    errors: list[tuple[str, str]]  # (file name, message)


def ingest_directory(path: str | Path, space: DescriptorSpace) -> IngestResult:
    """One record per readable .ppm file, lexicographic file order.

    Malformed files are collected as (name, message) pairs and skipped;
    owners are left blank for the caller to assign.
    """
    result = IngestResult(records=[], errors=[])
    for file in sorted(Path(path).glob("*.ppm"), key=lambda p: p.name):
        try:
            image = read_ppm(file)
            descriptor = extract_descriptor(image, space)
        except (ImageError, OSError) as exc:
            result.errors.append((file.name, str(exc)))
            continue
        doc_id = file.stem
        result.records.append(
            DocumentRecord(
                doc_id=doc_id,
                descriptor=descriptor,
                owner="",
                miniature=make_miniature(image, doc_id),
                source=str(file),
            )
        )
    return result
