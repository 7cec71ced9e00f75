"""Mixed-radix descriptor spaces, wildcard descriptors and the browsing graph.

A descriptor is a fixed-length vector of quantized document properties; each
position ("digit") ranges over a small ordered set of values. Descriptors
double as hash keys and logical addresses of the overlay. Wildcard
descriptors additionally allow two symbols per digit:

* ``STAR``   -- the digit is unfixed and stands for all of its values,
* ``BOTTOM`` -- routing-only placeholder meaning "any single value"; it never
  appears in user-facing descriptors, only inside in-flight messages.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class SpaceError(ValueError):
    """Descriptor does not fit the space (wrong length, digit out of range)."""


class WildcardParseError(SpaceError):
    """Text form of a descriptor could not be parsed."""


class _Symbol:
    # Singleton wildcard marker; identity comparisons only.
    __slots__ = ("_text",)

    def __init__(self, text: str):
        self._text = text

    def __repr__(self) -> str:
        return self._text


#: Unfixed digit, denotes every value of its range.
STAR = _Symbol("*")
#: Routing-only "any one value" placeholder, rendered as '.' in text form.
BOTTOM = _Symbol(".")

#: A full (wildcard-free) descriptor; also used for node identifiers.
Descriptor = tuple


@dataclass(frozen=True)
class DigitRange:
    """One descriptor position: a named property and its ordered value labels."""

    property: str
    values: tuple[str, ...]

    def __post_init__(self):
        if len(self.values) < 2:
            raise SpaceError(f"digit {self.property!r} needs at least 2 values")
        if len(set(self.values)) != len(self.values):
            raise SpaceError(f"digit {self.property!r} has duplicate value labels")

    @property
    def radix(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DescriptorSpace:
    """Ordered list of digit ranges defining the key space and browsing graph."""

    name: str
    digits: tuple[DigitRange, ...]

    def __post_init__(self):
        if len(self.digits) < 1:
            raise SpaceError("a descriptor space needs at least one digit")

    def __len__(self) -> int:
        return len(self.digits)

    def radix(self, i: int) -> int:
        return self.digits[i].radix

    @property
    def radices(self) -> tuple[int, ...]:
        return tuple(r.radix for r in self.digits)

    @property
    def size(self) -> int:
        """Number of full descriptors (= number of logical addresses)."""
        n = 1
        for r in self.radices:
            n *= r
        return n

    # -- validation ---------------------------------------------------------

    def check_descriptor(self, e: Sequence[int]) -> Descriptor:
        if len(e) != len(self):
            raise SpaceError(f"descriptor length {len(e)} != space length {len(self)}")
        for i, v in enumerate(e):
            if not isinstance(v, int) or not 0 <= v < self.radix(i):
                raise SpaceError(f"digit {v!r} at position {i} outside radix {self.radix(i)}")
        return tuple(e)

    def check_wild(self, d: "WildDescriptor", allow_bottom: bool = False) -> "WildDescriptor":
        if len(d) != len(self):
            raise SpaceError(f"descriptor length {len(d)} != space length {len(self)}")
        for i, x in enumerate(d.digits):
            if x is STAR:
                continue
            if x is BOTTOM:
                if not allow_bottom:
                    raise SpaceError(f"bottom wildcard at position {i} not allowed here")
                continue
            if not isinstance(x, int) or not 0 <= x < self.radix(i):
                raise SpaceError(f"digit {x!r} at position {i} outside radix {self.radix(i)}")
        return d

    # -- enumeration / indexing ---------------------------------------------

    def all_descriptors(self) -> Iterator[Descriptor]:
        """All full descriptors in ascending digit-lexicographic order."""
        return itertools.product(*(range(r) for r in self.radices))

    def index_to_digits(self, index: int) -> Descriptor:
        """Mixed-radix positional decoding, leftmost digit most significant."""
        if not 0 <= index < self.size:
            raise SpaceError(f"index {index} outside key space of size {self.size}")
        out = []
        for r in reversed(self.radices):
            out.append(index % r)
            index //= r
        return tuple(reversed(out))

    def digits_to_index(self, e: Sequence[int]) -> int:
        e = self.check_descriptor(e)
        index = 0
        for v, r in zip(e, self.radices):
            index = index * r + v
        return index

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "digits": [{"property": d.property, "values": list(d.values)} for d in self.digits],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "DescriptorSpace":
        return cls(
            name=data["name"],
            digits=tuple(DigitRange(d["property"], tuple(d["values"])) for d in data["digits"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "DescriptorSpace":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class WildDescriptor:
    """Digit string over {value, STAR, BOTTOM}; the routing and browsing currency."""

    digits: tuple

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, i: int):
        return self.digits[i]

    def star_positions(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.digits) if x is STAR)

    def bottom_positions(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.digits) if x is BOTTOM)

    def has_star(self) -> bool:
        return any(x is STAR for x in self.digits)

    def has_bottom(self) -> bool:
        return any(x is BOTTOM for x in self.digits)

    def is_full(self) -> bool:
        return all(isinstance(x, int) for x in self.digits)

    def to_descriptor(self) -> Descriptor:
        if not self.is_full():
            raise SpaceError(f"{self.digits!r} still contains wildcards")
        return self.digits

    def replace(self, position: int, value) -> "WildDescriptor":
        d = list(self.digits)
        d[position] = value
        return WildDescriptor(tuple(d))

    @classmethod
    def from_descriptor(cls, e: Sequence[int]) -> "WildDescriptor":
        return cls(tuple(e))


def all_star(space: DescriptorSpace) -> WildDescriptor:
    return WildDescriptor((STAR,) * len(space))


# ---------------------------------------------------------------------------
# Denotation and the browsing graph
# ---------------------------------------------------------------------------


def denotes(space: DescriptorSpace, d: WildDescriptor, e: Sequence[int]) -> bool:
    """True iff the full descriptor ``e`` is an instantiation of ``d``'s stars."""
    space.check_wild(d)
    e = space.check_descriptor(e)
    return all(x is STAR or x == e[i] for i, x in enumerate(d.digits))


def enumerate_denoted(space: DescriptorSpace, d: WildDescriptor) -> list[Descriptor]:
    """All full descriptors denoted by ``d``, ascending digit-lexicographic."""
    space.check_wild(d)
    choices = [
        range(space.radix(i)) if x is STAR else (x,) for i, x in enumerate(d.digits)
    ]
    return [tuple(e) for e in itertools.product(*choices)]


def direct_successors(space: DescriptorSpace, d: WildDescriptor) -> list[WildDescriptor]:
    """Browsing-graph edges out of ``d``: fix exactly one star to one value.

    Deterministic order: ascending star position, then ascending value.
    """
    space.check_wild(d)
    out = []
    for i in d.star_positions():
        for v in range(space.radix(i)):
            out.append(d.replace(i, v))
    return out


def reachable(space: DescriptorSpace, d: WildDescriptor, e: Sequence[int]) -> bool:
    """True iff a path of direct-successor steps leads from ``d`` down to ``e``.

    Walks the browsing graph fixing the leftmost star at each step, pruning
    branches whose already-fixed digits disagree with ``e``.
    """
    space.check_wild(d)
    e = space.check_descriptor(e)

    def walk(cur: tuple) -> bool:
        first_star = None
        for i, x in enumerate(cur):
            if x is STAR:
                if first_star is None:
                    first_star = i
            elif x != e[i]:
                return False
        if first_star is None:
            return True
        i = first_star
        return any(walk(cur[:i] + (v,) + cur[i + 1 :]) for v in range(space.radix(i)))

    return walk(d.digits)


def is_representative(space: DescriptorSpace, d: WildDescriptor, S: Iterable[Sequence[int]]) -> bool:
    """Representative set check for ``d``.

    (a) every member matches all fixed digits of ``d``;
    (b) every star position is covered with every one of its values.
    """
    space.check_wild(d)
    members = [space.check_descriptor(e) for e in S]
    for i, x in enumerate(d.digits):
        if x is STAR:
            seen = {e[i] for e in members}
            if not all(v in seen for v in range(space.radix(i))):
                return False
        else:
            if not all(e[i] == x for e in members):
                return False
    return True


# ---------------------------------------------------------------------------
# Bit-exact key packing
# ---------------------------------------------------------------------------


def _field_widths(space: DescriptorSpace) -> list[int]:
    return [(r - 1).bit_length() for r in space.radices]


def key_bits(space: DescriptorSpace) -> int:
    """Total packed-key width: sum of ceil(log2 radix) per digit."""
    return sum(_field_widths(space))


def encode_key(space: DescriptorSpace, e: Sequence[int]) -> int:
    """Pack a full descriptor into an unsigned integer, big-endian digit order."""
    e = space.check_descriptor(e)
    key = 0
    for v, w in zip(e, _field_widths(space)):
        key = (key << w) | v
    return key


def decode_key(space: DescriptorSpace, key: int) -> Descriptor:
    """Inverse of :func:`encode_key`; rejects out-of-range digit fields."""
    total = key_bits(space)
    if not 0 <= key < (1 << total):
        raise SpaceError(f"key {key} outside {total}-bit range")
    out = []
    remaining = total
    for i, w in enumerate(_field_widths(space)):
        remaining -= w
        v = (key >> remaining) & ((1 << w) - 1)
        if v >= space.radix(i):
            raise SpaceError(f"field {v} at position {i} outside radix {space.radix(i)}")
        out.append(v)
    return tuple(out)


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------


def _compact_text(space: DescriptorSpace) -> bool:
    # One character per digit only works while every value fits a single char.
    return all(r <= 10 for r in space.radices)


def render_wild(space: DescriptorSpace, d: WildDescriptor) -> str:
    """Canonical display form: digits, '*' for star, '.' for bottom.

    Spaces with a radix above 10 fall back to a comma-separated form.
    """
    space.check_wild(d, allow_bottom=True)
    parts = ["*" if x is STAR else "." if x is BOTTOM else str(x) for x in d.digits]
    return "".join(parts) if _compact_text(space) else ",".join(parts)


def parse_wild(space: DescriptorSpace, s: str) -> WildDescriptor:
    """Inverse of :func:`render_wild`."""
    tokens = list(s) if _compact_text(space) else s.split(",")
    if len(tokens) != len(space):
        raise WildcardParseError(f"{s!r}: expected {len(space)} digits, got {len(tokens)}")
    digits = []
    for i, t in enumerate(tokens):
        if t == "*":
            digits.append(STAR)
        elif t == ".":
            digits.append(BOTTOM)
        else:
            try:
                v = int(t)
            except ValueError:
                raise WildcardParseError(f"{s!r}: invalid digit {t!r} at position {i}") from None
            if not 0 <= v < space.radix(i):
                raise WildcardParseError(
                    f"{s!r}: digit {v} at position {i} outside radix {space.radix(i)}"
                )
            digits.append(v)
    return WildDescriptor(tuple(digits))


def render_descriptor(space: DescriptorSpace, e: Sequence[int]) -> str:
    return render_wild(space, WildDescriptor.from_descriptor(space.check_descriptor(e)))


def parse_descriptor(space: DescriptorSpace, s: str) -> Descriptor:
    d = parse_wild(space, s)
    if not d.is_full():
        raise WildcardParseError(f"{s!r}: wildcards not allowed in a full descriptor")
    return d.to_descriptor()


# ---------------------------------------------------------------------------
# Built-in presets
# ---------------------------------------------------------------------------


def toy_space() -> DescriptorSpace:
    """3 binary digits: mean brightness of the bottom, center and top bands."""
    return DescriptorSpace(
        name="toy",
        digits=tuple(
            DigitRange(area, ("dark", "bright")) for area in ("bottom", "center", "top")
        ),
    )


def rgb9_space() -> DescriptorSpace:
    """9 digits of radix 4: R,G,B channel means of the three bands (18-bit keys)."""
    return DescriptorSpace(
        name="rgb9",
        digits=tuple(
            DigitRange(f"{area}-{chan}", ("0", "1", "2", "3"))
            for area in ("bottom", "center", "top")
            for chan in ("red", "green", "blue")
        ),
    )


PRESETS = {"toy": toy_space, "rgb9": rgb9_space}


def preset(name: str) -> DescriptorSpace:
    try:
        return PRESETS[name]()
    except KeyError:
        raise SpaceError(f"unknown space preset {name!r}; have {sorted(PRESETS)}") from None
