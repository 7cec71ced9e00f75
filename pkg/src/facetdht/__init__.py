"""Structured P2P overlay with combinatorial descriptor keys and browsing.

Hash keys are fixed-length mixed-radix descriptors extracted from documents;
star wildcards turn a key into a class of keys. The overlay simulator routes
plain keys Plaxton-style and resolves wildcard keys in two modes: Total
(every denoted class) and Sample (a representative subset at linear cost).
On top sits an interactive browsing loop, an HTTP gateway and a CLI harness.
"""

from .space import (
    BOTTOM,
    STAR,
    DescriptorSpace,
    DigitRange,
    SpaceError,
    WildDescriptor,
    WildcardParseError,
    all_star,
    decode_key,
    denotes,
    direct_successors,
    encode_key,
    enumerate_denoted,
    is_representative,
    key_bits,
    parse_descriptor,
    parse_wild,
    preset,
    reachable,
    render_descriptor,
    render_wild,
    rgb9_space,
    toy_space,
)
from .images import (
    DocumentRecord,
    ImageError,
    IngestResult,
    Miniature,
    RasterImage,
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
from .overlay import (
    DuplicateDocumentError,
    LocationRecord,
    OverlayError,
    SimNetwork,
    build_network,
)
from .resolution import (
    Endpoint,
    ResolutionMessage,
    ResolutionOutcome,
    StatsRow,
    account,
    expand_sample_star,
    expand_total_star,
    sample_resolve,
    total_resolve,
)
from .browse import (
    BrowseSession,
    InvalidChoiceError,
    SampleEntry,
    choose,
    finish,
    refresh,
    replay_history,
    sample_is_sufficient,
    start_session,
    state_dict,
    state_json,
)

__version__ = "0.1.0"
