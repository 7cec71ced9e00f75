"""Interactive browsing over the overlay.

A session starts from the all-star descriptor and narrows one digit per
step. Each step retrieves a representative sample of document classes via
Sample resolution; every sample entry carries one (position, value) label
per star of the current descriptor, and picking a label fixes that digit.
Sessions are forward-only; restart to change course. Finishing runs Total
resolution for the documents of every remaining denoted class.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .images import Miniature
from .overlay import LocationRecord, NodeId, SimNetwork
from .resolution import StatsRow, account, sample_resolve, total_resolve
from .space import (
    Descriptor,
    WildDescriptor,
    all_star,
    denotes,
    direct_successors,
    render_descriptor,
    render_wild,
)


class InvalidChoiceError(ValueError):
    """Choice targets a fixed digit, an out-of-range value or a finished session."""


@dataclass(frozen=True)
class SampleEntry:
    """One displayed class: a document (or explicit empty marker) plus labels."""

    doc_id: str | None
    descriptor: Descriptor
    miniature: Miniature | None
    labels: tuple[tuple[int, int], ...]

    @property
    def is_empty(self) -> bool:
        return self.doc_id is None


@dataclass
class SessionStats:
    """Cumulative Sample-resolution cost of a session."""

    endpoint_messages: int = 0
    logical_hops: int = 0
    endpoint_nodes: set = field(default_factory=set)

    def add(self, outcome) -> None:
        self.endpoint_messages += outcome.endpoint_messages
        self.logical_hops += outcome.logical_hops
        self.endpoint_nodes.update(ep.node for ep in outcome.endpoints)

    def as_dict(self) -> dict:
        return {
            "endpoint_messages": self.endpoint_messages,
            "logical_hops": self.logical_hops,
            "distinct_endpoint_nodes": len(self.endpoint_nodes),
        }


@dataclass
class BrowseSession:
    session_id: str
    net: SimNetwork
    origin: NodeId
    originator: str
    current: WildDescriptor
    history: list[tuple[int, int]] = field(default_factory=list)
    last_sample: list[SampleEntry] = field(default_factory=list)
    finished: bool = False
    stats: SessionStats = field(default_factory=SessionStats)
    final_stats: StatsRow | None = None
    final_locations: list[tuple[Descriptor, LocationRecord]] = field(default_factory=list)

    @property
    def space(self):
        return self.net.space


def start_session(net: SimNetwork, origin: NodeId | None = None,
                  session_id: str = "s000001", originator: str = "user") -> BrowseSession:
    """New session at the all-star descriptor, with an initial sample fetched."""
    origin = net.first_node if origin is None else origin
    if origin not in net.nodes:
        raise ValueError(f"unknown origin node {origin!r}")
    session = BrowseSession(
        session_id=session_id,
        net=net,
        origin=origin,
        originator=originator,
        current=all_star(net.space),
    )
    _refresh(session)
    return session


def _refresh(session: BrowseSession) -> None:
    outcome = sample_resolve(session.net, session.origin, session.current, session.originator)
    session.stats.add(outcome)
    stars = session.current.star_positions()
    entries: list[SampleEntry] = []
    seen: set[Descriptor] = set()
    for ep in outcome.endpoints:
        if ep.descriptor in seen:  # several leaves may resolve to one class
            continue
        seen.add(ep.descriptor)
        rec = ep.records[0] if ep.records else None
        entries.append(
            SampleEntry(
                doc_id=rec.doc_id if rec else None,
                descriptor=ep.descriptor,
                miniature=rec.miniature if rec else None,
                labels=tuple((p, ep.descriptor[p]) for p in stars),
            )
        )
    session.last_sample = entries


def refresh(session: BrowseSession) -> BrowseSession:
    if session.finished:
        raise InvalidChoiceError("session is finished")
    _refresh(session)
    return session


def choose(session: BrowseSession, position: int, value: int) -> BrowseSession:
    """Fix one star to one value, then refresh the sample."""
    if session.finished:
        raise InvalidChoiceError("session is finished")
    space = session.space
    if not 0 <= position < len(space):
        raise InvalidChoiceError(f"position {position} outside descriptor")
    if position not in session.current.star_positions():
        raise InvalidChoiceError(f"position {position} is already fixed")
    if not 0 <= value < space.radix(position):
        raise InvalidChoiceError(
            f"value {value} outside radix {space.radix(position)} at position {position}"
        )
    session.current = session.current.replace(position, value)
    session.history.append((position, value))
    _refresh(session)
    if not session.current.has_star():
        session.finished = True
    return session


def finish(session: BrowseSession) -> list[LocationRecord]:
    """Total resolution of the current descriptor; allowed at any time."""
    outcome = total_resolve(session.net, session.origin, session.current, session.originator)
    session.final_stats = account(outcome)
    session.finished = True
    session.final_locations = [
        (ep.descriptor, rec) for ep in outcome.endpoints for rec in ep.records
    ]
    return [rec for _, rec in session.final_locations]


def sample_is_sufficient(session: BrowseSession) -> bool:
    """True iff every direct successor of the current descriptor is
    illustrated by some non-empty sample entry."""
    space = session.space
    for succ in direct_successors(space, session.current):
        if not any(
            not entry.is_empty and denotes(space, succ, entry.descriptor)
            for entry in session.last_sample
        ):
            return False
    return True


def replay_history(space, history) -> WildDescriptor:
    """Apply a (position, value) list to the all-star descriptor."""
    d = all_star(space)
    for position, value in history:
        d = d.replace(position, value)
    return d


# ---------------------------------------------------------------------------
# Canonical state rendering (shared verbatim by the CLI and the gateway)
# ---------------------------------------------------------------------------


def miniature_url(doc_id: str) -> str:
    return f"/docs/{doc_id}/miniature"


def state_dict(session: BrowseSession) -> dict:
    return {
        "session_id": session.session_id,
        "current": render_wild(session.space, session.current),
        "finished": session.finished,
        "history": [[p, v] for p, v in session.history],
        "stats": session.stats.as_dict(),
        "final_stats": session.final_stats.as_dict() if session.final_stats else None,
        "sample": [
            {
                "doc_id": entry.doc_id,
                "descriptor": render_descriptor(session.space, entry.descriptor),
                "labels": [[p, v] for p, v in entry.labels],
                "miniature_url": miniature_url(entry.doc_id) if entry.doc_id else None,
            }
            for entry in session.last_sample
        ],
    }


def state_json(session: BrowseSession) -> str:
    return json.dumps(state_dict(session), sort_keys=True, separators=(",", ":"))


def locations_dict(session: BrowseSession) -> dict:
    return {
        "locations": [
            {
                "doc_id": rec.doc_id,
                "descriptor": render_descriptor(session.space, e),
                "owner": rec.owner,
            }
            for e, rec in session.final_locations
        ],
        "stats": session.final_stats.as_dict() if session.final_stats else None,
    }
