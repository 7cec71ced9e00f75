"""Wildcard routing over the overlay: Total and Sample resolution.

Total resolution reaches the responsible node of every descriptor denoted by
the query; the number of endpoint messages is the product of the star
radices. Sample resolution reaches a representative subset only: expanding a
star at position i spawns one message per value (with every other star
demoted to a bottom wildcard) plus one continuation message with position i
itself demoted to bottom; a bottom digit is instantiated to the current
node's own digit and routed to self at zero hop cost. That caps the fanout
at 1 + sum of the star radices while still covering every value of every
star position.

Messages expand depth-first, values ascending, bottom continuation last;
endpoint order is therefore deterministic for a fixed network and query.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .overlay import LocationRecord, NodeId, SimNetwork
from .space import (
    BOTTOM,
    STAR,
    Descriptor,
    DescriptorSpace,
    WildDescriptor,
    render_descriptor,
    render_wild,
)

TOTAL = "Total"
SAMPLE = "Sample"


@dataclass(frozen=True)
class ResolutionMessage:
    """In-flight routing state: positions below ``i`` are already resolved."""

    d: WildDescriptor
    mode: str
    originator: str
    i: int


@dataclass
class TraceNode:
    """One processing step of one message at one node."""

    message: ResolutionMessage
    node: NodeId
    children: list["TraceNode"] = field(default_factory=list)

    def to_json_dict(self, space: DescriptorSpace) -> dict:
        return {
            "msg": {
                "d": render_wild(space, self.message.d),
                "mode": self.message.mode,
                "i": self.message.i,
            },
            "node": render_descriptor(space, self.node),
            "children": [c.to_json_dict(space) for c in self.children],
        }


@dataclass(frozen=True)
class Endpoint:
    """A fully resolved message delivered at a responsible node.

    ``records`` holds the full store list in Total mode and at most one
    record in Sample mode; an empty tuple is the explicit empty-class marker.
    """

    node: NodeId
    descriptor: Descriptor
    records: tuple[LocationRecord, ...]


@dataclass
class ResolutionOutcome:
    mode: str
    query: WildDescriptor
    originator: str
    endpoints: list[Endpoint]
    logical_hops: int
    endpoint_messages: int
    trace: TraceNode

    def endpoint_descriptors(self) -> list[Descriptor]:
        return [ep.descriptor for ep in self.endpoints]

    def trace_json(self, space: DescriptorSpace) -> str:
        return json.dumps(self.trace.to_json_dict(space), sort_keys=True)


@dataclass(frozen=True)
class StatsRow:
    endpoint_messages: int
    logical_hops: int
    distinct_endpoint_nodes: int

    def as_dict(self) -> dict:
        return {
            "endpoint_messages": self.endpoint_messages,
            "logical_hops": self.logical_hops,
            "distinct_endpoint_nodes": self.distinct_endpoint_nodes,
        }


def account(outcome: ResolutionOutcome) -> StatsRow:
    return StatsRow(
        endpoint_messages=outcome.endpoint_messages,
        logical_hops=outcome.logical_hops,
        distinct_endpoint_nodes=len({ep.node for ep in outcome.endpoints}),
    )


# ---------------------------------------------------------------------------
# Star expansion rules
# ---------------------------------------------------------------------------


def expand_total_star(space: DescriptorSpace, d: WildDescriptor, i: int) -> list[WildDescriptor]:
    """Total mode: one descriptor per value of the digit at ``i``."""
    return [d.replace(i, v) for v in range(space.radix(i))]


def expand_sample_star(space: DescriptorSpace, d: WildDescriptor, i: int) -> list[WildDescriptor]:
    """Sample mode: one descriptor per value with every other star demoted to
    bottom, then the continuation descriptor with position ``i`` demoted."""
    demoted = WildDescriptor(
        tuple(BOTTOM if (x is STAR and j != i) else x for j, x in enumerate(d.digits))
    )
    out = [demoted.replace(i, v) for v in range(space.radix(i))]
    out.append(d.replace(i, BOTTOM))
    return out


# ---------------------------------------------------------------------------
# Resolution engine
# ---------------------------------------------------------------------------


def _resolve(net: SimNetwork, frm: NodeId, d: WildDescriptor, mode: str, originator: str) -> ResolutionOutcome:
    space = net.space
    space.check_wild(d)  # callers never pass bottoms; they only arise in flight
    if frm not in net.nodes:
        raise ValueError(f"unknown start node {frm!r}")
    n = len(space)

    root_msg = ResolutionMessage(d, mode, originator, 0)
    net.counters.messages_created += 1
    root_trace = TraceNode(root_msg, frm)
    outcome = ResolutionOutcome(
        mode=mode,
        query=d,
        originator=originator,
        endpoints=[],
        logical_hops=0,
        endpoint_messages=0,
        trace=root_trace,
    )

    def spawn(at: NodeId, msg: ResolutionMessage, parent: TraceNode) -> None:
        net.counters.messages_created += 1
        step = TraceNode(msg, at)
        parent.children.append(step)
        process(at, step)

    def process(at: NodeId, step: TraceNode) -> None:
        msg = step.message
        i = msg.i
        if i == n:
            deliver(at, msg)
            return
        digit = msg.d[i]
        if digit is STAR:
            expand = expand_total_star if mode == TOTAL else expand_sample_star
            for nd in expand(space, msg.d, i):
                spawn(at, ResolutionMessage(nd, mode, originator, i), step)
        elif digit is BOTTOM:
            # instantiate to the local digit; the follow-up routes to self
            spawn(at, ResolutionMessage(msg.d.replace(i, at[i]), mode, originator, i), step)
        else:
            nxt = net.route_step(at, i, digit)
            if nxt != at:
                outcome.logical_hops += 1
                net.counters.logical_hops += 1
            child = TraceNode(ResolutionMessage(msg.d, mode, originator, i + 1), nxt)
            step.children.append(child)
            process(nxt, child)

    def deliver(at: NodeId, msg: ResolutionMessage) -> None:
        e = msg.d.to_descriptor()
        stored = net.nodes[at].store.get(e, [])
        records = tuple(stored) if mode == TOTAL else tuple(stored[:1])
        outcome.endpoints.append(Endpoint(node=at, descriptor=e, records=records))
        outcome.endpoint_messages += 1
        net.counters.endpoint_deliveries += 1

    process(frm, root_trace)
    return outcome


def total_resolve(net: SimNetwork, frm: NodeId, d: WildDescriptor, originator: str = "user") -> ResolutionOutcome:
    """Reach the responsible node of every descriptor denoted by ``d``."""
    return _resolve(net, frm, d, TOTAL, originator)


def sample_resolve(net: SimNetwork, frm: NodeId, d: WildDescriptor, originator: str = "user") -> ResolutionOutcome:
    """Reach a representative set of classes at fanout 1 + sum of star radices."""
    return _resolve(net, frm, d, SAMPLE, originator)
