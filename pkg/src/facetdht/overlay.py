"""Deterministic in-process simulation of a prefix-routing structured overlay.

Node identifiers live in the descriptor key space. Routing resolves digits
left to right; when the wanted digit has no live node under the current
prefix, the next value is tried cyclically upward within the radix (the
surrogate rule), so every full key maps to exactly one responsible node.

Networks are immutable after construction: routing tables are built
omnisciently from the full membership instead of running a join protocol,
which keeps every run bit-reproducible. A routing step to a different node
costs one logical hop; a step to self costs zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .images import Miniature
from .rng import Lcg64
from .space import Descriptor, DescriptorSpace, render_descriptor, parse_descriptor

NodeId = tuple


class OverlayError(ValueError):
    pass


class DuplicateDocumentError(OverlayError):
    """Same doc_id published twice under the same descriptor."""


@dataclass(frozen=True)
class LocationRecord:
    """Pointer to a published document: owner address plus inline miniature."""

    doc_id: str
    owner: str
    miniature: Miniature | None


@dataclass
class NodeState:
    id: NodeId
    # table[level][value] -> neighbor sharing digits [0, level) with this node
    # and having `value` at position level; None when no such node is live.
    table: list[list[NodeId | None]]
    store: dict[Descriptor, list[LocationRecord]] = field(default_factory=dict)


@dataclass
class Counters:
    """Resolution traffic counters (publishing/locating is catalog plumbing)."""

    logical_hops: int = 0
    messages_created: int = 0
    endpoint_deliveries: int = 0

    def as_dict(self) -> dict:
        return {
            "logical_hops": self.logical_hops,
            "messages_created": self.messages_created,
            "endpoint_deliveries": self.endpoint_deliveries,
        }


class SimNetwork:
    """A set of overlay nodes with routing tables and published-document stores."""

    def __init__(self, space: DescriptorSpace, node_ids: Iterable[NodeId], seed: int | None = None):
        self.space = space
        self.seed = seed
        ids = [space.check_descriptor(a) for a in node_ids]
        if not ids:
            raise OverlayError("a network needs at least one node")
        if len(set(ids)) != len(ids):
            raise OverlayError("node identifiers must be distinct")
        self.node_ids: tuple[NodeId, ...] = tuple(sorted(ids))
        self._prefixes: set[tuple] = set()
        for a in self.node_ids:
            for i in range(len(space) + 1):
                self._prefixes.add(a[:i])
        self.nodes: dict[NodeId, NodeState] = {
            a: NodeState(id=a, table=self._build_table(a)) for a in self.node_ids
        }
        self.counters = Counters()

    # -- construction ---------------------------------------------------

    @classmethod
    def from_node_ids(cls, space: DescriptorSpace, ids: Iterable[NodeId]) -> "SimNetwork":
        return cls(space, ids)

    def _resolve_from(self, prefix: tuple, key: Sequence[int]) -> NodeId:
        """Extend a live prefix to a full node id, preferring key digits,
        falling back cyclically upward per digit."""
        for i in range(len(prefix), len(self.space)):
            r = self.space.radix(i)
            for step in range(r):
                v = (key[i] + step) % r
                if prefix + (v,) in self._prefixes:
                    prefix = prefix + (v,)
                    break
        return prefix

    def _build_table(self, a: NodeId) -> list[list[NodeId | None]]:
        table: list[list[NodeId | None]] = []
        for i in range(len(self.space)):
            row: list[NodeId | None] = []
            for v in range(self.space.radix(i)):
                q = a[:i] + (v,)
                if q in self._prefixes:
                    # the neighbor surrogate-closest to this node's own
                    # remaining digits; lands on self for v == a[i]
                    row.append(self._resolve_from(q, a[:i] + (v,) + a[i + 1 :]))
                else:
                    row.append(None)
            table.append(row)
        return table

    # -- routing ----------------------------------------------------------

    def responsible(self, e: Sequence[int]) -> NodeId:
        """The unique node a full key surrogate-routes to, start-independent."""
        e = self.space.check_descriptor(e)
        return self._resolve_from((), e)

    def route_step(self, at: NodeId, level: int, preferred: int) -> NodeId:
        """One table-driven routing step from ``at``: resolve ``level`` with
        the first live digit cyclically upward from ``preferred``."""
        row = self.nodes[at].table[level]
        r = self.space.radix(level)
        for step in range(r):
            nxt = row[(preferred + step) % r]
            if nxt is not None:
                return nxt
        raise OverlayError(f"empty routing row at {at} level {level}")  # pragma: no cover

    def route(self, frm: NodeId, e: Sequence[int]) -> tuple[NodeId, int]:
        """Digit-by-digit prefix routing; returns (responsible node, hops)."""
        e = self.space.check_descriptor(e)
        if frm not in self.nodes:
            raise OverlayError(f"unknown start node {frm!r}")
        cur = frm
        hops = 0
        for i in range(len(self.space)):
            nxt = self.route_step(cur, i, e[i])
            if nxt != cur:
                hops += 1
            cur = nxt
        return cur, hops

    @property
    def first_node(self) -> NodeId:
        return self.node_ids[0]

    # -- publish / locate ---------------------------------------------------

    def publish(self, doc_id: str, descriptor: Sequence[int], owner: str,
                miniature: Miniature | None = None) -> NodeId:
        e = self.space.check_descriptor(descriptor)
        node = self.nodes[self.responsible(e)]
        entries = node.store.setdefault(e, [])
        if any(r.doc_id == doc_id for r in entries):
            raise DuplicateDocumentError(
                f"doc {doc_id!r} already published under {render_descriptor(self.space, e)}"
            )
        entries.append(LocationRecord(doc_id=doc_id, owner=owner, miniature=miniature))
        return node.id

    def publish_record(self, rec) -> NodeId:
        """Publish an ingested DocumentRecord."""
        return self.publish(rec.doc_id, rec.descriptor, rec.owner, rec.miniature)

    def locate(self, e: Sequence[int]) -> list[LocationRecord]:
        e = self.space.check_descriptor(e)
        return list(self.nodes[self.responsible(e)].store.get(e, []))

    def iter_records(self) -> Iterator[tuple[Descriptor, LocationRecord]]:
        for a in self.node_ids:
            for e in sorted(self.nodes[a].store):
                for rec in self.nodes[a].store[e]:
                    yield e, rec

    def document_count(self) -> int:
        return sum(1 for _ in self.iter_records())

    def miniature_index(self) -> dict[str, Miniature]:
        index: dict[str, Miniature] = {}
        for _, rec in self.iter_records():
            if rec.miniature is not None:
                index.setdefault(rec.doc_id, rec.miniature)
        return index

    # -- snapshots ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        nodes = []
        for a in self.node_ids:
            state = self.nodes[a]
            store = []
            for e in sorted(state.store):
                store.append(
                    {
                        "descriptor": render_descriptor(self.space, e),
                        "records": [
                            {
                                "doc_id": r.doc_id,
                                "owner": r.owner,
                                "miniature_b64": r.miniature.to_b64() if r.miniature else None,
                            }
                            for r in state.store[e]
                        ],
                    }
                )
            nodes.append({"id": render_descriptor(self.space, a), "store": store})
        return {"space": self.space.to_json_dict(), "seed": self.seed, "nodes": nodes}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "SimNetwork":
        space = DescriptorSpace.from_json_dict(data["space"])
        ids = [parse_descriptor(space, n["id"]) for n in data["nodes"]]
        net = cls(space, ids, seed=data.get("seed"))
        for n in data["nodes"]:
            for entry in n.get("store", []):
                e = parse_descriptor(space, entry["descriptor"])
                for r in entry["records"]:
                    mini = (
                        Miniature.from_b64(r["doc_id"], r["miniature_b64"])
                        if r.get("miniature_b64")
                        else None
                    )
                    net.publish(r["doc_id"], e, r["owner"], mini)
        return net

    @classmethod
    def from_json(cls, text: str) -> "SimNetwork":
        return cls.from_json_dict(json.loads(text))


def build_network(space: DescriptorSpace, node_count: int, seed: int) -> SimNetwork:
    """Seeded network: node ids drawn without replacement from the key space."""
    if node_count < 1:
        raise OverlayError("node_count must be at least 1")
    if node_count > space.size:
        raise OverlayError(
            f"node_count {node_count} exceeds key space size {space.size}"
        )
    rng = Lcg64(seed)
    ids = [space.index_to_digits(i) for i in rng.distinct_below(space.size, node_count)]
    return SimNetwork(space, ids, seed=seed)
