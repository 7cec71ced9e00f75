"""
An interactive browsing session, scripted
=========================================

Browsing starts from the all-star descriptor. Each step retrieves a sample
of document classes (one per value of every open digit), shows their labels,
and fixes one digit according to the picked label. Finishing retrieves the
locations of every document still denoted.
"""

import tempfile
from pathlib import Path

from make_corpus import toy_corpus

from facetdht import (
    build_network,
    choose,
    finish,
    ingest_directory,
    render_descriptor,
    render_wild,
    sample_is_sufficient,
    start_session,
    toy_space,
)

toy = toy_space()
net = build_network(toy, 8, seed=7)

# Publish the demo collection: owners stand in for the machines sharing files.
with tempfile.TemporaryDirectory() as tmp:
    toy_corpus(Path(tmp))
    records = ingest_directory(tmp, toy).records
for k, rec in enumerate(records):
    owner = "peer-" + render_descriptor(toy, net.node_ids[k % len(net.node_ids)])
    net.publish(rec.doc_id, rec.descriptor, owner, rec.miniature)
print("published:", [r.doc_id for r in records])

session = start_session(net)
print("\nstart:", render_wild(toy, session.current))
for entry in session.last_sample:
    print(f"  class {''.join(map(str, entry.descriptor))}: doc={entry.doc_id} labels={list(entry.labels)}")
print("sample sufficient:", sample_is_sufficient(session))

# The user clicks labels: dark bottom, then bright center.
for position, value in [(0, 0), (1, 1)]:
    choose(session, position, value)
    print(f"\nafter fixing position {position} to {value}: {render_wild(toy, session.current)}")
    for entry in session.last_sample:
        print(f"  class {''.join(map(str, entry.descriptor))}: doc={entry.doc_id} labels={list(entry.labels)}")

# Stop early with one star left: Total resolution over the remaining classes.
locations = finish(session)
print("\nfinal locations for", render_wild(toy, session.current), ":")
for rec in locations:
    print("  ", rec.doc_id, "shared by", rec.owner)
print("cumulative sample cost:", session.stats.as_dict())
print("final total cost:      ", session.final_stats.as_dict())
