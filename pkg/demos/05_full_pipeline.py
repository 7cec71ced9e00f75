"""
The full pipeline through the CLI
=================================

build-net -> ingest -> bench -> scripted browse, all deterministic under
fixed seeds: rerunning this script produces byte-identical artifacts.
Afterwards the snapshot can be served to the web UI:

    facetdht serve --net /tmp/facetdht-demo/net.json \
                   --catalog /tmp/facetdht-demo/manifest.json --port 8000
"""

from pathlib import Path

from make_corpus import rgb9_corpus

from facetdht.cli import main

work = Path("/tmp/facetdht-demo")
docs = work / "docs"
docs.mkdir(parents=True, exist_ok=True)
rgb9_corpus(docs, seed=5)

net = work / "net.json"
manifest = work / "manifest.json"
bench_csv = work / "bench.csv"

main(["build-net", "--space", "rgb9", "--nodes", "256", "--seed", "42", "--out", str(net)])
main([
    "ingest", "--dir", str(docs), "--space", "rgb9", "--net", str(net),
    "--owner-assignment", "round-robin:3", "--manifest", str(manifest),
])

print("\nSample vs Total cost for 3-star queries (13 vs 64, every row):")
main(["bench", "--net", str(net), "--stars", "3", "--trials", "5", "--seed", "9",
      "--out", str(bench_csv)])
print(bench_csv.read_text())

print("scripted browse (fix three digits, then fetch everything left):")
main(["browse", "--net", str(net), "--script", "0=0,3=0,6=0"])
