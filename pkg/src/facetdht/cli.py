"""Experiment harness: build networks, ingest and publish image corpora,
replay scripted browse sessions, benchmark Sample vs Total resolution cost,
and serve the HTTP gateway.

Exit codes: 0 ok, 1 I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path

from .browse import (
    InvalidChoiceError,
    choose,
    finish,
    locations_dict,
    start_session,
    state_json,
)
from .images import ingest_directory
from .overlay import OverlayError, SimNetwork, build_network
from .resolution import account, sample_resolve, total_resolve
from .rng import Lcg64
from .space import (
    STAR,
    SpaceError,
    WildDescriptor,
    parse_descriptor,
    preset,
    render_descriptor,
    render_wild,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2


class CliError(Exception):
    def __init__(self, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


def _load_net(path: str) -> SimNetwork:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read network snapshot {path!r}: {exc}", EXIT_IO) from exc
    try:
        return SimNetwork.from_json(text)
    except (json.JSONDecodeError, SpaceError, OverlayError, KeyError) as exc:
        raise CliError(f"malformed network snapshot {path!r}: {exc}", EXIT_IO) from exc


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path!r}: {exc}", EXIT_IO) from exc


# ---------------------------------------------------------------------------
# build-net
# ---------------------------------------------------------------------------


def cmd_build_net(args) -> int:
    space = preset(args.space)
    net = build_network(space, args.nodes, args.seed)
    _write_text(args.out, net.to_json())
    print(f"built {args.space} network: {args.nodes} nodes, seed {args.seed} -> {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# ingest
# ---------------------------------------------------------------------------

_ASSIGNMENT_RE = re.compile(r"^round-robin(?:[:(](\d+)\)?)?$")


def _parse_owner_assignment(text: str) -> int:
    m = _ASSIGNMENT_RE.match(text)
    if not m:
        raise CliError(f"unsupported owner assignment {text!r}; use round-robin[:SEED]")
    return int(m.group(1) or 0)


def cmd_ingest(args) -> int:
    net = _load_net(args.net)
    if args.space != net.space.name:
        raise CliError(f"snapshot space is {net.space.name!r}, not {args.space!r}")
    seed = _parse_owner_assignment(args.owner_assignment)
    if not Path(args.dir).is_dir():
        raise CliError(f"not a directory: {args.dir!r}", EXIT_IO)
    result = ingest_directory(args.dir, net.space)
    for name, message in result.errors:
        print(f"skipped {name}: {message}", file=sys.stderr)

    node_ids = net.node_ids
    start = seed % len(node_ids)
    manifest = []
    for k, rec in enumerate(result.records):
        owner_node = node_ids[(start + k) % len(node_ids)]
        owner = "peer-" + render_descriptor(net.space, owner_node)
        net.publish(rec.doc_id, rec.descriptor, owner, rec.miniature)
        manifest.append(
            {
                "doc_id": rec.doc_id,
                "descriptor": render_descriptor(net.space, rec.descriptor),
                "source": rec.source,
                "owner": owner,
            }
        )

    out_net = args.out_net or args.net
    _write_text(out_net, net.to_json())
    _write_text(args.manifest, json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    print(f"published {len(manifest)} documents ({len(result.errors)} skipped) -> {out_net}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# browse
# ---------------------------------------------------------------------------


def _parse_script(text: str) -> list[tuple[int, int]]:
    steps = []
    if not text.strip():
        return steps
    for part in text.split(","):
        m = re.match(r"^\s*(\d+)\s*=\s*(\d+)\s*$", part)
        if not m:
            raise CliError(f"bad script step {part!r}; expected position=value")
        steps.append((int(m.group(1)), int(m.group(2))))
    return steps


def cmd_browse(args) -> int:
    net = _load_net(args.net)
    steps = _parse_script(args.script)
    origin = None
    if args.origin is not None:
        origin = parse_descriptor(net.space, args.origin)
        if origin not in net.nodes:
            raise CliError(f"origin {args.origin!r} is not a live node")
    session = start_session(net, origin)
    print(state_json(session))
    for position, value in steps:
        try:
            choose(session, position, value)
        except InvalidChoiceError as exc:
            print(f"invalid step {position}={value}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(state_json(session))
    finish(session)
    print(json.dumps(locations_dict(session), sort_keys=True, separators=(",", ":")))
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

BENCH_HEADER = [
    "space", "nodes", "seed", "query", "mode",
    "endpoint_messages", "logical_hops", "distinct_endpoints",
]


def _random_query(net: SimNetwork, rng: Lcg64, stars: int, published: list) -> WildDescriptor:
    space = net.space
    star_at = set(rng.distinct_below(len(space), stars)) if stars else set()
    if published:
        base = published[rng.below(len(published))]
    else:
        base = tuple(rng.below(space.radix(i)) for i in range(len(space)))
    return WildDescriptor(
        tuple(STAR if i in star_at else base[i] for i in range(len(space)))
    )


def _closed_form(space, d: WildDescriptor, mode: str) -> int:
    stars = d.star_positions()
    if mode == "Sample":
        return 1 + sum(space.radix(i) for i in stars)
    product = 1
    for i in stars:
        product *= space.radix(i)
    return product


def run_bench(net: SimNetwork, stars: int, trials: int, seed: int) -> list[list]:
    space = net.space
    if stars > len(space):
        raise CliError(f"star count {stars} exceeds descriptor length {len(space)}")
    rng = Lcg64(seed)
    published = sorted({e for e, _ in net.iter_records()})
    rows = []
    for _ in range(trials):
        d = _random_query(net, rng, stars, published)
        for mode, resolver in (("Sample", sample_resolve), ("Total", total_resolve)):
            outcome = resolver(net, net.first_node, d)
            stats = account(outcome)
            expected = _closed_form(space, d, mode)
            if stats.endpoint_messages != expected:
                raise AssertionError(
                    f"{mode} fanout {stats.endpoint_messages} != closed form {expected} "
                    f"for {render_wild(space, d)}"
                )
            rows.append(
                [
                    space.name, len(net.node_ids), seed, render_wild(space, d), mode,
                    stats.endpoint_messages, stats.logical_hops, stats.distinct_endpoint_nodes,
                ]
            )
    return rows


def cmd_bench(args) -> int:
    net = _load_net(args.net)
    rows = run_bench(net, args.stars, args.trials, args.seed)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    writer.writerows(rows)
    if args.out:
        _write_text(args.out, buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------


def cmd_serve(args) -> int:
    import uvicorn

    from .gateway import create_app

    net = _load_net(args.net)
    if args.catalog:
        try:
            json.loads(Path(args.catalog).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read catalog {args.catalog!r}: {exc}", EXIT_IO) from exc
    app = create_app(net)
    print(f"serving {net.space.name} network ({len(net.node_ids)} nodes) on port {args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="facetdht")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-net", help="build a seeded network snapshot")
    p.add_argument("--space", required=True, choices=["toy", "rgb9"])
    p.add_argument("--nodes", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_net)

    p = sub.add_parser("ingest", help="ingest a PPM directory and publish the documents")
    p.add_argument("--dir", required=True)
    p.add_argument("--space", required=True)
    p.add_argument("--net", required=True)
    p.add_argument("--owner-assignment", default="round-robin:0")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out-net", default=None, help="defaults to overwriting --net")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("browse", help="replay a scripted browse session")
    p.add_argument("--net", required=True)
    p.add_argument("--script", default="")
    p.add_argument("--from", dest="origin", default=None, metavar="NODE")
    p.set_defaults(func=cmd_browse)

    p = sub.add_parser("bench", help="Sample vs Total message-cost benchmark")
    p.add_argument("--net", required=True)
    p.add_argument("--stars", required=True, type=int)
    p.add_argument("--trials", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", default=None, help="CSV path; stdout when omitted")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="serve the HTTP gateway")
    p.add_argument("--net", required=True)
    p.add_argument("--catalog", default=None)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (SpaceError, OverlayError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
