import pytest

from conftest import blank_miniature, publish_all_classes, random_wild
from facetdht.overlay import SimNetwork, build_network
from facetdht.resolution import (
    SAMPLE,
    TOTAL,
    account,
    expand_sample_star,
    expand_total_star,
    sample_resolve,
    total_resolve,
)
from facetdht.rng import Lcg64
from facetdht.space import (
    BOTTOM,
    STAR,
    denotes,
    enumerate_denoted,
    is_representative,
    parse_wild,
    render_wild,
)
from oracles import brute_denoted, brute_responsible


def walk_trace(trace):
    """Yield (node, message, hop_depth) over all trace steps."""
    stack = [(trace, 0)]
    while stack:
        step, hops = stack.pop()
        yield step.node, step.message, hops
        for child in step.children:
            stack.append((child, hops + (1 if child.node != step.node else 0)))


def leaf_endpoint_count(trace, n):
    return sum(1 for _, msg, _ in walk_trace(trace) if msg.i == n)


# ---------------------------------------------------------------------------
# star expansion rules
# ---------------------------------------------------------------------------


def test_total_expansion(toy):
    d = parse_wild(toy, "**0")
    assert [render_wild(toy, x) for x in expand_total_star(toy, d, 0)] == ["0*0", "1*0"]


def test_sample_expansion_matches_published_table(rgb9):
    d = parse_wild(rgb9, "0*23*012*")
    rows = [render_wild(rgb9, x) for x in expand_sample_star(rgb9, d, 1)]
    assert rows == [
        "0023.012.",
        "0123.012.",
        "0223.012.",
        "0323.012.",
        "0.23*012*",
    ]


def test_sample_expansion_toy(toy):
    d = parse_wild(toy, "*1*")
    rows = [render_wild(toy, x) for x in expand_sample_star(toy, d, 0)]
    assert rows == ["01.", "11.", ".1*"]


# ---------------------------------------------------------------------------
# total resolution
# ---------------------------------------------------------------------------


def test_total_reaches_every_denoted_class(toy):
    net = build_network(toy, 8, 3)
    d = parse_wild(toy, "**0")
    out = total_resolve(net, net.first_node, d)
    assert out.endpoint_messages == 4
    assert set(out.endpoint_descriptors()) == {(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)}


def test_total_paper_denotation(toy, toy_net):
    out = total_resolve(toy_net, toy_net.first_node, parse_wild(toy, "0*0"))
    assert set(out.endpoint_descriptors()) == {(0, 0, 0), (0, 1, 0)}


def test_total_wildcard_free_degenerates_to_routing(toy_net):
    d = parse_wild(toy_net.space, "011")
    out = total_resolve(toy_net, toy_net.first_node, d)
    assert out.endpoint_messages == 1
    assert out.endpoints[0].node == toy_net.responsible((0, 1, 1))


def test_total_endpoints_equal_oracle_exhaustive_toy(toy):
    import itertools

    wilds = [
        parse_wild(toy, "".join(t))
        for t in itertools.product("01*", repeat=3)
    ]
    for size, seed in [(1, 5), (3, 5), (8, 5)]:
        net = build_network(toy, size, seed)
        for d in wilds:
            out = total_resolve(net, net.first_node, d)
            expected = {
                (brute_responsible(toy, net.node_ids, e), e) for e in brute_denoted(toy, d)
            }
            assert {(ep.node, ep.descriptor) for ep in out.endpoints} == expected


def test_total_endpoints_equal_oracle_random_rgb9(rgb9, rgb9_net):
    rng = Lcg64(41)
    for _ in range(30):
        d = random_wild(rgb9, rng, stars=rng.below(3))
        out = total_resolve(rgb9_net, rgb9_net.first_node, d)
        expected = {
            (brute_responsible(rgb9, rgb9_net.node_ids, e), e)
            for e in enumerate_denoted(rgb9, d)
        }
        assert {(ep.node, ep.descriptor) for ep in out.endpoints} == expected


def test_total_returns_full_store_lists(toy):
    net = build_network(toy, 4, 9)
    for name in ["x", "y"]:
        net.publish(name, (0, 1, 0), "peer", None)
    out = total_resolve(net, net.first_node, parse_wild(toy, "0*0"))
    by_descriptor = {ep.descriptor: ep.records for ep in out.endpoints}
    assert [r.doc_id for r in by_descriptor[(0, 1, 0)]] == ["x", "y"]
    assert by_descriptor[(0, 0, 0)] == ()


def test_total_never_creates_bottoms(rgb9, rgb9_net):
    d = parse_wild(rgb9, "0*23*012*")
    out = total_resolve(rgb9_net, rgb9_net.first_node, d)
    for _, msg, _ in walk_trace(out.trace):
        assert msg.mode == TOTAL
        assert not msg.d.has_bottom()


# ---------------------------------------------------------------------------
# sample resolution
# ---------------------------------------------------------------------------


def test_sample_leaf_counts(toy, rgb9, toy_net, rgb9_net):
    out = sample_resolve(toy_net, toy_net.first_node, parse_wild(toy, "***"))
    assert out.endpoint_messages == 7  # 1 + 2+2+2
    out = sample_resolve(rgb9_net, rgb9_net.first_node, parse_wild(rgb9, "0*23*012*"))
    assert out.endpoint_messages == 13  # 1 + 4+4+4


def test_sample_vs_total_counts(rgb9, rgb9_net):
    d = parse_wild(rgb9, "0*23*012*")
    assert sample_resolve(rgb9_net, rgb9_net.first_node, d).endpoint_messages == 13
    assert total_resolve(rgb9_net, rgb9_net.first_node, d).endpoint_messages == 64


def test_sample_closed_form_random(rgb9, rgb9_net):
    rng = Lcg64(42)
    for _ in range(100):
        d = random_wild(rgb9, rng, stars=rng.below(10))
        out = sample_resolve(rgb9_net, rgb9_net.first_node, d)
        assert out.endpoint_messages == 1 + 4 * len(d.star_positions())


def test_sample_endpoints_are_representative(toy, rgb9):
    rng = Lcg64(43)
    for space, sizes in [(toy, [1, 2, 5, 8]), (rgb9, [1, 16, 256])]:
        for size in sizes:
            net = build_network(space, size, rng.below(1 << 30))
            for _ in range(5):
                d = random_wild(space, rng, stars=rng.below(len(space) + 1))
                out = sample_resolve(net, net.node_ids[rng.below(size)], d)
                assert is_representative(space, d, out.endpoint_descriptors())


def test_sample_endpoints_denoted_by_query(rgb9, rgb9_net):
    rng = Lcg64(44)
    for _ in range(50):
        d = random_wild(rgb9, rng, stars=rng.below(10))
        out = sample_resolve(rgb9_net, rgb9_net.first_node, d)
        for ep in out.endpoints:
            assert denotes(rgb9, d, ep.descriptor)


def test_sample_wildcard_free_equals_total(toy_net):
    d = parse_wild(toy_net.space, "110")
    s = sample_resolve(toy_net, toy_net.first_node, d)
    t = total_resolve(toy_net, toy_net.first_node, d)
    assert s.endpoint_messages == t.endpoint_messages == 1
    assert s.endpoints[0].node == t.endpoints[0].node


def test_sample_returns_first_record_or_empty_marker(toy):
    net = build_network(toy, 8, 3)
    net.publish("first", (0, 0, 0), "peer", blank_miniature("first"))
    net.publish("second", (0, 0, 0), "peer", blank_miniature("second"))
    out = sample_resolve(net, net.first_node, parse_wild(toy, "00*"))
    by_descriptor = {ep.descriptor: ep.records for ep in out.endpoints}
    assert [r.doc_id for r in by_descriptor[(0, 0, 0)]] == ["first"]
    assert by_descriptor[(0, 0, 1)] == ()  # explicit empty marker


def test_resolved_prefix_invariant(rgb9, rgb9_net):
    # positions below the resolved index are always concrete, in both modes
    d = parse_wild(rgb9, "**23*01**")
    for resolver in (sample_resolve, total_resolve):
        out = resolver(rgb9_net, rgb9_net.first_node, d)
        for _, msg, _ in walk_trace(out.trace):
            for j in range(msg.i):
                assert isinstance(msg.d[j], int)


def test_leaf_hop_depth_bounded(rgb9, rgb9_net):
    rng = Lcg64(45)
    for _ in range(20):
        d = random_wild(rgb9, rng, stars=rng.below(5))
        for resolver in (sample_resolve, total_resolve):
            out = resolver(rgb9_net, rgb9_net.first_node, d)
            for _, msg, hops in walk_trace(out.trace):
                if msg.i == len(rgb9):
                    assert hops <= len(rgb9)


def test_outcome_deterministic(rgb9, rgb9_net):
    d = parse_wild(rgb9, "0*23*012*")
    a = sample_resolve(rgb9_net, rgb9_net.first_node, d)
    b = sample_resolve(rgb9_net, rgb9_net.first_node, d)
    assert a.endpoints == b.endpoints
    assert a.logical_hops == b.logical_hops
    assert a.trace_json(rgb9) == b.trace_json(rgb9)


def test_trace_json_shape(toy, toy_net):
    out = sample_resolve(toy_net, toy_net.first_node, parse_wild(toy, "0**"))
    import json

    tree = json.loads(out.trace_json(toy))
    assert set(tree) == {"msg", "node", "children"}
    assert set(tree["msg"]) == {"d", "mode", "i"}
    assert tree["msg"]["mode"] == SAMPLE
    assert leaf_endpoint_count(out.trace, 3) == out.endpoint_messages


def test_rejects_bottom_query(toy, toy_net):
    with pytest.raises(Exception):
        sample_resolve(toy_net, toy_net.first_node, parse_wild(toy, "0.0"))


def test_rejects_unknown_start(toy, toy_net):
    with pytest.raises(ValueError):
        total_resolve(toy_net, (7, 7, 7), parse_wild(toy, "***"))


# ---------------------------------------------------------------------------
# accounting
# ---------------------------------------------------------------------------


def test_account_single_node_network(toy):
    net = SimNetwork(toy, [(0, 1, 1)])
    out = sample_resolve(net, net.first_node, parse_wild(toy, "***"))
    stats = account(out)
    assert stats.endpoint_messages == 7
    assert stats.distinct_endpoint_nodes == 1
    assert stats.logical_hops == 0


def test_account_distinct_bounded_by_messages(rgb9, rgb9_net):
    rng = Lcg64(46)
    for _ in range(20):
        d = random_wild(rgb9, rng, stars=rng.below(6))
        stats = account(sample_resolve(rgb9_net, rgb9_net.first_node, d))
        assert stats.distinct_endpoint_nodes <= stats.endpoint_messages


def test_network_counters_accumulate(toy):
    net = build_network(toy, 8, 3)
    assert net.counters.endpoint_deliveries == 0
    sample_resolve(net, net.first_node, parse_wild(net.space, "***"))
    assert net.counters.endpoint_deliveries == 7
    total_resolve(net, net.first_node, parse_wild(net.space, "***"))
    assert net.counters.endpoint_deliveries == 15
    assert net.counters.messages_created >= 15
