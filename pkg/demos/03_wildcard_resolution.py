"""
Total and Sample resolution of wildcard keys
============================================

Total resolution visits the responsible node of every denoted class: its
cost is the product of the star radices. Sample resolution retrieves one
document per value of every star position at linear cost: expanding a star
spawns one message per value (remaining stars demoted to bottom wildcards,
which later snap to the routing node's own digit at zero hop cost) plus one
continuation message.
"""

import json

from facetdht import (
    account,
    build_network,
    expand_sample_star,
    is_representative,
    parse_wild,
    render_wild,
    rgb9_space,
    sample_resolve,
    total_resolve,
)

rgb9 = rgb9_space()
net = build_network(rgb9, 256, seed=42)

d = parse_wild(rgb9, "0*23*012*")
print("query:", render_wild(rgb9, d), "(3 stars, radix 4)")

# What the first star expansion creates: four value messages with the other
# stars demoted to '.', plus the bottom continuation.
print("\nfirst-star expansion:")
for row in expand_sample_star(rgb9, d, 1):
    print("  ", render_wild(rgb9, row))

sample = sample_resolve(net, net.first_node, d)
total = total_resolve(net, net.first_node, d)
print("\nendpoint messages, sample:", sample.endpoint_messages, "= 1 + 3*4")
print("endpoint messages, total: ", total.endpoint_messages, "= 4^3")

print("\nsample stats:", account(sample).as_dict())
print("total stats:  ", account(total).as_dict())

# The sampled classes cover every value of every star position.
descriptors = sample.endpoint_descriptors()
print("\nsampled class descriptors:")
for e in descriptors:
    print("  ", render_wild(rgb9, parse_wild(rgb9, "".join(map(str, e)))))
print("representative:", is_representative(rgb9, d, descriptors))

# The fanout trace is an ordinary JSON tree (message, node, children).
tree = json.loads(sample.trace_json(rgb9))
print("\ntrace root:", tree["msg"], "at node", tree["node"])
print("children of root:", len(tree["children"]))
