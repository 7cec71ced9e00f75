"""
Overlay routing and key responsibility
======================================

Node identifiers live in the descriptor key space. Prefix routing resolves
one digit per hop, left to right; when a digit has no live node under the
current prefix, values are tried cyclically upward (the surrogate rule).
Every key therefore maps to exactly one responsible node, from any start.
"""

from facetdht import build_network, render_descriptor, toy_space, rgb9_space

toy = toy_space()

# A fully populated toy network: all eight addresses are live.
net = build_network(toy, 8, seed=7)
print("nodes:", [render_descriptor(toy, a) for a in net.node_ids])

target, hops = net.route((0, 0, 0), (1, 1, 1))
print("route 000 -> 111:", render_descriptor(toy, target), f"({hops} hops, one digit per hop)")

# A sparse network: surrogate routing fills the gaps deterministically.
sparse = build_network(toy, 3, seed=2)
print("\nsparse nodes:", [render_descriptor(toy, a) for a in sparse.node_ids])
for e in toy.all_descriptors():
    owner = sparse.responsible(e)
    print(f"  key {render_descriptor(toy, e)} -> node {render_descriptor(toy, owner)}")

# Start-independence: the same key routes to the same owner from every node.
key = (0, 1, 0)
owners = {sparse.route(frm, key)[0] for frm in sparse.node_ids}
print("\nowners of 010 from all starts:", {render_descriptor(toy, o) for o in owners})

# Publish and locate documents; records live at the responsible node.
sparse.publish("sunset", (0, 0, 0), owner="peer-0", miniature=None)
sparse.publish("dunes", (0, 0, 0), owner="peer-1", miniature=None)
print("\nlocate 000:", [(r.doc_id, r.owner) for r in sparse.locate((0, 0, 0))])
print("locate 111:", sparse.locate((1, 1, 1)))

# The 256-node reference network over the 262144-key rgb9 space.
big = build_network(rgb9_space(), 256, seed=42)
e = (0, 0, 0, 2, 2, 0, 3, 2, 0)
print("\nrgb9 owner of 000220320:", render_descriptor(big.space, big.responsible(e)))
print("hops from first node:", big.route(big.first_node, e)[1], "(never more than 9)")
