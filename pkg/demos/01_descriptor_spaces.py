"""
Descriptor spaces, wildcards and the browsing graph
====================================================

Documents are described by fixed-length vectors of quantized properties
(descriptors). A descriptor doubles as the document's hash key, so documents
with equal properties share a logical address. Star wildcards leave digits
unfixed and denote whole classes of documents.
"""

from facetdht import (
    denotes,
    direct_successors,
    encode_key,
    enumerate_denoted,
    is_representative,
    key_bits,
    parse_descriptor,
    parse_wild,
    render_wild,
    rgb9_space,
    toy_space,
)

# The toy space: three binary digits for the mean brightness of the bottom,
# center and top image bands. 000 is a dark picture, 111 a bright one.
toy = toy_space()
print("toy space:", [(d.property, d.values) for d in toy.digits])
print("key space size:", toy.size)

# 0*0 fixes a dark bottom and a dark top and leaves the center open:
d = parse_wild(toy, "0*0")
print("\n0*0 denotes:", [render_wild(toy, parse_wild(toy, "".join(map(str, e)))) for e in enumerate_denoted(toy, d)])
print("denotes 010:", denotes(toy, d, (0, 1, 0)))
print("denotes 011:", denotes(toy, d, (0, 1, 1)))

# The browsing graph: each edge fixes exactly one star to one value.
# Walking it from the all-star root can reach every full descriptor.
print("\nsuccessors of ***:", [render_wild(toy, s) for s in direct_successors(toy, parse_wild(toy, "***"))])
print("successors of 0**:", [render_wild(toy, s) for s in direct_successors(toy, parse_wild(toy, "0**"))])

# A representative set covers every value of every star position while
# matching all fixed digits; such a set is what sampling retrieves.
S = [(0, 0, 0), (0, 1, 0)]
print("\n{000, 010} representative for 0*0:", is_representative(toy, d, S))
print("{000} representative for 0*0:", is_representative(toy, d, [(0, 0, 0)]))

# The second preset quantizes R, G and B channel means of the same three
# bands into 9 digits of radix 4, packing into 18-bit keys.
rgb9 = rgb9_space()
print("\nrgb9 digits:", [d.property for d in rgb9.digits])
print("key width:", key_bits(rgb9), "bits")
sunset = parse_descriptor(rgb9, "000220320")
print("packed key of 000220320:", encode_key(rgb9, sunset))
