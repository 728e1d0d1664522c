# Representative sets: keep few candidates, lose no extension.
#
# Given a family of tuples over a layered matroid, the product-form selection
# keeps at most (product of layer ranks) tuples while preserving this
# property: whenever some original tuple extends an independent base, a kept
# tuple extends it too. The marking stage relies on exactly that guarantee.

import itertools

from cutmimic.ffield import MERSENNE61, PrimeField
from cutmimic.matroids import LayeredMatroid, disjoint_union, uniform_rep
from cutmimic.repset import (
    CandidateFamily,
    extends,
    representative_set_general,
    representative_set_product,
)

F = PrimeField(MERSENNE61)

# two uniform layers of rank 2: at most 4 survivors whatever the family size
a = uniform_rep(F, ["a1", "a2", "a3", "a4"], 2)
b = uniform_rep(F, ["b1", "b2", "b3", "b4"], 2)
lm = LayeredMatroid((a, b))

family = CandidateFamily.product(
    [(x, y) for x in a.ground for y in b.ground])
kept = representative_set_product(lm, family)
print("family size:", len(family))
print("rank product bound:", lm.rank_product())
print("survivors:", len(kept), "->", list(kept.sets))

# spot-check the extension property for one base per layer
union = disjoint_union(F, [a, b])
base = [(0, "a3"), (1, "b4")]
could = [t for t in family.sets
         if extends(union, base, [(0, t[0]), (1, t[1])])]
still = [t for t in kept.sets
         if extends(union, base, [(0, t[0]), (1, t[1])])]
print()
print(f"tuples extending base {{a3}},{{b4}}: {len(could)} originally, "
      f"{len(still)} among survivors")
assert bool(could) == bool(still)

# the general form works on a single matrix and s-subsets of its ground
mat = uniform_rep(F, list(range(8)), 4).matrix
pairs = CandidateFamily.general(
    list(itertools.combinations(range(8), 2)), s=2)
kept2 = representative_set_general(mat, pairs)
print()
print("general form on 28 column pairs of a rank-4 matrix:",
      len(kept2), "survivors (bound C(4,2) = 6)")
