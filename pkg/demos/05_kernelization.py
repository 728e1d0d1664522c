# Kernelization: shrink a cut instance without changing its answer.
#
# Two front ends sit on top of the reducer. The multiway-cut kernelizer
# contracts each terminal's closest isolating cut side and may refute the
# instance outright; the multicut kernelizer first widens the graph with a
# gadget that turns arbitrary request endpoints into fresh terminals.

from cutmimic.frontend import (
    MulticutInstance,
    MultiwayCutInstance,
    kernelize_multicut,
    kernelize_multiway_cut,
    multicut_gadget,
)
from cutmimic.netgraph import TerminalNetwork, format_network
from cutmimic.oracles import min_multiway_cut
from cutmimic.reducer import ReduceParams
from cutmimic.netgraph import Partition

# a triangle with every vertex a terminal: separating all three needs 3 edges
tri = TerminalNetwork.build(
    [1, 2, 3], [(1, 1, 2), (2, 2, 3), (3, 1, 3)], (1, 2, 3))
opt, _ = min_multiway_cut(
    tri, Partition.of(tri.terminals, [[1], [2], [3]]))
print("triangle multiway cut optimum:", opt)

for budget in (2, 3):
    kern = kernelize_multiway_cut(MultiwayCutInstance(tri, budget),
                                  ReduceParams())
    print(f"budget {budget}:",
          "refuted" if kern is None
          else f"kernel with {kern.net.m} edges, budget {kern.budget}")

# multicut: requests name vertex pairs, not terminals
path = TerminalNetwork.build(
    [1, 2, 3, 4],
    [(1, 1, 2), (2, 2, 3), (3, 3, 4)],
    (1, 4))
requests = ((1, 4),)
inst = MulticutInstance(path, requests, budget=1)

# the gadget attaches budget+1 parallel length-2 paths from a primed
# terminal to each request endpoint, so cutting them all is never cheaper
# than cutting the original request
gadget, primed = multicut_gadget(inst)
print()
print("gadget terminals:", sorted(gadget.terminals),
      "requests now:", primed)
print("gadget size: n =", len(gadget.vertices), "m =", gadget.m)

kern = kernelize_multicut(inst, ReduceParams())
print()
print("kernel:")
print(format_network(kern.net), end="")
print("kernel requests:", kern.requests, "budget:", kern.budget)
