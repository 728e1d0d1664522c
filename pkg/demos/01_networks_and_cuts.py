"""
Terminal networks and exact cut values
======================================

A terminal network is an undirected multigraph with a designated set of
terminal vertices. Everything downstream measures cuts against the
terminals, so this walkthrough starts with the data type itself.
"""

from cutmimic.netgraph import (
    Partition,
    TerminalNetwork,
    all_partitions,
    format_network,
    parse_network,
    terminal_capacity,
)
from cutmimic.oracles import cut_value_table, min_multiway_cut

# a K4 with two corners marked as terminals; edge ids are explicit
net = TerminalNetwork.build(
    [1, 2, 3, 4],
    [(1, 1, 2), (2, 1, 3), (3, 1, 4), (4, 2, 3), (5, 2, 4), (6, 3, 4)],
    (1, 2))

print("vertices:", sorted(net.vertices))
print("edges:", net.m)
print("terminals:", sorted(net.terminals))
print("cap(T) =", terminal_capacity(net))  # total terminal degree, the parameter k

# the text format round-trips; this is also what the CLI reads and writes
text = format_network(net)
print()
print(text, end="")
assert format_network(parse_network(text)) == text

# partitions of the terminal set name the cut problems
print()
for part in all_partitions(net.terminals):
    value, witness = min_multiway_cut(net, part)
    print(f"partition {part.to_text()}: minimum multiway cut {value}, "
          f"witness edges {list(witness)}")

# the same values, tabulated in canonical order
table = cut_value_table(net)
print()
print("cut value table:")
print(table.to_text(), end="")

# a three terminal variant: the singleton partition needs more edges
net3 = TerminalNetwork.build(
    [1, 2, 3, 4],
    [(1, 1, 2), (2, 1, 3), (3, 1, 4), (4, 2, 3), (5, 2, 4), (6, 3, 4)],
    (1, 2, 3))
singleton = Partition.of(net3.terminals, [[1], [2], [3]])
value, witness = min_multiway_cut(net3, singleton)
print()
print("K4 with three terminals, all separated:", value, "edges")
