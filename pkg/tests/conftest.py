"""Shared random-instance generators for the test suite.

All generators take an explicit rng so every test is reproducible from its
seed; nothing here reads global random state.
"""

from __future__ import annotations

import random

from cutmimic.netgraph import TerminalNetwork


def random_connected_network(rng: random.Random, n_lo: int = 3, n_hi: int = 10,
                             extra_lo: int = 0, extra_hi: int = 5,
                             n_terminals: int = 2, cap_max: int | None = None,
                             ) -> TerminalNetwork:
    """A connected multigraph: random spanning tree plus extra random edges,
    with `n_terminals` terminals drawn at random. When cap_max is given the
    terminals are re-drawn (and edges re-rolled) until cap(T) <= cap_max.
    """
    for _ in range(400):
        n = rng.randint(n_lo, n_hi)
        verts = list(range(1, n + 1))
        edges: list[tuple[int, int, int]] = []
        eid = 1
        order = verts[:]
        rng.shuffle(order)
        for i in range(1, n):
            a = order[rng.randrange(i)]
            edges.append((eid, a, order[i]))
            eid += 1
        for _ in range(rng.randint(extra_lo, extra_hi)):
            u, v = rng.sample(verts, 2) if n >= 2 else (None, None)
            if u is None:
                break
            edges.append((eid, u, v))
            eid += 1
        if n < n_terminals:
            continue
        terms = sorted(rng.sample(verts, n_terminals))
        net = TerminalNetwork.build(verts, edges, terms)
        if cap_max is not None:
            k = sum(net.degree(t) for t in terms)
            if k > cap_max:
                continue
        return net
    raise RuntimeError("generator failed to hit the capacity target")


def path_network(length: int, extra_terminals: tuple[int, ...] = ()
                 ) -> TerminalNetwork:
    """Path with `length` edges on vertices 0..length, ends terminal."""
    verts = list(range(length + 1))
    edges = [(i + 1, i, i + 1) for i in range(length)]
    terms = sorted({0, length, *extra_terminals})
    return TerminalNetwork.build(verts, edges, terms)


def triangle(terminals: tuple[int, ...] = (1, 2, 3)) -> TerminalNetwork:
    return TerminalNetwork.build(
        [1, 2, 3], [(1, 1, 2), (2, 2, 3), (3, 3, 1)], terminals)
