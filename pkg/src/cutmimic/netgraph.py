"""Undirected terminal networks with stable edge identities.

The central type is TerminalNetwork: an undirected multigraph with unit edge
capacities, a designated terminal tuple, and integer edge ids that survive
every operation. Contraction never renames a surviving edge, so edge sets of
derived networks (recursive instances, reduced networks) are subsets of the
original edge-id space. Self-loops are discarded at creation, including the
ones produced by contraction.

All operations are value-semantic: they return new networks and never mutate
their inputs.

Text format (one network per file):

    c  free-form comment
    p tn <n> <m> <t>
    t <vertex>            (t lines, one per terminal)
    e <u> <v>             (m lines; repeat a pair for parallel edges)

Vertex ids are positive integers. Edge ids are assigned 1..m in file order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError, TerminalContractionError


@dataclass(frozen=True)
class TerminalNetwork:
    """Undirected multigraph (V, E, T) with unit capacities and stable edge ids.

    vertices: sorted tuple of vertex ids.
    edges: tuple of (edge id, u, v) sorted by edge id; no self-loops.
    terminals: sorted tuple, a subset of vertices.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    terminals: tuple[int, ...]

    @staticmethod
    def build(vertices: Iterable[int], edges: Iterable[tuple[int, int, int]],
              terminals: Iterable[int]) -> "TerminalNetwork":
        vs = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(vs)
        ts = tuple(sorted(set(int(t) for t in terminals)))
        kept = []
        seen_ids: set[int] = set()
        for eid, u, v in edges:
            eid, u, v = int(eid), int(u), int(v)
            if eid in seen_ids:
                raise InputError(f"duplicate edge id {eid}")
            if eid <= 0:
                raise InputError(f"edge id must be positive, got {eid}")
            seen_ids.add(eid)
            if u == v:
                continue  # self-loops carry no cut information
            if u not in vset or v not in vset:
                raise InputError(f"edge {eid} endpoint not a vertex: ({u},{v})")
            kept.append((eid, u, v))
        for t in ts:
            if t not in vset:
                raise InputError(f"terminal {t} is not a vertex")
        kept.sort()
        return TerminalNetwork(vs, tuple(kept), ts)

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.edges)

    def endpoints(self, eid: int) -> tuple[int, int]:
        for e, u, v in self.edges:
            if e == eid:
                return (u, v)
        raise InputError(f"unknown edge id {eid}")

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """vertex -> list of (edge id, other endpoint), edge-id order."""
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for eid, u, v in self.edges:
            adj[u].append((eid, v))
            adj[v].append((eid, u))
        return adj

    def degree(self, v: int) -> int:
        if v not in set(self.vertices):
            raise InputError(f"unknown vertex id {v}")
        return sum(1 for _, a, b in self.edges if a == v) + \
            sum(1 for _, a, b in self.edges if b == v)

    def is_terminal(self, v: int) -> bool:
        return v in self.terminals

    def fresh_vertex_id(self) -> int:
        return (max(self.vertices) + 1) if self.vertices else 1

    def fresh_edge_id(self) -> int:
        return (max(e[0] for e in self.edges) + 1) if self.edges else 1


def capacity(net: TerminalNetwork, S: Iterable[int]) -> int:
    """cap(S) = sum of degrees of S, so parallel edges count per copy."""
    sset = _vertex_subset(net, S)
    total = 0
    for _, u, v in net.edges:
        if u in sset:
            total += 1
        if v in sset:
            total += 1
    return total


def terminal_capacity(net: TerminalNetwork) -> int:
    """k = cap(T), the measure every bound in this library is stated in."""
    return capacity(net, net.terminals)


def boundary(net: TerminalNetwork, S: Iterable[int]) -> tuple[int, ...]:
    """Edge ids with exactly one endpoint in S, ascending."""
    sset = _vertex_subset(net, S)
    return tuple(eid for eid, u, v in net.edges if (u in sset) != (v in sset))


def edges_between(net: TerminalNetwork, A: Iterable[int], B: Iterable[int]) -> tuple[int, ...]:
    aset = _vertex_subset(net, A)
    bset = _vertex_subset(net, B)
    if aset & bset:
        raise InputError("edges_between requires disjoint vertex sets")
    return tuple(eid for eid, u, v in net.edges
                 if (u in aset and v in bset) or (u in bset and v in aset))


def t_capacity(net: TerminalNetwork, S: Iterable[int]) -> int:
    """cap_T(S) = cap(T intersect S) + |boundary(S)|.

    Equals the terminal capacity of the recursive instance on S; the identity
    is asserted by recursive_instance.
    """
    sset = _vertex_subset(net, S)
    return capacity(net, sset & set(net.terminals)) + len(boundary(net, sset))


def neighborhood(net: TerminalNetwork, S: Iterable[int]) -> tuple[int, ...]:
    """Open neighborhood N(S), ascending."""
    sset = _vertex_subset(net, S)
    out: set[int] = set()
    for _, u, v in net.edges:
        if u in sset and v not in sset:
            out.add(v)
        if v in sset and u not in sset:
            out.add(u)
    return tuple(sorted(out))


def components(net: TerminalNetwork) -> tuple[tuple[int, ...], ...]:
    """Connected components as sorted vertex tuples, ordered by min vertex."""
    adj = net.adjacency()
    seen: set[int] = set()
    comps: list[tuple[int, ...]] = []
    for start in net.vertices:
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        comp = []
        while queue:
            v = queue.pop()
            comp.append(v)
            for _, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    return tuple(comps)


def recursive_instance(net: TerminalNetwork, S: Iterable[int]
                       ) -> tuple[TerminalNetwork, dict[int, int]]:
    """Sub-network G_S induced by N[S] minus the edges inside N(S).

    Keeps every edge with at least one endpoint in S, under its original id.
    The terminal set of G_S is (T intersect S) union N(S). Returns the network
    and the edge-id embedding into the parent (identity mapping).
    """
    sset = _vertex_subset(net, S)
    if not sset:
        raise InputError("recursive instance requires a nonempty vertex set")
    nbrs = set(neighborhood(net, sset))
    verts = sset | nbrs
    kept = [(eid, u, v) for eid, u, v in net.edges if u in sset or v in sset]
    new_terms = sorted((set(net.terminals) & sset) | nbrs)
    sub = TerminalNetwork.build(verts, kept, new_terms)
    # cap_{G_S}(T(S)) must equal cap_T(S) in the parent; both double-count
    # terminal-to-boundary edges the same way.
    assert terminal_capacity(sub) == t_capacity(net, sset)
    return sub, {eid: eid for eid, _, _ in kept}


def contract_edge(net: TerminalNetwork, eid: int) -> TerminalNetwork:
    """Contract one edge. The merged vertex keeps the terminal identity if one
    endpoint is a terminal, otherwise the smaller vertex id. Self-loops formed
    by parallel copies are discarded; all other surviving edges keep their ids.
    """
    u, v = net.endpoints(eid)
    u_t, v_t = net.is_terminal(u), net.is_terminal(v)
    if u_t and v_t:
        raise TerminalContractionError(
            f"edge {eid} joins terminals {u} and {v}; contraction refused")
    if u_t:
        keep, gone = u, v
    elif v_t:
        keep, gone = v, u
    else:
        keep, gone = min(u, v), max(u, v)
    new_edges = []
    for e, a, b in net.edges:
        if e == eid:
            continue
        a2 = keep if a == gone else a
        b2 = keep if b == gone else b
        new_edges.append((e, a2, b2))
    verts = [w for w in net.vertices if w != gone]
    return TerminalNetwork.build(verts, new_edges, net.terminals)


def contract_vertex_set(net: TerminalNetwork, S: Iterable[int], onto: int) -> TerminalNetwork:
    """Collapse a vertex set onto one of its members in a single step.

    At most one terminal may lie in S and it must be `onto` if present.
    """
    sset = _vertex_subset(net, S)
    if onto not in sset:
        raise InputError(f"vertex {onto} is not in the set being collapsed")
    terms_inside = sset & set(net.terminals)
    if terms_inside - {onto}:
        raise TerminalContractionError(
            f"collapsing {sorted(sset)} would merge terminals {sorted(terms_inside)}")
    new_edges = []
    for e, a, b in net.edges:
        a2 = onto if a in sset else a
        b2 = onto if b in sset else b
        if a2 == b2:
            continue
        new_edges.append((e, a2, b2))
    verts = [w for w in net.vertices if w not in sset or w == onto]
    return TerminalNetwork.build(verts, new_edges, net.terminals)


def delete_edges(net: TerminalNetwork, eids: Iterable[int]) -> TerminalNetwork:
    """Remove the given edges; all vertices stay, including newly isolated
    ones, so component counts reflect the deletion.
    """
    drop = set(int(e) for e in eids)
    known = set(e[0] for e in net.edges)
    missing = drop - known
    if missing:
        raise InputError(f"unknown edge ids {sorted(missing)}")
    return TerminalNetwork(
        net.vertices,
        tuple(e for e in net.edges if e[0] not in drop),
        net.terminals)


# -- local reduction rules -------------------------------------------------

@dataclass(frozen=True)
class Contract:
    """Trace event: edge `eid` was contracted."""
    eid: int


@dataclass(frozen=True)
class DeleteLeaf:
    """Trace event: non-terminal leaf `vertex` and its single edge removed."""
    vertex: int


@dataclass(frozen=True)
class DeleteComponent:
    """Trace event: a connected component without terminals was removed."""
    vertices: tuple[int, ...]


LocalEvent = Contract | DeleteLeaf | DeleteComponent


def degree2_reduce(net: TerminalNetwork
                   ) -> tuple[TerminalNetwork, tuple[LocalEvent, ...]]:
    """Exhaustively apply the always-safe local rules.

    Deletes connected components containing no terminal, deletes non-terminal
    leaves, and contracts the lowest-id edge at each non-terminal vertex of
    degree 2, except when both incident edges join the same endpoint pair
    (kept to preserve multiplicity). No minimum multiway cut value over any
    partition of T changes. Returns the reduced network and the event list in
    application order.
    """
    events: list[LocalEvent] = []
    cur = net
    while True:
        tset = set(cur.terminals)
        dead = [c for c in components(cur) if not (set(c) & tset)]
        if dead:
            goners: set[int] = set()
            for comp in dead:
                events.append(DeleteComponent(comp))
                goners |= set(comp)
            cur = TerminalNetwork.build(
                [v for v in cur.vertices if v not in goners],
                [e for e in cur.edges if e[1] not in goners],
                cur.terminals)
            continue
        adj = cur.adjacency()
        leaf = next((v for v in cur.vertices
                     if v not in tset and len(adj[v]) == 1), None)
        if leaf is not None:
            eid = adj[leaf][0][0]
            events.append(DeleteLeaf(leaf))
            cur = TerminalNetwork.build(
                [v for v in cur.vertices if v != leaf],
                [e for e in cur.edges if e[0] != eid],
                cur.terminals)
            continue
        deg2 = None
        for v in cur.vertices:
            if v in tset or len(adj[v]) != 2:
                continue
            (e1, w1), (e2, w2) = adj[v]
            if w1 == w2:
                continue  # parallel pair kept to preserve multiplicity
            deg2 = min(e1, e2)
            break
        if deg2 is not None:
            events.append(Contract(deg2))
            cur = contract_edge(cur, deg2)
            continue
        return cur, tuple(events)


def apply_local_event(net: TerminalNetwork, ev: LocalEvent) -> TerminalNetwork:
    if isinstance(ev, Contract):
        return contract_edge(net, ev.eid)
    if isinstance(ev, DeleteLeaf):
        adj = net.adjacency()
        if ev.vertex not in adj or len(adj[ev.vertex]) != 1:
            raise InputError(f"replay: vertex {ev.vertex} is not a leaf")
        eid = adj[ev.vertex][0][0]
        return TerminalNetwork.build(
            [v for v in net.vertices if v != ev.vertex],
            [e for e in net.edges if e[0] != eid],
            net.terminals)
    if isinstance(ev, DeleteComponent):
        goners = set(ev.vertices)
        return TerminalNetwork.build(
            [v for v in net.vertices if v not in goners],
            [e for e in net.edges if e[1] not in goners],
            net.terminals)
    raise InputError(f"unknown local event {ev!r}")


# -- partitions and requests ------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """A partition of the terminal set into nonempty blocks, canonicalized:
    each block is a sorted tuple and blocks are ordered by least member.
    """

    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(terminals: Sequence[int], blocks: Iterable[Iterable[int]]) -> "Partition":
        canon = tuple(sorted((tuple(sorted(set(b))) for b in blocks),
                             key=lambda b: b[0] if b else -1))
        flat = [t for b in canon for t in b]
        if any(not b for b in canon):
            raise InputError("partition blocks must be nonempty")
        if len(flat) != len(set(flat)):
            raise InputError("partition blocks must be disjoint")
        if set(flat) != set(terminals):
            raise InputError("partition must cover the terminal set exactly")
        return Partition(canon)

    @property
    def size(self) -> int:
        return len(self.blocks)

    def block_of(self, t: int) -> int:
        for i, b in enumerate(self.blocks):
            if t in b:
                return i
        raise InputError(f"{t} is not in this partition")

    def to_text(self) -> str:
        return "|".join(",".join(str(t) for t in b) for b in self.blocks)

    @staticmethod
    def from_text(terminals: Sequence[int], text: str) -> "Partition":
        try:
            blocks = [[int(x) for x in part.split(",")] for part in text.split("|")]
        except ValueError as exc:
            raise InputError(f"bad partition text {text!r}") from exc
        return Partition.of(terminals, blocks)


def all_partitions(terminals: Sequence[int]) -> Iterator[Partition]:
    """Every partition of the terminal set, deterministic order."""
    terms = sorted(terminals)

    def rec(items: list[int], acc: list[list[int]]) -> Iterator[list[list[int]]]:
        if not items:
            yield [list(b) for b in acc]
            return
        head, rest = items[0], items[1:]
        for i in range(len(acc)):
            acc[i].append(head)
            yield from rec(rest, acc)
            acc[i].pop()
        acc.append([head])
        yield from rec(rest, acc)
        acc.pop()

    for blocks in rec(terms, []):
        yield Partition.of(terms, blocks)


@dataclass(frozen=True)
class CutRequests:
    """Unordered terminal pairs to disconnect; pairs stored sorted."""

    pairs: tuple[tuple[int, int], ...]

    @staticmethod
    def of(terminals: Sequence[int], pairs: Iterable[tuple[int, int]]) -> "CutRequests":
        tset = set(terminals)
        canon = []
        for a, b in pairs:
            a, b = int(a), int(b)
            if a == b:
                raise InputError(f"request pair ({a},{b}) is not a pair")
            if a not in tset or b not in tset:
                raise InputError(f"request endpoint not a terminal: ({a},{b})")
            canon.append((min(a, b), max(a, b)))
        return CutRequests(tuple(sorted(set(canon))))


# -- text format -------------------------------------------------------------

def parse_network(text: str) -> TerminalNetwork:
    header = None
    terms: list[int] = []
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise InputError(f"line {lineno}: duplicate header")
            if len(parts) != 5 or parts[1] != "tn":
                raise InputError(f"line {lineno}: expected 'p tn <n> <m> <t>'")
            try:
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            except ValueError:
                raise InputError(f"line {lineno}: header fields must be integers")
        elif parts[0] == "t":
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected 't <vertex>'")
            try:
                terms.append(int(parts[1]))
            except ValueError:
                raise InputError(f"line {lineno}: terminal must be an integer")
        elif parts[0] == "e":
            if len(parts) != 3:
                raise InputError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise InputError(f"line {lineno}: endpoints must be integers")
            edges.append((len(edges) + 1, u, v))
        else:
            raise InputError(f"line {lineno}: unknown line type {parts[0]!r}")
    if header is None:
        raise InputError("missing 'p tn' header")
    n, m, t = header
    verts = set(terms)
    for _, u, v in edges:
        verts.add(u)
        verts.add(v)
    if any(v <= 0 for v in verts):
        raise InputError("vertex ids must be positive")
    if len(edges) != m:
        raise InputError(f"header declares {m} edges, found {len(edges)}")
    if len(set(terms)) != t:
        raise InputError(f"header declares {t} terminals, found {len(set(terms))}")
    if len(verts) != n:
        raise InputError(f"header declares {n} vertices, found {len(verts)}")
    return TerminalNetwork.build(verts, edges, terms)


def format_network(net: TerminalNetwork) -> str:
    """Canonical text form: sorted terminals, edges by id, endpoints ascending.

    Vertices appear only through t/e lines, so an isolated non-terminal vertex
    is not representable and is dropped from the header count.
    """
    adj = net.adjacency()
    visible = sorted(v for v in net.vertices
                     if v in net.terminals or adj[v])
    lines = [f"p tn {len(visible)} {net.m} {len(net.terminals)}"]
    for t in net.terminals:
        lines.append(f"t {t}")
    for eid, u, v in net.edges:
        a, b = (u, v) if u <= v else (v, u)
        lines.append(f"e {a} {b}")
    return "\n".join(lines) + "\n"


def parse_pairs(text: str) -> tuple[tuple[int, int], ...]:
    """Request lines `r <u> <v>` as raw vertex pairs, order preserved."""
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "r" or len(parts) != 3:
            raise InputError(f"line {lineno}: expected 'r <u> <v>'")
        try:
            pairs.append((int(parts[1]), int(parts[2])))
        except ValueError:
            raise InputError(f"line {lineno}: endpoints must be integers")
    return tuple(pairs)


def parse_requests(net: TerminalNetwork, text: str) -> CutRequests:
    return CutRequests.of(net.terminals, parse_pairs(text))


def format_requests(requests: CutRequests) -> str:
    return "".join(f"r {a} {b}\n" for a, b in requests.pairs)


def _vertex_subset(net: TerminalNetwork, S: Iterable[int]) -> set[int]:
    sset = set(int(v) for v in S)
    unknown = sset - set(net.vertices)
    if unknown:
        raise InputError(f"unknown vertex ids {sorted(unknown)}")
    return sset
