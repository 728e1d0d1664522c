"""Matroid representations against first-principles oracles: uniform via
subset sizes, graphic via acyclicity, gammoids via the disjoint-path flow
oracle.
"""

import itertools
import random

import pytest

from cutmimic.errors import FieldTooSmallError, InputError
from cutmimic.ffield import MERSENNE61, PrimeField, PrimeFieldMatrix, rank
from cutmimic.matroids import (
    LayeredMatroid,
    MatroidRep,
    block_matrix,
    build_edge_cut_gammoid_digraph,
    disjoint_union,
    edge_cut_gammoid,
    gammoid_rep,
    graphic_rep,
    is_independent_by_flow,
    max_disjoint_paths,
    relabel_ground,
    signed_incidence,
    uniform_rep,
)
from cutmimic.netgraph import TerminalNetwork

from conftest import random_connected_network, triangle

F = PrimeField(MERSENNE61)


def is_forest(net: TerminalNetwork, eids) -> bool:
    parent = {v: v for v in net.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in eids:
        u, v = net.endpoints(e)
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


class TestUniform:
    def test_rank2_of_4(self):
        rep = uniform_rep(F, [1, 2, 3, 4], 2)
        for pair in itertools.combinations([1, 2, 3, 4], 2):
            assert rep.is_independent(pair)
        for trip in itertools.combinations([1, 2, 3, 4], 3):
            assert not rep.is_independent(trip)

    def test_rank0(self):
        rep = uniform_rep(F, [1, 2], 0)
        assert rep.is_independent(())
        assert not rep.is_independent((1,))

    def test_exhaustive_independence_iff_small(self):
        for m in range(1, 9):
            for r in range(0, m + 1):
                rep = uniform_rep(F, list(range(1, m + 1)), r)
                for size in range(0, m + 1):
                    for X in itertools.combinations(range(1, m + 1), size):
                        assert rep.is_independent(X) == (size <= r)

    def test_field_too_small(self):
        with pytest.raises(FieldTooSmallError):
            uniform_rep(PrimeField(7), list(range(1, 8)), 3)


class TestGraphic:
    def test_triangle_cycle_dependent(self):
        rng = random.Random(0)
        rep = graphic_rep(F, rng, triangle(()), max_rank=3)
        assert not rep.is_independent((1, 2, 3))
        assert rep.is_independent((1, 2))

    def test_untruncated_matches_acyclicity(self):
        rng = random.Random(1)
        for _ in range(15):
            net = random_connected_network(rng, n_hi=5, extra_hi=3,
                                           n_terminals=1)
            if net.m > 6:
                continue
            rep = graphic_rep(F, rng, net, max_rank=net.n)
            ids = net.edge_ids()
            for size in range(len(ids) + 1):
                for X in itertools.combinations(ids, size):
                    assert rep.is_independent(X) == is_forest(net, X)

    def test_truncated_path(self):
        verts = list(range(6))
        edges = [(i + 1, i, i + 1) for i in range(5)]
        net = TerminalNetwork.build(verts, edges, [0])
        for seed in range(100):
            rep = graphic_rep(F, random.Random(seed), net, max_rank=2)
            assert rep.rank == 2
            for X in itertools.combinations(net.edge_ids(), 3):
                assert not rep.is_independent(X)
            for X in itertools.combinations(net.edge_ids(), 2):
                assert rep.is_independent(X)  # any 2 path edges are a forest

    def test_signed_incidence_shape(self):
        net = triangle(())
        inc = signed_incidence(F, net)
        assert inc.rows == 3 and inc.cols == 3
        for j in range(3):
            assert sum(inc.column(j)) % F.p == 0
        assert rank(inc) == net.n - 1


class TestGammoidDigraph:
    def test_path_two_edges(self):
        net = TerminalNetwork.build([1, 2, 3], [(1, 1, 2), (2, 2, 3)], [1])
        inst = build_edge_cut_gammoid_digraph(net)
        assert set(inst.digraph.nodes) == {
            ("z", 1), ("z", 2), ("zp", 1), ("zp", 2)}
        assert set(inst.digraph.arcs) == {
            (("z", 1), ("z", 2)), (("z", 2), ("z", 1)),
            (("z", 1), ("zp", 2)), (("z", 2), ("zp", 1))}
        assert inst.sources == (("z", 1),)

    def test_single_edge_no_arcs(self):
        net = TerminalNetwork.build([1, 2], [(1, 1, 2)], [1])
        inst = build_edge_cut_gammoid_digraph(net)
        assert inst.digraph.arcs == ()

    def test_triangle_counts(self):
        inst = build_edge_cut_gammoid_digraph(triangle(()))
        assert len(inst.digraph.nodes) == 6
        assert len(inst.digraph.arcs) == 12

    def test_ground_layout(self):
        inst = build_edge_cut_gammoid_digraph(triangle((1,)))
        assert inst.ground == (("z", 1), ("z", 2), ("z", 3),
                               ("zp", 1), ("zp", 2), ("zp", 3))


class TestFlowOracle:
    def test_sources_are_independent(self):
        net = triangle((1, 2))
        inst = build_edge_cut_gammoid_digraph(net)
        assert is_independent_by_flow(
            inst.digraph, inst.sources, inst.sources)

    def test_pigeonhole(self):
        net = TerminalNetwork.build([1, 2, 3], [(1, 1, 2), (2, 2, 3)], [1])
        inst = build_edge_cut_gammoid_digraph(net)
        assert not is_independent_by_flow(
            inst.digraph, inst.sources, [("z", 1), ("z", 2)])

    def test_path_linkage(self):
        net = TerminalNetwork.build([1, 2, 3], [(1, 1, 2), (2, 2, 3)], [1])
        inst = build_edge_cut_gammoid_digraph(net)
        dg, src = inst.digraph, inst.sources
        assert max_disjoint_paths(dg, src, [("zp", 2)]) == 1
        assert is_independent_by_flow(dg, src, [("z", 1)])
        assert is_independent_by_flow(dg, src, [("zp", 2)])


class TestGammoidRep:
    def test_path_examples(self):
        net = TerminalNetwork.build([1, 2, 3], [(1, 1, 2), (2, 2, 3)], [1])
        rep = edge_cut_gammoid(F, random.Random(3), net)
        assert rep.rank == 1  # one terminal-incident edge
        assert rep.is_independent(())
        assert rep.is_independent((("z", 1),))
        assert not rep.is_independent((("z", 1), ("z", 2)))
        assert not rep.is_independent((("z", 1), ("zp", 1)))

    def test_agreement_with_flow_oracle(self):
        """Representation independence must equal linkage by disjoint paths,
        for every subset of size <= 3."""
        rng = random.Random(17)
        for _ in range(12):
            net = random_connected_network(rng, n_hi=5, extra_hi=2,
                                           n_terminals=rng.randint(1, 2))
            if net.m > 6:
                continue
            inst = build_edge_cut_gammoid_digraph(net)
            rep = gammoid_rep(F, rng, inst.digraph, inst.sources, inst.ground)
            for size in range(0, 4):
                for X in itertools.combinations(inst.ground, size):
                    expect = is_independent_by_flow(
                        inst.digraph, inst.sources, X)
                    assert rep.is_independent(X) == expect, (net.edges, X)


class TestAssembly:
    def test_block_matrix_identity(self):
        one = PrimeFieldMatrix.identity(F, 1)
        assert block_matrix(F, [one, one]) == PrimeFieldMatrix.identity(F, 2)

    def test_disjoint_union_empty_refused(self):
        with pytest.raises(InputError):
            disjoint_union(F, [])
        with pytest.raises(InputError):
            LayeredMatroid(())

    def test_block_rank_adds(self):
        a = uniform_rep(F, [1, 2], 2)
        b = uniform_rep(F, [1, 2, 3], 3)
        assert rank(block_matrix(F, [a.matrix, b.matrix])) == 5

    def test_union_independence_is_layerwise(self):
        a = uniform_rep(F, ["a1", "a2", "a3"], 1)
        b = uniform_rep(F, ["b1", "b2"], 2)
        rep = disjoint_union(F, [a, b])
        labels = list(rep.ground)
        for size in range(len(labels) + 1):
            for X in itertools.combinations(labels, size):
                per_layer = [
                    tuple(x for layer, x in X if layer == i)
                    for i in range(2)]
                expect = a.is_independent(per_layer[0]) and \
                    b.is_independent(per_layer[1])
                assert rep.is_independent(X) == expect

    def test_field_mismatch_refused(self):
        a = uniform_rep(F, [1], 1)
        b = uniform_rep(PrimeField(7), [1], 1)
        with pytest.raises(InputError):
            LayeredMatroid((a, b))

    def test_layered_accessors(self):
        a = uniform_rep(F, [1, 2], 2)
        b = uniform_rep(F, [1, 2, 3], 2)
        lm = LayeredMatroid((a, b))
        assert lm.ranks == (2, 2)
        assert lm.rank_product() == 4
        assert lm.total_columns() == 5
        cols = lm.tuple_column((2, 3))
        assert cols[0] == a.column_of(2) and cols[1] == b.column_of(3)
        with pytest.raises(InputError):
            lm.tuple_column((1,))

    def test_relabel_ground(self):
        a = uniform_rep(F, [1, 2], 1)
        out = relabel_ground(a, ["x", "y"])
        assert out.ground == ("x", "y")
        with pytest.raises(InputError):
            relabel_ground(a, ["x"])
