import random

import numpy as np
import pytest

from unionsub.graphs import (
    Graph,
    GraphError,
    GraphParseError,
    NamedGraphSpec,
    Subgraph,
    closed_neighborhood,
    complete_graph,
    count_simple_cycles,
    cycle_graph,
    find_simple_cycle,
    four_cycle_pair,
    generate_named,
    induced_subgraph,
    is_isomorphic_small,
    parse_graph,
    path_graph,
    random_graph,
    rook_graph_4x4,
    shrikhande_graph,
    star_graph,
    two_triangles_graph,
)


class TestGraphInvariants:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError, match="self-loop"):
            Graph(3, [(0, 0)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(GraphError, match="duplicate"):
            Graph(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError, match="out of range"):
            Graph(2, [(0, 2)])

    def test_adjacency_sorted_and_consistent(self):
        g = Graph(4, [(2, 0), (3, 1), (0, 1)])
        assert g.adjacency[0] == (1, 2)
        assert g.edges == ((0, 1), (0, 2), (1, 3))
        assert g.has_edge(1, 0) and not g.has_edge(2, 3)

    def test_immutable(self):
        g = complete_graph(3)
        with pytest.raises(AttributeError):
            g.num_nodes = 5

    def test_features_shape_checked(self):
        with pytest.raises(GraphError):
            Graph(2, [(0, 1)], features=[[1.0]])
        g = Graph(2, [(0, 1)], features=[[1.0, 2.0], [3.0, 4.0]])
        assert g.features.shape == (2, 2)
        with pytest.raises(ValueError):
            g.features[0, 0] = 9.0  # read-only

    def test_feature_matrix_defaults_to_ones(self):
        g = complete_graph(3)
        assert np.array_equal(g.feature_matrix(), np.ones((3, 1)))

    def test_relabel_roundtrip(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)], features=[[1.0], [2.0], [3.0], [4.0]])
        perm = [2, 0, 3, 1]
        h = g.relabel(perm)
        inverse = [perm.index(i) for i in range(4)]
        assert h.relabel(inverse) == g


class TestParsing:
    def test_k3_edge_list(self):
        g = parse_graph("3 3\n0 1\n1 2\n0 2")
        assert g == complete_graph(3)

    def test_self_loop_reports_line(self):
        with pytest.raises(GraphParseError, match="line 2"):
            parse_graph("2 1\n0 0")

    def test_duplicate_reports_line(self):
        with pytest.raises(GraphParseError, match="line 3"):
            parse_graph("4 2\n0 1\n0 1")

    def test_malformed_header(self):
        with pytest.raises(GraphParseError, match="line 1"):
            parse_graph("3\n0 1")

    def test_out_of_range_reports_line(self):
        with pytest.raises(GraphParseError, match="line 2"):
            parse_graph("2 1\n0 5")

    def test_edge_count_mismatch(self):
        with pytest.raises(GraphParseError, match="expected 2 edge lines"):
            parse_graph("3 2\n0 1")

    def test_bytes_accepted(self):
        assert parse_graph(b"2 1\n0 1").num_edges == 1

    def test_json_roundtrip_with_features(self):
        g = Graph(3, [(0, 1), (1, 2)], features=[[0.5], [1.5], [2.5]])
        import json

        parsed = parse_graph(json.dumps(g.to_json_obj()))
        assert parsed == g

    def test_json_rejects_self_loop(self):
        with pytest.raises(GraphParseError, match="self-loop"):
            parse_graph('{"num_nodes": 2, "edges": [[1, 1]]}')

    def test_edge_list_roundtrip(self):
        g = rook_graph_4x4()
        assert parse_graph(g.to_edge_list_text()) == g


class TestNeighborhoods:
    def test_complete_graph(self):
        assert closed_neighborhood(complete_graph(3), 0) == {0, 1, 2}

    def test_path_endpoint(self):
        assert closed_neighborhood(path_graph(3), 0) == {0, 1}

    def test_isolated_node(self):
        assert closed_neighborhood(Graph(3, []), 1) == {1}

    def test_out_of_range(self):
        with pytest.raises(GraphError):
            closed_neighborhood(complete_graph(3), 3)


class TestInducedSubgraph:
    def test_c6_piece_is_path(self):
        s = induced_subgraph(cycle_graph(6), {0, 1, 2})
        assert s.parent_ids == (0, 1, 2)
        assert s.local == path_graph(3)

    def test_k4_piece_is_k3(self):
        s = induced_subgraph(complete_graph(4), {0, 1, 2})
        assert s.local == complete_graph(3)

    def test_empty_set(self):
        s = induced_subgraph(complete_graph(4), set())
        assert s.num_nodes == 0 and s.num_edges == 0

    def test_idempotent(self):
        rng = random.Random(0)
        for _ in range(20):
            g = random_graph(8, 0.4, rng)
            nodes = {v for v in range(8) if rng.random() < 0.6}
            s = induced_subgraph(g, nodes)
            again = induced_subgraph(s.local, range(s.num_nodes))
            assert again.local == s.local

    def test_induced_property(self):
        rng = random.Random(1)
        for _ in range(20):
            g = random_graph(9, 0.35, rng)
            nodes = sorted(v for v in range(9) if rng.random() < 0.5)
            s = induced_subgraph(g, nodes)
            for i in range(len(nodes)):
                for j in range(i + 1, len(nodes)):
                    assert s.local.has_edge(i, j) == g.has_edge(nodes[i], nodes[j])

    def test_subgraph_rejects_duplicate_parent_ids(self):
        with pytest.raises(GraphError):
            Subgraph(path_graph(2), [0, 0])


class TestIsomorphism:
    def test_k3_vs_c3(self):
        assert is_isomorphic_small(complete_graph(3), cycle_graph(3))

    def test_p4_vs_star(self):
        assert not is_isomorphic_small(path_graph(4), star_graph(3))

    def test_c6_vs_two_triangles(self):
        assert not is_isomorphic_small(cycle_graph(6), two_triangles_graph())

    def test_size_bound(self):
        with pytest.raises(GraphError, match="bound"):
            is_isomorphic_small(cycle_graph(13), cycle_graph(13))

    def test_invariant_under_relabeling(self):
        rng = random.Random(2)
        for _ in range(25):
            g = random_graph(7, 0.45, rng)
            perm = list(range(7))
            rng.shuffle(perm)
            assert is_isomorphic_small(g, g.relabel(perm))

    def test_equivalence_relation_spot_check(self):
        rng = random.Random(3)
        graphs = [random_graph(6, 0.5, rng) for _ in range(12)]
        for g in graphs:
            assert is_isomorphic_small(g, g)  # reflexive
        for a in graphs[:6]:
            for b in graphs[:6]:
                assert is_isomorphic_small(a, b) == is_isomorphic_small(b, a)
        for a, b, c in zip(graphs[:4], graphs[4:8], graphs[8:12]):
            if is_isomorphic_small(a, b) and is_isomorphic_small(b, c):
                assert is_isomorphic_small(a, c)


class TestCycleCounting:
    def test_c6_has_one_hexagon(self):
        assert count_simple_cycles(cycle_graph(6), 6) == 1

    def test_k4_triangles(self):
        assert count_simple_cycles(complete_graph(4), 3) == 4

    def test_two_triangles(self):
        assert count_simple_cycles(two_triangles_graph(), 3) == 2

    def test_against_permutation_oracle(self):
        # oracle: choose k nodes, count cyclic orderings realized as cycles
        import itertools

        def oracle(g, k):
            total = 0
            for nodes in itertools.combinations(range(g.num_nodes), k):
                for perm in itertools.permutations(nodes[1:]):
                    seq = (nodes[0],) + perm
                    if all(
                        g.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k)
                    ):
                        total += 1
            return total // 2  # two directions

        rng = random.Random(4)
        for _ in range(10):
            g = random_graph(7, 0.5, rng)
            for k in (3, 4, 5):
                assert count_simple_cycles(g, k) == oracle(g, k)

    def test_find_simple_cycle_agrees(self):
        rng = random.Random(5)
        for _ in range(20):
            g = random_graph(8, 0.3, rng)
            cycle = find_simple_cycle(g, 4)
            if count_simple_cycles(g, 4) > 0:
                assert cycle is not None and len(cycle) == 4
                for i in range(4):
                    assert g.has_edge(cycle[i], cycle[(i + 1) % 4])
            else:
                assert cycle is None


class TestNamedGenerators:
    def test_rook_is_srg_16_6_2_2(self):
        g = rook_graph_4x4()
        assert g.num_nodes == 16 and g.num_edges == 48
        self._check_srg(g, 6, 2, 2)

    def test_shrikhande_is_srg_16_6_2_2(self):
        g = shrikhande_graph()
        assert g.num_nodes == 16 and g.num_edges == 48
        self._check_srg(g, 6, 2, 2)

    @staticmethod
    def _check_srg(g, k, lam, mu):
        for v in range(g.num_nodes):
            assert g.degree(v) == k
        for v in range(g.num_nodes):
            for u in range(v + 1, g.num_nodes):
                common = len(set(g.neighbors(v)) & set(g.neighbors(u)))
                assert common == (lam if g.has_edge(v, u) else mu)

    def test_rook_shrikhande_same_degrees_not_isomorphic(self):
        rook, shr = rook_graph_4x4(), shrikhande_graph()
        assert rook.degree_sequence() == shr.degree_sequence()
        # independent non-isomorphism oracle: cycle content of the per-edge
        # union subgraphs (12/15 triangles/quads per rook edge vs 10/12)
        from unionsub.substructure import union_subgraph

        def union_cycle_stats(g):
            stats = set()
            for v, u in g.edges:
                s = union_subgraph(g, v, u)
                stats.add(
                    (count_simple_cycles(s.local, 3), count_simple_cycles(s.local, 4))
                )
            return stats

        assert union_cycle_stats(rook) == {(12, 15)}
        assert union_cycle_stats(shr) == {(10, 12)}

    def test_pair_kinds_equal_counts(self):
        for spec_text in ("two-triangles-vs-c6", "four-cycle-pair:4"):
            pair = generate_named(NamedGraphSpec.parse(spec_text), seed=1)
            assert len(pair) == 2
            assert pair[0].num_nodes == pair[1].num_nodes
            assert pair[0].num_edges == pair[1].num_edges

    def test_two_triangles_pair(self):
        a, b = generate_named(NamedGraphSpec.parse("two-triangles-vs-c6"))
        assert a.degree_sequence() == b.degree_sequence() == (2,) * 6
        assert not is_isomorphic_small(a, b)

    def test_four_cycle_pair_labels(self):
        rng = random.Random(11)
        for _ in range(5):
            pos, neg = four_cycle_pair(4, rng)
            assert count_simple_cycles(pos, 4) > 0
            assert count_simple_cycles(neg, 4) == 0
            assert pos.degree_sequence() == neg.degree_sequence()

    def test_spec_validation(self):
        with pytest.raises(GraphError):
            NamedGraphSpec("cycle", 0)
        with pytest.raises(GraphError):
            NamedGraphSpec.parse("nope")
        with pytest.raises(GraphError):
            NamedGraphSpec("four-cycle-pair", 9)

    def test_generation_deterministic(self):
        a = generate_named(NamedGraphSpec.parse("four-cycle-pair:4"), seed=7)
        b = generate_named(NamedGraphSpec.parse("four-cycle-pair:4"), seed=7)
        assert a == b
