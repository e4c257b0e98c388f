"""Louvain grouping: correctness, determinism, evaluator agreement."""

import random

import pytest

from bendweb import (
    LouvainConfig,
    TargetGrouping,
    WebGraphSnapshot,
    filter_connected_targets,
    induce_target_subgraph,
    louvain,
    louvain_with_modularity,
    modularity,
)
from oracles import best_partition_modularity, oracle_modularity, random_case


def snap(edges):
    return WebGraphSnapshot("t", edges, normalize=False)


def two_clique_graph():
    """Two 4-cliques (every internal pair weight 1) plus one bridge edge."""
    nodes = [f"n{i}.example" for i in range(8)]
    edges = {}
    for block in (nodes[:4], nodes[4:]):
        for i in range(4):
            for j in range(i + 1, 4):
                edges[(block[i], block[j])] = 1
    edges[(nodes[0], nodes[4])] = 1
    return nodes, edges


class TestInduceSubgraph:
    def test_filters_mixed_edges(self):
        s = snap({("a.example", "b.example"): 2,
                  ("a.example", "x.example"): 9,
                  ("x.example", "b.example"): 4})
        sub = induce_target_subgraph(s, {"a.example", "b.example"})
        assert sub.as_edge_dict() == {("a.example", "b.example"): 2}

    def test_disjoint_targets(self):
        s = snap({("a.example", "b.example"): 2})
        sub = induce_target_subgraph(s, {"p.example", "q.example"})
        assert sub.num_edges == 0

    def test_identity_when_all_internal(self):
        s = snap({("a.example", "b.example"): 2, ("b.example", "a.example"): 1})
        sub = induce_target_subgraph(s, {"a.example", "b.example"})
        assert sub == s


class TestFilterConnected:
    def test_basic(self):
        s = snap({("a.example", "b.example"): 1})
        got = filter_connected_targets(s, {"a.example", "b.example", "c.example"})
        assert got == {"a.example", "b.example"}

    def test_no_internal_edges(self):
        s = snap({("a.example", "x.example"): 1})
        assert filter_connected_targets(s, {"a.example", "b.example"}) == set()

    def test_complete_digraph(self):
        nodes = [f"d{i}.example" for i in range(4)]
        edges = {(a, b): 1 for a in nodes for b in nodes if a != b}
        assert filter_connected_targets(snap(edges), nodes) == set(nodes)


class TestLouvain:
    def test_two_cliques_all_seeds(self):
        nodes, edges = two_clique_graph()
        expected = {frozenset(nodes[:4]), frozenset(nodes[4:])}
        for seed in range(10):
            grouping = louvain(snap(edges), nodes, LouvainConfig(seed=seed))
            assert set(grouping.groups.values()) == expected

    def test_modularity_matches_brute_force_optimum(self):
        nodes, edges = two_clique_graph()
        best, _ = best_partition_modularity(edges, nodes)
        for seed in range(10):
            grouping, quality = louvain_with_modularity(
                snap(edges), nodes, LouvainConfig(seed=seed)
            )
            assert quality == pytest.approx(best, abs=1e-9)
            assert modularity(snap(edges), grouping) == pytest.approx(best, abs=1e-9)

    def test_edgeless_targets_become_singletons(self):
        targets = [f"x{i}.example" for i in range(6)]
        grouping = louvain(snap({}), targets)
        assert len(grouping.groups) == 6
        assert all(len(m) == 1 for m in grouping.groups.values())

    def test_dyad_merges(self):
        # merged modularity 0 beats the split's -1/2
        s = snap({("a.example", "b.example"): 2, ("b.example", "a.example"): 3})
        grouping = louvain(s, ["a.example", "b.example"])
        assert grouping.groups == {"L0": {"a.example", "b.example"}}

    def test_isolated_target_stays_singleton(self):
        nodes, edges = two_clique_graph()
        targets = nodes + ["lonely.example"]
        grouping = louvain(snap(edges), targets)
        assert {"lonely.example"} in set(grouping.groups.values())

    def test_determinism(self):
        rng = random.Random(0)
        for trial in range(20):
            e1, _, targets, _, _ = random_case(rng)
            config = LouvainConfig(seed=trial)
            a = louvain(snap(e1), targets, config)
            b = louvain(snap(e1), targets, config)
            assert a == b

    def test_labels_by_descending_size(self):
        nodes, edges = two_clique_graph()
        targets = nodes + ["lonely.example"]
        grouping = louvain(snap(edges), targets)
        sizes = [len(grouping.members_of(f"L{i}")) for i in range(len(grouping.groups))]
        assert sizes == sorted(sizes, reverse=True)
        # tie between the 4-cliques broken by smallest member name
        assert min(grouping.members_of("L0")) < min(grouping.members_of("L1"))

    def test_empty_targets_rejected(self):
        with pytest.raises(ValueError):
            louvain(snap({}), [])

    def test_output_is_valid_partition(self):
        rng = random.Random(13)
        for trial in range(30):
            e1, _, targets, _, _ = random_case(rng)
            grouping = louvain(snap(e1), targets, LouvainConfig(seed=trial))
            assert isinstance(grouping, TargetGrouping)
            assert sorted(grouping.targets) == sorted(targets)
            seen = [m for members in grouping.groups.values() for m in members]
            assert sorted(seen) == sorted(targets)

    def test_never_worse_than_singletons(self):
        rng = random.Random(23)
        for trial in range(40):
            e1, _, targets, _, _ = random_case(rng)
            grouping = louvain(snap(e1), targets, LouvainConfig(seed=trial))
            achieved = oracle_modularity(
                e1, targets, {t: grouping.group_of(t) for t in targets}
            )
            singles = oracle_modularity(e1, targets, {t: t for t in targets})
            assert achieved >= singles - 1e-12

    def test_optimizer_agrees_with_evaluator(self):
        """Internal accounting == independent evaluator == raw-dict oracle."""
        rng = random.Random(29)
        for trial in range(40):
            e1, _, targets, _, _ = random_case(rng)
            s = snap(e1)
            grouping, quality = louvain_with_modularity(
                s, targets, LouvainConfig(seed=trial)
            )
            evaluated = modularity(s, grouping)
            oracle = oracle_modularity(
                e1, targets, {t: grouping.group_of(t) for t in targets}
            )
            assert quality == pytest.approx(evaluated, abs=1e-12)
            assert evaluated == pytest.approx(oracle, abs=1e-12)

    def test_binary_flag(self):
        # a thin 3-cycle plus one heavy dyad: with volumes the heavy pair
        # dominates; binary adjacency treats every link alike
        edges = {
            ("a.example", "b.example"): 1,
            ("b.example", "c.example"): 1,
            ("c.example", "a.example"): 1,
            ("d.example", "e.example"): 500,
            ("a.example", "d.example"): 1,
        }
        targets = [f"{c}.example" for c in "abcde"]
        weighted = louvain(snap(edges), targets, LouvainConfig(seed=0))
        binary = louvain(snap(edges), targets, LouvainConfig(seed=0, use_weights=False))
        assert weighted.group_of("d.example") == weighted.group_of("e.example")
        # both modes produce valid partitions; binary weighs the cycle equally
        assert sorted(binary.targets) == sorted(targets)

    def test_resolution_validation(self):
        with pytest.raises(ValueError):
            LouvainConfig(resolution=0)
        with pytest.raises(ValueError):
            LouvainConfig(max_passes=0)


class TestModularityEvaluator:
    def test_edgeless_graph_is_zero(self):
        grouping = TargetGrouping({"g": ["a.example"], "h": ["b.example"]})
        assert modularity(snap({}), grouping) == 0.0

    def test_symmetrization_sums_both_directions(self):
        # 2+3 one pair: same value as a single 5 in one direction
        g = TargetGrouping({"g": ["a.example", "b.example"]})
        s1 = snap({("a.example", "b.example"): 2, ("b.example", "a.example"): 3})
        s2 = snap({("a.example", "b.example"): 5})
        assert modularity(s1, g) == modularity(s2, g)

    def test_accepts_plain_mapping(self):
        s = snap({("a.example", "b.example"): 1})
        q_map = modularity(s, {"a.example": 0, "b.example": 0})
        g = TargetGrouping({"g": ["a.example", "b.example"]})
        assert q_map == modularity(s, g)
