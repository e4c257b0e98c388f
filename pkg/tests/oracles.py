"""Independent brute-force oracles for the metric and modularity tests.

Everything here works on raw dicts (edges keyed by (source, target),
plain group maps, plain rating maps) and transcribes each score's
definition directly, term by term, without touching the library's graph
types or any of its helper indexes. Deliberately slow and literal.
"""

from __future__ import annotations

import math
import random
from itertools import combinations


def links(edges, src, tgt):
    return edges.get((src, tgt), 0)


def backlink_set(edges, w):
    return {s for (s, t) in edges if t == w and edges[(s, t)] > 0}


def oracle_back(edges, targets, group_of, w):
    group = [t for t in targets if group_of[t] == group_of[w]]
    num = sum(links(edges, w, wj) for wj in group if wj != w)
    den = 1 + sum(links(edges, w, wk) for wk in targets if wk != w)
    return num / den


def oracle_bridge(edges, targets, group_of, w):
    outside = [t for t in targets if group_of[t] != group_of[w]]
    num = sum(links(edges, w, wj) for wj in outside)
    den = 1 + sum(links(edges, w, wk) for wk in targets if wk != w)
    return num / den


def oracle_build(edges, targets, group_of, w):
    mates = [t for t in targets if group_of[t] == group_of[w] and t != w]
    if not mates:
        return 0.0
    b_w = backlink_set(edges, w)
    total = 0.0
    for mate in mates:
        b_j = backlink_set(edges, mate)
        union = b_w | b_j
        total += len(b_w & b_j) / len(union) if union else 0.0
    return total / len(mates)


def oracle_boost(edges, targets, group_of, w):
    group = [t for t in targets if group_of[t] == group_of[w]]
    b_w = backlink_set(edges, w)
    b_prime = {
        b
        for b in b_w
        if any(links(edges, b, wk) > 0 for wk in group if wk != w)
    }
    num = sum(links(edges, b, w) for b in b_prime)
    den = 1 + sum(links(edges, b, w) for b in b_w)
    return num / den


def oracle_negate(edges, ratings, w):
    """Double sum over the unique ratings of the rated backlink sources."""
    rated = [b for b in backlink_set(edges, w) if ratings.get(b) is not None]
    total = sum(links(edges, b, w) for b in rated)
    if total == 0:
        return 1.0
    unique = {ratings[b] for b in rated}
    num = sum(
        k * sum(links(edges, b, w) for b in rated if ratings[b] == k) for k in unique
    )
    return 1.0 - num / (100.0 * total)


def oracle_loss(edges_t1, edges_t2, b, w):
    return max(0, links(edges_t1, b, w) - links(edges_t2, b, w))


def oracle_neutralize(edges_t1, edges_t2, targets, group_of, w):
    group = [t for t in targets if group_of[t] == group_of[w]]
    num = sum(oracle_loss(edges_t1, edges_t2, wj, w) for wj in group)
    den = 1 + sum(
        oracle_loss(edges_t1, edges_t2, b, w) for b in backlink_set(edges_t1, w)
    )
    return num / den


def oracle_narrow(edges, w):
    b_w = sorted(backlink_set(edges, w))
    if len(b_w) == 0:
        return 0.0
    if len(b_w) == 1:
        return 1.0
    total = sum(links(edges, b, w) for b in b_w)
    entropy = 0.0
    for b in b_w:
        p = links(edges, b, w) / total
        entropy -= p * math.log(p)
    return 1.0 - entropy / math.log(len(b_w))


def oracle_neglect(edges_t1, edges_t2, w):
    num = sum(oracle_loss(edges_t1, edges_t2, b, w) for b in backlink_set(edges_t1, w))
    t2_total = sum(c for (s, t), c in edges_t2.items() if t == w)
    return num / max(1, t2_total)


# ---------------------------------------------------------------------------
# Random raw graphs for the oracle corpus
# ---------------------------------------------------------------------------


def random_case(rng: random.Random):
    """One random small case: two snapshots, targets, groups, ratings.

    Dimensions per the oracle-suite contract: at most 8 targets, 12
    external backlinkers, link counts at most 10, integer ratings in
    [0, 100] with some domains unrated.
    """
    n_targets = rng.randint(1, 8)
    n_ext = rng.randint(0, 12)
    targets = [f"t{i}.example" for i in range(n_targets)]
    externals = [f"b{i}.example" for i in range(n_ext)]
    everyone = targets + externals

    n_groups = rng.randint(1, min(4, n_targets))
    group_of = {}
    for i, t in enumerate(targets):
        group_of[t] = f"g{i % n_groups}"
    for t in targets:
        # random reassignment; a group emptied here simply stops existing
        if rng.random() < 0.5:
            group_of[t] = f"g{rng.randrange(n_groups)}"

    def random_edges():
        edges = {}
        for src in everyone:
            for tgt in targets:
                if src != tgt and rng.random() < 0.25:
                    edges[(src, tgt)] = rng.randint(1, 10)
        # a few target->external edges; ignored by every formula
        for src in targets:
            for tgt in externals:
                if rng.random() < 0.1:
                    edges[(src, tgt)] = rng.randint(1, 10)
        return edges

    edges_t1 = random_edges()
    # t2 correlated with t1 so losses are non-trivial: keep, shrink, drop, add
    edges_t2 = {}
    for key, count in edges_t1.items():
        roll = rng.random()
        if roll < 0.5:
            edges_t2[key] = count
        elif roll < 0.75:
            shrunk = rng.randint(0, count)
            if shrunk:
                edges_t2[key] = shrunk
    for src in everyone:
        for tgt in targets:
            if src != tgt and (src, tgt) not in edges_t2 and rng.random() < 0.05:
                edges_t2[(src, tgt)] = rng.randint(1, 10)

    ratings = {}
    for domain in everyone:
        ratings[domain] = rng.randint(0, 100) if rng.random() < 0.8 else None
    return edges_t1, edges_t2, targets, group_of, ratings


# ---------------------------------------------------------------------------
# Modularity: evaluator and exhaustive optimum
# ---------------------------------------------------------------------------


def symmetrize(edges, nodes):
    """u(i, j) = links(i->j) + links(j->i) for unordered target pairs."""
    weights = {}
    node_set = set(nodes)
    for (src, tgt), count in edges.items():
        if src in node_set and tgt in node_set and src != tgt:
            key = (min(src, tgt), max(src, tgt))
            weights[key] = weights.get(key, 0) + count
    return weights


def oracle_modularity(edges, nodes, community_of, gamma=1.0):
    """Q = sum over pairs in the same community of [u_ij - g k_i k_j / 2m] / 2m."""
    weights = symmetrize(edges, nodes)
    degree = {n: 0.0 for n in nodes}
    for (a, b), u in weights.items():
        degree[a] += u
        degree[b] += u
    two_m = sum(degree.values())
    if two_m == 0:
        return 0.0
    q = 0.0
    for i in nodes:
        for j in nodes:
            if community_of[i] != community_of[j]:
                continue
            if i == j:
                u = 0.0
            else:
                u = weights.get((min(i, j), max(i, j)), 0)
            q += u - gamma * degree[i] * degree[j] / two_m
    return q / two_m


def set_partitions(items):
    """Every partition of ``items`` into non-empty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [partition[i] + [first]] + partition[i + 1 :]
        yield partition + [[first]]


def best_partition_modularity(edges, nodes, gamma=1.0):
    """Exhaustive optimum over all partitions; only sane for <= 8 nodes."""
    best = -math.inf
    best_partition = None
    for blocks in set_partitions(nodes):
        community_of = {}
        for idx, block in enumerate(blocks):
            for node in block:
                community_of[node] = idx
        q = oracle_modularity(edges, nodes, community_of, gamma)
        if q > best:
            best = q
            best_partition = [sorted(block) for block in blocks]
    return best, best_partition


# ---------------------------------------------------------------------------
# Spearman: Pearson correlation of hand-assigned average ranks
# ---------------------------------------------------------------------------


def hand_ranks(values):
    ranked = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[ranked[j + 1]] == values[ranked[i]]:
            j += 1
        for k in range(i, j + 1):
            ranks[ranked[k]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def oracle_spearman_rho(x, y):
    rx, ry = hand_ranks(x), hand_ranks(y)
    n = len(x)
    mx, my = sum(rx) / n, sum(ry) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    vx = sum((a - mx) ** 2 for a in rx)
    vy = sum((b - my) ** 2 for b in ry)
    return cov / math.sqrt(vx * vy)
