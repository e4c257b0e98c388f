"""Target grouping via Louvain community detection.

The backlink graph is directed; community detection runs on its
undirected projection where the weight between two targets is the sum
of the link counts in both directions. Modularity is standard weighted
Newman-Girvan with a resolution parameter. The optimizer is the classic
two-phase Louvain: greedy local moves until a sweep yields almost no
gain, then aggregation of communities into super-nodes, repeated until
nothing merges.

Louvain is order-sensitive, so node visit order is a seeded shuffle per
sweep; identical inputs and seed give identical groupings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .graph import DomainId, GroupId, TargetGrouping, WebGraphSnapshot


@dataclass(frozen=True)
class LouvainConfig:
    resolution: float = 1.0
    seed: int = 0
    max_passes: int = 20
    min_modularity_gain: float = 1e-9
    use_weights: bool = True  # False: binary adjacency instead of link volumes

    def __post_init__(self) -> None:
        if self.resolution <= 0:
            raise ValueError(f"resolution must be > 0, got {self.resolution}")
        if self.max_passes < 1:
            raise ValueError(f"max_passes must be >= 1, got {self.max_passes}")
        if self.min_modularity_gain < 0:
            raise ValueError("min_modularity_gain must be >= 0")


def induce_target_subgraph(
    graph: WebGraphSnapshot, targets: Iterable[DomainId]
) -> WebGraphSnapshot:
    """Snapshot restricted to edges with both endpoints in ``targets``."""
    target_set = frozenset(targets)
    kept = {
        (src, tgt): count
        for src, tgt, count in graph.iter_edges()
        if src in target_set and tgt in target_set
    }
    return WebGraphSnapshot(graph.label, kept, normalize=False)


def filter_connected_targets(
    graph: WebGraphSnapshot, targets: Iterable[DomainId]
) -> set[DomainId]:
    """Targets with at least one link to or from another target."""
    target_set = frozenset(targets)
    connected: set[DomainId] = set()
    for src, tgt, _ in graph.iter_edges():
        if src in target_set and tgt in target_set:
            connected.add(src)
            connected.add(tgt)
    return connected


def symmetrized_weights(
    graph: WebGraphSnapshot,
    targets: Iterable[DomainId],
    use_weights: bool = True,
) -> dict[DomainId, dict[DomainId, float]]:
    """Undirected projection u(i, j) = links(i->j) + links(j->i).

    With ``use_weights=False`` any linked pair gets weight 1 instead.
    Every target appears as a node, isolated ones with no neighbors.
    """
    target_set = frozenset(targets)
    adj: dict[DomainId, dict[DomainId, float]] = {t: {} for t in target_set}
    for src, tgt, count in graph.iter_edges():
        if src in target_set and tgt in target_set:
            adj[src][tgt] = adj[src].get(tgt, 0.0) + count
            adj[tgt][src] = adj[tgt].get(src, 0.0) + count
    if not use_weights:
        for node, nbrs in adj.items():
            adj[node] = {nbr: 1.0 for nbr in nbrs}
    return adj


PartitionLike = Union[TargetGrouping, Mapping[DomainId, GroupId]]


def modularity(
    graph: WebGraphSnapshot,
    partition: PartitionLike,
    *,
    resolution: float = 1.0,
    use_weights: bool = True,
) -> float:
    """Weighted modularity of a partition over the symmetrized graph.

    Independent of the optimizer: evaluates the quadratic definition
    directly from the adjacency, so it can check Louvain's accounting.
    An edgeless graph has modularity 0 by convention.
    """
    if isinstance(partition, TargetGrouping):
        community_of = {t: partition.group_of(t) for t in partition.targets}
    else:
        community_of = dict(partition)
    adj = symmetrized_weights(graph, community_of.keys(), use_weights=use_weights)
    degree = {node: sum(nbrs.values()) for node, nbrs in adj.items()}
    two_m = sum(degree.values())
    if two_m == 0:
        return 0.0
    q = 0.0
    for i, nbrs in adj.items():
        for j, weight in nbrs.items():
            if community_of[i] == community_of[j]:
                q += weight
    for comm in set(community_of.values()):
        degree_sum = sum(degree[n] for n in community_of if community_of[n] == comm)
        q -= resolution * degree_sum * degree_sum / two_m
    return q / two_m


def _one_level(
    adj: list[dict[int, float]],
    loops: list[float],
    two_m: float,
    rng: random.Random,
    config: LouvainConfig,
) -> list[int]:
    """Greedy local-move phase; returns the community index per node."""
    n = len(adj)
    degree = [loops[i] + sum(adj[i].values()) for i in range(n)]
    community = list(range(n))
    comm_total = degree[:]  # degree mass per community
    order = list(range(n))
    gamma = config.resolution
    for _ in range(config.max_passes):
        rng.shuffle(order)
        pass_gain = 0.0
        for node in order:
            k_i = degree[node]
            if k_i == 0:
                continue  # isolated node: every move scores 0, stays put
            old = community[node]
            # weights from node into each neighboring community
            links_to: dict[int, float] = {old: 0.0}
            for nbr, weight in adj[node].items():
                links_to[community[nbr]] = links_to.get(community[nbr], 0.0) + weight
            comm_total[old] -= k_i
            base = links_to.get(old, 0.0) - gamma * k_i * comm_total[old] / two_m
            best_comm = old
            best_score = base
            for comm, weight in links_to.items():
                if comm == old:
                    continue
                score = weight - gamma * k_i * comm_total[comm] / two_m
                if score > best_score or (score == best_score and comm < best_comm):
                    if score > base:  # only strictly positive improvement moves
                        best_score = score
                        best_comm = comm
            comm_total[best_comm] += k_i
            if best_comm != old:
                community[node] = best_comm
                pass_gain += 2.0 * (best_score - base) / two_m
        if pass_gain < config.min_modularity_gain:
            break
    return community


def _aggregate(
    adj: list[dict[int, float]],
    loops: list[float],
    community: list[int],
) -> tuple[list[dict[int, float]], list[float], dict[int, int]]:
    """Collapse communities into super-nodes; internal weight becomes a loop."""
    remap: dict[int, int] = {}
    for comm in community:
        if comm not in remap:
            remap[comm] = len(remap)
    k = len(remap)
    new_adj: list[dict[int, float]] = [{} for _ in range(k)]
    new_loops = [0.0] * k
    for node, nbrs in enumerate(adj):
        a = remap[community[node]]
        new_loops[a] += loops[node]
        for nbr, weight in nbrs.items():
            b = remap[community[nbr]]
            if a == b:
                new_loops[a] += weight  # both directions visit this pair once each
            else:
                new_adj[a][b] = new_adj[a].get(b, 0.0) + weight
    return new_adj, new_loops, remap


def _quality(
    adj: list[dict[int, float]],
    loops: list[float],
    community: list[int],
    two_m: float,
    gamma: float,
) -> float:
    if two_m == 0:
        return 0.0
    n = len(adj)
    degree = [loops[i] + sum(adj[i].values()) for i in range(n)]
    internal: dict[int, float] = {}
    mass: dict[int, float] = {}
    for i in range(n):
        c = community[i]
        internal[c] = internal.get(c, 0.0) + loops[i]
        mass[c] = mass.get(c, 0.0) + degree[i]
        for j, weight in adj[i].items():
            if community[j] == c:
                internal[c] += weight
    return sum(
        internal[c] / two_m - gamma * (mass[c] / two_m) ** 2 for c in internal
    )


def louvain_with_modularity(
    graph: WebGraphSnapshot,
    targets: Iterable[DomainId],
    config: LouvainConfig = LouvainConfig(),
) -> tuple[TargetGrouping, float]:
    """Run Louvain and also report the modularity it achieved."""
    nodes = sorted(set(targets))
    if not nodes:
        raise ValueError("targets must be non-empty")
    index = {node: i for i, node in enumerate(nodes)}
    sym = symmetrized_weights(graph, nodes, use_weights=config.use_weights)
    adj: list[dict[int, float]] = [
        {index[nbr]: weight for nbr, weight in sym[node].items()} for node in nodes
    ]
    loops = [0.0] * len(nodes)
    two_m = sum(sum(nbrs.values()) for nbrs in adj)
    rng = random.Random(config.seed)

    membership = list(range(len(nodes)))  # original node -> current super-node
    quality = 0.0
    if two_m > 0:
        while True:
            community = _one_level(adj, loops, two_m, rng, config)
            quality = _quality(adj, loops, community, two_m, config.resolution)
            if len(set(community)) == len(adj):
                break  # nothing merged at this level
            adj, loops, remap = _aggregate(adj, loops, community)
            membership = [remap[community[m]] for m in membership]

    comm_members: dict[int, list[DomainId]] = {}
    for node, comm in zip(nodes, membership):
        comm_members.setdefault(comm, []).append(node)
    # stable labels: L0 is the largest group, ties by smallest member name
    ranked = sorted(comm_members.values(), key=lambda ms: (-len(ms), min(ms)))
    groups = {f"L{i}": sorted(members) for i, members in enumerate(ranked)}
    return TargetGrouping(groups), quality


def louvain(
    graph: WebGraphSnapshot,
    targets: Iterable[DomainId],
    config: LouvainConfig = LouvainConfig(),
) -> TargetGrouping:
    """Partition ``targets`` into groups by modularity maximization.

    Deterministic for a fixed config (including seed). Isolated targets
    come back as singleton groups. Group ids are "L0", "L1", ... in
    descending group size, ties broken by smallest member name.
    """
    grouping, _ = louvain_with_modularity(graph, targets, config)
    return grouping
