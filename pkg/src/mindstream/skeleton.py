"""Thresholded skeletons, pairwise association rules, strongest subgraphs.

All functions here are pure reads over an immutable mind-map snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

from .model import MindMap, Pair


@dataclass(frozen=True)
class Skeleton:
    """Subgraph surviving the weight and activation thresholds."""

    nodes: FrozenSet[str]
    edges: Tuple[Tuple[Pair, float], ...]
    source_step: int


@dataclass(frozen=True)
class AssociationRule:
    antecedent: str
    consequent: str
    weight: float


def extract_skeleton(mmap: MindMap, theta_w: float, theta_a: float = 0.0) -> Skeleton:
    """Keep edges with weight >= theta_w whose both endpoints have
    activation >= theta_a; nodes are the endpoints of kept edges."""
    kept: List[Tuple[Pair, float]] = []
    for pair in sorted(mmap.edges):
        conn = mmap.edges[pair]
        if conn.weight < theta_w:
            continue
        a, b = pair
        if mmap.cells[a].activation >= theta_a and mmap.cells[b].activation >= theta_a:
            kept.append((pair, conn.weight))
    nodes = frozenset(label for pair, _ in kept for label in pair)
    return Skeleton(nodes=nodes, edges=tuple(kept), source_step=mmap.step)


def derive_rules(s: Skeleton) -> List[AssociationRule]:
    """Each undirected skeleton edge yields both rule directions."""
    rules: List[AssociationRule] = []
    for (a, b), w in s.edges:
        rules.append(AssociationRule(a, b, w))
        rules.append(AssociationRule(b, a, w))
    return rules


def _components(s: Skeleton) -> List[Skeleton]:
    adjacency: Dict[str, set] = {n: set() for n in s.nodes}
    for (a, b), _ in s.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen: set = set()
    comps: List[Skeleton] = []
    for start in sorted(s.nodes):
        if start in seen:
            continue
        stack = [start]
        members = set()
        while stack:
            node = stack.pop()
            if node in members:
                continue
            members.add(node)
            stack.extend(adjacency[node] - members)
        seen |= members
        edges = tuple(e for e in s.edges if e[0][0] in members)
        comps.append(Skeleton(frozenset(members), edges, s.source_step))
    return comps


def strongest_subgraphs(mmap: MindMap, theta_w: float, top_k: int) -> List[Skeleton]:
    """Connected components of the weight-thresholded skeleton, ranked by
    mean edge weight descending; ties broken by size descending, then by
    the lexicographically smallest node label."""
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    comps = _components(extract_skeleton(mmap, theta_w, 0.0))

    def rank_key(c: Skeleton):
        mean_w = sum(w for _, w in c.edges) / len(c.edges)
        return (-mean_w, -len(c.nodes), min(c.nodes))

    return sorted(comps, key=rank_key)[:top_k]
