"""Shared builders and independent oracles for the test suite.

The oracles here deliberately avoid the library's canonical-code machinery:
brute_force_automorphisms filters raw permutations, bfs_dist is a plain BFS,
and prufer_tree enumerates labeled trees directly, so library results are
checked against genuinely separate computations.
"""

from __future__ import annotations

from collections import deque
from itertools import permutations
from pathlib import Path

from treedist import Coloring, Tree, parse_edge_list, tree_from_edges

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str) -> Tree:
    return parse_edge_list((FIXTURES / f"{name}.tree").read_text())


def path_tree(n: int) -> Tree:
    return tree_from_edges([(i, i + 1) for i in range(n - 1)], n=n)


def star_tree(leaves: int) -> Tree:
    return tree_from_edges([(0, i) for i in range(1, leaves + 1)], n=leaves + 1)


def complete_tree(k: int, depth: int) -> Tree:
    """Every internal vertex has valence k, all leaves at the given depth."""
    edges = []
    nxt = 1
    frontier = [0]
    for d in range(depth):
        new = []
        for v in frontier:
            for _ in range(k if d == 0 else k - 1):
                edges.append((v, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    return tree_from_edges(edges, n=nxt)


def brute_force_automorphisms(tree: Tree, coloring: Coloring) -> list[tuple[int, ...]]:
    """All color-preserving automorphisms by filtering every permutation.

    Only usable for small n; completely independent of the library's search.
    """
    n = tree.n
    edge_set = {(u, v) for u in range(n) for v in tree.adjacency[u]}
    cols = coloring.colors
    out = []
    for perm in permutations(range(n)):
        if any(cols[perm[v]] != cols[v] for v in range(n)):
            continue
        if any((perm[u], perm[v]) not in edge_set for (u, v) in edge_set):
            continue
        out.append(perm)
    return out


def bfs_dist(tree: Tree, src: int) -> list[int]:
    dist = [-1] * tree.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in tree.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def prufer_tree(seq: tuple[int, ...], n: int) -> Tree:
    """Labeled tree on 0..n-1 from a Prufer sequence (length n-2)."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return tree_from_edges(edges, n=n)


def all_labeled_trees(n: int) -> list[Tree]:
    """Every labeled tree on 0..n-1 (n^(n-2) of them via Prufer sequences)."""
    if n == 1:
        return [tree_from_edges([], n=1)]
    if n == 2:
        return [tree_from_edges([(0, 1)], n=2)]
    from itertools import product

    return [prufer_tree(seq, n) for seq in product(range(n), repeat=n - 2)]
