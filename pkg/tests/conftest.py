"""Shared instance corpus for the test suite.

The corpus is deliberately small and fully enumerable: every connected
simple graph on at most 5 vertices (up to isomorphism), uniform matroids
up to 8 elements, and seeded random partition-matroid pairs.  Brute-force
enumeration over these instances is the oracle everything else is checked
against.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from basecount import GraphicMatroid, PartitionMatroid, UniformMatroid


def complete_graph(nv: int) -> GraphicMatroid:
    return GraphicMatroid(nv, list(itertools.combinations(range(nv), 2)))


def _connected(nv: int, edges) -> bool:
    parent = list(range(nv))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(nv)}) == 1


def connected_graphs_up_to(max_vertices: int = 5):
    """All connected simple graphs on <= max_vertices vertices, one
    representative per isomorphism class, as (vertices, edge list)."""
    out = []
    for nv in range(1, max_vertices + 1):
        candidates = list(itertools.combinations(range(nv), 2))
        perms = list(itertools.permutations(range(nv)))
        seen = set()
        for selector in range(1 << len(candidates)):
            edges = [candidates[i] for i in range(len(candidates)) if (selector >> i) & 1]
            if not _connected(nv, edges):
                continue
            canon = min(
                tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
                for p in perms
            )
            if canon not in seen:
                seen.add(canon)
                out.append((nv, edges))
    return out


def random_partition_matroid(rng: np.random.Generator, n: int, r: int) -> PartitionMatroid:
    """Random partition matroid on n elements with rank exactly r."""
    nblocks = int(rng.integers(1, n + 1))
    assignment = list(rng.integers(0, nblocks, size=n))
    for b in range(nblocks):
        if b not in assignment:
            assignment[int(rng.integers(0, n))] = b
    blocks = {}
    for elem, b in enumerate(assignment):
        blocks.setdefault(b, []).append(elem)
    sizes = {b: len(e) for b, e in blocks.items()}
    caps = {b: 0 for b in blocks}
    remaining = r
    while remaining > 0:
        eligible = [b for b in blocks if caps[b] < sizes[b]]
        caps[int(rng.choice(eligible))] += 1
        remaining -= 1
    return PartitionMatroid([(blocks[b], caps[b]) for b in sorted(blocks)])


def random_partition_pairs(count: int, seed: int = 0, max_n: int = 16, max_rank: int = 5):
    """Seeded (matroid, matroid) pairs on a common ground set with equal ranks."""
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < count:
        n = int(rng.integers(4, max_n + 1))
        r = int(rng.integers(1, min(max_rank, n) + 1))
        pairs.append((random_partition_matroid(rng, n, r),
                      random_partition_matroid(rng, n, r)))
    return pairs


def k33_matching_pair():
    """Two partition matroids whose common bases are the perfect matchings
    of K_{3,3}; edge (i, j) gets index 3*i + j."""
    rows = PartitionMatroid([([0, 1, 2], 1), ([3, 4, 5], 1), ([6, 7, 8], 1)])
    cols = PartitionMatroid([([0, 3, 6], 1), ([1, 4, 7], 1), ([2, 5, 8], 1)])
    return rows, cols


@pytest.fixture(scope="session")
def k3():
    return GraphicMatroid(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def k5():
    return complete_graph(5)


@pytest.fixture(scope="session")
def u24():
    return UniformMatroid(4, 2)


@pytest.fixture(scope="session")
def u12():
    return UniformMatroid(2, 1)


@pytest.fixture(scope="session")
def graph_corpus():
    return connected_graphs_up_to(5)
