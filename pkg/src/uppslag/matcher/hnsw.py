"""Hierarchical navigable small world graph over unit vectors.

Approximate k-NN by maximum inner product (vectors are pre-normalized, so
this is cosine order). Deterministic for a fixed seed and insertion order:
level draws come from a seeded RNG and all ties break on node id.
"""

from __future__ import annotations

import heapq
import math
import random

import numpy as np


class HnswGraph:
    def __init__(
        self,
        dim: int,
        m: int = 16,
        ef_construction: int = 200,
        ef_search: int = 64,
        seed: int = 0,
    ):
        self.dim = dim
        self.m = m
        self.m_max0 = 2 * m
        self.ef_construction = ef_construction
        self.ef_search = ef_search
        self._rng = random.Random(seed)
        self._level_mult = 1.0 / math.log(m)
        self._vectors: list[np.ndarray] = []
        self._neighbors: list[list[list[int]]] = []  # node -> layer -> neighbor ids
        self._entry_point: int | None = None
        self._max_level = -1

    def __len__(self) -> int:
        return len(self._vectors)

    def _sim(self, a: int, query: np.ndarray) -> float:
        return float(np.dot(self._vectors[a], query))

    def _search_layer(self, query: np.ndarray, entry: int, ef: int, layer: int) -> list[tuple[float, int]]:
        """Best-first search; returns up to ef (similarity, id) pairs, best first."""
        visited = {entry}
        entry_sim = self._sim(entry, query)
        # candidates: max-heap by similarity; results: min-heap of the ef best
        candidates = [(-entry_sim, entry)]
        results = [(entry_sim, entry)]
        while candidates:
            neg_sim, node = heapq.heappop(candidates)
            if -neg_sim < results[0][0] and len(results) >= ef:
                break
            for neighbor in self._neighbors[node][layer]:
                if neighbor in visited:
                    continue
                visited.add(neighbor)
                sim = self._sim(neighbor, query)
                if len(results) < ef or sim > results[0][0]:
                    heapq.heappush(candidates, (-sim, neighbor))
                    heapq.heappush(results, (sim, neighbor))
                    if len(results) > ef:
                        heapq.heappop(results)
        return sorted(results, key=lambda item: (-item[0], item[1]))

    def _select_neighbors(self, ranked: list[tuple[float, int]], count: int) -> list[int]:
        """Diversity heuristic: keep a candidate only if it is closer to the
        query than to every neighbor kept so far. Plain top-k would let tight
        clusters of near-duplicates link only among themselves and disconnect
        from the rest of the graph."""
        selected: list[int] = []
        for sim, node in ranked:
            if len(selected) >= count:
                break
            if all(
                float(np.dot(self._vectors[node], self._vectors[other])) < sim
                for other in selected
            ):
                selected.append(node)
        if len(selected) < count:
            chosen = set(selected)
            for _, node in ranked:
                if len(selected) >= count:
                    break
                if node not in chosen:
                    selected.append(node)
                    chosen.add(node)
        return selected

    def add(self, vector: np.ndarray) -> int:
        node = len(self._vectors)
        self._vectors.append(np.asarray(vector, dtype=np.float32))
        level = int(-math.log(max(self._rng.random(), 1e-12)) * self._level_mult)
        self._neighbors.append([[] for _ in range(level + 1)])

        if self._entry_point is None:
            self._entry_point = node
            self._max_level = level
            return node

        query = self._vectors[node]
        current = self._entry_point
        for layer in range(self._max_level, level, -1):
            current = self._search_layer(query, current, 1, layer)[0][1]

        for layer in range(min(level, self._max_level), -1, -1):
            ranked = self._search_layer(query, current, self.ef_construction, layer)
            limit = self.m_max0 if layer == 0 else self.m
            for neighbor in self._select_neighbors(ranked, self.m):
                if neighbor == node:
                    continue
                self._neighbors[node][layer].append(neighbor)
                self._neighbors[neighbor][layer].append(node)
                if len(self._neighbors[neighbor][layer]) > limit:
                    ranked_links = sorted(
                        (
                            (float(np.dot(self._vectors[neighbor], self._vectors[other])), other)
                            for other in self._neighbors[neighbor][layer]
                        ),
                        key=lambda item: (-item[0], item[1]),
                    )
                    self._neighbors[neighbor][layer] = self._select_neighbors(ranked_links, limit)
            current = ranked[0][1]

        if level > self._max_level:
            self._max_level = level
            self._entry_point = node
        return node

    def search(self, query: np.ndarray, k: int, ef_search: int | None = None) -> list[tuple[int, float]]:
        if self._entry_point is None or k <= 0:
            return []
        query = np.asarray(query, dtype=np.float32)
        ef = max(ef_search or self.ef_search, k)
        current = self._entry_point
        for layer in range(self._max_level, 0, -1):
            current = self._search_layer(query, current, 1, layer)[0][1]
        ranked = self._search_layer(query, current, ef, 0)
        return [(node, sim) for sim, node in ranked[:k]]
