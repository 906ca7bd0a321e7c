"""Adjoint graph construction, directed-cycle detection, and the
acyclic-vs-nilpotent cross-check.

The adjoint graph has one vertex per dual pair ``{i, dual(i)}`` and an edge
from a non-vacuum pair to every pair appearing in ``x (dual x)``.  A fusion
rule is acyclic when this graph has no directed cycle; self-loops count.
Cycle detection runs on the equivalent label-level digraph (node per non-vacuum
label, edge ``i -> j`` iff ``N[i, dual(i), j] > 0``), whose cycles correspond
one-to-one with pair-graph cycles because targets are dual-symmetric.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .core import FusionRule
from .nilpotency import central_series

__all__ = [
    "AdjointGraph",
    "CycleWitness",
    "TheoremCheck",
    "adjoint_graph",
    "find_cycle",
    "is_acyclic",
    "check_theorem",
]


@dataclass(frozen=True)
class AdjointGraph:
    """Directed graph on dual pairs with multiplicity-weighted edges.

    ``vertices`` are sorted tuples (singleton for self-dual labels), ordered
    by smallest member; the vacuum pair is vertex 0 and never has outgoing
    edges.  ``edges`` holds ``(src_vertex, dst_vertex, multiplicity)`` sorted
    by source then target.
    """

    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int], ...]

    def vertex_of(self, label: int) -> int:
        for n, pair in enumerate(self.vertices):
            if label in pair:
                return n
        raise KeyError(label)


@dataclass(frozen=True)
class CycleWitness:
    """A label sequence certifying a directed cycle in the adjoint graph.

    ``labels`` is the closed walk ``(i_1, ..., i_n, i_1)`` with ``i_1 != 0``;
    ``multiplicities[k] = N[i_k, dual(i_k), i_{k+1}] > 0``.
    """

    labels: tuple[int, ...]
    multiplicities: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.multiplicities)

    def holds_in(self, rule: FusionRule) -> bool:
        if len(self.labels) != len(self.multiplicities) + 1:
            return False
        if self.labels[0] != self.labels[-1] or self.labels[0] == 0:
            return False
        for k, mult in enumerate(self.multiplicities):
            i, j = self.labels[k], self.labels[k + 1]
            if mult <= 0 or rule.tensor[i, rule.dual[i], j] != mult:
                return False
        return True


def _pairs(rule: FusionRule) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(rule.rank):
        if i in seen:
            continue
        pair = tuple(sorted({i, rule.dual[i]}))
        seen.update(pair)
        out.append(pair)
    return out


def adjoint_graph(rule: FusionRule) -> AdjointGraph:
    """Build the dual-pair graph with edges weighted by fusion multiplicity.

    For a non-self-dual pair both orientations ``x (dual x)`` and
    ``(dual x) x`` contribute edges (the pair vertex stands for both labels);
    the stored weight comes from the smaller label's orientation when that one
    is nonzero.
    """
    pairs = _pairs(rule)
    where = {}
    for n, pair in enumerate(pairs):
        for i in pair:
            where[i] = n
    edges = []
    for n, pair in enumerate(pairs):
        if 0 in pair:
            continue
        i = pair[0]
        forward = rule.tensor[i, rule.dual[i]]
        backward = rule.tensor[rule.dual[i], i]
        targets = sorted({where[int(k)] for k in np.nonzero(forward + backward)[0]})
        for m in targets:
            k = pairs[m][0]
            weight = int(forward[k]) if forward[k] > 0 else int(backward[k])
            edges.append((n, m, weight))
    edges.sort()
    return AdjointGraph(vertices=tuple(pairs), edges=tuple(edges))


def _label_digraph(rule: FusionRule) -> dict[int, list[int]]:
    """Non-vacuum label digraph: ``i -> j`` iff ``j`` occurs in ``x_i (dual x_i)``."""
    adj = {}
    for i in range(1, rule.rank):
        row = rule.tensor[i, rule.dual[i]]
        adj[i] = [int(j) for j in np.nonzero(row)[0] if j != 0]
    return adj


def _strongly_connected(adj: dict[int, list[int]]) -> list[list[int]]:
    """Iterative Tarjan; nodes visited in sorted order for determinism."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    sccs: list[list[int]] = []
    for root in sorted(adj):
        if root in index:
            continue
        work: list[list[int]] = [[root, 0]]
        while work:
            v, ptr = work[-1]
            if ptr == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            descended = False
            neighbors = adj[v]
            while work[-1][1] < len(neighbors):
                w = neighbors[work[-1][1]]
                work[-1][1] += 1
                if w not in index:
                    work.append([w, 0])
                    descended = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if low[v] == index[v]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.append(w)
                    if w == v:
                        break
                sccs.append(sorted(scc))
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return sccs


def find_cycle(rule: FusionRule) -> CycleWitness | None:
    """Shortest directed cycle in the adjoint graph, or None if acyclic.

    Any vertex inside a multi-vertex strongly connected component, or with a
    self-loop, certifies a cycle; the witness is extracted by breadth-first
    search inside the offending component.  Ties on length break toward the
    smallest starting label.
    """
    adj = _label_digraph(rule)
    component_of = {}
    members: dict[int, list[int]] = {}
    for n, scc in enumerate(_strongly_connected(adj)):
        members[n] = scc
        for v in scc:
            component_of[v] = n

    candidates = sorted(
        v for v in adj if len(members[component_of[v]]) > 1 or v in adj[v]
    )
    best: tuple[int, int, list[int]] | None = None  # (length, start, path)
    for start in candidates:
        scc = set(members[component_of[start]])
        parent: dict[int, int] = {}
        found = None
        queue = deque([start])
        dist = {start: 0}
        while queue and found is None:
            u = queue.popleft()
            for w in adj[u]:
                if w == start:
                    found = u
                    break
                if w in scc and w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
        if found is None:
            continue
        path = [found]
        while path[-1] != start:
            path.append(parent[path[-1]])
        path.reverse()  # start -> ... -> found
        length = len(path)
        if best is None or (length, start) < (best[0], best[1]):
            best = (length, start, path)
    if best is None:
        return None
    _, start, path = best
    labels = tuple(path) + (start,)
    mults = tuple(int(rule.tensor[labels[k], rule.dual[labels[k]], labels[k + 1]]) for k in range(len(path)))
    return CycleWitness(labels=labels, multiplicities=mults)


def is_acyclic(rule: FusionRule) -> bool:
    return find_cycle(rule) is None


@dataclass(frozen=True)
class TheoremCheck:
    """Independent acyclicity and nilpotency verdicts; they must agree."""

    acyclic: bool
    nilpotent: bool

    @property
    def agree(self) -> bool:
        return self.acyclic == self.nilpotent


def check_theorem(rule: FusionRule) -> TheoremCheck:
    """Run the graph-based and series-based decision procedures independently."""
    return TheoremCheck(
        acyclic=is_acyclic(rule),
        nilpotent=central_series(rule).nilpotent,
    )
