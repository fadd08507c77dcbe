"""Equivalence classes from the transitive closure of an alpha cut.

Two values are alpha-similar when their degree is >= alpha, and
alpha-proximate when a chain of alpha-similar values links them.  The
alpha-proximate classes are the connected components of the alpha-cut
graph over the values currently present, so they depend on the database
content, not only on the domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import UnknownAttributeError
from .partition import Grouping, _unit_interval, value_sort_key
from .proximity import ProximitySpec, Value, degree_of

if TYPE_CHECKING:  # pragma: no cover
    from .algebra import FuzzyRelation


def temporal_domain(relation: "FuzzyRelation", attr: str) -> frozenset:
    """Values currently present in one column: the union of its component sets."""
    idx = relation.attribute_index(attr)
    out: set = set()
    for t in relation.tuples:
        out |= t.components[idx]
    return frozenset(out)


@dataclass(frozen=True)
class AlphaCutGraph:
    """Undirected graph whose edges join values with degree >= alpha."""

    alpha: float
    nodes: tuple[Value, ...]
    edges: tuple[tuple[Value, Value], ...]


def alpha_cut(values, spec: ProximitySpec, alpha) -> AlphaCutGraph:
    """Build the alpha-cut graph over a finite value set."""
    a = _unit_interval(alpha)
    nodes = tuple(sorted(set(values), key=value_sort_key))
    edges = []
    for i, x in enumerate(nodes):
        for y in nodes[i + 1 :]:
            if degree_of(spec, x, y) >= a:
                edges.append((x, y))
    return AlphaCutGraph(a, nodes, tuple(edges))


class _UnionFind:
    """Path-compressing union-find over arbitrary hashable items."""

    def __init__(self, items):
        self.parent = {v: v for v in items}

    def find(self, v):
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def closure_classes(values, spec: ProximitySpec, alpha) -> Grouping:
    """Connected components of the alpha-cut graph over ``values``.

    Equals the reflexive-symmetric-transitive closure of alpha-similarity
    restricted to the value set.  The attribute raising UnknownValueError
    is the underlying degree lookup, so every value must be resolvable.
    """
    graph = alpha_cut(values, spec, alpha)
    uf = _UnionFind(graph.nodes)
    for x, y in graph.edges:
        uf.union(x, y)
    components: dict = {}
    for v in graph.nodes:
        components.setdefault(uf.find(v), set()).add(v)
    return Grouping.from_classes(components.values())
