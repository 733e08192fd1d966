"""Decide whether a quotient graph is explainable.

The checks return values: an :class:`Accepted` with per-component data, or a
:class:`Rejection` with a witness (a cycle, a converging vertex, or a
component without a central vertex). Both are truthy/falsy accordingly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import QuotientGraph, connected_components
from .errors import NotATree


@dataclass(frozen=True)
class Accepted:
    components: tuple
    sources: dict = field(default_factory=dict)
    centers: dict = field(default_factory=dict)

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Rejection:
    kind: str  # "cycle" | "converging" | "no-central"
    witness: tuple
    message: str = ""

    def __bool__(self):
        return False

    def __str__(self):
        return self.message or f"{self.kind}: {list(self.witness)}"


def _bfs_path(adj, u, v):
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in sorted(adj[x]):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [v]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


def _normalize_cycle(cycle):
    i = cycle.index(min(cycle))
    cycle = cycle[i:] + cycle[:i]
    if len(cycle) > 2 and cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[1:][::-1]
    return cycle


def find_cycle(vertices, pairs):
    """A cycle of the undirected graph as a vertex list, or None."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj = {v: set() for v in vertices}
    for p in sorted(sorted(p) for p in pairs):
        u, v = p
        ru, rv = find(u), find(v)
        if ru == rv:
            return _normalize_cycle(_bfs_path(adj, u, v))
        parent[ru] = rv
        adj[u].add(v)
        adj[v].add(u)
    return None


def _cycle_rejection(cycle):
    return Rejection("cycle", tuple(cycle),
                     "cycle " + " - ".join(cycle) + f" - {cycle[0]}: the quotient is not a forest")


def check_undirected(q: QuotientGraph):
    cycle = find_cycle(q.classes, q.underlying)
    if cycle:
        return _cycle_rejection(cycle)
    return Accepted(tuple(q.components()))


def _converging(q: QuotientGraph):
    incoming: dict = {}
    for x, y in sorted(q.dir_edges):
        incoming.setdefault(y, []).append(x)
    for v in sorted(incoming):
        if len(incoming[v]) >= 2:
            x, y = incoming[v][:2]
            return Rejection("converging", (x, v, y),
                             f"converging arcs {x} -> {v} <- {y}")
    return None


def check_directed(q: QuotientGraph):
    cycle = find_cycle(q.classes, q.underlying)
    if cycle:
        return _cycle_rejection(cycle)
    bad = _converging(q)
    if bad is not None:
        return bad
    has_in = {y for _, y in q.dir_edges}
    comps = tuple(q.components())
    sources = {}
    for comp in comps:
        (src,) = [v for v in comp if v not in has_in]
        sources[comp] = src
    return Accepted(comps, sources=sources)


def _rooted_parents(adj, v):
    par = {v: None}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in par:
                par[y] = x
                queue.append(y)
    return par


def central_vertices(q: QuotientGraph) -> frozenset:
    """Vertices v such that every edge has an arc pointing away from v.

    Symmetric pairs count as arcs both ways. An arc (x, y) points away from
    v iff x lies between v and y. ``q`` must be connected and acyclic.
    """
    vs = q.classes
    if find_cycle(vs, q.underlying) or len(connected_components(vs, q.underlying)) != 1:
        raise NotATree("central vertices need a tree-shaped component")
    adj = q.adjacency
    out = set()
    for v in vs:
        par = _rooted_parents(adj, v)
        if all(par[y] == x for x, y in q.dir_edges):
            out.add(v)
    return frozenset(out)


def check_mixed(q: QuotientGraph):
    """Accept iff the quotient is a forest, no vertex has two directed
    in-arcs, and every component has a central vertex."""
    cycle = find_cycle(q.classes, q.underlying)
    if cycle:
        return _cycle_rejection(cycle)
    bad = _converging(q)
    if bad is not None:
        return bad
    comps = tuple(q.components())
    centers = {}
    for comp in comps:
        c = central_vertices(q.restrict(comp))
        if not c:
            return Rejection("no-central", comp,
                             "no central vertex in component {" + ", ".join(comp) + "}")
        centers[comp] = c
    return Accepted(comps, centers=centers)


def check(q: QuotientGraph):
    if q.mode == "undirected":
        return check_undirected(q)
    if q.mode == "directed":
        return check_directed(q)
    return check_mixed(q)
