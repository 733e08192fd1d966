"""Forward direction: the relations an edge-labeled tree induces on its taxa."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import (
    EdgeLabeling,
    PhyloTree,
    RelationGraph,
    check_labeling,
    edge,
    lca,
)
from .errors import TaxonMismatch, UnknownTaxon, UnrootedTree


@dataclass(frozen=True)
class PathSummary:
    """1-edge counts on P(x, y); the side counts need a rooted tree."""

    ones_total: int
    ones_x_side: int | None = None
    ones_y_side: int | None = None


def _ones_from(tree: PhyloTree, labeling: EdgeLabeling, start) -> dict:
    ones = {start: 0}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in tree.adjacency[x]:
            if y not in ones:
                ones[y] = ones[x] + labeling[edge(x, y)]
                stack.append(y)
    return ones


def path_summary(tree: PhyloTree, labeling: EdgeLabeling, x, y) -> PathSummary:
    for t in (x, y):
        if t not in tree.vertices:
            raise UnknownTaxon(t)
    if tree.root is None:
        return PathSummary(_ones_from(tree, labeling, x)[y])
    pre = _ones_from(tree, labeling, tree.root)
    u = lca(tree, x, y)
    xs, ys = pre[x] - pre[u], pre[y] - pre[u]
    return PathSummary(xs + ys, xs, ys)


def leaf_distances(tree: PhyloTree, labeling: EdgeLabeling) -> dict:
    """(x, y) -> number of 1-edges on P(x, y), for leaves x < y."""
    check_labeling(tree, labeling)
    leaves = sorted(tree.leaves)
    out = {}
    for i, x in enumerate(leaves[:-1]):
        ones = _ones_from(tree, labeling, x)
        for y in leaves[i + 1:]:
            out[(x, y)] = ones[y]
    return out


def _rooted_sides(tree, labeling):
    """(x, y) -> (ones on the x side, ones on the y side) for ordered leaf
    pairs x != y."""
    if tree.root is None:
        raise UnrootedTree("this relation needs a rooted tree")
    check_labeling(tree, labeling)
    pre = _ones_from(tree, labeling, tree.root)
    out = {}
    for x, y in combinations(sorted(tree.leaves), 2):
        u = lca(tree, x, y)
        xs, ys = pre[x] - pre[u], pre[y] - pre[u]
        out[(x, y)] = (xs, ys)
        out[(y, x)] = (ys, xs)
    return out


def relation_zero(tree: PhyloTree, labeling: EdgeLabeling) -> frozenset:
    """The ~0 partition: components of the 0-edge subgraph, restricted to leaves."""
    check_labeling(tree, labeling)
    seen = set()
    classes = []
    for start in sorted(tree.leaves):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in tree.adjacency[x]:
                if y not in comp and labeling[edge(x, y)] == 0:
                    comp.add(y)
                    stack.append(y)
        cls = frozenset(comp & tree.leaves)
        seen |= cls
        classes.append(cls)
    return frozenset(classes)


def relation_at_least_k(tree: PhyloTree, labeling: EdgeLabeling, k: int) -> frozenset:
    if k < 1:
        raise ValueError("k must be positive")
    return frozenset(frozenset(p) for p, n in leaf_distances(tree, labeling).items() if n >= k)


def relation_single1(tree: PhyloTree, labeling: EdgeLabeling) -> frozenset:
    return frozenset(frozenset(p) for p, n in leaf_distances(tree, labeling).items() if n == 1)


def relation_directed1(tree: PhyloTree, labeling: EdgeLabeling) -> frozenset:
    return frozenset(p for p, (xs, ys) in _rooted_sides(tree, labeling).items()
                     if xs == 0 and ys == 1)


def relation_squiggle(tree: PhyloTree, labeling: EdgeLabeling) -> frozenset:
    return frozenset(p for p, (xs, ys) in _rooted_sides(tree, labeling).items()
                     if xs == 0 and ys >= 1)


def induced_relation(tree: PhyloTree, labeling: EdgeLabeling, mode: str | None = None) -> RelationGraph:
    """The relation graph a labeled tree induces: directed for rooted trees,
    undirected otherwise (unless ``mode`` says otherwise)."""
    if mode is None:
        mode = "directed" if tree.root is not None else "undirected"
    zero = relation_zero(tree, labeling)
    if mode == "undirected":
        return RelationGraph(tree.leaves, zero, relation_single1(tree, labeling), (), "undirected")
    return RelationGraph(tree.leaves, zero, (), relation_directed1(tree, labeling), mode)


def explains(tree: PhyloTree, labeling: EdgeLabeling, rel: RelationGraph) -> bool:
    """True iff (tree, labeling) induces exactly ``rel``.

    In mixed mode every symmetric pair must hold as ~1 (in either direction)
    and every directed pair must hold as stated.
    """
    if tree.leaves != rel.taxa:
        raise TaxonMismatch(
            f"tree taxa {sorted(tree.leaves)} differ from relation taxa {sorted(rel.taxa)}")
    check_labeling(tree, labeling)
    if relation_zero(tree, labeling) != rel.zero_classes:
        return False
    if rel.mode == "undirected":
        return relation_single1(tree, labeling) == rel.sym_edges
    if rel.mode == "directed":
        if tree.root is None:
            if rel.dir_edges:
                raise UnrootedTree("directed data needs a rooted tree")
            return not relation_single1(tree, labeling)
        return relation_directed1(tree, labeling) == rel.dir_edges
    if relation_single1(tree, labeling) != rel.symmetrized():
        return False
    if not rel.dir_edges:
        return True
    if tree.root is None:
        raise UnrootedTree("directed pairs need a rooted tree")
    return rel.dir_edges <= relation_directed1(tree, labeling)
