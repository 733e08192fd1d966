"""Exhaustive ground truth on small taxon sets.

Trees are generated once per (leaf count, kind) on generic taxa t0, t1, ...
and for every tree all 0/1 labelings are scored at once with numpy: a
pair-by-edge path incidence matrix times the labeling bit matrix gives the
number of 1-edges on every leaf path. Each labeled tree is summarised by an
integer signature encoding its relation, so looking up all explainers of a
relation is a binary search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .core import (
    EdgeLabeling,
    PhyloTree,
    RelationGraph,
    canonical_form,
    edge,
    edge_key,
    lca,
    relabel,
    tree_path,
)
from .errors import CapExceeded

KINDS = ("unrooted", "unrooted+deg2", "rooted")


@dataclass(frozen=True)
class OracleConfig:
    max_leaves: int = 7
    max_labelings: int = 2 ** 13


DEFAULT = OracleConfig()


def generic_taxa(n: int) -> list:
    return [f"t{i}" for i in range(n)]


def _insert_all(trees_edges, new_leaf, next_id):
    """Grow every tree by one leaf in all ways: hang it on an inner vertex,
    or subdivide an edge."""
    out = []
    for edges, inner in trees_edges:
        for v in inner:
            out.append((edges + [(v, new_leaf)], inner))
        for idx, (a, b) in enumerate(edges):
            w = f"·n{next_id}"
            rest = edges[:idx] + edges[idx + 1:]
            out.append((rest + [(a, w), (w, b), (w, new_leaf)], inner + [w]))
    return out


def _unrooted_edge_lists(taxa):
    n = len(taxa)
    if n == 1:
        return [([], [])]
    trees = [([(taxa[0], taxa[1])], [])]
    for i in range(2, n):
        trees = _insert_all(trees, taxa[i], i)
    return trees


def enumerate_trees(n: int, rooted: bool = False, taxa=None, config: OracleConfig = DEFAULT):
    """Every phylogenetic tree on n labeled leaves, once each. Rooted trees
    are unrooted trees on one extra leaf whose neighbour becomes the root."""
    if n < 1:
        raise ValueError("need at least one leaf")
    if n > config.max_leaves:
        raise CapExceeded(f"{n} leaves exceeds the cap of {config.max_leaves}")
    taxa = list(taxa) if taxa is not None else generic_taxa(n)
    if len(taxa) != n:
        raise ValueError("taxa length must equal n")
    if not rooted:
        for edges, _ in _unrooted_edge_lists(taxa):
            if not edges:
                yield PhyloTree.single(taxa[0])
            else:
                yield PhyloTree.from_edges(edges)
        return
    if n == 1:
        yield PhyloTree.single(taxa[0], rooted=True)
        return
    marker = "·root"
    for edges, _ in _unrooted_edge_lists(taxa + [marker]):
        (r,) = [b if a == marker else a for a, b in edges if marker in (a, b)]
        rest = [e for e in edges if marker not in e]
        yield PhyloTree.from_edges(rest, root=r)


def enumerate_labelings(tree: PhyloTree):
    es = sorted(tree.edges, key=edge_key)
    for bits in product((0, 1), repeat=len(es)):
        yield EdgeLabeling(dict(zip(es, bits)))


def recount_by_contraction(n: int) -> int:
    """Independent count of unrooted phylogenetic trees: contract every
    subset of interior edges of every binary tree and deduplicate."""
    seen = set()
    for t in enumerate_trees(n):
        if any(t.degree(v) != 3 for v in t.inner) and n > 2:
            continue
        interior = [e for e in sorted(t.edges, key=edge_key) if t.is_interior(e)]
        for r in range(len(interior) + 1):
            for sub in combinations(interior, r):
                seen.add(canonical_form(_contract_set(t, sub)))
    return len(seen)


def _contract_set(tree, edges):
    parent = {v: v for v in tree.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in edges:
        a, b = edge_key(e)
        parent[find(b)] = find(a)
    new_edges = set()
    for e in tree.edges:
        a, b = (find(x) for x in e)
        if a != b:
            new_edges.add(edge(a, b))
    return PhyloTree.from_edges([tuple(e) for e in new_edges], vertices={find(v) for v in tree.vertices})


# --------------------------------------------------------------------------
# vectorized scoring


@dataclass
class TreeTable:
    """All trees of one kind on n generic taxa with every labeling scored.

    ``sigs``, ``tree_idx``, ``masks`` are parallel arrays sorted by
    signature; ``edges[i]`` fixes the bit order of tree i's labelings.
    """

    n: int
    kind: str
    trees: list
    edges: list
    sigs: np.ndarray
    tree_idx: np.ndarray
    masks: np.ndarray

    def labeling(self, i: int, mask: int) -> EdgeLabeling:
        return EdgeLabeling({e: (int(mask) >> b) & 1 for b, e in enumerate(self.edges[i])})

    def lookup(self, sig: int) -> list:
        lo = np.searchsorted(self.sigs, sig, side="left")
        hi = np.searchsorted(self.sigs, sig, side="right")
        return [(int(self.tree_idx[k]), int(self.masks[k])) for k in range(lo, hi)]


def _bit_matrix(m: int) -> np.ndarray:
    masks = np.arange(2 ** m, dtype=np.int64)
    return ((masks[None, :] >> np.arange(m, dtype=np.int64)[:, None]) & 1).astype(np.int64)


def _pairs(n):
    return list(combinations(range(n), 2))


def undirected_digits(tree: PhyloTree, taxa, es) -> np.ndarray:
    """(labelings x pairs) array: 0 for ~0, 1 for ~1, 2 otherwise."""
    pairs = _pairs(len(taxa))
    if not pairs:
        return np.zeros((2 ** len(es), 0), dtype=np.int64)
    pos = {e: i for i, e in enumerate(es)}
    inc = np.zeros((len(pairs), len(es)), dtype=np.int64)
    for p, (i, j) in enumerate(pairs):
        for e in tree_path(tree, taxa[i], taxa[j]):
            inc[p, pos[e]] = 1
    counts = (inc @ _bit_matrix(len(es))).T
    return np.minimum(counts, 2)


def rooted_digits(tree: PhyloTree, taxa, es) -> np.ndarray:
    """0 for ~0, 1 if t_i -> t_j, 2 if t_j -> t_i, 3 otherwise."""
    pairs = _pairs(len(taxa))
    if not pairs:
        return np.zeros((2 ** len(es), 0), dtype=np.int64)
    pos = {e: i for i, e in enumerate(es)}
    xi = np.zeros((len(pairs), len(es)), dtype=np.int64)
    yi = np.zeros_like(xi)
    for p, (i, j) in enumerate(pairs):
        u = lca(tree, taxa[i], taxa[j])
        for e in tree_path(tree, u, taxa[i]):
            xi[p, pos[e]] = 1
        for e in tree_path(tree, u, taxa[j]):
            yi[p, pos[e]] = 1
    bits = _bit_matrix(len(es))
    cx, cy = (xi @ bits).T, (yi @ bits).T
    d = np.full(cx.shape, 3, dtype=np.int64)
    d[(cx == 0) & (cy == 1)] = 1
    d[(cx == 1) & (cy == 0)] = 2
    d[(cx + cy) == 0] = 0
    return d


def _encode(digits: np.ndarray, base: int) -> np.ndarray:
    weights = base ** np.arange(digits.shape[1], dtype=np.int64)
    return digits @ weights


def labeled_trees(n: int, kind: str, config: OracleConfig = DEFAULT):
    """Trees of the given kind on generic taxa: "unrooted" phylogenetic,
    "unrooted+deg2" adds those with one degree-2 vertex, "rooted"."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "rooted":
        return list(enumerate_trees(n, True, config=config))
    trees = list(enumerate_trees(n, False, config=config))
    if kind == "unrooted+deg2" and n >= 2:
        for t in enumerate_trees(n, True, config=config):
            if t.degree(t.root) == 2:
                trees.append(PhyloTree(t.vertices, t.edges))
    return trees


@lru_cache(maxsize=None)
def tree_table(n: int, kind: str, config: OracleConfig = DEFAULT) -> TreeTable:
    taxa = generic_taxa(n)
    trees = labeled_trees(n, kind, config)
    sig_parts, idx_parts, mask_parts, edges = [], [], [], []
    base = 4 if kind == "rooted" else 3
    for i, t in enumerate(trees):
        es = sorted(t.edges, key=edge_key)
        if 2 ** len(es) > config.max_labelings:
            raise CapExceeded(f"{2 ** len(es)} labelings exceeds the cap")
        edges.append(es)
        dig = rooted_digits(t, taxa, es) if kind == "rooted" else undirected_digits(t, taxa, es)
        sig_parts.append(_encode(dig, base))
        idx_parts.append(np.full(2 ** len(es), i, dtype=np.int64))
        mask_parts.append(np.arange(2 ** len(es), dtype=np.int64))
    sigs = np.concatenate(sig_parts)
    order = np.argsort(sigs, kind="stable")
    return TreeTable(n, kind, trees, edges, sigs[order],
                     np.concatenate(idx_parts)[order], np.concatenate(mask_parts)[order])


def relation_signature(rel: RelationGraph, rooted: bool) -> int:
    taxa = sorted(rel.taxa)
    cls = rel.class_of
    sym = rel.symmetrized() if not rooted else rel.sym_edges
    sig, w = 0, 1
    base = 4 if rooted else 3
    for i, j in _pairs(len(taxa)):
        a, b = taxa[i], taxa[j]
        if cls[a] == cls[b]:
            d = 0
        elif rooted:
            d = 1 if (a, b) in rel.dir_edges else 2 if (b, a) in rel.dir_edges else 3
        else:
            d = 1 if frozenset((a, b)) in sym else 2
        sig += d * w
        w *= base
    return sig


def _from_table(table: TreeTable, hits, taxa, max_vertices):
    mapping = dict(zip(generic_taxa(table.n), taxa))
    out = []
    for i, mask in hits:
        t = table.trees[i]
        if max_vertices is not None and len(t.vertices) > max_vertices:
            continue
        out.append(relabel(t, table.labeling(i, mask), mapping))
    return out


def brute_force_explainers(rel: RelationGraph, max_vertices: int | None = None,
                           tolerate_degree2: bool = False, config: OracleConfig = DEFAULT) -> list:
    """Every (tree, labeling) explaining ``rel`` among phylogenetic trees on
    its taxa; rooted trees for directed and mixed data."""
    taxa = sorted(rel.taxa)
    n = len(taxa)
    if n > config.max_leaves:
        raise CapExceeded(f"{n} taxa exceeds the cap of {config.max_leaves}")
    if rel.mode == "undirected":
        kind = "unrooted+deg2" if tolerate_degree2 else "unrooted"
        table = tree_table(n, kind, config)
        return _from_table(table, table.lookup(relation_signature(rel, False)), taxa, max_vertices)
    table = tree_table(n, "rooted", config)
    if rel.mode == "directed":
        return _from_table(table, table.lookup(relation_signature(rel, True)), taxa, max_vertices)
    out = []
    sym = sorted(tuple(sorted(p)) for p in rel.sym_edges)
    for bits in product((0, 1), repeat=len(sym)):
        arcs = set(rel.dir_edges) | {(a, b) if bit == 0 else (b, a) for (a, b), bit in zip(sym, bits)}
        d = RelationGraph(rel.taxa, rel.zero_classes, (), arcs, "directed")
        out += _from_table(table, table.lookup(relation_signature(d, True)), taxa, max_vertices)
    return out


def explainer_signatures(n: int, kind: str, config: OracleConfig = DEFAULT) -> np.ndarray:
    """Distinct relation signatures realised by some labeled tree."""
    return np.unique(tree_table(n, kind, config).sigs)


def decode_undirected(sig: int, taxa) -> RelationGraph:
    """Inverse of the undirected signature (assumes a realisable code)."""
    pairs = _pairs(len(taxa))
    zero, sym = [], []
    for i, j in pairs:
        d = sig % 3
        sig //= 3
        if d == 0:
            zero.append((taxa[i], taxa[j]))
        elif d == 1:
            sym.append((taxa[i], taxa[j]))
    return RelationGraph.build(taxa=taxa, sym=sym, zero=zero, mode="undirected")


def decode_rooted(sig: int, taxa) -> RelationGraph:
    pairs = _pairs(len(taxa))
    zero, arcs = [], []
    for i, j in pairs:
        d = sig % 4
        sig //= 4
        if d == 0:
            zero.append((taxa[i], taxa[j]))
        elif d == 1:
            arcs.append((taxa[i], taxa[j]))
        elif d == 2:
            arcs.append((taxa[j], taxa[i]))
    return RelationGraph.build(taxa=taxa, dir=arcs, zero=zero, mode="directed")


def minimum_explainers(rel: RelationGraph, **kw) -> list:
    """The explainers with the fewest vertices, deduplicated by canonical form."""
    found = brute_force_explainers(rel, **kw)
    if not found:
        return []
    low = min(len(t.vertices) for t, _ in found)
    uniq = {}
    for t, lab in found:
        if len(t.vertices) == low:
            uniq.setdefault(canonical_form(t, lab), (t, lab))
    return [uniq[k] for k in sorted(uniq)]


def unique_by_form(pairs) -> dict:
    out = {}
    for t, lab in pairs:
        out.setdefault(canonical_form(t, lab), (t, lab))
    return out


__all__ = [
    "KINDS", "OracleConfig", "generic_taxa", "enumerate_trees", "enumerate_labelings", "recount_by_contraction",
    "tree_table", "labeled_trees", "brute_force_explainers", "explainer_signatures",
    "relation_signature", "decode_undirected", "decode_rooted", "minimum_explainers",
    "unique_by_form", "undirected_digits", "rooted_digits",
]
