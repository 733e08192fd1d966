import pytest

from rgctree.core import PhyloTree, RelationGraph, canonical_form, edge, is_binary
from rgctree.errors import CapExceeded
from rgctree.oracle import (
    OracleConfig,
    brute_force_explainers,
    decode_undirected,
    enumerate_labelings,
    enumerate_trees,
    explainer_signatures,
    generic_taxa,
    minimum_explainers,
    recount_by_contraction,
    relation_signature,
    tree_table,
)
from rgctree.relations import explains, relation_zero

# leaf-labeled phylogenetic tree counts, reproduced by the enumerator itself
UNROOTED = {1: 1, 2: 1, 3: 1, 4: 4, 5: 26, 6: 236}
ROOTED = {1: 1, 2: 1, 3: 4, 4: 26, 5: 236}


@pytest.mark.parametrize("n", sorted(UNROOTED))
def test_unrooted_counts_and_duplicate_free(n):
    trees = list(enumerate_trees(n))
    assert len(trees) == UNROOTED[n]
    assert len({canonical_form(t) for t in trees}) == len(trees)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_independent_recount(n):
    assert recount_by_contraction(n) == UNROOTED[n]


@pytest.mark.parametrize("n", sorted(ROOTED))
def test_rooted_counts(n):
    trees = list(enumerate_trees(n, rooted=True))
    assert len(trees) == ROOTED[n]
    assert all(t.root is not None for t in trees)
    assert len({canonical_form(t) for t in trees}) == len(trees)


def test_small_cases():
    (t,) = enumerate_trees(1)
    assert t.vertices == {"t0"}
    assert sum(1 for t in enumerate_trees(4) if is_binary(t)) == 3
    with pytest.raises(CapExceeded):
        list(enumerate_trees(4, config=OracleConfig(max_leaves=3)))


def test_labelings():
    star = PhyloTree.from_edges([("v", x) for x in "abc"])
    labs = list(enumerate_labelings(star))
    assert len(labs) == 8
    assert [dict(l) for l in enumerate_labelings(PhyloTree.single("a"))] == [{}]
    discrete = [l for l in labs if all(len(c) == 1 for c in relation_zero(star, l))]
    assert len(discrete) == 4
    assert all(sum(1 for v in l.values() if v == 0) <= 1 for l in discrete)


def test_table_scoring_agrees_with_explains():
    table = tree_table(4, "unrooted")
    taxa = generic_taxa(4)
    for i in range(0, len(table.sigs), 37):
        t = table.trees[table.tree_idx[i]]
        lab = table.labeling(table.tree_idx[i], table.masks[i])
        rel = decode_undirected(int(table.sigs[i]), taxa)
        assert explains(t, lab, rel)
        assert relation_signature(rel, False) == int(table.sigs[i])


def test_explainers_examples():
    path = RelationGraph.build(sym=[("x", "y"), ("y", "z")])
    found = brute_force_explainers(path)
    assert found and all(explains(t, l, path) for t, l in found)
    (m,) = minimum_explainers(path)
    assert len(m[0].vertices) == 4
    assert brute_force_explainers(RelationGraph.build(sym=[("x", "y"), ("y", "z"), ("x", "z")])) == []
    (single,) = brute_force_explainers(RelationGraph.build(taxa="a"))
    assert single[0].vertices == {"a"}


def test_tolerant_signatures_cover_every_forest_quotient():
    # sum over set partitions of the number of labeled forests on the blocks
    assert [len(explainer_signatures(n, "unrooted+deg2")) for n in (3, 4, 5)] == [14, 95, 877]


def test_mixed_mode_unions_orientations():
    rel = RelationGraph.build(sym=[("x", "y")], mode="mixed")
    found = brute_force_explainers(rel)
    roots = {(l[edge(t.root, "x")], l[edge(t.root, "y")]) for t, l in found}
    assert roots == {(0, 1), (1, 0)}
