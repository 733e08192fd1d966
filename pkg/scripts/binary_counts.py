"""Print t(k) from leaf-insertion enumeration and binary explainer counts
for small relations, with the per-tree product formula alongside."""

import argparse

from rgctree.binary import refine_all_binary_report, t_count
from rgctree.core import RelationGraph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=8)
    args = ap.parse_args()
    print("k\tt(k)")
    for k in range(3, args.max_k + 1):
        print(f"{k}\t{t_count(k)}")
    print()
    examples = {
        "empty on 4": RelationGraph.build(taxa="abcd"),
        "empty on 5": RelationGraph.build(taxa="abcde"),
        "star a-b,a-c,a-d": RelationGraph.build(sym=[("a", "b"), ("a", "c"), ("a", "d")]),
        "star a-b..a-e": RelationGraph.build(sym=[("a", x) for x in "bcde"]),
        "path a-b-c-d": RelationGraph.build(sym=[("a", "b"), ("b", "c"), ("c", "d")]),
        "edge + vertex": RelationGraph.build(taxa="abc", sym=[("a", "b")]),
    }
    print("relation\tbinary trees\traw candidates\tformula per least resolved tree")
    for name, rel in examples.items():
        rep = refine_all_binary_report(rel)
        formulas = ",".join(str(r.formula) for r in rep.per_tree)
        print(f"{name}\t{len(rep.trees)}\t{rep.raw_total}\t{formulas}")


if __name__ == "__main__":
    main()
