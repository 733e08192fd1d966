"""Compare the root choices of disconnected directed data with the oracle's
rooted explainers. With two components the hub has degree 2, which the
oracle's phylogenetic trees exclude."""

import argparse

from rgctree.core import canonical_form
from rgctree.directed import rooted_candidates
from rgctree.oracle import brute_force_explainers, decode_rooted, explainer_signatures, generic_taxa, minimum_explainers
from rgctree.quotient import build_quotient


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-leaves", type=int, default=5)
    args = ap.parse_args()
    print("n\tcomponents\trelations\tcandidates among oracle explainers\t"
          "oracle minima within candidates\tcandidates of minimum size")
    for n in range(2, args.max_leaves + 1):
        taxa = generic_taxa(n)
        tally: dict = {}
        for sig in explainer_signatures(n, "rooted"):
            rel = decode_rooted(int(sig), taxa)
            if len(rel.zero_classes) != n:
                continue
            q = build_quotient(rel)
            if len(q.components()) < 2:
                continue
            row = tally.setdefault(len(q.components()), [0, 0, 0, 0])
            cands = rooted_candidates(q)
            ours = {canonical_form(t, lab) for _, t, lab in cands}
            found = {canonical_form(t, lab) for t, lab in brute_force_explainers(rel)}
            low = minimum_explainers(rel)
            row[0] += 1
            row[1] += ours <= found
            row[2] += {canonical_form(t, lab) for t, lab in low} <= ours
            row[3] += sum(len(t.vertices) == len(low[0][0].vertices) for _, t, _ in cands)
        for k in sorted(tally):
            print(n, k, *tally[k], sep="\t")

if __name__ == "__main__":
    main()
