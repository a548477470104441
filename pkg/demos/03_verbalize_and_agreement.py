"""Turn axioms into sentences for reviewers, then score their verdicts.

Run: python3 demos/03_verbalize_and_agreement.py
"""

from collections import Counter

from sdohkit import load_file
from sdohkit.data import path, read_text
from sdohkit.verbalize import read_verdicts, score_agreement, verbalize_all

kb = load_file(path("seed.ofn"))
statements = verbalize_all(kb)
print(f"{len(statements)} statements")
print(Counter(s.pattern for s in statements).most_common())

# A few samples, one per pattern.
seen = set()
for s in statements:
    if s.pattern not in seen:
        seen.add(s.pattern)
        print(f"  [{s.pattern}] {s.sentence}")

# Three reviewers marked 30 statements rational or irrational.
matrix = read_verdicts(read_text("verdicts_30.csv"))
for mode in ("unanimous", "majority"):
    sc = score_agreement(matrix, mode)
    print(f"{mode:>9}: inter-evaluator {sc.inter_evaluator:.4f}, rational {sc.rational:.4f}")

# Majority forgives a lone dissenter, so it never scores lower.
split = [sid for sid, row in zip(matrix.statement_ids, matrix.rational) if 0 < row.sum() < len(row)]
print("split statements:", ", ".join(split))
