"""Load the bundled seed ontology and look around.

Run: python3 demos/01_load_and_stats.py
"""

from sdohkit import load_file
from sdohkit.data import path
from sdohkit.reasoner import classify
from sdohkit.terms import Iri

kb = load_file(path("seed.ofn"))
stats = kb.stats()
print(f"{len(kb.canonical_axioms())} axioms, {len(kb.classes)} classes, max depth {stats.max_depth}")

# The top-level classes are the domains everything else hangs under.
print("\ntop-level classes:")
for c in sorted(stats.top_level, key=lambda i: i.local):
    print("  ", kb.labels_for(c).pref)

# Walk up from a leaf to see the chain that sets the depth.
index = classify(kb)
leaf = Iri("", "Food_Swamp")
chain = sorted(index.superclasses(leaf), key=lambda c: -len(index.superclasses(c)))
print("\nFood_Swamp sits under:", " > ".join(c.local for c in reversed(chain)))
