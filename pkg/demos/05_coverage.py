"""How much of an annotated corpus does the ontology cover?

Run: python3 demos/05_coverage.py
"""

from sdohkit import load_file
from sdohkit.coverage import match_annotations, read_annotations, render_report
from sdohkit.data import path, read_text
from sdohkit.reasoner import classify

kb = load_file(path("seed.ofn"))
index = classify(kb)

reports = []
for name in ("psychiatry_notes.csv", "chronic_pain_notes.csv", "aou_survey.csv"):
    rep = match_annotations(kb, read_annotations(read_text(name)), index)
    reports.append(rep)
    levels = ", ".join(f"{lvl} {s.matched}/{s.total}" for lvl, s in rep.levels.items())
    print(f"{rep.source}: {levels}")
    for entry in rep.unmatched[:3]:
        print(f"   unmatched {entry.level}: {entry.label}")

print()
print(render_report(reports[0], "text", kb))
