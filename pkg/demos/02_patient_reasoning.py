"""Encode a patient record, reason over it, and catch a contradiction.

Run: python3 demos/02_patient_reasoning.py
"""

from sdohkit import load_file
from sdohkit.data import path, read_text
from sdohkit.encoder import encode, parse_record
from sdohkit.reasoner import check_consistency, realize
from sdohkit.terms import Iri, NegativeObjectPropertyAssertion, ObjectPropertyAssertion

seed = load_file(path("seed.ofn"))

# A record is a plain list of facts. The encoder turns each one into
# numbered nodes hanging off the patient.
record = parse_record(read_text("patient_b.sdr"))
bundle = encode(record, seed)
print(f"{record.patient}: {len(record.facts)} facts -> {len(bundle.axioms)} axioms, "
      f"{len(bundle.nodes)} nodes")

kb = seed.overlay(bundle.axioms)
result = realize(kb)
patient = Iri("", record.patient)
print("\ninferred types:")
for cls in sorted(result.inferred(patient), key=lambda c: c.local):
    print(f"  {cls.local:<44} via {result.provenance(patient, cls)}")

# patient_a denies some substance use. Asserting the opposite is a clash.
rec_a = parse_record(read_text("patient_a.sdr"))
kb_a = seed.overlay(encode(rec_a, seed, base=429).axioms)
print("\npatient_a consistent:", check_consistency(kb_a).consistent)

neg = kb_a.by_kind(NegativeObjectPropertyAssertion)[0]
flipped = kb_a.overlay([ObjectPropertyAssertion(neg.prop, neg.subject, neg.object)])
for clash in check_consistency(flipped).clashes:
    print("clash:", clash)
