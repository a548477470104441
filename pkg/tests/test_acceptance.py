"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Lines are printed as each criterion runs and repeated in the terminal
summary, so ``pytest tests/test_acceptance.py`` shows them without ``-s``.
"""

import math
import random
import time
from decimal import Decimal

from sdohkit import coverage, encoder, measures, ofn, reasoner, verbalize
from sdohkit.data import read_text
from sdohkit.kb import KnowledgeBase
from sdohkit.terms import (
    Iri,
    NegativeObjectPropertyAssertion,
    ObjectPropertyAssertion,
    SomeValuesFrom,
    SubClassOf,
    named,
)

from conftest import DATA, bundle
from mutations import mutate
import oracles

RESULTS = []


def record(n, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:>2}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_01_seed_stats(seed):
    st = seed.stats()
    ok = len(st.top_level) == 9 and st.max_depth >= 3
    record(1, "seed ontology statistics", ok,
           f"top-level={len(st.top_level)}, max depth={st.max_depth}")


def test_02_msm_inference(with_b):
    res = reasoner.realize(with_b)
    tag = res.provenance(Iri("", "patient_b"), Iri("", "Men_Who_Have_Sex_with_Men"))
    ok = tag is not None and tag != reasoner.ASSERTED
    record(2, "MSM inferred for patient_b", ok, f"provenance={tag}")


def test_03_negation_consistency(with_a):
    clean = reasoner.check_consistency(with_a)
    # hand-built positive assertion matching one negated substance-use triple
    neg = next(ax for ax in with_a.by_kind(NegativeObjectPropertyAssertion))
    positive = ObjectPropertyAssertion(neg.prop, neg.subject, neg.object)
    dirty = reasoner.check_consistency(with_a.overlay([positive]))
    shipped = reasoner.check_consistency(bundle(with_a, "contradiction.ofn"))
    ok = (clean.consistent and not dirty.consistent and len(dirty.clashes) == 1
          and len(shipped.clashes) == 1)
    record(3, "negative assertions vs. a contradicting positive", ok,
           f"clean clashes={len(clean.clashes)}, contradicted clashes={len(dirty.clashes)}")


def test_04_verbalization_golden(seed):
    expected = ("every support_healthy_eating_pattern_access is something that relates "
                "an access_to_healthy_and_nutritious_option")
    ax = SubClassOf(named("SDoHO#093"), SomeValuesFrom(Iri("", "relates"), named("SDoHO#134")))
    got = verbalize.verbalize_axiom(ax, verbalize.default_labels(seed))[1]
    ok = ax in seed and got.encode() == expected.encode()
    record(4, "food-access sentence byte-identical", ok, repr(got))


def test_05_agreement_formulas():
    m = verbalize.read_verdicts(read_text("verdicts_30.csv"))
    u = verbalize.score_agreement(m, "unanimous")
    maj = verbalize.score_agreement(m, "majority")
    ok = (abs(u.inter_evaluator - 0.9333) <= 1e-4 and u.rational == 27 / 30
          and abs(u.rational - 0.9) <= 1e-12 and abs(maj.rational - 0.9667) <= 1e-4)
    record(5, "agreement scores on 30-statement matrix", ok,
           f"unanimous inter={u.inter_evaluator:.4f} rational={u.rational:.4f}; "
           f"majority rational={maj.rational:.4f}")


def _north(home, km):
    return home[0] + math.degrees(km / measures.EARTH_RADIUS_KM), home[1]


def _shops(home, unhealthy, healthy, corners, corner_km=0.1):
    out = []
    for n in range(corners):
        out.append(measures.Establishment(f"c{n}", "unhealthy", True, *_north(home, corner_km)))
    for n in range(unhealthy):
        out.append(measures.Establishment(f"u{n}", "unhealthy", False, *_north(home, 0.2)))
    for n in range(healthy):
        out.append(measures.Establishment(f"h{n}", "healthy", False, *_north(home, 0.3)))
    return out


def test_06_rfei_thresholds():
    home = (29.76, -95.37)
    boundary = measures.classify_food_swamp(home, _shops(home, 386, 100, 3))
    by_ratio = measures.classify_food_swamp(home, _shops(home, 8, 2, 0))
    by_corners = measures.classify_food_swamp(home, _shops(home, 0, 4, 4, corner_km=0.39))
    ok = (abs(boundary.rfei.ratio - 3.89) <= 1e-9 and boundary.corner_stores == 3
          and not boundary.is_food_swamp
          and abs(by_ratio.rfei.ratio - 4.0) <= 1e-9
          and by_ratio.triggered == ("ratio_exceeds_threshold",)
          and abs(by_corners.rfei.ratio - 1.0) <= 1e-9
          and by_corners.triggered == ("corner_store_density",))
    record(6, "food-swamp threshold verdicts", ok,
           f"3.89/3 corners -> {boundary.is_food_swamp}, 4.0 -> {by_ratio.triggered}, "
           f"4 corners at 0.39 km -> {by_corners.triggered}")


def test_07_numeric_normalization():
    age = encoder.normalize_numeric("34 yo")
    loan = encoder.normalize_numeric("30k")
    ok = (age.datatype == loan.datatype == "decimal"
          and age.value == 34.0 and loan.value == 30000.0)
    record(7, "numeric normalization", ok, f"34 yo -> {age.value}, 30k -> {loan.value}")


def test_08_coverage_fixture(seed, seed_index):
    psych = coverage.match_annotations(
        seed, coverage.read_annotations(read_text("psychiatry_notes.csv")), seed_index)
    text = coverage.render_report(psych, "text", seed)
    pain = coverage.match_annotations(
        seed, coverage.read_annotations(read_text("chronic_pain_notes.csv")), seed_index)
    value = pain.levels["value"]
    ok = (psych.concept_total == 414
          and "  Education_Level  161 (38.89)" in text.splitlines()
          and psych.levels["domain"].percent == Decimal("100.00")
          and (value.matched, value.total) == (2, 3) and value.percent == Decimal("66.67"))
    record(8, "coverage table cells", ok,
           f"total={psych.concept_total}, domain={psych.levels['domain'].percent}%, "
           f"value={value.matched}/{value.total}={value.percent}%")


def _oracle_fixtures(seed):
    yield "seed", seed
    yield "seed+a", bundle(seed, "patient_a.ofn")
    yield "seed+b", bundle(seed, "patient_b.ofn")
    yield "seed+a+b", bundle(seed, "patient_a.ofn", "patient_b.ofn")
    yield "seed+a+contradiction", bundle(seed, "patient_a.ofn", "contradiction.ofn")
    rng = random.Random(9)
    for n in range(200):
        axioms = oracles.random_kb_axioms(rng, n_classes=rng.randint(2, 40),
                                          n_individuals=rng.randint(1, 20),
                                          n_props=rng.randint(1, 4), unsupported=n % 7 == 0)
        yield f"random-{n}", KnowledgeBase.from_axioms(axioms)


def test_09_oracle_equivalence(seed):
    failures, checked = [], 0
    for name, kb in _oracle_fixtures(seed):
        checked += 1
        if reasoner.realize(kb).as_pairs() != oracles.realize(kb.axioms):
            failures.append(name)
    files = sorted(DATA.glob("*.ofn"))
    for path in files:
        doc = ofn.parse_file(path)
        again = ofn.parse_document(ofn.serialize_axioms(doc.axioms, doc.prefixes))
        if set(again.axioms) != set(doc.axioms):
            failures.append(path.name)
    record(9, "realize == brute force; parser round-trip", not failures,
           f"{checked} knowledge bases, {len(files)} files, failures={failures or 0}")


def test_10_fuzz_totality():
    sources = [p.read_text() for p in sorted(DATA.glob("*.ofn"))]
    weights = [1 if len(s) > 10_000 else 20 for s in sources]
    rng = random.Random(10)
    docs = errors = 0
    crashes = []
    start = time.perf_counter()
    for _ in range(10_000):
        text = mutate(rng, rng.choices(sources, weights)[0])
        try:
            ofn.parse_document(text)
            docs += 1
        except ofn.ParseError as exc:
            if exc.line < 1 or exc.column < 1:
                crashes.append(f"unpositioned: {exc}")
            errors += 1
        except Exception as exc:  # anything else is a crash
            crashes.append(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    record(10, "10,000 mutated inputs parse or fail with a positioned error", not crashes,
           f"documents={docs}, parse errors={errors}, crashes={len(crashes)}, {elapsed:.1f}s")
