import pytest
from hypothesis import given, settings, strategies as st

from sdohkit import encoder, ofn, reasoner, vocab
from sdohkit.data import path, read_text
from sdohkit.encoder import EncodeError, RecordError, encode, normalize_numeric, parse_record
from sdohkit.terms import (
    ClassAssertion,
    DataPropertyAssertion,
    Iri,
    Literal,
    Named,
    NegativeObjectPropertyAssertion,
    ObjectPropertyAssertion,
)


def record(name):
    return parse_record(read_text(name))


def kinds(bundle, kind):
    return [ax for ax in bundle.axioms if isinstance(ax, kind)]


def test_occupation_fact():
    rec = parse_record("patient p\noccupation nurse time=past\n")
    (fact,) = rec.facts
    assert (fact.category, fact.value, fact.time, fact.negative) == ("occupation", "nurse", "past", False)


def test_empty_record():
    assert parse_record("patient p\n").facts == ()


def test_misspelled_category_names_line():
    text = read_text("patient_a.sdr").replace("occupation nurse", "occupationn nurse")
    line = text.splitlines().index("occupationn nurse time=past") + 1
    with pytest.raises(RecordError) as err:
        parse_record(text)
    assert err.value.line == line
    assert "occupationn" in str(err.value)


@pytest.mark.parametrize("text", [
    "occupation nurse\n",
    "patient a\npatient b\n",
    "patient a\nrace black time=later\n",
    "patient a\nrace 'black\n",
])
def test_record_errors(text):
    with pytest.raises(RecordError):
        parse_record(text)


@pytest.mark.parametrize("raw,value", [("34 yo", 34.0), ("30k", 30000.0), ("30K", 30000.0),
                                       ("0", 0.0), ("2.5", 2.5)])
def test_normalize_numeric(raw, value):
    lit = normalize_numeric(raw)
    assert lit.datatype == "decimal" and lit.value == value


@pytest.mark.parametrize("raw", ["", "thirty", "34 years young", "3e5", "k"])
def test_normalize_numeric_rejects_prose(raw):
    with pytest.raises(ValueError):
        normalize_numeric(raw)


def test_patient_a_negations_and_cessation(seed):
    b = encode(record("patient_a.sdr"), seed)
    negs = kinds(b, NegativeObjectPropertyAssertion)
    assert len(negs) == 2
    assert {n.prop for n in negs} == {vocab.has_substance_use_element}
    past = [ax.subject for ax in kinds(b, ObjectPropertyAssertion)
            if ax.prop is vocab.has_time_flag and ax.object is vocab.past
            and ax.subject.local.startswith("substance_use_")]
    assert len(past) == 1
    changes = [ax for ax in kinds(b, ObjectPropertyAssertion)
               if ax.prop is vocab.has_behavior_change and ax.subject is past[0]]
    assert len(changes) == 1
    assert ClassAssertion(Named(vocab.Behavior_Change), changes[0].object) in b.axioms


def test_patient_a_loan_amount(seed):
    b = encode(record("patient_a.sdr"), seed)
    amounts = [ax for ax in kinds(b, DataPropertyAssertion) if ax.prop is vocab.has_number]
    assert [a.value for a in amounts] == [Literal("30000.0", "decimal")]
    assert amounts[0].subject.local.startswith("loan_")


def test_patient_b_sexual_behavior_node(seed):
    b = encode(record("patient_b.sdr"), seed)
    nodes = [n for n in b.nodes if n.category == "sexual_behavior_element"]
    assert len(nodes) == 1
    node = nodes[0].iri
    out = [ax for ax in b.axioms
           if isinstance(ax, (ObjectPropertyAssertion, DataPropertyAssertion)) and ax.subject is node]
    assert len(out) == 2
    assert {ax.prop for ax in out} == {vocab.has_number_of_sex_partner, vocab.paco_hasObservationPeriod}
    age = [ax for ax in kinds(b, DataPropertyAssertion) if ax.prop is vocab.teo_hasAgeValue]
    assert age[0].value.value == 34.0 and age[0].subject is b.patient


def test_race_only(seed):
    b = encode(parse_record("patient p\nrace black\n"), seed)
    assertions = [ax for ax in b.axioms if type(ax).__name__.endswith("Assertion")]
    assert assertions == [ObjectPropertyAssertion(vocab.has_race, Iri("", "p"), Iri("", "black"))]
    assert b.nodes == []


@pytest.mark.parametrize("line", [
    "race black time=past",
    "employment retired neg",
    "substance_use smoking colour=red",
    "race purple",
    "age thirty",
])
def test_encode_errors(seed, line):
    with pytest.raises(EncodeError):
        encode(parse_record(f"patient p\n{line}\n"), seed)


def test_shipped_bundles_match_records(seed):
    for name, base in (("patient_a", 429), ("patient_b", 1)):
        b = encode(record(f"{name}.sdr"), seed, base=base)
        assert set(b.axioms) == set(ofn.parse_file(path(f"{name}.ofn")).axioms)


def test_node_numbers_increase_and_avoid_the_ontology(seed):
    b = encode(record("patient_a.sdr"), seed, base=429)
    by_cat = {}
    for n in b.nodes:
        by_cat.setdefault(n.category, []).append(n.number)
        assert n.iri not in seed.individuals and n.iri not in seed.classes
    for nums in by_cat.values():
        assert nums == sorted(nums) and len(set(nums)) == len(nums)
    assert by_cat["substance_use"] == [429, 430, 431]


def _canonical(bundle):
    rename = {}
    counters = {}
    for n in bundle.nodes:
        k = counters.get(n.category, 0)
        counters[n.category] = k + 1
        rename[n.iri] = f"{n.category}#{k}"
    text = ofn.serialize_axioms(bundle.axioms, vocab.DEFAULT_PREFIXES)
    for iri, name in sorted(rename.items(), key=lambda kv: -len(kv[0].local)):
        text = text.replace(f"{iri.curie})", f"{name})").replace(f"{iri.curie} ", f"{name} ")
    return sorted(text.splitlines())


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5000), st.sampled_from(["patient_a.sdr", "patient_b.sdr"]))
def test_reencoding_is_isomorphic(seed, base, name):
    rec = record(name)
    assert _canonical(encode(rec, seed, base=1)) == _canonical(encode(rec, seed, base=base))


@pytest.mark.parametrize("name", ["patient_a.sdr", "patient_b.sdr"])
def test_structural_invariants(seed, name):
    rec = record(name)
    b = encode(rec, seed)
    nodes = {n.iri for n in b.nodes}
    for ax in kinds(b, DataPropertyAssertion):
        assert ax.subject in nodes or ax.subject is b.patient
    flagged = sum(1 for f in rec.facts if f.time is not None)
    negated_behaviors = sum(1 for f in rec.facts
                            if f.negative and encoder.PATTERNS[f.category].kind == "behavior"
                            and f.time is None)
    flags = [ax for ax in kinds(b, ObjectPropertyAssertion) if ax.prop is vocab.has_time_flag]
    assert len(flags) == flagged + negated_behaviors
    assert len({ax.subject for ax in flags}) == len(flags)


@pytest.mark.parametrize("name", ["patient_a.sdr", "patient_b.sdr"])
def test_bundles_stay_consistent(seed, name):
    b = encode(record(name), seed)
    kb = seed.overlay(b.axioms)
    assert reasoner.check_consistency(kb).consistent
