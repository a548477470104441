import random
import threading

import pytest
from hypothesis import given, settings, strategies as st

from sdohkit import vocab
from sdohkit.kb import (
    CycleError,
    FrozenError,
    KnowledgeBase,
    KnowledgeBaseError,
    UndeclaredError,
)
from sdohkit.terms import (
    AnnotationAssertion,
    ClassAssertion,
    DataPropertyAssertion,
    Declaration,
    Iri,
    Literal,
    Named,
    ObjectPropertyAssertion,
    SomeValuesFrom,
    SubClassOf,
    axiom_signature,
    named,
)

import oracles


def cls(name):
    return Declaration("Class", Iri("", name))


def test_iri_interning_and_display():
    assert Iri("", "Food_Swamp") is Iri("", "Food_Swamp")
    assert Iri.parse(":Food_Swamp") is Iri("", "Food_Swamp")
    assert Iri.parse("teo:hasAgeValue").display == "teo:hasAgeValue"
    assert Iri("", "SDoHO#093").display == "SDoHO#093"
    with pytest.raises(ValueError):
        Iri("", "9lives")


def test_iri_interning_is_thread_safe():
    results = []

    def grab():
        results.append(Iri("", "Raced_Name_Xyz"))

    threads = [threading.Thread(target=grab) for _ in range(16)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)


def test_add_food_swamp_measure_axiom():
    kb = KnowledgeBase()
    for d in (cls("Food_Swamp"), cls("Traditional_Retail_Food_Environment_Index"),
              Declaration("ObjectProperty", vocab.has_measure)):
        kb.add(d)
    ax = SubClassOf(named("Food_Swamp"),
                    SomeValuesFrom(vocab.has_measure, named("Traditional_Retail_Food_Environment_Index")))
    kb.add(ax)
    kb.add(ax)
    kb.freeze()
    assert kb.by_kind(SubClassOf) == (ax,)


def test_undeclared_iri_is_named():
    kb = KnowledgeBase()
    kb.add(Declaration("NamedIndividual", Iri("", "patient_b")))
    kb.add(Declaration("ObjectProperty", vocab.has_race))
    with pytest.raises(UndeclaredError) as err:
        kb.add(ObjectPropertyAssertion(vocab.has_race, Iri("", "patient_b"), Iri("", "black")))
    assert err.value.iri is Iri("", "black")
    assert "black" in str(err.value)


def test_lax_mode_accepts_undeclared():
    kb = KnowledgeBase(strict=False)
    kb.add(ObjectPropertyAssertion(vocab.has_race, Iri("", "patient_b"), Iri("", "black")))
    assert len(kb.freeze()) == 1


def test_frozen_store_rejects_writes():
    kb = KnowledgeBase().freeze()
    with pytest.raises(FrozenError):
        kb.add(cls("A"))


def test_queries_need_freeze():
    with pytest.raises(KnowledgeBaseError):
        KnowledgeBase().by_kind(SubClassOf)


def test_cycle_rejected_at_freeze():
    kb = KnowledgeBase()
    for n in "ABC":
        kb.add(cls(n))
    kb.add(SubClassOf(named("A"), named("B")))
    kb.add(SubClassOf(named("B"), named("C")))
    kb.add(SubClassOf(named("C"), named("A")))
    with pytest.raises(CycleError):
        kb.freeze()


def test_category_literal_must_name_an_individual():
    kb = KnowledgeBase()
    kb.add(Declaration("NamedIndividual", Iri("", "p")))
    kb.add(Declaration("DataProperty", Iri("", "d")))
    with pytest.raises(KnowledgeBaseError):
        kb.add(DataPropertyAssertion(Iri("", "d"), Iri("", "p"), Literal("nobody", "category")))


def test_empty_stats():
    st_ = KnowledgeBase().freeze().stats()
    assert st_.classes == 0 and st_.max_depth == 0 and st_.top_level == ()


def test_chain_depth_three():
    kb = KnowledgeBase.from_axioms([
        cls("A"), cls("B"), cls("C"),
        SubClassOf(named("A"), named("B")),
        SubClassOf(named("B"), named("C")),
    ])
    st_ = kb.stats()
    assert st_.max_depth == 3
    assert st_.top_level == (Iri("", "C"),)


def test_seed_stats(seed):
    st_ = seed.stats()
    assert len(st_.top_level) == 9
    assert set(st_.top_level) == set(vocab.TOP_LEVEL_CLASSES)
    assert st_.max_depth == oracles.longest_chain(seed.declared("Class"), seed.axioms)
    assert st_.max_depth >= 3


def test_seed_top_level_brute_force(seed):
    has_named_super = {ax.sub.iri for ax in seed.axioms
                       if isinstance(ax, SubClassOf) and isinstance(ax.sup, Named)}
    expected = sorted(seed.declared("Class") - has_named_super)
    assert list(seed.top_level()) == expected


def test_labels(seed):
    lab = seed.labels_for(Iri("", "Social_Isolation"))
    assert lab.pref == "Social_Isolation"
    assert lab.alt == ("Loneliness",)
    bare = seed.labels_for(Iri("", "Never_Annotated_Thing"))
    assert bare.pref == "Never_Annotated_Thing" and bare.alt == ()


def test_two_alt_labels_keep_order():
    x = Iri("", "X")
    kb = KnowledgeBase.from_axioms([
        cls("X"),
        AnnotationAssertion(vocab.skos_altLabel, x, Literal("second")),
        AnnotationAssertion(vocab.skos_altLabel, x, Literal("first")),
    ])
    assert kb.labels_for(x).alt == ("second", "first")


def test_no_dangling_index_entries(seed):
    mentioned = set()
    for ax in seed.axioms:
        mentioned.update(axiom_signature(ax))
    for c in seed.classes:
        assert c in mentioned
        for s in seed.direct_supers(c):
            assert s in mentioned
        for ax in seed.by_subject(c):
            assert ax in seed
    for kind in {type(a) for a in seed.axioms}:
        assert all(ax in seed for ax in seed.by_kind(kind))


def test_overlay_leaves_base_untouched(seed, with_a):
    assert len(with_a) > len(seed)
    assert Iri("", "patient_a") not in seed.individuals
    assert Iri("", "patient_a") in with_a.individuals


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31))
def test_load_order_does_not_matter(seed_value):
    axioms = oracles.seeded_axioms(seed_value)
    shuffled = list(axioms)
    random.Random(seed_value).shuffle(shuffled)
    a = KnowledgeBase.from_axioms(axioms)
    b = KnowledgeBase.from_axioms(shuffled + axioms[:5])
    assert a.stats() == b.stats()
    assert a.canonical_axioms() == b.canonical_axioms()
    for c in a.classes:
        assert a.by_subject(c) == b.by_subject(c)
        assert a.direct_supers(c) == b.direct_supers(c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31))
def test_depth_matches_longest_path(seed_value):
    axioms = oracles.seeded_axioms(seed_value, n_classes=12)
    kb = KnowledgeBase.from_axioms(axioms)
    assert kb.stats().max_depth == oracles.longest_chain(kb.declared("Class"), axioms)


def test_class_assertion_requires_declared_class():
    kb = KnowledgeBase()
    kb.add(Declaration("NamedIndividual", Iri("", "x")))
    with pytest.raises(UndeclaredError):
        kb.add(ClassAssertion(named("Ghost"), Iri("", "x")))
