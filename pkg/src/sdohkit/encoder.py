"""Encode structured patient fact records as assertion axioms.

Record format (``.sdr``)::

    patient patient_b
    age "34 yo"
    race black
    sexual_behavior partners=3 period=past_year
    substance_use smoking neg

Each fact is ``<category> [<value>] [neg] [time=current|past] [<key>=<value>]*``.
Values with spaces are quoted; ``#`` starts a comment.

Per-category patterns:

* direct: one property assertion from the patient to a value individual
  (negatable). Race, gender and similar attributes are never reified.
* status: a numbered node typed by the value class, linked from the patient
  and carrying the time flag.
* behavior: like status, but negation negates the patient-to-node link, and a
  ceased behavior (``time=past``) also gets a behavior-change instance.
* group: a numbered node that carries qualifier values, so counts and
  periods describe the relation instance rather than each other.
* numeric: a normalized decimal data value on the patient.
"""

from __future__ import annotations

import re
import shlex
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from . import vocab
from .coverage import normalize_label
from .kb import KnowledgeBase
from .ofn import serialize_axioms
from .terms import (
    Axiom,
    ClassAssertion,
    DataPropertyAssertion,
    Declaration,
    Iri,
    LOCAL_RE,
    Literal,
    Named,
    NegativeObjectPropertyAssertion,
    ObjectPropertyAssertion,
)


class RecordError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EncodeError(ValueError):
    pass


@dataclass(frozen=True)
class Pattern:
    kind: str  # direct | status | behavior | group | numeric
    prop: Iri
    node: Optional[str] = None  # base name for numbered nodes
    node_class: Optional[Iri] = None  # default type for group nodes


PATTERNS = {
    "race": Pattern("direct", vocab.has_race),
    "gender": Pattern("direct", vocab.has_gender),
    "education": Pattern("direct", vocab.has_education_level),
    "marital_status": Pattern("direct", vocab.has_marital_status),
    "sexual_orientation": Pattern("direct", vocab.has_sexual_orientation),
    "insurance": Pattern("direct", vocab.has_insurance),
    "living_status": Pattern("direct", vocab.has_living_status),
    "adverse_childhood_experience": Pattern("direct", vocab.has_adverse_childhood_experience),
    "condom_use": Pattern("direct", vocab.has_condom_use),
    "employment": Pattern("status", vocab.has_employment_status, "employment_status"),
    "occupation": Pattern("status", vocab.has_occupation, "occupation"),
    "diagnosis": Pattern("status", vocab.has_diagnosis, "diagnosis"),
    "incarceration": Pattern("status", vocab.has_incarceration_status, "incarceration_status"),
    "substance_use": Pattern("behavior", vocab.has_substance_use_element, "substance_use"),
    "sexual_behavior": Pattern("group", vocab.has_sexual_behavior_element,
                               "sexual_behavior_element", vocab.Sexual_Behavior_Element),
    "loan": Pattern("group", vocab.has_loan, "loan", Iri("", "Loan")),
    "age": Pattern("numeric", vocab.teo_hasAgeValue),
}

# qualifier keyword -> (property, value kind)
QUALIFIERS = {
    "partners": (vocab.has_number_of_sex_partner, "decimal"),
    "amount": (vocab.has_number, "decimal"),
    "minutes": (vocab.paco_hasTotalAmountMin, "decimal"),
    "age": (vocab.teo_hasAgeValue, "decimal"),
    "period": (vocab.paco_hasObservationPeriod, "individual"),
    "when": (vocab.has_time_description, "string"),
}

BEHAVIOR_CHANGE_NODE = "behavior_change"


@dataclass(frozen=True)
class Fact:
    category: str
    value: Optional[str] = None
    negative: bool = False
    time: Optional[str] = None
    qualifiers: tuple = ()
    line: int = 0


@dataclass(frozen=True)
class PatientRecord:
    patient: str
    facts: tuple = ()


def parse_record(text: str) -> PatientRecord:
    patient = None
    facts = []
    for n, raw in enumerate(text.splitlines(), start=1):
        try:
            tokens = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise RecordError(n, str(exc)) from None
        if not tokens:
            continue
        head, rest = tokens[0], tokens[1:]
        if head == "patient":
            if patient is not None:
                raise RecordError(n, "duplicate patient header")
            if len(rest) != 1 or not LOCAL_RE.match(rest[0]):
                raise RecordError(n, "patient header needs one identifier")
            patient = rest[0]
            continue
        if patient is None:
            raise RecordError(n, "record must start with 'patient <id>'")
        if head not in PATTERNS:
            raise RecordError(n, f"unknown category keyword {head!r}")
        facts.append(_parse_fact(n, head, rest))
    if patient is None:
        raise RecordError(1, "missing 'patient <id>' header")
    return PatientRecord(patient, tuple(facts))


def _parse_fact(n: int, category: str, tokens: list) -> Fact:
    value = None
    if tokens and tokens[0] != "neg" and "=" not in tokens[0]:
        value = tokens.pop(0)
    negative = False
    time = None
    qualifiers = []
    for tok in tokens:
        if tok == "neg":
            if negative:
                raise RecordError(n, "'neg' given twice")
            negative = True
            continue
        key, eq, val = tok.partition("=")
        if not eq or not key or not val:
            raise RecordError(n, f"expected key=value, found {tok!r}")
        if key == "time":
            if val not in vocab.TIME_FLAGS:
                raise RecordError(n, f"time flag must be current or past, found {val!r}")
            if time is not None:
                raise RecordError(n, "time flag given twice")
            time = val
        else:
            qualifiers.append((key, val))
    return Fact(category, value, negative, time, tuple(qualifiers), n)


_AGE_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*(?:yo|y/o|years? old)\s*$", re.IGNORECASE)
_THOUSANDS_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*[kK]\s*$")
_PLAIN_RE = re.compile(r"^\s*[-+]?(\d+(?:\.\d*)?|\.\d+)\s*$")


def normalize_numeric(text: str) -> Literal:
    """Turn ``"34 yo"``, ``"30k"`` or ``"2.5"`` into a decimal literal."""
    if not text or not text.strip():
        raise ValueError("empty numeric value")
    m = _AGE_RE.match(text)
    if m:
        return Literal.decimal(float(m.group(1)))
    m = _THOUSANDS_RE.match(text)
    if m:
        return Literal.decimal(float(m.group(1)) * 1000)
    if _PLAIN_RE.match(text):
        return Literal.decimal(float(text))
    raise ValueError(f"unrecognized numeric value {text!r}")


@dataclass(frozen=True)
class ReifiedNode:
    category: str
    number: int
    iri: Iri


@dataclass
class EncodedBundle:
    patient: Iri
    axioms: list = field(default_factory=list)
    nodes: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def to_ofn(self, prefixes=None) -> str:
        return serialize_axioms(self.axioms, prefixes or vocab.DEFAULT_PREFIXES)


class _Encoder:
    def __init__(self, kb: KnowledgeBase, base: int):
        self.kb = kb
        self.base = base
        self.next_number: dict[str, int] = defaultdict(lambda: base)
        self.taken = set(kb.individuals) | set(kb.classes) | kb.declared("ObjectProperty") \
            | kb.declared("DataProperty") | kb.declared("AnnotationProperty")
        self.axioms: dict[Axiom, None] = {}
        self.nodes: list[ReifiedNode] = []
        self.individuals = self._index(kb.declared("NamedIndividual"))
        self.classes = self._index(kb.classes)

    def _index(self, iris) -> dict:
        out = defaultdict(set)
        for iri in iris:
            labels = self.kb.labels_for(iri)
            for text in (iri.local, labels.pref, *labels.alt):
                out[normalize_label(text)].add(iri)
        return out

    def emit(self, *axioms: Axiom) -> None:
        for ax in axioms:
            self.axioms.setdefault(ax, None)

    def resolve(self, table: dict, value: str, what: str, fact: Fact) -> Iri:
        hits = sorted(table.get(normalize_label(value), ()))
        if not hits:
            raise EncodeError(f"line {fact.line}: no {what} matches {value!r}")
        return hits[0]

    def allocate(self, category: str) -> Iri:
        n = self.next_number[category]
        while Iri(vocab.SDOHO, f"{category}_{n}") in self.taken:
            n += 1
        iri = Iri(vocab.SDOHO, f"{category}_{n}")
        self.next_number[category] = n + 1
        self.taken.add(iri)
        self.nodes.append(ReifiedNode(category, n, iri))
        self.emit(Declaration("NamedIndividual", iri))
        return iri

    def flag(self, node: Iri, time: Optional[str]) -> None:
        if time is not None:
            self.emit(ObjectPropertyAssertion(vocab.has_time_flag, node, vocab.TIME_FLAGS[time]))

    def qualify(self, node: Iri, fact: Fact) -> None:
        for key, raw in fact.qualifiers:
            if key not in QUALIFIERS:
                raise EncodeError(f"line {fact.line}: qualifier {key!r} is not registered")
            prop, kind = QUALIFIERS[key]
            if kind == "decimal":
                try:
                    lit = normalize_numeric(raw)
                except ValueError as exc:
                    raise EncodeError(f"line {fact.line}: {exc}") from None
                self.emit(DataPropertyAssertion(prop, node, lit))
            elif kind == "string":
                self.emit(DataPropertyAssertion(prop, node, Literal(raw)))
            else:
                target = self.resolve(self.individuals, raw, "individual", fact)
                self.emit(ObjectPropertyAssertion(prop, node, target))

    def fact(self, patient: Iri, fact: Fact) -> None:
        pat = PATTERNS[fact.category]
        if fact.negative and pat.kind not in ("direct", "behavior"):
            raise EncodeError(f"line {fact.line}: category {fact.category!r} cannot be negated")
        if fact.time is not None and pat.kind in ("direct", "numeric"):
            raise EncodeError(f"line {fact.line}: category {fact.category!r} takes no time flag")
        if fact.qualifiers and pat.kind in ("direct", "numeric"):
            raise EncodeError(f"line {fact.line}: category {fact.category!r} takes no qualifiers")
        if fact.value is None and pat.kind != "group":
            raise EncodeError(f"line {fact.line}: category {fact.category!r} needs a value")

        if pat.kind == "numeric":
            try:
                lit = normalize_numeric(fact.value)
            except ValueError as exc:
                raise EncodeError(f"line {fact.line}: {exc}") from None
            self.emit(DataPropertyAssertion(pat.prop, patient, lit))
            return
        if pat.kind == "direct":
            value = self.resolve(self.individuals, fact.value, "individual", fact)
            cls = NegativeObjectPropertyAssertion if fact.negative else ObjectPropertyAssertion
            self.emit(cls(pat.prop, patient, value))
            return

        if pat.kind == "group" and fact.value is None:
            node_class = pat.node_class
        else:
            node_class = self.resolve(self.classes, fact.value, "class", fact)
        node = self.allocate(pat.node)
        self.emit(ClassAssertion(Named(node_class), node))
        link = NegativeObjectPropertyAssertion if fact.negative else ObjectPropertyAssertion
        self.emit(link(pat.prop, patient, node))
        time = fact.time
        if pat.kind == "behavior" and fact.negative and time is None:
            time = "current"
        self.flag(node, time)
        if pat.kind == "behavior" and not fact.negative and fact.time == "past":
            change = self.allocate(BEHAVIOR_CHANGE_NODE)
            self.emit(ClassAssertion(Named(vocab.Behavior_Change), change),
                      ObjectPropertyAssertion(vocab.has_behavior_change, node, change))
        self.qualify(node, fact)


def encode(record: PatientRecord, kb: KnowledgeBase, base: int = 1) -> EncodedBundle:
    """Encode one record against a frozen ontology; ``base`` seeds node numbering."""
    enc = _Encoder(kb, base)
    patient = Iri(vocab.SDOHO, record.patient)
    if not kb.is_declared(patient):
        enc.emit(Declaration("NamedIndividual", patient))
        enc.taken.add(patient)
    for fact in record.facts:
        enc.fact(patient, fact)
    return EncodedBundle(patient, list(enc.axioms), enc.nodes)
