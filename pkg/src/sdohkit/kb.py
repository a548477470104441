"""Indexed axiom store, labels and ontology statistics."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from . import vocab
from .terms import (
    KIND_ORDER,
    AnnotationAssertion,
    Axiom,
    ClassAssertion,
    DataPropertyAssertion,
    Declaration,
    EquivalentClasses,
    Iri,
    Named,
    NegativeObjectPropertyAssertion,
    ObjectPropertyAssertion,
    SubClassOf,
    axiom_signature,
    axiom_subjects,
    is_logical,
)


class KnowledgeBaseError(Exception):
    pass


class FrozenError(KnowledgeBaseError):
    pass


class UndeclaredError(KnowledgeBaseError):
    def __init__(self, iri: Iri, axiom: Axiom):
        super().__init__(f"undeclared identifier {iri.display!r} in {type(axiom).__name__}")
        self.iri = iri
        self.axiom = axiom


class CycleError(KnowledgeBaseError):
    def __init__(self, cycle):
        names = " -> ".join(i.display for i in cycle)
        super().__init__(f"subclass cycle: {names}")
        self.cycle = tuple(cycle)


# Built-in annotation properties never need a declaration.
BUILTIN = frozenset({vocab.rdfs_label, vocab.skos_altLabel, vocab.skos_definition})


@dataclass(frozen=True)
class Labels:
    pref: str
    alt: tuple = ()


@dataclass(frozen=True)
class OntologyStats:
    classes: int = 0
    object_properties: int = 0
    data_properties: int = 0
    annotation_properties: int = 0
    individuals: int = 0
    logical_axioms: int = 0
    declaration_axioms: int = 0
    top_level: tuple = ()
    max_depth: int = 0

    def as_rows(self) -> list[tuple[str, object]]:
        return [
            ("classes", self.classes),
            ("object_properties", self.object_properties),
            ("data_properties", self.data_properties),
            ("annotation_properties", self.annotation_properties),
            ("individuals", self.individuals),
            ("logical_axioms", self.logical_axioms),
            ("declaration_axioms", self.declaration_axioms),
            ("top_level_classes", len(self.top_level)),
            ("max_depth", self.max_depth),
        ]


def canonical_key(axiom: Axiom):
    # local import: ofn depends on this module
    from .ofn import render_axiom

    return (KIND_ORDER[type(axiom)], render_axiom(axiom))


class KnowledgeBase:
    """Axiom set with subject, kind, taxonomy and label indexes.

    Build with :meth:`add` then call :meth:`freeze`; a frozen store rejects
    further writes and is safe to share between threads.
    """

    def __init__(self, prefixes: Optional[Mapping[str, str]] = None, strict: bool = True):
        self.prefixes = dict(vocab.DEFAULT_PREFIXES if prefixes is None else prefixes)
        self.strict = strict
        self.frozen = False
        self._axioms: dict[Axiom, None] = {}
        self._by_subject: dict[Iri, set] = defaultdict(set)
        self._by_kind: dict[type, set] = defaultdict(set)
        self._supers: dict[Iri, set] = defaultdict(set)
        self._subs: dict[Iri, set] = defaultdict(set)
        self._declared: dict[str, set] = defaultdict(set)
        self._declared_all: set = set()
        self._pref: dict[Iri, str] = {}
        self._alt: dict[Iri, list] = defaultdict(list)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_axioms(
        cls,
        axioms: Iterable[Axiom],
        prefixes: Optional[Mapping[str, str]] = None,
        strict: bool = True,
    ) -> "KnowledgeBase":
        """Load an axiom collection in any order and freeze."""
        kb = cls(prefixes, strict=strict)
        axioms = list(axioms)
        for ax in axioms:
            if isinstance(ax, Declaration):
                kb.add(ax)
        for ax in axioms:
            if not isinstance(ax, Declaration):
                kb.add(ax)
        return kb.freeze()

    def add(self, axiom: Axiom) -> "KnowledgeBase":
        if self.frozen:
            raise FrozenError("knowledge base is frozen")
        if type(axiom) not in KIND_ORDER:
            raise TypeError(f"not an axiom: {axiom!r}")
        if axiom in self._axioms:
            return self
        if self.strict:
            self._check_declared(axiom)
        self._axioms[axiom] = None
        self._index(axiom)
        return self

    def _check_declared(self, axiom: Axiom) -> None:
        if isinstance(axiom, Declaration):
            return
        if isinstance(axiom, AnnotationAssertion):
            if axiom.prop not in BUILTIN and axiom.prop not in self._declared["AnnotationProperty"]:
                raise UndeclaredError(axiom.prop, axiom)
            return
        known = self._declared_all
        for iri in axiom_signature(axiom):
            if iri not in known:
                raise UndeclaredError(iri, axiom)
        if isinstance(axiom, DataPropertyAssertion) and axiom.value.datatype == "category":
            locals_ = {i.local for i in self._declared["NamedIndividual"]}
            if axiom.value.lexical not in locals_:
                raise KnowledgeBaseError(
                    f"category value {axiom.value.lexical!r} is not a declared individual"
                )

    def _index(self, axiom: Axiom) -> None:
        self._by_kind[type(axiom)].add(axiom)
        for s in axiom_subjects(axiom):
            self._by_subject[s].add(axiom)
        if isinstance(axiom, Declaration):
            self._declared[axiom.kind].add(axiom.iri)
            self._declared_all.add(axiom.iri)
        elif isinstance(axiom, SubClassOf) and isinstance(axiom.sup, Named):
            self._supers[axiom.sub.iri].add(axiom.sup.iri)
            self._subs[axiom.sup.iri].add(axiom.sub.iri)
        elif isinstance(axiom, AnnotationAssertion):
            if axiom.prop == vocab.rdfs_label and axiom.subject not in self._pref:
                self._pref[axiom.subject] = axiom.value.lexical
            elif axiom.prop == vocab.skos_altLabel:
                self._alt[axiom.subject].append(axiom.value.lexical)

    def freeze(self) -> "KnowledgeBase":
        if self.frozen:
            return self
        cycle = find_cycle(self._supers)
        if cycle:
            raise CycleError(cycle)
        self._canonical = tuple(sorted(self._axioms, key=canonical_key))
        rank = {ax: i for i, ax in enumerate(self._canonical)}

        def ordered(axs):
            return tuple(sorted(axs, key=rank.__getitem__))

        self._by_subject = MappingProxyType({k: ordered(v) for k, v in self._by_subject.items()})
        self._by_kind = MappingProxyType({k: ordered(v) for k, v in self._by_kind.items()})
        succ = defaultdict(list)
        for ax in self._by_kind.get(ObjectPropertyAssertion, ()):
            succ[ax.prop, ax.subject].append(ax.object)
        self._succ = MappingProxyType({k: tuple(v) for k, v in succ.items()})
        self._supers = MappingProxyType({k: frozenset(v) for k, v in self._supers.items()})
        self._subs = MappingProxyType({k: frozenset(v) for k, v in self._subs.items()})
        self._declared = MappingProxyType({k: frozenset(v) for k, v in self._declared.items()})
        self._pref = MappingProxyType(dict(self._pref))
        self._alt = MappingProxyType({k: tuple(v) for k, v in self._alt.items()})
        self.prefixes = MappingProxyType(dict(self.prefixes))
        self.frozen = True
        return self

    def overlay(self, axioms: Iterable[Axiom], prefixes: Optional[Mapping[str, str]] = None,
                strict: Optional[bool] = None) -> "KnowledgeBase":
        """A new frozen store holding this one's axioms plus ``axioms``."""
        merged = dict(self.prefixes)
        for p, ns in (prefixes or {}).items():
            if merged.get(p, ns) != ns:
                raise KnowledgeBaseError(f"prefix {p!r} bound to two namespaces")
            merged[p] = ns
        return KnowledgeBase.from_axioms(
            [*self._axioms, *axioms], merged, self.strict if strict is None else strict
        )

    # -- read access ------------------------------------------------------

    def __len__(self) -> int:
        return len(self._axioms)

    def __contains__(self, axiom) -> bool:
        return axiom in self._axioms

    def __iter__(self):
        return iter(self._axioms)

    @property
    def axioms(self) -> frozenset:
        return frozenset(self._axioms)

    def _require_frozen(self) -> None:
        if not self.frozen:
            raise KnowledgeBaseError("knowledge base must be frozen before querying")

    def canonical_axioms(self) -> list:
        self._require_frozen()
        return list(self._canonical)

    def by_kind(self, kind: type) -> tuple:
        self._require_frozen()
        return self._by_kind.get(kind, ())

    def by_subject(self, iri: Iri) -> tuple:
        self._require_frozen()
        return self._by_subject.get(iri, ())

    def successors(self, prop: Iri, subject: Iri) -> tuple:
        """Objects of positive ``prop`` assertions from ``subject``."""
        self._require_frozen()
        return self._succ.get((prop, subject), ())

    def declared(self, kind: str) -> frozenset:
        return frozenset(self._declared.get(kind, ()))

    def is_declared(self, iri: Iri, kind: Optional[str] = None) -> bool:
        if kind is not None:
            return iri in self._declared.get(kind, ())
        return any(iri in s for s in self._declared.values())

    @property
    def classes(self) -> frozenset:
        """Declared classes plus any named class used in the taxonomy."""
        return frozenset(self._declared.get("Class", ())) | frozenset(self._supers) | frozenset(self._subs)

    @property
    def individuals(self) -> frozenset:
        out = set(self._declared.get("NamedIndividual", ()))
        out.update(ax.individual for ax in self._by_kind.get(ClassAssertion, ()))
        for kind in (ObjectPropertyAssertion, NegativeObjectPropertyAssertion):
            for ax in self._by_kind.get(kind, ()):
                out.add(ax.subject)
                out.add(ax.object)
        for ax in self._by_kind.get(DataPropertyAssertion, ()):
            out.add(ax.subject)
        return frozenset(out)

    def direct_supers(self, iri: Iri) -> frozenset:
        return frozenset(self._supers.get(iri, ()))

    def direct_subs(self, iri: Iri) -> frozenset:
        return frozenset(self._subs.get(iri, ()))

    def find_class(self, local: str) -> Iri:
        """Look up a class by local name, preferring the default namespace."""
        matches = sorted(c for c in self.classes if c.local == local)
        if not matches:
            raise KeyError(f"unknown class {local!r}")
        return matches[0]

    def labels_for(self, iri: Iri) -> Labels:
        return Labels(self._pref.get(iri, iri.local), tuple(self._alt.get(iri, ())))

    def top_level(self) -> tuple:
        return tuple(sorted(c for c in self._declared.get("Class", ()) if not self._supers.get(c)))

    def stats(self) -> OntologyStats:
        return compute_stats(self)


def find_cycle(supers: Mapping[Iri, Iterable[Iri]]) -> Optional[list]:
    """Return one cycle in a named-subclass graph, or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    color: dict[Iri, int] = {}
    for start in sorted(supers):
        if color.get(start, WHITE) != WHITE:
            continue
        path = [start]
        stack = [iter(sorted(supers.get(start, ())))]
        color[start] = GREY
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                color[path.pop()] = BLACK
                stack.pop()
                continue
            c = color.get(nxt, WHITE)
            if c == GREY:
                return path[path.index(nxt):] + [nxt]
            if c == WHITE:
                color[nxt] = GREY
                path.append(nxt)
                stack.append(iter(sorted(supers.get(nxt, ()))))
    return None


def max_depth(kb: KnowledgeBase) -> int:
    """Longest named-subclass chain, counted in classes (edges + 1)."""
    memo: dict[Iri, int] = {}

    def height(c: Iri) -> int:
        # iterative post-order to stay clear of the recursion limit
        stack = [(c, False)]
        while stack:
            node, done = stack.pop()
            if node in memo:
                continue
            sups = kb.direct_supers(node)
            if done or not sups:
                memo[node] = 1 + max((memo[s] for s in sups), default=0)
                continue
            stack.append((node, True))
            stack.extend((s, False) for s in sups if s not in memo)
        return memo[c]

    return max((height(c) for c in kb.classes), default=0)


def compute_stats(kb: KnowledgeBase) -> OntologyStats:
    declared = kb.declared
    return OntologyStats(
        classes=len(declared("Class")),
        object_properties=len(declared("ObjectProperty")),
        data_properties=len(declared("DataProperty")),
        annotation_properties=len(declared("AnnotationProperty")),
        individuals=len(declared("NamedIndividual")),
        logical_axioms=sum(1 for ax in kb if is_logical(ax)),
        declaration_axioms=len(kb.by_kind(Declaration)),
        top_level=kb.top_level(),
        max_depth=max_depth(kb),
    )


def named_equivalences(kb: KnowledgeBase):
    """Pairs (a, b) of named classes stated equivalent."""
    for ax in kb.by_kind(EquivalentClasses):
        names = [op.iri for op in ax.operands if isinstance(op, Named)]
        for a in names:
            for b in names:
                if a is not b:
                    yield a, b
