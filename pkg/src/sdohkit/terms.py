"""Terms and axioms: the atoms every other module manipulates.

Identifiers are interned, so ``Iri("", "Food_Swamp") is Iri("", "Food_Swamp")``
and equality is an identity check. Class expressions and axioms are frozen
dataclasses and therefore hashable, which is what gives the knowledge base its
set semantics.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import ClassVar, Iterator, Union

LOCAL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_\-#]*\Z")
PREFIX_RE = re.compile(r"(?:[A-Za-z][A-Za-z0-9_\-]*)?\Z")

MAX_EXPRESSION_DEPTH = 4


class Iri:
    """Namespace-qualified identifier, interned on ``(prefix, local)``."""

    __slots__ = ("prefix", "local", "__weakref__")
    _pool: ClassVar[dict[tuple[str, str], "Iri"]] = {}

    prefix: str
    local: str

    def __new__(cls, prefix: str, local: str) -> "Iri":
        key = (prefix, local)
        found = cls._pool.get(key)
        if found is not None:
            return found
        if not isinstance(local, str) or not LOCAL_RE.match(local):
            raise ValueError(f"invalid local name {local!r}")
        if not isinstance(prefix, str) or not PREFIX_RE.match(prefix):
            raise ValueError(f"invalid prefix {prefix!r}")
        obj = super().__new__(cls)
        object.__setattr__(obj, "prefix", prefix)
        object.__setattr__(obj, "local", local)
        # setdefault keeps interning atomic when threads race on a new key
        return cls._pool.setdefault(key, obj)

    def __setattr__(self, name, value):
        raise AttributeError("Iri is immutable")

    def __reduce__(self):
        return (Iri, (self.prefix, self.local))

    def __lt__(self, other: "Iri") -> bool:
        return (self.prefix, self.local) < (other.prefix, other.local)

    @property
    def curie(self) -> str:
        return f"{self.prefix}:{self.local}"

    @property
    def display(self) -> str:
        """Short human form: bare local name in the default namespace."""
        return self.local if self.prefix == "" else self.curie

    def __repr__(self) -> str:
        return f"Iri({self.curie})"

    def __str__(self) -> str:
        return self.display

    @classmethod
    def parse(cls, text: str) -> "Iri":
        """Build from ``prefix:local``, ``:local`` or a bare local name."""
        prefix, sep, local = text.rpartition(":") if ":" in text else ("", "", text)
        if sep and ":" in prefix:
            raise ValueError(f"invalid CURIE {text!r}")
        return cls(prefix, local)


DATATYPES = ("string", "decimal", "boolean", "category")


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: str = "string"

    def __post_init__(self):
        if self.datatype not in DATATYPES:
            raise ValueError(f"unknown datatype {self.datatype!r}")
        if self.datatype == "decimal":
            try:
                value = Decimal(self.lexical)
            except InvalidOperation:
                raise ValueError(f"not a decimal: {self.lexical!r}") from None
            if not value.is_finite():
                raise ValueError(f"decimal must be finite: {self.lexical!r}")
        elif self.datatype == "boolean" and self.lexical not in ("true", "false"):
            raise ValueError(f"not a boolean: {self.lexical!r}")
        elif self.datatype == "category" and not LOCAL_RE.match(self.lexical):
            raise ValueError(f"category value must be an identifier: {self.lexical!r}")

    @classmethod
    def decimal(cls, value: float) -> "Literal":
        if not math.isfinite(value):
            raise ValueError(f"decimal must be finite: {value!r}")
        return cls(repr(float(value)), "decimal")

    @property
    def value(self) -> Union[str, float, bool]:
        if self.datatype == "decimal":
            return float(self.lexical)
        if self.datatype == "boolean":
            return self.lexical == "true"
        return self.lexical


# ---------------------------------------------------------------------------
# Class expressions


@dataclass(frozen=True)
class Named:
    iri: Iri

    def __post_init__(self):
        if not isinstance(self.iri, Iri):
            raise TypeError("Named expects an Iri")


@dataclass(frozen=True)
class IntersectionOf:
    operands: tuple

    def __post_init__(self):
        _check_operands(self, self.operands)


@dataclass(frozen=True)
class UnionOf:
    operands: tuple

    def __post_init__(self):
        _check_operands(self, self.operands)


@dataclass(frozen=True)
class SomeValuesFrom:
    prop: Iri
    filler: "ClassExpression"

    def __post_init__(self):
        if not isinstance(self.prop, Iri):
            raise TypeError("SomeValuesFrom property must be an Iri")
        if not isinstance(self.filler, CLASS_EXPRESSION_TYPES):
            raise TypeError("SomeValuesFrom filler must be a class expression")


ClassExpression = Union[Named, IntersectionOf, UnionOf, SomeValuesFrom]
CLASS_EXPRESSION_TYPES = (Named, IntersectionOf, UnionOf, SomeValuesFrom)


def _check_operands(owner, operands) -> None:
    if not isinstance(operands, tuple):
        object.__setattr__(owner, "operands", tuple(operands))
        operands = owner.operands
    if len(operands) < 2:
        raise ValueError(f"{type(owner).__name__} needs at least 2 operands")
    for op in operands:
        if not isinstance(op, CLASS_EXPRESSION_TYPES):
            raise TypeError(f"{type(owner).__name__} operand is not a class expression")


def depth(expr: ClassExpression) -> int:
    """Nesting depth; a named class counts as 1."""
    if isinstance(expr, Named):
        return 1
    if isinstance(expr, SomeValuesFrom):
        return 1 + depth(expr.filler)
    return 1 + max(depth(op) for op in expr.operands)


def signature(expr: ClassExpression) -> Iterator[Iri]:
    """Every Iri mentioned in a class expression."""
    if isinstance(expr, Named):
        yield expr.iri
    elif isinstance(expr, SomeValuesFrom):
        yield expr.prop
        yield from signature(expr.filler)
    else:
        for op in expr.operands:
            yield from signature(op)


def named(local: str, prefix: str = "") -> Named:
    return Named(Iri(prefix, local))


# ---------------------------------------------------------------------------
# Axioms

DECLARATION_KINDS = (
    "Class",
    "ObjectProperty",
    "DataProperty",
    "AnnotationProperty",
    "NamedIndividual",
)


@dataclass(frozen=True)
class Declaration:
    kind: str
    iri: Iri

    def __post_init__(self):
        if self.kind not in DECLARATION_KINDS:
            raise ValueError(f"unknown declaration kind {self.kind!r}")


@dataclass(frozen=True)
class SubClassOf:
    sub: ClassExpression
    sup: ClassExpression

    def __post_init__(self):
        if not isinstance(self.sub, Named):
            raise ValueError("SubClassOf requires a named subclass")
        _check_expr(self.sup)


@dataclass(frozen=True)
class EquivalentClasses:
    operands: tuple

    def __post_init__(self):
        if not isinstance(self.operands, tuple):
            object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("EquivalentClasses needs at least 2 operands")
        for op in self.operands:
            _check_expr(op)


@dataclass(frozen=True)
class ObjectPropertyDomain:
    prop: Iri
    domain: ClassExpression

    def __post_init__(self):
        _check_expr(self.domain)


@dataclass(frozen=True)
class ObjectPropertyRange:
    prop: Iri
    range: ClassExpression

    def __post_init__(self):
        _check_expr(self.range)


@dataclass(frozen=True)
class ClassAssertion:
    cls: ClassExpression
    individual: Iri

    def __post_init__(self):
        _check_expr(self.cls)


@dataclass(frozen=True)
class ObjectPropertyAssertion:
    prop: Iri
    subject: Iri
    object: Iri


@dataclass(frozen=True)
class NegativeObjectPropertyAssertion:
    prop: Iri
    subject: Iri
    object: Iri


@dataclass(frozen=True)
class DataPropertyAssertion:
    prop: Iri
    subject: Iri
    value: Literal


@dataclass(frozen=True)
class AnnotationAssertion:
    prop: Iri
    subject: Iri
    value: Literal


Axiom = Union[
    Declaration,
    SubClassOf,
    EquivalentClasses,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    ClassAssertion,
    ObjectPropertyAssertion,
    NegativeObjectPropertyAssertion,
    DataPropertyAssertion,
    AnnotationAssertion,
]

# Canonical kind order; declarations first so strict loading can stream.
AXIOM_TYPES = (
    Declaration,
    SubClassOf,
    EquivalentClasses,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    ClassAssertion,
    ObjectPropertyAssertion,
    NegativeObjectPropertyAssertion,
    DataPropertyAssertion,
    AnnotationAssertion,
)
KIND_ORDER = {t: i for i, t in enumerate(AXIOM_TYPES)}

IRI_FIELDS = {
    Declaration: (),
    SubClassOf: (),
    EquivalentClasses: (),
    ObjectPropertyDomain: ("prop",),
    ObjectPropertyRange: ("prop",),
    ClassAssertion: ("individual",),
    ObjectPropertyAssertion: ("prop", "subject", "object"),
    NegativeObjectPropertyAssertion: ("prop", "subject", "object"),
    DataPropertyAssertion: ("prop", "subject"),
    AnnotationAssertion: ("prop", "subject"),
}


def _check_expr(expr) -> None:
    if not isinstance(expr, CLASS_EXPRESSION_TYPES):
        raise TypeError(f"expected a class expression, got {type(expr).__name__}")
    if depth(expr) > MAX_EXPRESSION_DEPTH:
        raise ValueError(
            f"class expression nesting depth {depth(expr)} exceeds {MAX_EXPRESSION_DEPTH}"
        )


def is_logical(axiom: Axiom) -> bool:
    return not isinstance(axiom, (Declaration, AnnotationAssertion))


def axiom_signature(axiom: Axiom) -> Iterator[Iri]:
    """Every Iri an axiom mentions, in argument order."""
    if isinstance(axiom, Declaration):
        yield axiom.iri
        return
    if isinstance(axiom, SubClassOf):
        yield from signature(axiom.sub)
        yield from signature(axiom.sup)
        return
    if isinstance(axiom, EquivalentClasses):
        for op in axiom.operands:
            yield from signature(op)
        return
    if isinstance(axiom, ObjectPropertyDomain):
        yield axiom.prop
        yield from signature(axiom.domain)
        return
    if isinstance(axiom, ObjectPropertyRange):
        yield axiom.prop
        yield from signature(axiom.range)
        return
    if isinstance(axiom, ClassAssertion):
        yield from signature(axiom.cls)
        yield axiom.individual
        return
    for name in IRI_FIELDS[type(axiom)]:
        yield getattr(axiom, name)


def axiom_subjects(axiom: Axiom) -> tuple:
    """The Iris an axiom is "about", used for the by-subject index."""
    if isinstance(axiom, Declaration):
        return (axiom.iri,)
    if isinstance(axiom, SubClassOf):
        return (axiom.sub.iri,)
    if isinstance(axiom, EquivalentClasses):
        return tuple(op.iri for op in axiom.operands if isinstance(op, Named))
    if isinstance(axiom, (ObjectPropertyDomain, ObjectPropertyRange)):
        return (axiom.prop,)
    if isinstance(axiom, ClassAssertion):
        return (axiom.individual,)
    return (axiom.subject,)
