"""Functional-style axiom syntax: lexer, recursive-descent parser, serializer.

The accepted language is deliberately small::

    document   := prefix* ( 'Ontology' '(' FULL_IRI? axiom* ')' | axiom* )
    prefix     := 'Prefix' '(' PNAME ':=' FULL_IRI ')'
    axiom      := Declaration | SubClassOf | EquivalentClasses
                | ObjectPropertyDomain | ObjectPropertyRange | ClassAssertion
                | ObjectPropertyAssertion | NegativeObjectPropertyAssertion
                | DataPropertyAssertion | AnnotationAssertion
    class_expr := CURIE | ObjectIntersectionOf | ObjectUnionOf
                | ObjectSomeValuesFrom
    literal    := STRING ( '^^' ( string | decimal | boolean | category ) )?

Body identifiers are CURIEs (``:Food_Swamp``, ``teo:hasAgeValue``). A ``#``
starts a comment only where a token could start, so ``:SDoHO#093`` is one
identifier.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional, Union

from .kb import KnowledgeBase
from .terms import (
    DATATYPES,
    DECLARATION_KINDS,
    KIND_ORDER,
    MAX_EXPRESSION_DEPTH,
    AnnotationAssertion,
    Axiom,
    ClassAssertion,
    ClassExpression,
    DataPropertyAssertion,
    Declaration,
    EquivalentClasses,
    IntersectionOf,
    Iri,
    Literal,
    Named,
    NegativeObjectPropertyAssertion,
    ObjectPropertyAssertion,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    SomeValuesFrom,
    SubClassOf,
    UnionOf,
)


class ParseError(Exception):
    def __init__(self, line: int, column: int, expected: str, found: str):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        super().__init__(f"line {line}, column {column}: expected {expected}, found {found}")


@dataclass
class Document:
    prefixes: dict = field(default_factory=dict)
    ontology_iri: Optional[str] = None
    axioms: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Lexer

_PNAME = r"(?:[A-Za-z][A-Za-z0-9_\-]*)?"
_LOCAL = r"[A-Za-z_][A-Za-z0-9_\-#]*"

_TOKEN_RE = re.compile(
    rf"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<fulliri><[^<>"\s]*>)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<dtype>\^\^)
  | (?P<pname_eq>{_PNAME}:=)
  | (?P<curie>{_PNAME}:{_LOCAL})
  | (?P<name>{_LOCAL})
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        return repr(self.text)


def tokenize(text: str) -> Iterator[Token]:
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            ch = text[pos]
            if ch == '"':
                raise ParseError(line, col, "a closing quote", "unterminated string")
            raise ParseError(line, col, "a token", repr(ch))
        kind = m.lastgroup
        tok_text = m.group()
        if kind not in ("ws", "comment"):
            yield Token(kind, tok_text, line, col)
        newlines = tok_text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + tok_text.rindex("\n") + 1
        pos = m.end()
    yield Token("eof", "", line, pos - line_start + 1)


_ESCAPES = {'"': '"', "\\": "\\", "n": "\n"}


def _unescape(tok: Token) -> str:
    body = tok.text[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            nxt = body[i + 1]
            if nxt not in _ESCAPES:
                raise ParseError(tok.line, tok.column + i + 1, "a valid escape", repr("\\" + nxt))
            out.append(_ESCAPES[nxt])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


# ---------------------------------------------------------------------------
# Parser

AXIOM_KEYWORDS = {t.__name__ for t in KIND_ORDER}
EXPRESSION_KEYWORDS = {"ObjectIntersectionOf", "ObjectUnionOf", "ObjectSomeValuesFrom"}


class _Parser:
    def __init__(self, text: str):
        self._tokens = tokenize(text)
        self.tok = next(self._tokens)
        self.prefixes: dict[str, str] = {}

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind != "eof":
            self.tok = next(self._tokens)
        return tok

    def fail(self, expected: str, tok: Optional[Token] = None, found: Optional[str] = None):
        tok = tok or self.tok
        raise ParseError(tok.line, tok.column, expected, found or tok.describe())

    def expect(self, kind: str, expected: str) -> Token:
        if self.tok.kind != kind:
            self.fail(expected)
        return self.advance()

    def keyword(self, word: str) -> Token:
        if self.tok.kind != "name" or self.tok.text != word:
            self.fail(repr(word))
        return self.advance()

    # -- document ---------------------------------------------------------

    def document(self) -> Document:
        doc = Document(prefixes=self.prefixes)
        while self.tok.kind == "name" and self.tok.text == "Prefix":
            self.prefix()
        if self.tok.kind == "name" and self.tok.text == "Ontology":
            self.advance()
            self.expect("lparen", "'('")
            if self.tok.kind == "fulliri":
                doc.ontology_iri = self.advance().text[1:-1]
            while self.tok.kind != "rparen":
                if self.tok.kind == "eof":
                    self.fail("')' closing Ontology")
                doc.axioms.append(self.axiom())
            self.advance()
        else:
            while self.tok.kind != "eof":
                doc.axioms.append(self.axiom())
        if self.tok.kind != "eof":
            self.fail("end of input")
        return doc

    def prefix(self) -> None:
        self.advance()
        self.expect("lparen", "'('")
        tok = self.expect("pname_eq", "a prefix name followed by ':='")
        label = tok.text[:-2]
        iri = self.expect("fulliri", "a full IRI in angle brackets").text[1:-1]
        if label in self.prefixes and self.prefixes[label] != iri:
            self.fail("a consistent prefix binding", tok, f"second binding for {label + ':'!r}")
        self.prefixes[label] = iri
        self.expect("rparen", "')'")

    # -- axioms -----------------------------------------------------------

    def axiom(self) -> Axiom:
        tok = self.tok
        if tok.kind != "name":
            self.fail("an axiom")
        if tok.text not in AXIOM_KEYWORDS:
            self.fail("an axiom", tok, f"{tok.text!r} (unsupported construct)")
        self.advance()
        self.expect("lparen", "'('")
        kw = tok.text
        if kw == "Declaration":
            ktok = self.tok
            if ktok.kind != "name" or ktok.text not in DECLARATION_KINDS:
                self.fail("an entity kind (" + ", ".join(DECLARATION_KINDS) + ")")
            self.advance()
            self.expect("lparen", "'('")
            ax = Declaration(ktok.text, self.iri())
            self.expect("rparen", "')'")
        elif kw == "SubClassOf":
            sub_tok = self.tok
            sub = self.class_expr()
            if not isinstance(sub, Named):
                self.fail("a named subclass", sub_tok, "a complex class expression")
            ax = SubClassOf(sub, self.class_expr())
        elif kw == "EquivalentClasses":
            ops = [self.class_expr()]
            while self.tok.kind != "rparen":
                ops.append(self.class_expr())
            if len(ops) < 2:
                self.fail("at least 2 class expressions in EquivalentClasses")
            ax = EquivalentClasses(tuple(ops))
        elif kw == "ObjectPropertyDomain":
            ax = ObjectPropertyDomain(self.iri(), self.class_expr())
        elif kw == "ObjectPropertyRange":
            ax = ObjectPropertyRange(self.iri(), self.class_expr())
        elif kw == "ClassAssertion":
            ax = ClassAssertion(self.class_expr(), self.iri())
        elif kw == "ObjectPropertyAssertion":
            ax = ObjectPropertyAssertion(self.iri(), self.iri(), self.iri())
        elif kw == "NegativeObjectPropertyAssertion":
            ax = NegativeObjectPropertyAssertion(self.iri(), self.iri(), self.iri())
        elif kw == "DataPropertyAssertion":
            ax = DataPropertyAssertion(self.iri(), self.iri(), self.literal())
        else:
            ax = AnnotationAssertion(self.iri(), self.iri(), self.literal())
        self.expect("rparen", "')'")
        return ax

    def iri(self) -> Iri:
        tok = self.tok
        if tok.kind != "curie":
            self.fail("a prefixed name")
        label, _, local = tok.text.partition(":")
        if label not in self.prefixes:
            self.fail("a declared prefix", tok, f"undeclared prefix {label + ':'!r}")
        self.advance()
        return Iri(label, local)

    def class_expr(self, budget: int = MAX_EXPRESSION_DEPTH) -> ClassExpression:
        tok = self.tok
        if tok.kind == "curie":
            return Named(self.iri())
        if tok.kind != "name":
            self.fail("a class expression")
        if tok.text not in EXPRESSION_KEYWORDS:
            self.fail("a class expression", tok, f"{tok.text!r} (unsupported construct)")
        if budget < 2:
            self.fail(f"class expression nesting depth <= {MAX_EXPRESSION_DEPTH}", tok,
                      f"{tok.text!r} nested too deeply")
        self.advance()
        self.expect("lparen", "'('")
        if tok.text == "ObjectSomeValuesFrom":
            prop = self.iri()
            expr = SomeValuesFrom(prop, self.class_expr(budget - 1))
        else:
            ops = [self.class_expr(budget - 1)]
            while self.tok.kind != "rparen":
                ops.append(self.class_expr(budget - 1))
            if len(ops) < 2:
                self.fail(f"at least 2 operands in {tok.text}")
            cls = IntersectionOf if tok.text == "ObjectIntersectionOf" else UnionOf
            expr = cls(tuple(ops))
        self.expect("rparen", "')'")
        return expr

    def literal(self) -> Literal:
        tok = self.expect("string", "a quoted literal")
        lexical = _unescape(tok)
        datatype = "string"
        if self.tok.kind == "dtype":
            self.advance()
            dt = self.tok
            if dt.kind != "name" or dt.text not in DATATYPES:
                self.fail("a datatype (" + ", ".join(DATATYPES) + ")")
            datatype = self.advance().text
        try:
            return Literal(lexical, datatype)
        except ValueError as exc:
            raise ParseError(tok.line, tok.column, f"a valid {datatype} literal", str(exc)) from None


def parse_document(text: str) -> Document:
    """Parse source text into a :class:`Document`; raises :class:`ParseError`."""
    return _Parser(text).document()


def parse_file(path: Union[str, Path]) -> Document:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def load(doc: Document, strict: bool = True) -> KnowledgeBase:
    return KnowledgeBase.from_axioms(doc.axioms, doc.prefixes, strict=strict)


def load_file(path: Union[str, Path], strict: bool = True) -> KnowledgeBase:
    return load(parse_file(path), strict=strict)


# ---------------------------------------------------------------------------
# Serializer


def render_expr(expr: ClassExpression) -> str:
    if isinstance(expr, Named):
        return expr.iri.curie
    if isinstance(expr, SomeValuesFrom):
        return f"ObjectSomeValuesFrom({expr.prop.curie} {render_expr(expr.filler)})"
    name = "ObjectIntersectionOf" if isinstance(expr, IntersectionOf) else "ObjectUnionOf"
    return f"{name}({' '.join(render_expr(op) for op in expr.operands)})"


def render_literal(lit: Literal) -> str:
    if lit.datatype == "string":
        return f'"{_escape(lit.lexical)}"'
    return f'"{_escape(lit.lexical)}"^^{lit.datatype}'


def render_axiom(ax: Axiom) -> str:
    kind = type(ax).__name__
    if isinstance(ax, Declaration):
        args = f"{ax.kind}({ax.iri.curie})"
    elif isinstance(ax, SubClassOf):
        args = f"{render_expr(ax.sub)} {render_expr(ax.sup)}"
    elif isinstance(ax, EquivalentClasses):
        args = " ".join(render_expr(op) for op in ax.operands)
    elif isinstance(ax, ObjectPropertyDomain):
        args = f"{ax.prop.curie} {render_expr(ax.domain)}"
    elif isinstance(ax, ObjectPropertyRange):
        args = f"{ax.prop.curie} {render_expr(ax.range)}"
    elif isinstance(ax, ClassAssertion):
        args = f"{render_expr(ax.cls)} {ax.individual.curie}"
    elif isinstance(ax, (ObjectPropertyAssertion, NegativeObjectPropertyAssertion)):
        args = f"{ax.prop.curie} {ax.subject.curie} {ax.object.curie}"
    else:
        args = f"{ax.prop.curie} {ax.subject.curie} {render_literal(ax.value)}"
    return f"{kind}({args})"


def serialize_axioms(
    axioms: Iterable[Axiom],
    prefixes: Mapping[str, str],
    ontology_iri: Optional[str] = None,
) -> str:
    """Canonical text: sorted prefixes, axioms sorted by kind then rendering."""
    lines = [f"Prefix({p}:=<{ns}>)" for p, ns in sorted(prefixes.items())]
    lines.append("")
    lines.append(f"Ontology(<{ontology_iri}>" if ontology_iri else "Ontology(")
    rendered = sorted({(KIND_ORDER[type(ax)], render_axiom(ax)) for ax in axioms})
    lines.extend(text for _, text in rendered)
    lines.append(")")
    return "\n".join(lines) + "\n"


def serialize(kb: KnowledgeBase, ontology_iri: Optional[str] = None) -> str:
    return serialize_axioms(kb, kb.prefixes, ontology_iri)
