"""Compact ontology engine and evaluation toolkit for social determinants of health.

Modules:

- ``terms``, ``kb``, ``vocab``: identifiers, axioms, the indexed store and its statistics
- ``ofn``: functional-style axiom syntax parser and canonical serializer
- ``reasoner``: subclass closure, realization, negative-assertion consistency
- ``verbalize``: sentence templates for expert review and agreement scores
- ``encoder``: patient fact records to reified assertion axioms
- ``measures``: measure linkage and the Retail Food Environment Index
- ``coverage``: annotated-corpus coverage reports
"""

from .kb import KnowledgeBase, Labels, OntologyStats
from .ofn import Document, ParseError, load, load_file, parse_document, serialize
from .terms import Iri, Literal

__version__ = "0.1.0"

__all__ = [
    "Document",
    "Iri",
    "KnowledgeBase",
    "Labels",
    "Literal",
    "OntologyStats",
    "ParseError",
    "load",
    "load_file",
    "parse_document",
    "serialize",
]
