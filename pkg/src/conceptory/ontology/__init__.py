"""Ontology files: parsing, compilation to judgments, bounded model finding."""

from ..kernel.semantics import ModelAssignment
from .dsl import (
    Abstract, Axiom, Card, ClassDecl, DuplicateName, OneOf, OntologyError, OntologySource,
    OntologySyntaxError, Redeclare, RelDecl, Unique, UseBeforeDecl, parse,
)
from .search import (
    BoundTooLarge, ModelFormatError, VerifyReport, dump_model, find_model, load_model,
    model_from_json, model_to_json, oracle_find_model, verify_model,
)
from .theory import CardOnUnknownRel, RedeclareNotSubclass, Theory, compile_source, load_theory

compile = compile_source  # noqa: A001
