"""Finite relational models of two-dimensional categories, law checking,
a proof-script kernel and an ontology compiler with bounded model finding."""

__version__ = "0.1.0"
