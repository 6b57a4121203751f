"""The class/relationship calculus: terms, rules, proof checking, semantics."""

from .checker import CheckReport, check_derivation
from .rules import BASE_RULES, LEMMAS, Rule, Schema, SchemaMismatch, UnknownRule, apply_rule, get_rule
from .semantics import (
    ModelAssignment, SoundnessReport, UnboundName, enumerate_models, eval_class, eval_judgment,
    eval_rel, holds, rule_soundness, soundness_sample, try_eval,
)
from .syntax import Derivation, ParseError, Step, parse_judgment, parse_script, parse_term, show, show_script
from .terms import *  # noqa: F401,F403
