from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .rules import SchemaMismatch, UnknownRule, apply_rule, get_rule
from .syntax import Derivation, show


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    steps_checked: int
    failed_step: Optional[int] = None
    line: Optional[int] = None
    reason: str = ""
    conclusion: object = None

    def describe(self) -> str:
        if self.ok:
            concl = show(self.conclusion) if self.conclusion is not None else "(empty)"
            return f"PASS: {self.steps_checked} steps, concludes {concl}"
        return f"FAIL at step {self.failed_step} (line {self.line}): {self.reason}"


def check_derivation(d: Derivation, hyps: Optional[Iterable] = None) -> CheckReport:
    """Check every step; stop at the first bad one.

    With ``hyps`` given, a ``hyp`` step must cite one of them; otherwise any
    judgment may be assumed and the derivation proves its hypotheses entail
    its last line.
    """
    allowed = None if hyps is None else set(hyps)
    seen: dict[int, object] = {}
    last = None
    for count, step in enumerate(d.steps):
        def fail(reason: str) -> CheckReport:
            return CheckReport(False, count, step.index, step.line, reason)

        if step.index in seen:
            return fail(f"step number {step.index} is used twice")
        if last is not None and step.index < last:
            return fail("step numbers must increase")
        for p in step.premises:
            if p not in seen:
                later = p >= step.index
                return fail(f"premise {p} is {'not earlier than this step' if later else 'not a step'}")
        premises = [seen[p] for p in step.premises]
        if step.rule == "hyp":
            if step.premises:
                return fail("a hypothesis takes no premises")
            if allowed is not None and step.judgment not in allowed:
                return fail(f"{show(step.judgment)} is not a hypothesis of the theory")
        else:
            lemma = step.rule == "lemma"
            name = step.lemma if lemma else step.rule
            try:
                rule = get_rule(name, lemma)
                apply_rule(rule, premises, step.judgment)
            except UnknownRule:
                return fail(f"unknown {'lemma' if lemma else 'rule'} {name!r}")
            except SchemaMismatch as e:
                return fail(str(e))
        seen[step.index] = step.judgment
        last = step.index
    return CheckReport(True, len(d.steps), conclusion=d.conclusion)
