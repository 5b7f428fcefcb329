"""The five elementary program transformations, the generalized rule
implication test that powers rule elimination, and the structural axioms a
candidate semantics must satisfy."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import (
    ModelState,
    Program,
    Rule,
    rule_key,
    satisfies_negative,
    satisfies_positive,
)


class TransformKind(enum.Enum):
    UNFOLDING = "unfolding"
    ELIM_TAUTOLOGY = "elim-tautology"
    ELIM_S_IMPLICATION = "elim-s-implication"
    POSITIVE_REDUCTION = "positive-reduction"
    NEGATIVE_REDUCTION = "negative-reduction"


@dataclass(frozen=True)
class TransformStep:
    """One rewrite: drop `removed` from the program, then add `added`."""

    kind: TransformKind
    removed: frozenset
    added: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "removed", frozenset(self.removed))
        object.__setattr__(self, "added", frozenset(self.added))


def is_s_implication(r1: Rule, r2: Rule) -> bool:
    """True iff r1 is redundant given the stronger rule r2.

    Plain form: r2's head and body are contained in r1's. Moved form: some
    negative body literals of r1, read as head atoms, cover r2's extra head
    atoms; the witness r2 must then be an unconditional fact, otherwise the
    move would trade r1's firing direction for conditions of r2's own and
    derive more than the well-founded semantics allows.
    """
    if r1 == r2:
        return False
    moved = r2.head - r1.head
    if moved:
        return moved <= r1.neg_body and r2.is_fact
    return r2.pos_body <= r1.pos_body and r2.neg_body <= r1.neg_body


def _unfold(r: Rule, b: int, other: Rule) -> Rule:
    return Rule(
        r.head | (other.head - {b}),
        (r.pos_body - {b}) | other.pos_body,
        r.neg_body | other.neg_body,
    )


def applicable(p: Program, kind: TransformKind) -> tuple:
    """Every single application of the given transformation, in a
    deterministic order (lowest rule, lowest atom first)."""
    steps: list[TransformStep] = []
    if kind is TransformKind.UNFOLDING:
        for r in p.rules:
            for b in sorted(r.pos_body):
                resolvents = frozenset(
                    _unfold(r, b, other) for other in p.rules if b in other.head
                )
                steps.append(TransformStep(kind, frozenset((r,)), resolvents))
    elif kind is TransformKind.ELIM_TAUTOLOGY:
        for r in p.rules:
            if r.head & r.pos_body:
                steps.append(TransformStep(kind, frozenset((r,))))
    elif kind is TransformKind.ELIM_S_IMPLICATION:
        for r1 in p.rules:
            if any(is_s_implication(r1, r2) for r2 in p.rules if r2 != r1):
                steps.append(TransformStep(kind, frozenset((r1,))))
    elif kind is TransformKind.POSITIVE_REDUCTION:
        heads = p.head_atoms
        for r in p.rules:
            for c in sorted(r.neg_body):
                if c not in heads:
                    reduced = Rule(r.head, r.pos_body, r.neg_body - {c})
                    steps.append(TransformStep(kind, frozenset((r,)), frozenset((reduced,))))
    elif kind is TransformKind.NEGATIVE_REDUCTION:
        facts = [r for r in p.rules if r.is_fact]
        for r in p.rules:
            if r.neg_body and any(f.head <= r.neg_body for f in facts):
                steps.append(TransformStep(kind, frozenset((r,))))
    else:
        raise ValueError(f"unknown transformation kind {kind!r}")
    return tuple(dict.fromkeys(steps))


def apply(p: Program, step: TransformStep) -> Program:
    """Apply a transformation step; the empty step is the identity."""
    if not step.removed and not step.added:
        return p
    if step not in applicable(p, step.kind):
        raise ValueError("stale transform step: not applicable to this program")
    return p.with_rules((set(p.rules) - step.removed) | step.added)


def bd_semantics_axioms(s: ModelState, p: Program) -> bool:
    """Structural conditions any candidate semantics value must satisfy:
    closure under super-disjunctions, truth of fact heads, and falsity of
    atoms outside every rule head."""
    closure = all(
        satisfies_positive(s, d | {x}) for d in s.pos for x in p.base
    ) and all(
        satisfies_negative(s, frozenset((a, x)))
        for a in s.false_atoms
        for x in p.base
    )
    facts_hold = all(satisfies_positive(s, r.head) for r in p.rules if r.is_fact)
    unheaded_false = all(a in s.false_atoms for a in p.base - p.head_atoms)
    return closure and facts_hold and unheaded_false


def render_step(step: TransformStep, names) -> str:
    """Trace line: kind, removed rules as '-rule', added rules as '+rule'."""
    from .parser import render_rule

    def keyed(rules):
        return sorted(rules, key=rule_key)

    parts = [f"-{render_rule(r, names)}" for r in keyed(step.removed)]
    line = f"{step.kind.value}: {' '.join(parts)}"
    if step.added:
        line += " / " + " ".join(f"+{render_rule(r, names)}" for r in keyed(step.added))
    return line
