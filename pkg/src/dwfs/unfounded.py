"""Unfounded sets over model states, the greatest unfounded set, and the
well-founded operator they induce.

An atom set X is unfounded with respect to a state when every rule with a
head atom in X is blocked. A rule is blocked when its body is false, when
its positive body circles back into X, when a conditional fact with a
strictly smaller head holds under the rule's own negated atoms plus the
already-false atoms (the rule then never yields a minimal derivation), or
when the state satisfies a disjunction inside what an attacker relying on
the rule must assume false: the rule's negated atoms and its head atoms
outside X.

The greatest unfounded set is the union of all unfounded sets when that
union is itself unfounded; otherwise none exists, which is a value here,
not a fault. The well-founded fixpoint runs over the program's saturation
into conditional facts: positive body atoms carry support information that
only the saturated form exposes rule-locally.
"""

from __future__ import annotations

from .core import (
    ModelState,
    Program,
    Rule,
    Truth,
    body_status,
    canonicalize,
    env_bound,
    _fset,
)

DEFAULT_UNFOUNDED_ORACLE_BOUND = 14


class NoGreatest:
    """Sentinel: no greatest unfounded set exists for the given state."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NO_GREATEST"


NO_GREATEST = NoGreatest()


class NoGreatestUnfoundedSetError(RuntimeError):
    """The well-founded operator was applied where no greatest unfounded set
    exists."""


def _conditional_facts(p: Program) -> list[Rule]:
    return [r for r in p.rules if r.is_conditional_fact]


def _rule_blocked(facts, s: ModelState, r: Rule, x: frozenset) -> bool:
    from .residual import superseded

    if body_status(s, r) is Truth.FALSE:
        return True
    if r.pos_body & x:
        return True
    if not r.pos_body and superseded(r, facts, s.false_atoms):
        return True
    enabling = r.neg_body | s.false_atoms
    scope = r.head | enabling
    free = r.head - enabling
    for d in s.pos:
        if d <= scope and (d & (r.head | r.neg_body)) and not (d & free & x):
            return True
    return False


def is_unfounded(p: Program, s: ModelState, x) -> bool:
    """True iff every rule whose head meets x is blocked with respect to s."""
    x = _fset(x)
    facts = _conditional_facts(p)
    return all(
        _rule_blocked(facts, s, r, x) for r in p.rules if r.head & x
    )


def _rule_masks(p: Program, s: ModelState):
    """Per rule: head mask, positive-body mask, body-false flag, and witness
    masks; a witness blocks the rule for X iff its mask is disjoint from X."""

    def mask(atoms):
        m = 0
        for a in atoms:
            m |= 1 << a
        return m

    from .residual import superseded

    facts = _conditional_facts(p)
    out = []
    for r in p.rules:
        blocked = body_status(s, r) is Truth.FALSE or (
            not r.pos_body and superseded(r, facts, s.false_atoms)
        )
        enabling = r.neg_body | s.false_atoms
        scope = r.head | enabling
        free = r.head - enabling
        witnesses = [
            mask(d & free)
            for d in s.pos
            if d <= scope and (d & (r.head | r.neg_body))
        ]
        out.append((mask(r.head), mask(r.pos_body), blocked, witnesses))
    return out


def _union_of_unfounded(p: Program, s: ModelState) -> frozenset:
    """Union of all unfounded sets, by exhaustive subset enumeration."""
    n = len(p.atom_names)
    rules = _rule_masks(p, s)

    def unfounded(xmask: int) -> bool:
        for hm, pm, blocked, wit in rules:
            if not (hm & xmask):
                continue
            if blocked:
                continue
            if pm & xmask:
                continue
            if any(not (w & xmask) for w in wit):
                continue
            return False
        return True

    union = 0
    for m in range(1, 1 << n):
        if m | union == union:
            continue
        if unfounded(m):
            union |= m
    return frozenset(a for a in range(n) if union >> a & 1)


def _eliminate(p: Program, s: ModelState) -> frozenset:
    """Heuristic for large bases: shrink a candidate set until every member
    is blocked everywhere, then greedily absorb single atoms."""
    facts = _conditional_facts(p)
    cand = set(p.base - s.unit_true_atoms())
    changed = True
    while changed:
        changed = False
        for a in sorted(cand):
            rules = [r for r in p.rules if a in r.head]
            if all(_rule_blocked(facts, s, r, frozenset(cand)) for r in rules):
                continue
            cand.discard(a)
            changed = True
    grown = True
    while grown:
        grown = False
        for a in sorted(p.base - cand):
            if is_unfounded(p, s, cand | {a}):
                cand.add(a)
                grown = True
    return frozenset(cand)


def greatest_unfounded(p: Program, s: ModelState, bound: int | None = None):
    """The unfounded set containing every unfounded set, or NO_GREATEST.

    Exhaustive and exact up to the configured base bound; beyond it a
    verified elimination heuristic answers, raising a diagnostic if its
    result fails verification.
    """
    n = len(p.atom_names)
    if n <= env_bound(bound, DEFAULT_UNFOUNDED_ORACLE_BOUND):
        union = _union_of_unfounded(p, s)
        if is_unfounded(p, s, union):
            return union
        return NO_GREATEST
    guess = _eliminate(p, s)
    if not is_unfounded(p, s, guess):
        raise RuntimeError(
            "elimination produced a non-unfounded candidate; base too large "
            "for the exhaustive check"
        )
    return guess


def t_operator(p: Program, s: ModelState) -> frozenset:
    """Immediate consequences: for every rule with a true body, the head
    minus already-false atoms, canonically."""
    out = []
    for r in p.rules:
        if body_status(s, r) is Truth.TRUE:
            rest = r.head - s.false_atoms
            if rest:
                out.append(rest)
    return canonicalize(out)


def w_operator(p: Program, s: ModelState, bound: int | None = None) -> ModelState:
    """One well-founded step: add immediate consequences and negate the
    greatest unfounded set, accumulating the given state."""
    u = greatest_unfounded(p, s, bound)
    if isinstance(u, NoGreatest):
        raise NoGreatestUnfoundedSetError(
            "well-founded operator undefined: no greatest unfounded set"
        )
    return ModelState(s.pos | t_operator(p, s), s.false_atoms | u)


def uwfs(p: Program, bound: int | None = None, cap: int | None = None) -> ModelState:
    """Least fixpoint of the well-founded operator, computed over the
    saturation of the program into conditional facts."""
    from .residual import as_program, lft

    saturated = as_program(p, lft(p, cap))
    state = ModelState()
    while True:
        nxt = w_operator(saturated, state, bound)
        if nxt == state:
            return state
        state = nxt
