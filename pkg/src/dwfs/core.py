"""Core syntax: interned atoms, rules, programs, positive disjunctions, and
three-valued model states with their satisfaction and consistency predicates.

Atoms are dense integer ids indexing a per-program name table. A positive
disjunction is a nonempty frozenset of atom ids read disjunctively. A model
state stores only its canonical positive core plus a set of false atoms;
closure under super-disjunctions is realized by the satisfaction predicates
instead of being materialized.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable

Atom = int
Disjunction = frozenset
AtomSet = frozenset


class CapacityError(RuntimeError):
    """An exhaustive oracle, enumeration, or saturation exceeded its bound."""


def env_bound(explicit: int | None, default: int) -> int:
    """Resolve a size cap: explicit argument, else DWFS_ORACLE_BOUND, else default."""
    if explicit is not None:
        return explicit
    env = os.environ.get("DWFS_ORACLE_BOUND")
    if env:
        return int(env)
    return default


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "undefined"


def _fset(xs) -> frozenset:
    return xs if isinstance(xs, frozenset) else frozenset(xs)


@dataclass(frozen=True)
class Rule:
    """head <- pos_body, not neg_body, each part a duplicate-free atom set."""

    head: frozenset
    pos_body: frozenset = frozenset()
    neg_body: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "head", _fset(self.head))
        object.__setattr__(self, "pos_body", _fset(self.pos_body))
        object.__setattr__(self, "neg_body", _fset(self.neg_body))
        if not self.head:
            raise ValueError("rule head must be nonempty")

    @property
    def is_positive(self) -> bool:
        return not self.neg_body

    @property
    def is_fact(self) -> bool:
        return not self.pos_body and not self.neg_body

    @property
    def is_conditional_fact(self) -> bool:
        return not self.pos_body

    def atoms(self) -> frozenset:
        return self.head | self.pos_body | self.neg_body


def rule_key(r: Rule):
    """Deterministic sort key for rules (id order within each part)."""
    return (tuple(sorted(r.head)), tuple(sorted(r.pos_body)), tuple(sorted(r.neg_body)))


class Program:
    """A deduplicated finite rule set over an interned atom table.

    The base is the whole table, which may include atoms no rule mentions
    (such atoms are false under every semantics computed here). Instances are
    immutable by convention; two programs compare equal when their rule sets
    and bases coincide up to atom names, so interning order is irrelevant to
    equality.
    """

    __slots__ = ("rules", "atom_names", "_names_key", "_head_atoms")

    def __init__(self, rules: Iterable[Rule], atom_names: Iterable[str]):
        names = tuple(atom_names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate atom names in table")
        rset = frozenset(rules)
        n = len(names)
        for r in rset:
            for a in r.atoms():
                if not 0 <= a < n:
                    raise ValueError(f"atom id {a} outside table of size {n}")
        self.rules = tuple(sorted(rset, key=rule_key))
        self.atom_names = names
        self._names_key = None
        self._head_atoms = None

    @property
    def base(self) -> frozenset:
        return frozenset(range(len(self.atom_names)))

    @property
    def head_atoms(self) -> frozenset:
        if self._head_atoms is None:
            acc = set()
            for r in self.rules:
                acc |= r.head
            self._head_atoms = frozenset(acc)
        return self._head_atoms

    def name(self, aid: int) -> str:
        return self.atom_names[aid]

    def atom_id(self, name: str) -> int:
        return self.atom_names.index(name)

    def with_rules(self, rules: Iterable[Rule]) -> "Program":
        return Program(rules, self.atom_names)

    def rule_names(self) -> frozenset:
        """The rule set with ids replaced by names (interning-independent)."""
        return frozenset(
            (
                frozenset(self.atom_names[a] for a in r.head),
                frozenset(self.atom_names[a] for a in r.pos_body),
                frozenset(self.atom_names[a] for a in r.neg_body),
            )
            for r in self.rules
        )

    def _key(self):
        if self._names_key is None:
            self._names_key = (self.rule_names(), frozenset(self.atom_names))
        return self._names_key

    def __eq__(self, other):
        if not isinstance(other, Program):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Program({len(self.rules)} rules over {len(self.atom_names)} atoms)"


def canonicalize(ds: Iterable[frozenset]) -> frozenset:
    """Keep only subset-minimal disjunctions (the antichain core). Idempotent."""
    items = {_fset(d) for d in ds}
    return frozenset(a for a in items if not any(b < a for b in items))


def subsumes(a: frozenset, b: frozenset) -> bool:
    """True iff a is a sub-disjunction of b."""
    return _fset(a) <= _fset(b)


@dataclass(frozen=True)
class ModelState:
    """Canonical positive core plus false atoms.

    Membership of an arbitrary pure disjunction in the (implicitly closed)
    state is answered by satisfies_positive / satisfies_negative.
    """

    pos: frozenset = frozenset()
    false_atoms: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pos", canonicalize(self.pos))
        object.__setattr__(self, "false_atoms", _fset(self.false_atoms))

    def unit_true_atoms(self) -> frozenset:
        return frozenset(a for d in self.pos if len(d) == 1 for a in d)


EMPTY_STATE = ModelState()


def satisfies_positive(s: ModelState, d) -> bool:
    """True iff the positive disjunction d belongs to the closure of s."""
    d = _fset(d)
    return any(a <= d for a in s.pos)


def satisfies_negative(s: ModelState, d) -> bool:
    """True iff the negative disjunction over atoms d belongs to the closure of s."""
    return bool(_fset(d) & s.false_atoms)


@dataclass(frozen=True)
class Hypothesis:
    """A set of assumptions: per-atom literal assumptions ("not a") plus
    optional disjunctive assumptions of size >= 2 ("not a or not b ...")."""

    literal_assumptions: frozenset = frozenset()
    disjunctive_assumptions: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "literal_assumptions", _fset(self.literal_assumptions))
        disj = frozenset(_fset(d) for d in self.disjunctive_assumptions)
        for d in disj:
            if len(d) < 2:
                raise ValueError("disjunctive assumptions must have at least two atoms")
        object.__setattr__(self, "disjunctive_assumptions", disj)

    @classmethod
    def of_literals(cls, atoms) -> "Hypothesis":
        return cls(frozenset(atoms))


EMPTY_HYPOTHESIS = Hypothesis()


def state_consistent(s: ModelState) -> bool:
    """No positive core member has all its atoms false, and no false atom is
    unit-true."""
    if any(a <= s.false_atoms for a in s.pos):
        return False
    if any(frozenset((c,)) in s.pos for c in s.false_atoms):
        return False
    return True


def body_status(s: ModelState, r: Rule) -> Truth:
    """Three-valued status of a rule body against a model state."""
    if all(frozenset((b,)) in s.pos for b in r.pos_body) and r.neg_body <= s.false_atoms:
        return Truth.TRUE
    if any(b in s.false_atoms for b in r.pos_body):
        return Truth.FALSE
    if any(frozenset((c,)) in s.pos for c in r.neg_body):
        return Truth.FALSE
    if any(a <= r.neg_body for a in s.pos):
        return Truth.FALSE
    return Truth.UNDEFINED
