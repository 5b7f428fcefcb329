"""Random program generation, independent oracles (minimal models, normal
well-founded model), and cross-semantics equivalence checking."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .argumentation import Engine, wfds
from .core import (
    CapacityError,
    ModelState,
    Program,
    Rule,
    env_bound,
    satisfies_negative,
    satisfies_positive,
)
from .fixpoint import DEFAULT_ORACLE_BOUND, _require_positive
from .residual import dwfs_star
from .unfounded import uwfs


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    num_atoms: int = 6
    num_rules: int = 8
    max_head: int = 3
    max_pos_body: int = 3
    max_neg_body: int = 3
    neg_probability: float = 0.5

    def __post_init__(self):
        if self.num_atoms < 1:
            raise ValueError("num_atoms must be positive")
        if self.max_head < 1:
            raise ValueError("max_head must be at least 1")
        for bound in (self.max_head, self.max_pos_body, self.max_neg_body):
            if bound > self.num_atoms:
                raise ValueError("size bounds cannot exceed the atom count")


def atom_names(n: int) -> list[str]:
    """a, b, ..., z, aa, ab, ... spreadsheet-style names."""
    names = []
    for i in range(n):
        name = ""
        k = i
        while True:
            name = chr(ord("a") + k % 26) + name
            k = k // 26 - 1
            if k < 0:
                break
        names.append(name)
    return names


def random_program(cfg: GeneratorConfig) -> Program:
    """Deterministic function of the config: same seed, same program."""
    rnd = random.Random(cfg.seed)
    atoms = list(range(cfg.num_atoms))
    rules = set()
    for _ in range(cfg.num_rules):
        head = frozenset(rnd.sample(atoms, rnd.randint(1, cfg.max_head)))
        pos = frozenset(rnd.sample(atoms, rnd.randint(0, cfg.max_pos_body)))
        if rnd.random() < cfg.neg_probability:
            neg = frozenset(rnd.sample(atoms, rnd.randint(0, cfg.max_neg_body)))
        else:
            neg = frozenset()
        rules.add(Rule(head, pos, neg))
    return Program(rules, atom_names(cfg.num_atoms))


def degenerate_programs(num_atoms: int = 4) -> list[Program]:
    """Boundary cases injected into every fuzz run."""
    names = atom_names(num_atoms)
    empty = Program((), names)
    facts = Program((Rule(frozenset((a,))) for a in range(num_atoms)), names)
    return [empty, facts]


def minimal_models(p: Program, bound: int | None = None) -> frozenset:
    """All subset-minimal classical models of a positive program, by
    exhaustive assignment enumeration."""
    _require_positive(p)
    n = len(p.atom_names)
    limit = env_bound(bound, DEFAULT_ORACLE_BOUND)
    if n > limit:
        raise CapacityError(f"minimal-model oracle limited to {limit} atoms, got {n}")

    def mask(atoms):
        m = 0
        for a in atoms:
            m |= 1 << a
        return m

    rules = [(mask(r.pos_body), mask(r.head)) for r in p.rules]
    models = []
    for bits in sorted(range(1 << n), key=lambda b: bin(b).count("1")):
        if any((bits & pm) == pm and not (bits & hm) for pm, hm in rules):
            continue
        if any(m & bits == m for m in models):
            continue
        models.append(bits)
    return frozenset(
        frozenset(a for a in range(n) if m >> a & 1) for m in models
    )


def gcwa_negatives(p: Program, bound: int | None = None) -> frozenset:
    """Atoms false in every minimal model of a positive program."""
    covered = set()
    for m in minimal_models(p, bound):
        covered |= m
    return p.base - covered


def normal_wfs(p: Program) -> ModelState:
    """Well-founded model of a normal program via the alternating fixpoint
    of the negation-reduct operator; shares nothing with the argumentation
    route beyond the core types."""
    if any(len(r.head) != 1 for r in p.rules):
        raise ValueError("well-founded oracle requires a normal program")
    rules = [(next(iter(r.head)), r.pos_body, r.neg_body) for r in p.rules]

    def least_model(assumed_true: frozenset) -> frozenset:
        active = [(h, pos) for h, pos, neg in rules if not (neg & assumed_true)]
        derived: set[int] = set()
        changed = True
        while changed:
            changed = False
            for h, pos in active:
                if h not in derived and pos <= derived:
                    derived.add(h)
                    changed = True
        return frozenset(derived)

    true_set: frozenset = frozenset()
    while True:
        possible = least_model(true_set)
        nxt = least_model(possible)
        if nxt == true_set:
            break
        true_set = nxt
    return ModelState(
        frozenset(frozenset((a,)) for a in true_set),
        p.base - least_model(true_set),
    )


SEMANTICS_NAMES = ("wfds", "wfds-raw", "dwfs-star", "uwfs")


def compute_semantics(p: Program, name: str) -> ModelState:
    if name == "wfds":
        return wfds(p, Engine.CANONICAL)
    if name == "wfds-raw":
        return wfds(p, Engine.RAW)
    if name == "dwfs-star":
        return dwfs_star(p)
    if name == "uwfs":
        return uwfs(p)
    raise ValueError(f"unknown semantics {name!r}")


def states_agree(a: ModelState, b: ModelState) -> bool:
    """Agreement on every pure disjunction; canonical cores make this a
    structural comparison."""
    return a.pos == b.pos and a.false_atoms == b.false_atoms


def find_divergence(a: ModelState, b: ModelState):
    """A pure disjunction satisfied by exactly one state: ('pos'|'neg', atoms)."""
    for d in sorted(a.pos | b.pos, key=sorted):
        if satisfies_positive(a, d) != satisfies_positive(b, d):
            return ("pos", d)
    for atom in sorted(a.false_atoms ^ b.false_atoms):
        d = frozenset((atom,))
        if satisfies_negative(a, d) != satisfies_negative(b, d):
            return ("neg", d)
    return None


@dataclass
class EquivalenceReport:
    program: Program
    states: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    equal: bool = True
    first_divergence: tuple | None = None


def check_equivalence(p: Program) -> EquivalenceReport:
    """Compute every semantics on p and compare them pairwise; capacity
    failures are recorded per semantics and equality judged on the rest."""
    report = EquivalenceReport(p)
    for name in SEMANTICS_NAMES:
        try:
            report.states[name] = compute_semantics(p, name)
        except CapacityError as exc:
            report.errors[name] = str(exc)
    names = [n for n in SEMANTICS_NAMES if n in report.states]
    for i, n1 in enumerate(names):
        for n2 in names[i + 1 :]:
            if not states_agree(report.states[n1], report.states[n2]):
                witness = find_divergence(report.states[n1], report.states[n2])
                report.equal = False
                report.first_divergence = ((n1, n2), witness)
                return report
    return report


def remove_atom(p: Program, aid: int) -> Program:
    """Drop one atom everywhere, discarding rules whose head empties."""
    names = [nm for i, nm in enumerate(p.atom_names) if i != aid]
    remap = {old: new for new, old in enumerate(i for i in range(len(p.atom_names)) if i != aid)}
    rules = []
    for r in p.rules:
        head = frozenset(remap[a] for a in r.head if a != aid)
        if not head:
            continue
        rules.append(
            Rule(
                head,
                frozenset(remap[a] for a in r.pos_body if a != aid),
                frozenset(remap[a] for a in r.neg_body if a != aid),
            )
        )
    return Program(rules, names)


def shrink_divergence(p: Program, still_divergent: Callable[[Program], bool]) -> Program:
    """Greedily remove rules, then atoms, while the divergence persists."""
    changed = True
    while changed:
        changed = False
        for r in p.rules:
            candidate = p.with_rules(set(p.rules) - {r})
            if still_divergent(candidate):
                p = candidate
                changed = True
                break
        if changed:
            continue
        for aid in sorted(p.base):
            candidate = remove_atom(p, aid)
            if still_divergent(candidate):
                p = candidate
                changed = True
                break
    return p


def fuzz_reports(
    count: int,
    cfg: GeneratorConfig,
    shrink: bool = True,
) -> Iterator[EquivalenceReport]:
    """Degenerate programs first, then seeded random ones; divergent reports
    are re-run on a shrunk program when shrinking is enabled."""
    programs = degenerate_programs(min(cfg.num_atoms, 4))
    for i in range(count):
        sub = GeneratorConfig(
            seed=cfg.seed + i,
            num_atoms=cfg.num_atoms,
            num_rules=cfg.num_rules,
            max_head=cfg.max_head,
            max_pos_body=cfg.max_pos_body,
            max_neg_body=cfg.max_neg_body,
            neg_probability=cfg.neg_probability,
        )
        programs.append(random_program(sub))
    for prog in programs:
        report = check_equivalence(prog)
        if not report.equal and shrink:
            small = shrink_divergence(prog, lambda q: not check_equivalence(q).equal)
            report = check_equivalence(small)
        yield report


def report_json(report: EquivalenceReport) -> dict:
    """JSON-line form of a report: program text plus machine-form states."""
    from .parser import render_program, state_json

    names = report.program.atom_names
    doc = {
        "program": render_program(report.program),
        "states": {
            name: state_json(state, names) for name, state in report.states.items()
        },
        "equal": report.equal,
        "first_divergence": None,
    }
    if report.errors:
        doc["errors"] = dict(sorted(report.errors.items()))
    if report.first_divergence is not None:
        (n1, n2), witness = report.first_divergence
        sign, atoms = witness
        doc["first_divergence"] = {
            "pair": [n1, n2],
            "witness": {"sign": sign, "atoms": sorted(names[a] for a in atoms)},
        }
    return doc
