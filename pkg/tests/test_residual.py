import pytest

from dwfs import (
    CapacityError,
    GeneratorConfig,
    Rule,
    TransformKind,
    applicable,
    apply,
    bd_semantics_axioms,
    classic_reduction,
    dwfs_classic,
    dwfs_star,
    lft,
    parse_program,
    random_program,
    strong_reduction,
    strong_residual,
    tpg_step,
    wfds,
)
from dwfs.residual import as_program, classic_residual, residual_trace
from conftest import (
    ATTACK_DEMO,
    GUARD,
    PIPELINE,
    SATURATE,
    SATURATE_LFT,
    TRAVEL,
    atoms,
    state,
)


def _fact(p, head, neg=""):
    return Rule(atoms(p, head), frozenset(), atoms(p, neg))


def test_tpg_rejects_non_facts_in_premises():
    p = parse_program("a :- b.")
    with pytest.raises(ValueError):
        tpg_step(p, {Rule(atoms(p, "a"), atoms(p, "b"))})


def test_tpg_step_negative_rules_enter_directly():
    p = parse_program("a :- not b. c | d.")
    got = tpg_step(p, frozenset())
    assert _fact(p, "a", neg="b") in got
    assert _fact(p, "c d") in got


def test_tpg_step_no_premise_no_resolvent():
    p = parse_program("a :- b.")
    assert tpg_step(p, frozenset()) == frozenset()


def test_tpg_step_resolution_carries_delayed_negation():
    p = parse_program(SATURATE)
    j = frozenset()
    for _ in range(3):
        j = j | tpg_step(p, j)
    assert _fact(p, "l p", neg="w") in j


def test_saturation_of_worked_example_is_exact():
    p = parse_program(SATURATE)
    assert as_program(p, lft(p)) == parse_program(SATURATE_LFT)


def test_saturation_of_negative_program_is_itself():
    p = parse_program("a :- not b. c | d :- not e.")
    assert lft(p) == frozenset(p.rules)


def test_saturation_agrees_with_naive_iteration():
    for seed in range(15):
        p = random_program(GeneratorConfig(seed, num_atoms=4, num_rules=5))
        naive: frozenset = frozenset()
        while True:
            nxt = naive | tpg_step(p, naive)
            if nxt == naive:
                break
            naive = nxt
        assert lft(p) == naive


def test_saturation_capacity_cap():
    p = parse_program("a | b. c | d :- not e.")
    with pytest.raises(CapacityError):
        lft(p, cap=1)


def test_strong_reduction_removes_moved_implication():
    p = parse_program(TRAVEL)
    n = frozenset(p.rules)
    assert strong_reduction(n) == {_fact(p, "l p")}


def test_strong_reduction_deletes_dead_literal():
    p = parse_program("a :- not b.")
    assert strong_reduction(frozenset(p.rules)) == {_fact(p, "a")}


def test_strong_reduction_empty():
    assert strong_reduction(frozenset()) == frozenset()


def test_strong_reduction_shrinks():
    for seed in range(15):
        p = random_program(GeneratorConfig(seed, num_atoms=5, num_rules=6))
        n = lft(p)
        reduced = strong_reduction(n)
        assert len(reduced) <= len(n)
        assert sum(len(r.head) + len(r.neg_body) for r in reduced) <= sum(
            len(r.head) + len(r.neg_body) for r in n
        )


def test_residual_of_pipeline():
    p = parse_program(PIPELINE)
    assert strong_residual(p) == {
        _fact(p, "p1 p2"),
        _fact(p, "p3 p4"),
        _fact(p, "q"),
    }


def test_residual_of_travel():
    p = parse_program(TRAVEL)
    assert strong_residual(p) == {_fact(p, "l p")}


def test_residual_of_positive_fact():
    p = parse_program("a | b.")
    assert strong_residual(p) == {_fact(p, "a b")}


def test_residual_invariant_under_transformations():
    for seed in range(25):
        p = random_program(GeneratorConfig(seed + 100, num_atoms=5, num_rules=5))
        value = strong_residual(p)
        for kind in TransformKind:
            for step in applicable(p, kind)[:2]:
                assert strong_residual(apply(p, step)) == value


def test_read_off_values():
    p = parse_program(TRAVEL)
    assert dwfs_star(p) == state(p, pos=["l p"], false="b")
    q = parse_program(PIPELINE)
    got = dwfs_star(q)
    assert got == state(q, pos=["p1 p2", "p3 p4", "q"], false="p w")
    g = parse_program(GUARD)
    assert dwfs_star(g) == state(g, pos=["a b"], false="c")


def test_read_off_satisfies_structural_axioms():
    for seed in range(20):
        p = random_program(GeneratorConfig(seed, num_atoms=5, num_rules=6))
        assert bd_semantics_axioms(dwfs_star(p), p)


def test_semantics_invariant_under_saturation():
    for seed in range(15):
        p = random_program(GeneratorConfig(seed + 40, num_atoms=5, num_rules=5))
        saturated = as_program(p, lft(p))
        assert wfds(saturated) == wfds(p)
        assert dwfs_star(saturated) == dwfs_star(p)


def test_classic_reduction_weaker_than_strong():
    p = parse_program(TRAVEL)
    n = frozenset(p.rules)
    assert classic_reduction(n) == n
    q = parse_program("a :- not b.")
    assert classic_reduction(frozenset(q.rules)) == {_fact(q, "a")}
    r = parse_program("a. a | b.")
    assert classic_reduction(frozenset(r.rules)) == {_fact(r, "a")}


def test_classic_negative_reduction():
    p = parse_program("c :- not a, not b. a | b.")
    assert classic_residual(p) == {_fact(p, "a b")}


def test_classic_value_on_travel_lacks_negative():
    p = parse_program(TRAVEL)
    assert dwfs_classic(p) == state(p, pos=["l p"])


def test_classic_value_matches_strong_on_attack_demo():
    p = parse_program(ATTACK_DEMO)
    want = state(p, pos=["a b", "d"], false="c")
    assert dwfs_classic(p) == want
    assert dwfs_star(p) == want


def test_classic_included_in_strong():
    from dwfs import satisfies_negative, satisfies_positive
    import itertools

    for seed in range(25):
        p = random_program(GeneratorConfig(seed + 900, num_atoms=5, num_rules=6))
        weak, strong = dwfs_classic(p), dwfs_star(p)
        for k in range(1, 4):
            for combo in itertools.combinations(sorted(p.base), k):
                d = frozenset(combo)
                if satisfies_positive(weak, d):
                    assert satisfies_positive(strong, d)
                if satisfies_negative(weak, d):
                    assert satisfies_negative(strong, d)


def test_trace_reaches_residual():
    p = parse_program(PIPELINE)
    saturated, passes, residual = residual_trace(p)
    assert saturated == lft(p)
    assert residual == strong_residual(p)
    assert passes
    steps, after = passes[0]
    assert steps
    assert all(s.kind in (TransformKind.ELIM_S_IMPLICATION, TransformKind.POSITIVE_REDUCTION) for s in steps)
    assert after == strong_reduction(saturated)
