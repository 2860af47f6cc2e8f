from recourseplan.dsl import pretty_print
from recourseplan.generate import random_problem
from recourseplan.rules import is_causally_consistent


def test_same_seed_same_problem():
    assert random_problem(123) == random_problem(123)
    assert pretty_print(random_problem(99)) == pretty_print(random_problem(99))


def test_seeds_cover_distinct_problems():
    texts = {pretty_print(random_problem(seed)) for seed in range(40)}
    assert len(texts) > 30


def test_generated_problems_respect_the_advertised_bounds():
    saw_causal = saw_constraint = saw_numeric = False
    for seed in range(300):
        p = random_problem(seed)
        assert 2 <= len(p.domains) <= 5
        assert all(f.size <= 4 for f in p.domains)
        assert len(p.causal_rules) <= 4
        assert len(p.decision_rules) <= 3
        assert is_causally_consistent(p.initial, p.causal_rules)
        saw_causal = saw_causal or bool(p.causal_rules)
        saw_constraint = saw_constraint or bool(p.constraints)
        saw_numeric = saw_numeric or any(f.kind == "numeric" for f in p.domains)
    assert saw_causal and saw_constraint and saw_numeric


def test_budget_passthrough():
    assert random_problem(5, action_budget=77).action_budget == 77
