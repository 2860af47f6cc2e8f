import pytest
from hypothesis import given, settings, strategies as st

from recourseplan.actions import build_actions
from recourseplan.domains import Domains, FeatureDomain
from recourseplan.dsl import parse_problem
from recourseplan.errors import CapExceeded
from recourseplan.generate import random_problem
from recourseplan.oracle import (bfs_shortest_path, compute_goal_set,
                                 delta_oracle, delta_oracle_liberal,
                                 enumerate_causally_consistent, enumerate_states,
                                 state_set_report, validate_solution_path)
from recourseplan.planner import (CandidatePath, extract_candidate_path, get_path,
                                  is_counterfactual)
from recourseplan.rules import ProblemSpec, is_causally_consistent

REPAIR_ORDER_SENSITIVE = """\
feature a: categorical {f, t}.
feature b: categorical {f, t}.
feature c: categorical {f, t}.
causal r1: b = t :- a = t.
decision q :- c = t.
initial { a = f, b = f, c = t }.
"""


# enumeration -------------------------------------------------------------------

def test_car_state_count(car):
    states = list(enumerate_states(car.problem.domains))
    assert len(states) == 144
    assert len(set(states)) == 144


def test_single_value_feature_single_state():
    d = Domains((FeatureDomain("only", "categorical", labels=("one",)),))
    assert [s.idx for s in enumerate_states(d)] == [(0,)]


def test_enumeration_order_is_deterministic(husband_toy):
    a = [s.idx for s in enumerate_states(husband_toy.domains)]
    b = [s.idx for s in enumerate_states(husband_toy.domains)]
    assert a == b
    assert a[0] == (0, 0, 0) and a[-1] == (1, 1, 2)


@given(st.integers(0, 500))
def test_stream_length_is_domain_product(seed):
    problem = random_problem(seed)
    count = sum(1 for _ in enumerate_states(problem.domains))
    assert count == problem.state_count


def test_cap_exceeded():
    d = Domains((FeatureDomain("a", "categorical", labels=tuple("abcdefgh")),
                 FeatureDomain("b", "categorical", labels=tuple("abcdefgh"))))
    with pytest.raises(CapExceeded):
        list(enumerate_states(d, cap=63))
    assert sum(1 for _ in enumerate_states(d, cap=64)) == 64


def test_empty_causal_rules_keep_every_state(car):
    members = enumerate_causally_consistent(car.problem)
    assert len(members) == 144


def test_husband_toy_excludes_exactly_two_states(husband_toy):
    members = enumerate_causally_consistent(husband_toy)
    assert len(members) == 10
    domains = husband_toy.domains
    excluded = {
        domains.make_state({"sex": "male", "marital_status": "married",
                            "relationship": "wife"}),
        domains.make_state({"sex": "male", "marital_status": "married",
                            "relationship": "unmarried"}),
    }
    assert excluded.isdisjoint(members)
    assert len(members | excluded) == 12


# goal sets ----------------------------------------------------------------------

def test_no_decision_rules_goal_is_everything_consistent(husband_toy):
    assert compute_goal_set(husband_toy) == enumerate_causally_consistent(husband_toy)


def test_covering_decisions_empty_goal_and_failure(unreachable_goal):
    assert compute_goal_set(unreachable_goal) == set()
    assert get_path(unreachable_goal).status == "failure"


def test_goal_test_matches_enumerated_goal_set(adult):
    p = adult.problem
    goal = compute_goal_set(p)
    for state in enumerate_states(p.domains):
        if is_causally_consistent(state, p.causal_rules):
            assert is_counterfactual(state, p.causal_rules, p.decision_rules) \
                == (state in goal)


def test_report_counts_and_set_identity(husband_toy):
    report = state_set_report(husband_toy)
    assert report.total_states == 12
    assert report.causally_consistent == 10
    assert report.goal + report.decision_consistent == report.causally_consistent


@given(st.integers(0, 500))
def test_report_matches_enumerations(seed):
    problem = random_problem(seed)
    report = state_set_report(problem)
    consistent = enumerate_causally_consistent(problem)
    goal = compute_goal_set(problem)
    assert report.total_states == problem.state_count
    assert report.causally_consistent == len(consistent)
    assert report.goal == len(goal)
    assert report.decision_consistent == len(consistent) - len(goal)


# transitions ---------------------------------------------------------------------

def test_delta_empty_without_permitted_actions():
    d = Domains((FeatureDomain("only", "categorical", labels=("one",)),))
    p = ProblemSpec(domains=d, initial=d.make_state({"only": "one"}))
    assert delta_oracle(p.initial, p) == set()


def test_delta_of_german_initial_contains_duration_move(german):
    p = german.problem
    successors = delta_oracle(p.initial, p)
    moved = p.initial.with_value(p.domains.index("duration_months"), 1)
    assert moved in successors
    assert p.initial not in successors


def test_delta_closure_and_irreflexivity(husband_toy):
    p = husband_toy
    actions = build_actions(p)
    for state in enumerate_causally_consistent(p):
        succ = delta_oracle(state, p, actions)
        assert state not in succ
        for t in succ:
            assert is_causally_consistent(t, p.causal_rules)


def test_delta_includes_repaired_two_feature_move(adult):
    # moving marital status triggers the spouse repair inside the same step
    p = adult.problem
    domains = p.domains
    succ = delta_oracle(p.initial, p)
    repaired = p.initial.with_value(domains.index("marital_status"), 1) \
                        .with_value(domains.index("relationship"), 1)
    assert repaired in succ


def test_liberal_delta_is_superset_and_flags_order_sensitivity():
    p = parse_problem(REPAIR_ORDER_SENSITIVE)
    canonical = delta_oracle(p.initial, p)
    liberal = delta_oracle_liberal(p.initial, p)
    assert canonical < liberal  # strictly more successors under other orders
    extra = {s.idx for s in liberal - canonical}
    assert extra == {(1, 1, 0)}


def test_liberal_delta_equal_when_no_chains(german):
    p = german.problem
    assert delta_oracle_liberal(p.initial, p) == delta_oracle(p.initial, p)


# validation -----------------------------------------------------------------------

def test_trivial_single_state_path_validates(boolean_pair):
    report = validate_solution_path(CandidatePath((boolean_pair.initial,)), boolean_pair)
    assert report.overall
    assert report.clause_results == (True, True, True, True, True)


def test_german_golden_path_validates(german):
    trace = get_path(german.problem)
    report = validate_solution_path(extract_candidate_path(trace), german.problem)
    assert report.overall


def test_validation_flags_wrong_start(german):
    trace = get_path(german.problem)
    states = extract_candidate_path(trace).states
    report = validate_solution_path(CandidatePath(states[1:]), german.problem)
    assert not report.starts_at_initial
    assert not report.overall


def test_validation_flags_non_goal_end(german):
    trace = get_path(german.problem)
    states = extract_candidate_path(trace).states
    report = validate_solution_path(CandidatePath(states[:2]), german.problem)
    assert report.starts_at_initial
    assert not report.ends_in_goal
    assert not report.overall


def test_validation_flags_inconsistent_state(repair_chain):
    p = repair_chain
    trace = get_path(p)
    states = extract_candidate_path(trace).states
    domains = p.domains
    broken = p.initial.with_value(domains.index("marital_status"), 1)
    report = validate_solution_path(
        CandidatePath((states[0], broken, states[1])), p)
    assert not report.all_causally_consistent
    assert not report.overall


def test_validation_flags_goal_in_prefix(boolean_pair):
    p = boolean_pair  # no decision rules: every consistent state is a goal
    other = next(iter(delta_oracle(p.initial, p)))
    report = validate_solution_path(CandidatePath((p.initial, other)), p)
    assert not report.prefix_avoids_goal


def test_validation_flags_non_transition_jump(german):
    p = german.problem
    trace = get_path(p)
    states = extract_candidate_path(trace).states
    report = validate_solution_path(CandidatePath((states[0], states[2])), p)
    assert report.starts_at_initial and report.ends_in_goal
    assert not report.steps_are_transitions
    assert not report.overall


def test_validation_records_order_sensitivity_note():
    p = parse_problem(REPAIR_ORDER_SENSITIVE)
    trace = get_path(p)
    report = validate_solution_path(extract_candidate_path(trace), p)
    assert report.overall
    assert report.liberal_divergence


def test_validation_rejects_empty_path(german):
    with pytest.raises(ValueError):
        validate_solution_path(CandidatePath(()), german.problem)


# shortest paths ---------------------------------------------------------------------

def test_bfs_trivial_when_start_is_goal(boolean_pair):
    path = bfs_shortest_path(boolean_pair)
    assert path is not None and path.states == (boolean_pair.initial,)


def test_bfs_none_when_unreachable(unreachable_goal):
    assert bfs_shortest_path(unreachable_goal) is None


def test_bfs_german_needs_three_states(german):
    path = bfs_shortest_path(german.problem)
    assert path is not None and len(path) == 3


def test_bfs_result_is_itself_a_valid_solution(german):
    path = bfs_shortest_path(german.problem)
    assert validate_solution_path(path, german.problem).overall


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3000))
def test_bfs_never_longer_than_the_planner(seed):
    problem = random_problem(seed)
    trace = get_path(problem)
    shortest = bfs_shortest_path(problem)
    if trace.status == "success":
        assert shortest is not None
        assert len(shortest) <= len(extract_candidate_path(trace))
    elif trace.status == "failure":
        assert shortest is None
