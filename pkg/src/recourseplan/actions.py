"""Construction and application of the finite intervention set.

Every intervention writes exactly one feature.  Direct actions exist for each
(mutable feature, value) pair and may land anywhere, including causally
inconsistent states.  Causal actions are derived from causal rules: guarded
by the rule body, they set the head feature to a value satisfying the head,
and survive construction only if, from every state where the guard holds,
applying them yields a causally consistent state.  Plausibility constraints
never add states; they only filter which actions are permitted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .domains import Domains, FeatureValue, PlausibilityConstraint, State
from .errors import NotApplicable
from .rules import Literal, ProblemSpec, Rule, compile_rule, literal_support


@dataclass(frozen=True)
class Action:
    """A named single-feature state transformer."""

    id: str
    kind: str  # "direct" | "causal"
    feature: str
    feature_index: int
    new_index: int
    guard: tuple[Literal, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("direct", "causal"):
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.kind == "direct" and self.guard:
            raise ValueError("direct actions carry no guard")

    def new_value(self, domains: Domains) -> FeatureValue:
        f = domains[self.feature_index]
        return f.labels[self.new_index] if f.kind == "categorical" else f.intervals[self.new_index]


def _effective_domains(domains: Domains,
                       constraints: Sequence[PlausibilityConstraint]) -> Domains:
    return domains.with_constraints(constraints) if constraints else domains


def build_direct_actions(domains: Domains,
                         constraints: Sequence[PlausibilityConstraint] = ()) -> tuple[Action, ...]:
    """One action per (mutable feature, value), in declaration then domain order."""
    domains = _effective_domains(domains, constraints)
    actions = []
    for fi, f in enumerate(domains):
        if not f.mutable:
            continue
        for vi in range(f.size):
            actions.append(Action(
                id=f"direct:{f.name}:{f.value_text(vi)}",
                kind="direct",
                feature=f.name,
                feature_index=fi,
                new_index=vi,
            ))
    return tuple(actions)


def _guard_states(domains: Domains, causal_rules: Sequence[Rule],
                  guard: tuple[tuple[int, frozenset[int]], ...]) -> Iterable[tuple[int, ...]]:
    """Index tuples of every state where the guard holds.

    Only features mentioned by some causal rule or by the guard can influence
    either the guard or consistency, so the sweep enumerates just those and
    pins the rest, keeping verification cheap on large spaces.
    """
    relevant: set[int] = set()
    for rule in causal_rules:
        body, head = compile_rule(domains, rule)
        relevant.update(i for i, _ in body)
        if head is not None:
            relevant.add(head[0])
    relevant.update(i for i, _ in guard)
    axes = [
        range(f.size) if fi in relevant else range(1)
        for fi, f in enumerate(domains)
    ]
    guard_by_pos = {i: allowed for i, allowed in guard}
    for idx in itertools.product(*axes):
        if all(idx[i] in allowed for i, allowed in guard_by_pos.items()):
            yield idx


def _always_consistent_after(domains: Domains, causal_rules: Sequence[Rule],
                             guard: tuple[tuple[int, frozenset[int]], ...],
                             feature_index: int, new_index: int) -> bool:
    compiled = [compile_rule(domains, r) for r in causal_rules]
    for idx in _guard_states(domains, causal_rules, guard):
        after = list(idx)
        after[feature_index] = new_index
        for body, head in compiled:
            if all(after[i] in allowed for i, allowed in body):
                hi, allowed = head  # type: ignore[misc]
                if after[hi] not in allowed:
                    return False
    return True


def build_causal_actions(causal_rules: Sequence[Rule], domains: Domains,
                         constraints: Sequence[PlausibilityConstraint] = ()) -> tuple[Action, ...]:
    """Verified repairs derived from causal rules.

    For each rule ``body => head`` and each head-feature value satisfying the
    head, the candidate sets that value under the body as guard.  Candidates
    that can produce an inconsistent state from any guard-satisfying state
    are discarded; the same mutation stays reachable as a direct action.
    """
    domains = _effective_domains(domains, constraints)
    actions = []
    for rule in causal_rules:
        assert rule.head is not None
        fi = domains.index(rule.head.feature)
        f = domains[fi]
        if not f.mutable:
            continue
        guard_compiled = tuple(
            (domains.index(lit.feature), literal_support(domains.by_name(lit.feature), lit))
            for lit in rule.body
        )
        head_values = sorted(literal_support(f, rule.head))
        for vi in head_values:
            if not _always_consistent_after(domains, causal_rules, guard_compiled, fi, vi):
                continue
            actions.append(Action(
                id=f"causal:{rule.id}:{f.name}:{f.value_text(vi)}",
                kind="causal",
                feature=f.name,
                feature_index=fi,
                new_index=vi,
                guard=rule.body,
            ))
    return tuple(actions)


def build_actions(problem: ProblemSpec) -> tuple[Action, ...]:
    """The full ordered action set: causal repairs first, then direct moves."""
    return (build_causal_actions(problem.causal_rules, problem.domains)
            + build_direct_actions(problem.domains))


def is_permitted(action: Action, state: State) -> bool:
    """Whether applying the action to this state is allowed.

    Requires the guard (if any) to hold, the target value to actually change,
    and the move to respect immutability and monotonicity.
    """
    f = state.domains[action.feature_index]
    if not f.mutable:
        return False
    current = state.idx[action.feature_index]
    if current == action.new_index:
        return False
    if f.monotonicity == "nondecreasing" and action.new_index < current:
        return False
    if f.monotonicity == "nonincreasing" and action.new_index > current:
        return False
    for lit in action.guard:
        support = literal_support(state.domains.by_name(lit.feature), lit)
        if state.idx[state.domains.index(lit.feature)] not in support:
            return False
    return True


def apply_action(action: Action, state: State) -> State:
    """Apply a permitted action; the result differs in exactly the target feature."""
    if not is_permitted(action, state):
        raise NotApplicable(f"action {action.id!r} is not permitted in this state")
    return state.with_value(action.feature_index, action.new_index)
