"""Backtracking search from the initial state to a counterfactual state.

The search keeps a visited-states trace of ``(state, actions_taken)`` pairs.
Each step selects the first action (causal repairs before direct moves, then
declaration order) whose outcome is a causally consistent state not seen
before, records any causally inconsistent intermediates the repair chain
passes through, and appends the consistent outcome.  Dead ends backtrack:
the exhausted state is remembered so it is never entered again, which bounds
the whole run by one expansion per consistent state.

A run ends in one of three statuses: ``success`` (the last trace state is a
goal), ``failure`` (every alternative was exhausted), or
``budget-exhausted`` (the expansion budget ran out first).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .actions import Action, apply_action, build_actions, is_permitted
from .domains import State
from .errors import EmptySequenceError, NotASolution, PlanFailure
from .rules import ProblemSpec, Rule, is_causally_consistent, satisfies_decision


class TraceEntry(tuple):
    """A visited state together with the action ids attempted from it."""

    __slots__ = ()

    def __new__(cls, state: State, actions_taken: tuple[str, ...] = ()):
        return super().__new__(cls, (state, tuple(actions_taken)))

    @property
    def state(self) -> State:
        return self[0]

    @property
    def actions_taken(self) -> tuple[str, ...]:
        return self[1]


# chain completion ----------------------------------------------------------

ChainEdge = tuple[State, Action]
ChainResult = Optional[tuple[State, tuple[ChainEdge, ...]]]


def _complete(start: State, causal_rules: tuple[Rule, ...],
              actions: Sequence[Action],
              excluded_first: frozenset[str] = frozenset()) -> ChainResult:
    """First causally consistent state reachable from ``start``.

    Depth-first over repair chains: at every inconsistent state the ordered
    action list is tried (causal repairs first), never re-entering a state
    already seen within this chain.  Returns the consistent endpoint plus the
    (state, action) edges leading to it, or ``None`` when no completion
    exists.  ``excluded_first`` removes already-attempted action ids from the
    first hop only.
    """
    if is_causally_consistent(start, causal_rules):
        return start, ()
    seen = {start}
    stack: list[tuple[State, Iterator[Action]]] = [(start, iter(actions))]
    edges: list[ChainEdge] = []
    while stack:
        state, pending = stack[-1]
        advanced = False
        for a in pending:
            if len(stack) == 1 and a.id in excluded_first:
                continue
            if not is_permitted(a, state):
                continue
            nxt = apply_action(a, state)
            if nxt in seen:
                continue
            edges.append((state, a))
            if is_causally_consistent(nxt, causal_rules):
                return nxt, tuple(edges)
            seen.add(nxt)
            stack.append((nxt, iter(actions)))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if edges:
                edges.pop()
    return None


# the trace -------------------------------------------------------------------

@dataclass
class PathTrace:
    """Mutable record of one planning run.

    ``entries`` is the visited-states list in visit order, including causally
    inconsistent intermediates of repair chains.  The trace also carries the
    run bookkeeping: which states sit on the current path, which are known
    dead ends, and memoized repair-chain outcomes.
    """

    causal_rules: tuple[Rule, ...] = ()
    entries: list[TraceEntry] = field(default_factory=list)
    status: str = "in-progress"  # then: success | failure | budget-exhausted
    expansions: int = 0
    _consistent: list[bool] = field(default_factory=list, repr=False)
    _live: dict[State, int] = field(default_factory=dict, repr=False)
    _exhausted: set[State] = field(default_factory=set, repr=False)
    _chain_memo: dict[State, ChainResult] = field(default_factory=dict, repr=False)

    def append(self, entry: TraceEntry) -> None:
        self.entries.append(entry)
        self._consistent.append(is_causally_consistent(entry.state, self.causal_rules))
        self._live[entry.state] = self._live.get(entry.state, 0) + 1

    def pop_last(self) -> TraceEntry:
        if not self.entries:
            raise EmptySequenceError("trace is empty")
        entry = self.entries.pop()
        self._consistent.pop()
        n = self._live[entry.state] - 1
        if n:
            self._live[entry.state] = n
        else:
            del self._live[entry.state]
        return entry

    def last(self) -> TraceEntry:
        if not self.entries:
            raise EmptySequenceError("trace is empty")
        return self.entries[-1]

    def live_contains(self, state: State) -> bool:
        return state in self._live

    def is_exhausted(self, state: State) -> bool:
        return state in self._exhausted

    def mark_exhausted(self, state: State) -> None:
        self._exhausted.add(state)

    def discard_inconsistent_tail(self) -> None:
        while self.entries and not self._consistent[-1]:
            self.pop_last()

    def complete_from(self, state: State, actions: Sequence[Action],
                      excluded_first: frozenset[str] = frozenset()) -> ChainResult:
        if excluded_first:
            return _complete(state, self.causal_rules, actions, excluded_first)
        if state not in self._chain_memo:
            self._chain_memo[state] = _complete(state, self.causal_rules, actions)
        return self._chain_memo[state]

    def entry_records(self) -> Iterator[tuple[TraceEntry, bool]]:
        return zip(self.entries, self._consistent)


@dataclass(frozen=True)
class CandidatePath:
    """The trace with causally inconsistent intermediates removed."""

    states: tuple[State, ...]

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[State]:
        return iter(self.states)


# sequence helpers ------------------------------------------------------------

def not_member(x, seq) -> bool:
    """True when ``x`` is neither an element of ``seq`` nor contained in any
    tuple element (recursively), so a state or action id hiding inside a
    ``(state, actions_taken)`` pair counts as a member."""
    return not any(_occurs(x, e) for e in seq)


def _occurs(x, obj) -> bool:
    if isinstance(obj, (list, tuple)):
        return obj == x or any(_occurs(x, e) for e in obj)
    return obj == x


def get_last(seq):
    """Last element, non-destructively."""
    if not seq:
        raise EmptySequenceError("get_last on empty sequence")
    return seq[-1]


def pop(seq: list):
    """Remove and return the last element; returns ``(element, seq)``."""
    if not seq:
        raise EmptySequenceError("pop on empty sequence")
    return seq.pop(), seq


# the algorithm ----------------------------------------------------------------

def is_counterfactual(state: State, causal_rules: Sequence[Rule],
                      decision_rules: Sequence[Rule]) -> bool:
    """Goal test: the state satisfies every causal rule and no decision rule."""
    return (is_causally_consistent(state, causal_rules)
            and not satisfies_decision(state, decision_rules))


def update(state: State, trace: PathTrace, actions_taken: Sequence[str],
           action: Action) -> tuple[tuple[State, tuple[str, ...]], PathTrace]:
    """Record an attempted action and step the current state.

    Appends the action to ``actions_taken``, appends the pair to the trace,
    and returns the successor with a fresh (empty) attempt record.
    """
    taken = tuple(actions_taken) + (action.id,)
    trace.append(TraceEntry(state, taken))
    return (apply_action(action, state), ()), trace


def make_consistent(state: State, actions_taken: Sequence[str], trace: PathTrace,
                    causal_rules: Sequence[Rule], actions: Sequence[Action],
                    ) -> tuple[TraceEntry, PathTrace]:
    """Reach a causally consistent state from ``state``.

    A consistent input comes back unchanged with the trace untouched.
    Otherwise a repair chain runs, preferring causal actions over direct
    ones, and every inconsistent intermediate is recorded in the trace.  If
    no completion exists the inconsistent suffix is handed back: entries pop
    until a causally consistent one surfaces and is returned as the current
    state again; an emptied trace is a planning failure.
    """
    causal_rules = tuple(causal_rules)
    taken = tuple(actions_taken)
    if is_causally_consistent(state, causal_rules):
        return TraceEntry(state, taken), trace
    result = trace.complete_from(state, actions, excluded_first=frozenset(taken))
    if result is None:
        while trace.entries:
            entry = trace.pop_last()
            if is_causally_consistent(entry.state, causal_rules):
                return entry, trace
        raise PlanFailure("no causally consistent completion reachable")
    final, chain_edges = result
    current, current_taken = state, taken
    for source, action in chain_edges:
        assert source == current
        (current, current_taken), trace = update(source, trace, current_taken, action)
    assert current == final
    return TraceEntry(current, current_taken), trace


def _select_action(trace: PathTrace, state: State, taken: tuple[str, ...],
                   actions: Sequence[Action]) -> Optional[Action]:
    """First action whose consistent outcome is new to this run.

    Skips actions already attempted from this entry, actions not permitted
    here, actions with no consistent completion, and actions whose outcome
    is the current state, sits on the current path, or is a known dead end.
    """
    for a in actions:
        if a.id in taken:
            continue
        if not is_permitted(a, state):
            continue
        raw = apply_action(a, state)
        result = trace.complete_from(raw, actions)
        if result is None:
            continue
        final, _ = result
        if final == state or trace.live_contains(final) or trace.is_exhausted(final):
            continue
        return a
    return None


def intervene(trace: PathTrace, causal_rules: Sequence[Rule],
              actions: Sequence[Action]) -> PathTrace:
    """One transition: move the trace from its last state to a new
    causally consistent state, backtracking through dead ends as needed.

    Raises :class:`PlanFailure` when backtracking exhausts the trace; the
    exhausted root entry is kept for diagnostics.
    """
    causal_rules = tuple(causal_rules)
    if not trace.entries:
        raise PlanFailure("intervene on an empty trace")
    state, taken = trace.pop_last()
    while True:
        action = _select_action(trace, state, taken, actions)
        if action is not None:
            break
        trace.mark_exhausted(state)
        trace.discard_inconsistent_tail()
        if not trace.entries:
            root = TraceEntry(state, taken)
            trace.append(root)
            raise PlanFailure("backtracking exhausted the search space", last_entry=root)
        state, taken = trace.pop_last()
    (current, current_taken), trace = update(state, trace, taken, action)
    entry, trace = make_consistent(current, current_taken, trace, causal_rules, actions)
    trace.append(entry)
    return trace


def default_budget(problem: ProblemSpec, actions: Sequence[Action]) -> int:
    """Default expansion budget: generous for any enumerable instance."""
    return max(1, 10 * len(actions) * len(problem.domains))


def get_path(problem: ProblemSpec) -> PathTrace:
    """Run the full search and return the visited-states trace.

    Deterministic for a given problem.  The trace ends in ``success`` with a
    goal state last, in ``failure`` when the reachable space holds no goal,
    or in ``budget-exhausted`` when the expansion budget ran out.
    """
    actions = build_actions(problem)
    causal_rules = problem.causal_rules
    decision_rules = problem.decision_rules
    budget = problem.action_budget or default_budget(problem, actions)
    trace = PathTrace(causal_rules=causal_rules)
    trace.append(TraceEntry(problem.initial, ()))
    while not is_counterfactual(trace.last().state, causal_rules, decision_rules):
        if trace.expansions >= budget:
            trace.status = "budget-exhausted"
            return trace
        try:
            intervene(trace, causal_rules, actions)
        except PlanFailure:
            trace.status = "failure"
            return trace
        trace.expansions += 1
    trace.status = "success"
    return trace


def extract_candidate_path(trace: PathTrace) -> CandidatePath:
    """Project a successful trace onto its causally consistent states."""
    if trace.status != "success":
        raise NotASolution(f"trace status is {trace.status!r}")
    states = tuple(entry.state for entry, ok in trace.entry_records() if ok)
    return CandidatePath(states)
