"""Defining a recourse problem: features, rules, constraints, and states.

A problem is written in a small text language.  Numeric features get carved
into intervals at every constant the rules mention, so each rule has a single
truth value per interval and the whole state space is finite.
"""

from recourseplan import eval_rule, parse_problem, pretty_print

TEXT = """\
% A miniature credit problem.
feature duration_months: numeric [1, 72].
feature checking_balance: numeric [0, 5000].
feature purpose: categorical {car, furniture, education}.

% The classifier's current view of this applicant: "good" while both hold.
decision good_short :- duration_months =< 7.
decision good_funded :- checking_balance > 1000.

% Causal tie: education loans always run long here.
causal edu_duration: duration_months > 7 :- purpose = education.

constraint nondecreasing duration_months.

initial { duration_months = 7, checking_balance = 2500, purpose = car }.
"""

problem = parse_problem(TEXT)

print("Features and their finite value sets")
print("-" * 50)
for feature in problem.domains:
    if feature.kind == "categorical":
        values = ", ".join(feature.labels)
    else:
        values = ", ".join(str(iv) for iv in feature.intervals)
    flags = [] if feature.mutable else ["immutable"]
    if feature.monotonicity != "none":
        flags.append(feature.monotonicity)
    suffix = f"   [{', '.join(flags)}]" if flags else ""
    print(f"  {feature.name:18} {values}{suffix}")

# The declared ranges were split at 7 (from the rules) and 1000; every rule
# is now constant per interval, so states need only remember the interval.
print()
print("Initial state (concrete numbers kept for display)")
print("-" * 50)
for name in problem.domains.names:
    print(f"  {name:18} {problem.initial.display(name)}")

print()
print("Rule evaluation on the initial state")
print("-" * 50)
for rule in problem.decision_rules + problem.causal_rules:
    print(f"  {str(rule):55} -> {eval_rule(rule, problem.initial)}")

# The text form round-trips: printing and reparsing gives the same problem.
assert parse_problem(pretty_print(problem)) == problem
print()
print("pretty_print(parse(text)) reparses to an identical problem: OK")
