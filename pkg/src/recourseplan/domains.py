"""Feature domains, threshold-induced interval partitions, and feature states.

Numeric features are integer-granular and abstracted into a finite, ordered
partition of right-closed intervals, so that every comparison appearing in a
rule is constant on each interval.  This keeps the whole state space finite
and makes exhaustive cross-checks exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Literal, Mapping, Optional, Sequence, Union

from .errors import EmptyRange, SemanticError

Kind = Literal["categorical", "numeric"]
Monotonicity = Literal["none", "nondecreasing", "nonincreasing"]
ConstraintKind = Literal["immutable", "nondecreasing", "nonincreasing"]


@dataclass(frozen=True)
class Interval:
    """Integer interval, closed on the right: ``[lower, upper]`` or ``(lower, upper]``."""

    lower: int
    upper: int
    lower_open: bool = False

    def __post_init__(self) -> None:
        if self.lower_open:
            if self.upper <= self.lower:
                raise ValueError(f"empty interval ({self.lower}, {self.upper}]")
        elif self.upper < self.lower:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    @property
    def min_element(self) -> int:
        return self.lower + 1 if self.lower_open else self.lower

    @property
    def max_element(self) -> int:
        return self.upper

    def contains(self, x: int) -> bool:
        return self.min_element <= x <= self.upper

    @property
    def representative(self) -> int:
        """Canonical concrete value used when suggesting this interval."""
        return self.min_element

    def __str__(self) -> str:
        left = "(" if self.lower_open else "["
        return f"{left}{self.lower}, {self.upper}]"

    def describe(self) -> str:
        """Human phrasing, e.g. ``>7 and =<72`` for ``(7, 72]``."""
        if self.min_element == self.upper:
            return str(self.upper)
        if self.lower_open:
            return f">{self.lower} and =<{self.upper}"
        return f">={self.lower} and =<{self.upper}"


def partition_range(lo: int, hi: int, thresholds: Iterable[int]) -> tuple[Interval, ...]:
    """Split ``[lo, hi]`` at the given cut points into right-closed intervals.

    Sorted thresholds ``t1 < ... < tk`` inside ``[lo, hi)`` produce the
    partition ``[lo, t1], (t1, t2], ..., (tk, hi]``.  Thresholds outside
    ``[lo, hi)`` are dropped: a comparison against such a constant is already
    constant over the whole range, so no split is needed.
    """
    if hi < lo:
        raise EmptyRange(f"range [{lo}, {hi}] is empty")
    cuts = sorted({int(t) for t in thresholds if lo <= t < hi})
    if not cuts:
        return (Interval(lo, hi),)
    parts = [Interval(lo, cuts[0])]
    for a, b in zip(cuts, cuts[1:] + [hi]):
        parts.append(Interval(a, b, lower_open=True))
    return tuple(parts)


@dataclass(frozen=True)
class PlausibilityConstraint:
    """Restriction on how a feature may change: frozen, or one-way only."""

    feature: str
    kind: ConstraintKind

    def __post_init__(self) -> None:
        if self.kind not in ("immutable", "nondecreasing", "nonincreasing"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")


@dataclass(frozen=True)
class FeatureDomain:
    """One feature: its finite value set and how it is allowed to move.

    Categorical features carry an ordered tuple of labels; numeric features
    carry an ordered interval partition of their declared range.  Constraints
    are mirrored here as ``mutable`` and ``monotonicity`` so that action
    filtering needs no side lookups.
    """

    name: str
    kind: Kind
    labels: tuple[str, ...] = ()
    intervals: tuple[Interval, ...] = ()
    mutable: bool = True
    monotonicity: Monotonicity = "none"

    def __post_init__(self) -> None:
        if self.kind == "categorical":
            if not self.labels or self.intervals:
                raise ValueError(f"{self.name}: categorical features need labels only")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError(f"{self.name}: duplicate labels")
        elif self.kind == "numeric":
            if not self.intervals or self.labels:
                raise ValueError(f"{self.name}: numeric features need intervals only")
            if self.intervals[0].lower_open:
                raise ValueError(f"{self.name}: first interval must include its lower bound")
            for prev, nxt in zip(self.intervals, self.intervals[1:]):
                if not nxt.lower_open or nxt.lower != prev.upper:
                    raise ValueError(f"{self.name}: intervals must tile the range without gaps")
        else:
            raise ValueError(f"{self.name}: unknown kind {self.kind!r}")
        if self.monotonicity not in ("none", "nondecreasing", "nonincreasing"):
            raise ValueError(f"{self.name}: bad monotonicity {self.monotonicity!r}")

    @property
    def size(self) -> int:
        return len(self.labels) if self.kind == "categorical" else len(self.intervals)

    def value_text(self, index: int) -> str:
        if self.kind == "categorical":
            return self.labels[index]
        return str(self.intervals[index])

    def index_of_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name}: no label {label!r}") from None

    def interval_index_of(self, x: int) -> int:
        for i, iv in enumerate(self.intervals):
            if iv.contains(x):
                return i
        raise KeyError(f"{self.name}: {x} outside range {self.intervals[0].lower}..{self.intervals[-1].upper}")

    def constrained(self, constraint: PlausibilityConstraint) -> "FeatureDomain":
        if constraint.kind == "immutable":
            return FeatureDomain(self.name, self.kind, self.labels, self.intervals,
                                 mutable=False, monotonicity=self.monotonicity)
        return FeatureDomain(self.name, self.kind, self.labels, self.intervals,
                             mutable=self.mutable, monotonicity=constraint.kind)


@dataclass(frozen=True)
class Domains:
    """Ordered collection of feature domains; the schema of a state space."""

    features: tuple[FeatureDomain, ...]

    def __post_init__(self) -> None:
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise SemanticError("duplicate-declaration", "feature declared twice")

    @cached_property
    def _by_name(self) -> dict[str, int]:
        return {f.name: i for i, f in enumerate(self.features)}

    def __iter__(self) -> Iterator[FeatureDomain]:
        return iter(self.features)

    def __len__(self) -> int:
        return len(self.features)

    def __getitem__(self, i: int) -> FeatureDomain:
        return self.features[i]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)

    def index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise SemanticError("undeclared-feature", f"feature {name!r} is not declared") from None

    def by_name(self, name: str) -> FeatureDomain:
        return self.features[self.index(name)]

    @property
    def state_count(self) -> int:
        n = 1
        for f in self.features:
            n *= f.size
        return n

    def with_constraints(self, constraints: Sequence[PlausibilityConstraint]) -> "Domains":
        seen: set[str] = set()
        updated = list(self.features)
        for c in constraints:
            if c.feature in seen:
                raise SemanticError("duplicate-declaration",
                                    f"more than one constraint on feature {c.feature!r}")
            seen.add(c.feature)
            i = self.index(c.feature)
            updated[i] = updated[i].constrained(c)
        return Domains(tuple(updated))

    def make_state(self, values: Mapping[str, Union[str, int]]) -> "State":
        """Build a state from concrete values; numeric values keep their witness."""
        idx = []
        reps: list[Optional[int]] = []
        for f in self.features:
            if f.name not in values:
                raise KeyError(f"missing value for feature {f.name!r}")
            v = values[f.name]
            if f.kind == "categorical":
                idx.append(f.index_of_label(str(v)))
                reps.append(None)
            else:
                x = int(v)
                idx.append(f.interval_index_of(x))
                reps.append(x)
        return State(self, tuple(idx), tuple(reps))


FeatureValue = Union[str, Interval]


@dataclass(frozen=True)
class State:
    """One value per feature.

    Internally a tuple of value indices (the interval index for numeric
    features), so equality and hashing follow the interval abstraction: two
    numeric values in the same interval are the same state, whatever concrete
    witness each carries.  Witnesses (``reps``) exist only for display.
    """

    domains: Domains = field(compare=False, repr=False)
    idx: tuple[int, ...] = ()
    reps: tuple[Optional[int], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if len(self.idx) != len(self.domains):
            raise ValueError("state arity does not match the declared features")
        if not self.reps:
            object.__setattr__(self, "reps", (None,) * len(self.idx))
        elif len(self.reps) != len(self.idx):
            raise ValueError("witness arity does not match the declared features")
        for f, i in zip(self.domains, self.idx):
            if not 0 <= i < f.size:
                raise ValueError(f"{f.name}: value index {i} out of range")

    def value(self, name: str) -> FeatureValue:
        i = self.domains.index(name)
        f = self.domains[i]
        if f.kind == "categorical":
            return f.labels[self.idx[i]]
        return f.intervals[self.idx[i]]

    def rep(self, name: str) -> Optional[int]:
        return self.reps[self.domains.index(name)]

    def display(self, name: str) -> str:
        """Rendering for path tables: concrete witness when known, else the interval."""
        i = self.domains.index(name)
        f = self.domains[i]
        if f.kind == "categorical":
            return f.labels[self.idx[i]]
        r = self.reps[i]
        return str(r) if r is not None else f.intervals[self.idx[i]].describe()

    def with_value(self, feature_index: int, new_index: int,
                   rep: Optional[int] = None) -> "State":
        idx = list(self.idx)
        reps = list(self.reps)
        idx[feature_index] = new_index
        reps[feature_index] = rep
        return State(self.domains, tuple(idx), tuple(reps))

    def items(self) -> Iterator[tuple[str, str]]:
        for f, i in zip(self.domains, self.idx):
            yield f.name, f.value_text(i)

    def to_dict(self) -> dict:
        """JSON-ready mapping; numeric entries keep enough to rebuild the state."""
        out: dict = {}
        for pos, (f, i) in enumerate(zip(self.domains, self.idx)):
            if f.kind == "categorical":
                out[f.name] = f.labels[i]
            else:
                iv = f.intervals[i]
                out[f.name] = {
                    "interval_index": i,
                    "lower": iv.lower,
                    "upper": iv.upper,
                    "lower_open": iv.lower_open,
                    "value": self.reps[pos],
                }
        return out

    @classmethod
    def from_dict(cls, domains: Domains, data: Mapping) -> "State":
        idx = []
        reps: list[Optional[int]] = []
        for f in domains:
            if f.name not in data:
                raise KeyError(f"missing feature {f.name!r}")
            v = data[f.name]
            if f.kind == "categorical":
                idx.append(f.index_of_label(str(v)))
                reps.append(None)
            else:
                idx.append(int(v["interval_index"]))
                reps.append(v.get("value"))
        return cls(domains, tuple(idx), tuple(reps))
