"""Agree/disjoint combinatorics of sections over boundary divisors.

Sections are indexed by subsets ``I`` of ``{1, ..., n-1}`` with
``1 <= |I| <= n-4`` and ordered by ``(|I|, sorted I)``.  Two divisors meet iff
their index sets are nested or cover ``{1, ..., n-1}``; nested pairs carry
agreeing sections, covering pairs ``I = A+B``, ``J = A+C`` carry sections
that are disjoint except over the triple loci of the nonempty subsets of
``A``.  Each elementary transformation consumes the first remaining section
and removes it from every such exceptional set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


class BoundaryError(ValueError):
    pass


@dataclass(frozen=True)
class IndexSet:
    n: int
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.members <= set(range(1, self.n)):
            raise BoundaryError(f"{sorted(self.members)} is not a subset of 1..{self.n - 1}")
        if not 1 <= len(self.members) <= self.n - 4:
            raise BoundaryError(f"|I| = {len(self.members)} is outside 1..{self.n - 4}")

    def key(self):
        return (len(self.members), tuple(sorted(self.members)))

    def __str__(self):
        return "{" + ",".join(map(str, sorted(self.members))) + "}"


def index_set(n: int, members: Iterable[int]) -> IndexSet:
    return IndexSet(n, frozenset(members))


@dataclass(frozen=True)
class PairClass:
    kind: str  # "nested", "complementary" or "none"
    A: frozenset = frozenset()
    B: frozenset = frozenset()
    C: frozenset = frozenset()


def classify_pair(I: IndexSet, J: IndexSet) -> PairClass:
    if I.n != J.n:
        raise BoundaryError("index sets for different n")
    if I.members == J.members:
        raise BoundaryError("a pair needs two different index sets")
    i, j = I.members, J.members
    if i <= j or j <= i:
        return PairClass("nested")
    if i | j == frozenset(range(1, I.n)):
        return PairClass("complementary", i & j, i - j, j - i)
    return PairClass("none")


def all_index_sets(n: int) -> list[IndexSet]:
    """Every index set, in increasing size and lexicographically within a size."""
    if n < 5:
        raise BoundaryError("n must be at least 5")
    return [IndexSet(n, frozenset(c)) for size in range(1, n - 3) for c in combinations(range(1, n), size)]


def _nonempty_subsets(s: frozenset) -> list[frozenset]:
    items = sorted(s)
    return [frozenset(c) for k in range(1, len(items) + 1) for c in combinations(items, k)]


@dataclass
class CompatState:
    """Active sections (as positions in ``order``) and the pair relation.

    ``relation[(p, q)]`` with ``p < q`` is ``"agree"`` or the set of positions
    ``k`` over whose triple locus the two disjoint sections still agree.
    Pairs whose divisors do not meet are absent.
    """

    n: int
    order: list[IndexSet]
    relation: dict
    start: int = 0

    @classmethod
    def initial(cls, n: int, order: Sequence[IndexSet] | None = None) -> "CompatState":
        sections = all_index_sets(n)
        if order is None:
            order = sections
        else:
            order = list(order)
            if sorted(s.key() for s in order) != [s.key() for s in sections]:
                raise BoundaryError("order is not a permutation of the index sets")
        pos = {s.members: k for k, s in enumerate(order)}
        relation = {}
        for p, q in combinations(range(len(order)), 2):
            pc = classify_pair(order[p], order[q])
            if pc.kind == "nested":
                relation[(p, q)] = "agree"
            elif pc.kind == "complementary":
                relation[(p, q)] = frozenset(pos[k] for k in _nonempty_subsets(pc.A))
        return cls(n, list(order), relation)

    @property
    def active(self) -> range:
        return range(self.start, len(self.order))

    def meets(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.relation

    def rel(self, p: int, q: int):
        return self.relation.get((min(p, q), max(p, q)))

    def names(self, *positions) -> list[str]:
        return [str(self.order[p]) for p in positions]


def check_conditions(state: CompatState) -> dict | None:
    """First violation of the two compatibility conditions among active sections, or None."""
    first = state.start
    disjoint_adj: dict[int, set[int]] = {}
    for (p, q), r in state.relation.items():
        if p < first or q < first:
            continue
        if r == "agree":
            continue
        disjoint_adj.setdefault(p, set()).add(q)
        disjoint_adj.setdefault(q, set()).add(p)
        # the exceptional set: earlier active sections agreeing with both
        for k in sorted(r):
            if not (first <= k < p):
                return {"condition": 1, "pair": state.names(p, q), "k": state.names(k)[0],
                        "reason": "exceptional index does not precede the pair"}
            if state.rel(k, p) != "agree" or state.rel(k, q) != "agree":
                return {"condition": 1, "pair": state.names(p, q), "k": state.names(k)[0],
                        "reason": "exceptional section does not agree with both"}
        pc = classify_pair(state.order[p], state.order[q])
        # L_I and L_J span complementary points, so they meet in dimension |A|
        overlap = len(state.order[p].members) + len(state.order[q].members) - 2 - (state.n - 3)
        if overlap != len(pc.A):
            return {"condition": 1, "pair": state.names(p, q), "reason": "overlap dimension mismatch"}
    # condition (2): a meeting triple with no agreeing pair is a triangle of disjoint pairs
    for p, nbrs in disjoint_adj.items():
        for q in nbrs:
            if q <= p:
                continue
            for k in nbrs & disjoint_adj.get(q, set()):
                if k > q:
                    return {"condition": 2, "triple": state.names(p, q, k),
                            "reason": "three meeting divisors with pairwise disjoint sections"}
    return None


@dataclass
class CompatReport:
    n: int
    sections: int
    meeting_pairs: int
    complementary_pairs: int
    nonempty_k_pairs: int
    counterexample: dict | None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self):
        out = {"n": self.n, "sections": self.sections, "meeting_pairs": self.meeting_pairs,
               "complementary_pairs": self.complementary_pairs,
               "nonempty_k_pairs": self.nonempty_k_pairs, "passed": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def compatible_system_check(n: int, order: Sequence[IndexSet] | None = None) -> CompatReport:
    state = CompatState.initial(n, order)
    disjoint = [r for r in state.relation.values() if r != "agree"]
    return CompatReport(
        n=n,
        sections=len(state.order),
        meeting_pairs=len(state.relation),
        complementary_pairs=len(disjoint),
        nonempty_k_pairs=sum(1 for r in disjoint if r),
        counterexample=check_conditions(state),
    )


@dataclass
class TransformStep:
    step: int
    section: str
    removals: int
    remaining: int
    invariant_ok: bool

    def to_json(self):
        return {"step": self.step, "section": self.section, "removals": self.removals,
                "remaining": self.remaining, "invariant_ok": self.invariant_ok}


@dataclass
class TransformReport:
    n: int
    steps: list[TransformStep] = field(default_factory=list)
    removal_events: list = field(default_factory=list)
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None and all(s.invariant_ok for s in self.steps)

    def to_json(self):
        out = {"n": self.n, "steps": len(self.steps), "removal_events": len(self.removal_events),
               "first_removal": self.removal_events[0] if self.removal_events else None,
               "passed": self.passed, "trace": [s.to_json() for s in self.steps]}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def elementary_transformation(state: CompatState) -> tuple[CompatState, list, dict | None]:
    """Consume the first active section.

    Returns the new state, the removal events (pairs whose exceptional set
    contained the consumed section) and a violation if the consumed section
    neither agrees with nor is disjoint from some section it meets.
    """
    s = state.start
    violation = None
    for q in range(s + 1, len(state.order)):
        r = state.rel(s, q)
        if r is not None and r != "agree" and r:
            # agreement over a triple locus needs an earlier active section
            violation = {"condition": "section", "pair": state.names(s, q),
                         "reason": "first section meets another in a proper sublocus"}
            break
    relation = {}
    events = []
    for (p, q), r in state.relation.items():
        if r != "agree" and s in r:
            events.append(state.names(p, q) + state.names(s))
            r = r - {s}
        relation[(p, q)] = r
    return CompatState(state.n, state.order, relation, s + 1), events, violation


def transform_sequence(n: int, order: Sequence[IndexSet] | None = None) -> TransformReport:
    pre = compatible_system_check(n, order)
    if not pre.passed:
        raise BoundaryError(f"not a compatible system: {pre.counterexample}")
    state = CompatState.initial(n, order)
    report = TransformReport(n)
    for step in range(1, len(state.order) + 1):
        name = str(state.order[state.start])
        state, events, violation = elementary_transformation(state)
        bad = violation or check_conditions(state)
        report.removal_events.extend(events)
        report.steps.append(TransformStep(step, name, len(events), len(state.active), bad is None))
        if bad is not None:
            report.counterexample = {"step": step, **bad}
            break
    return report


__all__ = [
    "BoundaryError",
    "CompatReport",
    "CompatState",
    "IndexSet",
    "PairClass",
    "TransformReport",
    "TransformStep",
    "all_index_sets",
    "check_conditions",
    "classify_pair",
    "compatible_system_check",
    "elementary_transformation",
    "index_set",
    "transform_sequence",
]
