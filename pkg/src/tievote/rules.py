"""Winner determination: positional scoring with tie extensions, Copeland.

All scores are exact rationals (:class:`fractions.Fraction`); decisions in the
solvers hinge on exact ties, so floating point is never used.

For a ranked order written as groups G_1 > ... > G_r over m candidates, with
k_i the number of candidates strictly above group i, a scoring vector
s_1 >= ... >= s_m is extended to tied groups four ways:

* min:        every member of G_i scores s_{k_i + |G_i|}
* max:        every member scores s_{k_i + 1}
* round-down: every member scores s_{m - r + i}
* average:    every member scores mean(s_{k_i + 1} ... s_{k_i + |G_i|})

On total orders all four agree with plain positional scoring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .orders import IrrationalOrderError, Order, WeightedProfile


class ScoringExtension(Enum):
    MIN = "min"
    MAX = "max"
    ROUND_DOWN = "round-down"
    AVERAGE = "average"


class WinnerModel(Enum):
    NONUNIQUE = "nonunique"
    UNIQUE = "unique"


@dataclass(frozen=True)
class Rule:
    """A voting rule: a scoring vector plus extension, or Copeland^alpha.

    ``winner_model`` selects between the nonunique model (the winner set is
    the argmax) and the unique model (the winner set is the strict argmax,
    empty when none exists), so "p wins" is a membership test in both.
    """

    kind: str  # "scoring" | "copeland"
    vector: tuple = None
    extension: ScoringExtension = None
    alpha: Fraction = None
    winner_model: WinnerModel = WinnerModel.NONUNIQUE

    def __post_init__(self):
        if self.kind == "scoring":
            vec = tuple(Fraction(s) for s in self.vector)
            if not vec:
                raise ValueError("scoring vector must be nonempty")
            if any(s < 0 for s in vec):
                raise ValueError("scoring vector entries must be nonnegative")
            if any(a < b for a, b in zip(vec, vec[1:])):
                raise ValueError("scoring vector must be nonincreasing")
            if not isinstance(self.extension, ScoringExtension):
                raise ValueError("scoring rules need a ScoringExtension")
            object.__setattr__(self, "vector", vec)
        elif self.kind == "copeland":
            alpha = Fraction(self.alpha)
            if not 0 <= alpha <= 1:
                raise ValueError(f"alpha must lie in [0,1], got {alpha}")
            object.__setattr__(self, "alpha", alpha)
        else:
            raise ValueError(f"unknown rule kind {self.kind!r}")

    @classmethod
    def scoring(cls, vector, extension, winner_model=WinnerModel.NONUNIQUE) -> "Rule":
        return cls("scoring", vector=tuple(vector), extension=extension, winner_model=winner_model)

    @classmethod
    def borda(cls, m: int, extension, winner_model=WinnerModel.NONUNIQUE) -> "Rule":
        return cls.scoring(range(m - 1, -1, -1), extension, winner_model)

    @classmethod
    def plurality(cls, m: int, extension, winner_model=WinnerModel.NONUNIQUE) -> "Rule":
        return cls.scoring([1] + [0] * (m - 1), extension, winner_model)

    @classmethod
    def t_approval(cls, m: int, t: int, extension, winner_model=WinnerModel.NONUNIQUE) -> "Rule":
        if not 1 <= t <= m:
            raise ValueError(f"t must lie in 1..{m}, got {t}")
        return cls.scoring([1] * t + [0] * (m - t), extension, winner_model)

    @classmethod
    def copeland(cls, alpha, winner_model=WinnerModel.NONUNIQUE) -> "Rule":
        return cls("copeland", alpha=Fraction(alpha), winner_model=winner_model)


# A ScoreTable is a plain dict: candidate -> Fraction.


def positional_scores(order: Order, vector, extension: ScoringExtension) -> dict:
    """Per-candidate scores of one ranked order under the chosen extension."""
    if not order.is_ranked:
        raise IrrationalOrderError("positional scoring is undefined for irrational votes")
    vec = tuple(Fraction(s) for s in vector)
    m = len(order.candidates)
    if len(vec) != m:
        raise ValueError(f"vector length {len(vec)} != candidate count {m}")
    r = len(order.groups)
    scores = {}
    k = 0
    for i, group in enumerate(order.groups, start=1):
        size = len(group)
        if extension is ScoringExtension.MIN:
            s = vec[k + size - 1]
        elif extension is ScoringExtension.MAX:
            s = vec[k]
        elif extension is ScoringExtension.ROUND_DOWN:
            s = vec[m - r + i - 1]
        elif extension is ScoringExtension.AVERAGE:
            s = Fraction(sum(vec[k : k + size]), size)
        else:
            raise ValueError(f"unknown extension {extension!r}")
        for c in group:
            scores[c] = s
        k += size
    return scores


def profile_scores(profile: WeightedProfile, vector, extension: ScoringExtension) -> dict:
    """Weight-multiplied positional scores summed over all voters."""
    totals = {c: Fraction(0) for c in profile.candidates}
    for order, weight in profile.voters:
        for c, s in positional_scores(order, vector, extension).items():
            totals[c] += weight * s
    return totals


def _argmax(scores: dict, winner_model: WinnerModel) -> frozenset:
    if not scores:
        return frozenset()
    best = max(scores.values())
    top = frozenset(c for c, s in scores.items() if s == best)
    if winner_model is WinnerModel.UNIQUE and len(top) != 1:
        return frozenset()
    return top


def scoring_winners(profile: WeightedProfile, rule: Rule) -> frozenset:
    """Winner set under a scoring rule; empty under the unique model when tied."""
    if rule.kind != "scoring":
        raise ValueError("scoring_winners needs a scoring rule")
    return _argmax(profile_scores(profile, rule.vector, rule.extension), rule.winner_model)


class MajorityGraph:
    """Weighted pairwise-margin digraph induced by a profile.

    margin(a, b) is the total weight preferring a over b minus the total
    weight preferring b over a; the edge a -> b is present iff the margin is
    positive. The edge set is derived from margins, never stored.
    """

    __slots__ = ("candidates", "_margins")

    def __init__(self, candidates, margins):
        self.candidates = tuple(sorted(candidates))
        self._margins = margins  # {(x, y): int} with x < y, margin of x over y

    def margin(self, a: str, b: str) -> int:
        if a == b:
            return 0
        return self._margins[(a, b)] if a < b else -self._margins[(b, a)]

    @property
    def edges(self) -> frozenset:
        out = set()
        for (x, y), m in self._margins.items():
            if m > 0:
                out.add((x, y))
            elif m < 0:
                out.add((y, x))
        return frozenset(out)

    def __eq__(self, other):
        return (
            isinstance(other, MajorityGraph)
            and self.candidates == other.candidates
            and self._margins == other._margins
        )

    def __hash__(self):
        return hash((self.candidates, tuple(sorted(self._margins.items()))))

    def __repr__(self):
        edges = ", ".join(f"{a}->{b}({self.margin(a, b)})" for a, b in sorted(self.edges))
        return f"MajorityGraph({edges})"


def induced_majority_graph(profile: WeightedProfile) -> MajorityGraph:
    """Pairwise margins of a profile; irrational votes participate pair by pair."""
    margins = {pair: 0 for pair in itertools.combinations(profile.candidates, 2)}
    for order, weight in profile.voters:
        for pair in margins:
            margins[pair] += weight * order.prefers(*pair)
    return MajorityGraph(profile.candidates, margins)


def copeland_scores_from_graph(graph: MajorityGraph, alpha) -> dict:
    """One point per pairwise win, alpha per pairwise tie."""
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0,1], got {alpha}")
    scores = {c: Fraction(0) for c in graph.candidates}
    for x, y in itertools.combinations(graph.candidates, 2):
        m = graph.margin(x, y)
        if m > 0:
            scores[x] += 1
        elif m < 0:
            scores[y] += 1
        else:
            scores[x] += alpha
            scores[y] += alpha
    return scores


def copeland_scores(profile: WeightedProfile, alpha) -> dict:
    return copeland_scores_from_graph(induced_majority_graph(profile), alpha)


def approval_scores(candidates, ballots) -> dict:
    """Approval tally: ballots are (approved candidate set, weight) pairs."""
    cands = tuple(sorted(set(candidates)))
    scores = {c: Fraction(0) for c in cands}
    for approved, weight in ballots:
        for c in approved:
            if c not in scores:
                raise ValueError(f"approved candidate {c!r} outside the candidate set")
            scores[c] += weight
    return scores


def winners(profile: WeightedProfile, rule: Rule) -> frozenset:
    """Winner set under either rule family, respecting the rule's winner model."""
    if rule.kind == "scoring":
        return scoring_winners(profile, rule)
    return _argmax(copeland_scores(profile, rule.alpha), rule.winner_model)


def is_winner(profile: WeightedProfile, rule: Rule, candidate: str) -> bool:
    return candidate in winners(profile, rule)


def format_score_table(scores: dict) -> str:
    """Candidate-sorted lines with exact rationals rendered p/q."""
    return "\n".join(f"{c}: {scores[c]}" for c in sorted(scores)) + "\n"
