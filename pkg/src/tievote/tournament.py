"""Realize a two-voter majority graph with total orders.

Any majority graph induced by two weak orders is also induced by two total
orders: copy each voter's strict preferences; where exactly one voter is
indifferent, that voter adopts the other's direction (preserving the edge);
where both are indifferent, the first voter takes the lexicographically
smaller candidate first and the second the reverse (cancelling out).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .orders import Order, WeightedProfile
from .rules import induced_majority_graph


class RealizationError(RuntimeError):
    """The assembled pairwise relation was not a total order; realization guarantee broken."""


@dataclass(frozen=True)
class OrderPair:
    """Two weak orders over a common candidate set."""

    first: Order
    second: Order

    def __post_init__(self):
        if self.first.candidates != self.second.candidates:
            raise ValueError("orders must share one candidate set")
        for order in (self.first, self.second):
            if not order.is_ranked:
                raise ValueError("both orders must be weak orders")

    @property
    def candidates(self) -> tuple:
        return self.first.candidates

    def majority_graph(self):
        profile = WeightedProfile(self.candidates, [(self.first, 1), (self.second, 1)])
        return induced_majority_graph(profile)


def _totalize(rel: dict, candidates) -> Order:
    """Assemble a strict pairwise relation into a total order, or fail loudly."""
    wins = dict.fromkeys(candidates, 0)
    for (x, y), v in rel.items():
        wins[x if v > 0 else y] += 1
    ranking = sorted(candidates, key=lambda c: (-wins[c], c))
    # A strict relation is transitive iff its win counts are all distinct and
    # every pair agrees with the win-count ranking.
    if sorted(wins.values()) != list(range(len(candidates))):
        raise RealizationError(f"cyclic relation: win counts {wins}")
    pos = {c: i for i, c in enumerate(ranking)}
    for (x, y), v in rel.items():
        if (v > 0) != (pos[x] < pos[y]):
            raise RealizationError(f"relation disagrees with its win-count ranking on ({x}, {y})")
    return Order.ranked([[c] for c in ranking])


def realize_two_total_orders(pair: OrderPair) -> OrderPair:
    """Total orders inducing the same majority graph as the given weak orders."""
    candidates = pair.candidates
    rels = ({}, {})
    for x, y in itertools.combinations(candidates, 2):
        prefs = (pair.first.prefers(x, y), pair.second.prefers(x, y))
        for i in (0, 1):
            if prefs[i] != 0:
                rels[i][(x, y)] = prefs[i]  # rule 1: copy strict preferences
        if prefs[0] == 0 and prefs[1] != 0:
            rels[0][(x, y)] = prefs[1]  # rule 2: preserve the edge
        elif prefs[1] == 0 and prefs[0] != 0:
            rels[1][(x, y)] = prefs[0]
        elif prefs == (0, 0):
            rels[0][(x, y)] = 1  # rule 3: opposite lexicographic split
            rels[1][(x, y)] = -1
    realized = OrderPair(_totalize(rels[0], candidates), _totalize(rels[1], candidates))
    before = pair.majority_graph().edges
    after = realized.majority_graph().edges
    if before != after:
        raise RealizationError(f"edge sets differ: {sorted(before)} vs {sorted(after)}")
    return realized
