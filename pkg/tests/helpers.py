"""Seeded random generators shared by the unit and acceptance tests."""

from __future__ import annotations

import string

from tievote import (
    ManipulationInstance,
    Order,
    OrderKind,
    Rule,
    ScoringExtension,
    VoteDomain,
    WeightedProfile,
    WinnerModel,
)


def candidate_names(m: int, preferred: str = "p") -> tuple:
    names = [preferred]
    for letter in string.ascii_lowercase:
        if len(names) == m:
            break
        if letter != preferred:
            names.append(letter)
    return tuple(sorted(names))


def random_weak_order(rng, candidates) -> Order:
    cands = sorted(candidates)
    rng.shuffle(cands)
    groups = []
    i = 0
    while i < len(cands):
        size = rng.randint(1, len(cands) - i)
        groups.append(cands[i : i + size])
        i += size
    return Order.ranked(groups)


def random_total_order(rng, candidates) -> Order:
    cands = sorted(candidates)
    rng.shuffle(cands)
    return Order.ranked([[c] for c in cands])


def random_top_order(rng, candidates) -> Order:
    cands = sorted(candidates)
    rng.shuffle(cands)
    cut = rng.randint(0, len(cands) - 1)
    return Order.ranked([[c] for c in cands[:cut]] + [cands[cut:]])


def random_bottom_order(rng, candidates) -> Order:
    cands = sorted(candidates)
    rng.shuffle(cands)
    cut = rng.randint(1, len(cands))
    return Order.ranked([cands[:cut]] + [[c] for c in cands[cut:]])


def random_pairwise_order(rng, candidates) -> Order:
    cands = sorted(candidates)
    relation = {}
    for i, x in enumerate(cands):
        for y in cands[i + 1 :]:
            relation[(x, y)] = rng.choice((-1, 0, 1))
    return Order.pairwise(cands, relation)


_KIND_MAKERS = {
    OrderKind.TOTAL: random_total_order,
    OrderKind.TOP: random_top_order,
    OrderKind.BOTTOM: random_bottom_order,
    OrderKind.WEAK: random_weak_order,
    OrderKind.IRRATIONAL: random_pairwise_order,
}


def random_order(rng, candidates, kind: OrderKind) -> Order:
    return _KIND_MAKERS[kind](rng, candidates)


def random_profile(
    rng,
    candidates,
    max_voters: int = 3,
    max_weight: int = 6,
    kind: OrderKind = OrderKind.WEAK,
    allow_empty: bool = True,
) -> WeightedProfile:
    n = rng.randint(0 if allow_empty else 1, max_voters)
    voters = [
        (random_order(rng, candidates, kind), rng.randint(1, max_weight)) for _ in range(n)
    ]
    return WeightedProfile(candidates, voters)


def random_nonincreasing_vector(rng, m: int, max_value: int = 6) -> tuple:
    return tuple(sorted((rng.randint(0, max_value) for _ in range(m)), reverse=True))


def random_min_manipulation_instance(rng, max_candidates=4, max_manipulators=3, max_weight=6):
    """Scoring instance under the min extension, domain admitting p-first-rest-tied."""
    m = rng.randint(2, max_candidates)
    cands = candidate_names(m)
    kind = rng.choice((OrderKind.TOP, OrderKind.WEAK))
    vector = random_nonincreasing_vector(rng, m)
    model = rng.choice((WinnerModel.NONUNIQUE, WinnerModel.UNIQUE))
    rule = Rule.scoring(vector, ScoringExtension.MIN, model)
    profile = random_profile(rng, cands, kind=kind, max_weight=max_weight)
    weights = tuple(rng.randint(1, max_weight) for _ in range(rng.randint(0, max_manipulators)))
    return ManipulationInstance(cands, profile, weights, "p", rule, VoteDomain(kind=kind))


def random_llull_instance(rng, max_candidates=4, max_manipulators=2, max_weight=6):
    """Copeland^1 instance with irrational manipulators (and some irrational voters)."""
    m = rng.randint(2, max_candidates)
    cands = candidate_names(m)
    model = rng.choice((WinnerModel.NONUNIQUE, WinnerModel.UNIQUE))
    voters = []
    for _ in range(rng.randint(0, 3)):
        kind = rng.choice((OrderKind.WEAK, OrderKind.IRRATIONAL))
        voters.append((random_order(rng, cands, kind), rng.randint(1, max_weight)))
    profile = WeightedProfile(cands, voters)
    weights = tuple(rng.randint(1, max_weight) for _ in range(rng.randint(0, max_manipulators)))
    rule = Rule.copeland(1, model)
    return ManipulationInstance(cands, profile, weights, "p", rule, VoteDomain(irrational=True))


def random_copeland_p_instance(rng, max_manipulators=6, max_weight=8):
    """3-candidate Copeland instance inside the stated polynomial regimes."""
    cands = candidate_names(3)
    if rng.random() < 0.5:
        alpha, model = 1, WinnerModel.NONUNIQUE
    else:
        alpha = rng.choice(("1/4", "1/2", "3/4", "1"))
        model = WinnerModel.UNIQUE
    kind = rng.choice((OrderKind.TOP, OrderKind.BOTTOM, OrderKind.WEAK))
    rule = Rule.copeland(alpha, model)
    profile = random_profile(rng, cands, max_voters=3, max_weight=max_weight, kind=OrderKind.WEAK)
    weights = tuple(rng.randint(1, max_weight) for _ in range(rng.randint(0, max_manipulators)))
    return ManipulationInstance(cands, profile, weights, "p", rule, VoteDomain(kind=kind))


def random_3cand_instance(rng, max_manipulators=3, max_weight=4, allow_axis=True):
    """3-candidate instance mixing rules, extensions, domains, and axes."""
    from tievote import enumerate_single_peaked_votes

    cands = candidate_names(3)
    model = rng.choice((WinnerModel.NONUNIQUE, WinnerModel.UNIQUE))
    if rng.random() < 0.5:
        ext = rng.choice(tuple(ScoringExtension))
        rule = Rule.scoring(random_nonincreasing_vector(rng, 3), ext, model)
    else:
        rule = Rule.copeland(rng.choice(("0", "1/4", "1/2", "1")), model)
    kind = rng.choice((OrderKind.TOTAL, OrderKind.TOP, OrderKind.BOTTOM, OrderKind.WEAK))
    axis = None
    if allow_axis and kind in (OrderKind.TOTAL, OrderKind.TOP, OrderKind.WEAK) and rng.random() < 0.4:
        axis = ("a", "p", "b")
        allowed = enumerate_single_peaked_votes(axis, OrderKind.WEAK)
        voters = [
            (rng.choice(allowed), rng.randint(1, max_weight))
            for _ in range(rng.randint(0, 3))
        ]
        profile = WeightedProfile(cands, voters)
    else:
        profile = random_profile(rng, cands, max_voters=3, max_weight=max_weight)
    weights = tuple(rng.randint(1, max_weight) for _ in range(rng.randint(0, max_manipulators)))
    return ManipulationInstance(cands, profile, weights, "p", rule, VoteDomain(kind=kind, axis=axis))


def random_control_instance(rng, max_candidates=4, max_unregistered=5, max_weight=4):
    from tievote import ControlAVInstance

    m = rng.randint(2, max_candidates)
    cands = candidate_names(m)
    model = rng.choice((WinnerModel.NONUNIQUE, WinnerModel.UNIQUE))
    if rng.random() < 0.5:
        ext = rng.choice(tuple(ScoringExtension))
        rule = Rule.scoring(random_nonincreasing_vector(rng, m), ext, model)
    else:
        rule = Rule.copeland(rng.choice(("0", "1/2", "1")), model)
    registered = random_profile(rng, cands, max_voters=3, max_weight=max_weight)
    unregistered = random_profile(rng, cands, max_voters=max_unregistered, max_weight=max_weight)
    limit = rng.randint(0, len(unregistered.voters))
    return ControlAVInstance(cands, registered, unregistered, "p", limit, rule)


def random_t_approval_bribery_instance(rng, max_candidates=4, max_voters=5, max_bribes=2, max_weight=9):
    from tievote import BriberyInstance

    m = rng.randint(3, max_candidates)
    cands = candidate_names(m)
    kind = rng.choice((OrderKind.TOP, OrderKind.WEAK))
    model = rng.choice((WinnerModel.NONUNIQUE, WinnerModel.UNIQUE))
    rule = Rule.t_approval(m, 2, ScoringExtension.MIN, model)
    profile = random_profile(rng, cands, max_voters=max_voters, max_weight=max_weight, kind=kind)
    limit = rng.randint(0, min(max_bribes, len(profile.voters)))
    return BriberyInstance(cands, profile, "p", limit, rule, VoteDomain(kind=kind))
