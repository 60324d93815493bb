"""Exact decision procedures for manipulation, control, and bribery.

Three weighted decision problems over a preferred candidate p:

* CWCM (constructive coalitional weighted manipulation): can the manipulator
  coalition cast votes from its domain so that p wins?
* CCAV (constructive control by adding voters): can the chair register at
  most k unregistered voters so that p wins?
* Bribery: can changing the orders (never the weights) of at most k voters
  make p win?

Each problem has a brute-force oracle plus the polynomial or
pseudo-polynomial algorithms that apply to special regimes; the fast paths
are tested against the oracles. Search orders are deterministic
(lexicographic over the vote enumerations), so witnesses are reproducible.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .orders import (
    CapExceededError,
    Order,
    OrderKind,
    ParseError,
    WeightedProfile,
    check_axis,
    enumerate_orders,
    enumerate_pairwise_relations,
    format_order,
    is_single_peaked_lackner,
    order_single_peaked,
    parse_order,
    satisfies_kind,
)
from .rules import (
    Rule,
    ScoringExtension,
    WinnerModel,
    induced_majority_graph,
    is_winner,
    positional_scores,
    profile_scores,
)


class UnsupportedRegimeError(ValueError):
    """The selected algorithm does not cover this rule/domain parameterization."""


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VoteDomain:
    """Votes a strategic voter may cast.

    ``kind`` admits orders hierarchy-wise (a total order is also a top order,
    etc.). ``axis`` additionally restricts to single-peaked orders. When
    ``irrational`` is set every pairwise relation is admissible and ``kind``
    is irrelevant.
    """

    kind: OrderKind = OrderKind.WEAK
    axis: tuple = None
    irrational: bool = False

    def __post_init__(self):
        if self.axis is not None:
            if self.irrational:
                raise ValueError("single-peaked domains cannot allow irrational votes")
            object.__setattr__(self, "axis", tuple(self.axis))

    def admits(self, order: Order) -> bool:
        if self.irrational:
            return True
        if not order.is_ranked or not satisfies_kind(order, self.kind):
            return False
        return self.axis is None or order_single_peaked(order, self.axis)


def domain_votes(candidates, domain: VoteDomain, max_candidates: int = 6) -> list:
    """Deterministically ordered list of every vote the domain admits."""
    if domain.irrational:
        return enumerate_pairwise_relations(candidates, max_candidates=min(max_candidates, 4))
    votes = enumerate_orders(candidates, domain.kind, max_candidates=max_candidates)
    if domain.axis is not None:
        axis = check_axis(domain.axis, candidates)
        votes = [o for o in votes if order_single_peaked(o, axis)]
    return votes


def _check_scoring_rule(rule: Rule, m: int):
    if rule.kind == "scoring" and len(rule.vector) != m:
        raise ValueError(f"scoring vector length {len(rule.vector)} != candidate count {m}")


@dataclass(frozen=True)
class ManipulationInstance:
    candidates: tuple
    nonmanipulators: WeightedProfile
    manipulator_weights: tuple
    preferred: str
    rule: Rule
    domain: VoteDomain = VoteDomain()

    def __post_init__(self):
        cands = tuple(sorted(set(self.candidates)))
        object.__setattr__(self, "candidates", cands)
        object.__setattr__(self, "manipulator_weights", tuple(self.manipulator_weights))
        if self.preferred not in cands:
            raise ValueError(f"preferred candidate {self.preferred!r} not in the candidate set")
        if self.nonmanipulators.candidates != cands:
            raise ValueError("nonmanipulator profile is over a different candidate set")
        for w in self.manipulator_weights:
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"manipulator weights must be positive integers, got {w!r}")
        _check_scoring_rule(self.rule, len(cands))
        if self.domain.axis is not None:
            axis = check_axis(self.domain.axis, cands)
            if not is_single_peaked_lackner(self.nonmanipulators, axis):
                raise ValueError("nonmanipulators are not single-peaked along the given axis")


@dataclass(frozen=True)
class ControlAVInstance:
    candidates: tuple
    registered: WeightedProfile
    unregistered: WeightedProfile
    preferred: str
    add_limit: int
    rule: Rule

    def __post_init__(self):
        cands = tuple(sorted(set(self.candidates)))
        object.__setattr__(self, "candidates", cands)
        if self.preferred not in cands:
            raise ValueError(f"preferred candidate {self.preferred!r} not in the candidate set")
        for profile in (self.registered, self.unregistered):
            if profile.candidates != cands:
                raise ValueError("profile is over a different candidate set")
        if not 0 <= self.add_limit <= len(self.unregistered.voters):
            raise ValueError("add limit must lie between 0 and the number of unregistered voters")
        _check_scoring_rule(self.rule, len(cands))


@dataclass(frozen=True)
class BriberyInstance:
    candidates: tuple
    voters: WeightedProfile
    preferred: str
    bribe_limit: int
    rule: Rule
    domain: VoteDomain = VoteDomain()

    def __post_init__(self):
        cands = tuple(sorted(set(self.candidates)))
        object.__setattr__(self, "candidates", cands)
        if self.preferred not in cands:
            raise ValueError(f"preferred candidate {self.preferred!r} not in the candidate set")
        if self.voters.candidates != cands:
            raise ValueError("voter profile is over a different candidate set")
        if not 0 <= self.bribe_limit <= len(self.voters.voters):
            raise ValueError("bribe limit must lie between 0 and the number of voters")
        _check_scoring_rule(self.rule, len(cands))


@dataclass(frozen=True)
class Decision:
    """YES/NO answer plus a replayable witness when the answer is YES.

    Witness shapes: manipulation -> one Order per manipulator; control ->
    indices into the unregistered voter list; bribery -> (voter index,
    replacement Order) pairs.
    """

    answer: bool
    witness: tuple = None


# ---------------------------------------------------------------------------
# Witness replay
# ---------------------------------------------------------------------------


def manipulation_outcome(inst: ManipulationInstance, votes) -> WeightedProfile:
    voters = list(inst.nonmanipulators.voters)
    voters.extend(zip(votes, inst.manipulator_weights))
    return WeightedProfile(inst.candidates, voters)


def replay_manipulation(inst: ManipulationInstance, witness) -> bool:
    votes = tuple(witness)
    if len(votes) != len(inst.manipulator_weights):
        return False
    for vote in votes:
        if vote.candidates != inst.candidates or not inst.domain.admits(vote):
            return False
    return is_winner(manipulation_outcome(inst, votes), inst.rule, inst.preferred)


def control_outcome(inst: ControlAVInstance, indices) -> WeightedProfile:
    voters = list(inst.registered.voters)
    voters.extend(inst.unregistered.voters[i] for i in indices)
    return WeightedProfile(inst.candidates, voters)


def replay_control(inst: ControlAVInstance, witness) -> bool:
    indices = tuple(witness)
    n = len(inst.unregistered.voters)
    if len(indices) > inst.add_limit or len(set(indices)) != len(indices):
        return False
    if any(not 0 <= i < n for i in indices):
        return False
    return is_winner(control_outcome(inst, indices), inst.rule, inst.preferred)


def bribery_outcome(inst: BriberyInstance, changes) -> WeightedProfile:
    voters = list(inst.voters.voters)
    for i, order in changes:
        voters[i] = (order, voters[i][1])
    return WeightedProfile(inst.candidates, voters)


def replay_bribery(inst: BriberyInstance, witness) -> bool:
    changes = tuple(witness)
    indices = [i for i, _ in changes]
    if len(changes) > inst.bribe_limit or len(set(indices)) != len(indices):
        return False
    for i, order in changes:
        if not 0 <= i < len(inst.voters.voters):
            return False
        if order.candidates != inst.candidates or not inst.domain.admits(order):
            return False
    return is_winner(bribery_outcome(inst, changes), inst.rule, inst.preferred)


# ---------------------------------------------------------------------------
# Shared tally machinery
#
# Both the brute-force search and the dynamic program aggregate per-vote
# contribution vectors: exact rational scores scaled to integers for scoring
# rules, pairwise-margin contributions for Copeland. Winner checks then run
# on small integer tuples.
# ---------------------------------------------------------------------------


def _check_rule_domain(inst):
    if inst.rule.kind == "scoring" and getattr(inst, "domain", None) and inst.domain.irrational:
        raise UnsupportedRegimeError("scoring rules are undefined for irrational votes")


def _scoring_setup(inst: ManipulationInstance, votes):
    cands = inst.candidates
    base = profile_scores(inst.nonmanipulators, inst.rule.vector, inst.rule.extension)
    per_vote = [positional_scores(v, inst.rule.vector, inst.rule.extension) for v in votes]
    denoms = [base[c].denominator for c in cands]
    denoms.extend(t[c].denominator for t in per_vote for c in cands)
    scale = lcm(*denoms)
    base_vec = tuple(int(base[c] * scale) for c in cands)
    unit = [tuple(int(t[c] * scale) for c in cands) for t in per_vote]
    return base_vec, unit


def _copeland_setup(inst: ManipulationInstance, votes):
    pairs = tuple(itertools.combinations(inst.candidates, 2))
    graph = induced_majority_graph(inst.nonmanipulators)
    base = tuple(graph.margin(x, y) for x, y in pairs)
    unit = [tuple(v.prefers(x, y) for x, y in pairs) for v in votes]
    return pairs, base, unit


def _copeland_signs_winner(signs, pairs, cands, p, alpha: Fraction, model: WinnerModel) -> bool:
    num, den = alpha.numerator, alpha.denominator
    score = dict.fromkeys(cands, 0)  # scaled by den
    for (x, y), s in zip(pairs, signs):
        if s > 0:
            score[x] += den
        elif s < 0:
            score[y] += den
        else:
            score[x] += num
            score[y] += num
    best = max(score.values())
    if score[p] != best:
        return False
    return model is WinnerModel.NONUNIQUE or sum(1 for v in score.values() if v == best) == 1


def _make_accept(inst: ManipulationInstance, votes):
    """(base vector, per-unit-weight contribution vectors, acceptance test)."""
    cands, p, model = inst.candidates, inst.preferred, inst.rule.winner_model
    if inst.rule.kind == "scoring":
        base, unit = _scoring_setup(inst, votes)
        p_idx = cands.index(p)

        def accept(vec):
            best = max(vec)
            if vec[p_idx] != best:
                return False
            return model is WinnerModel.NONUNIQUE or vec.count(best) == 1

    else:
        pairs, base, unit = _copeland_setup(inst, votes)
        alpha = inst.rule.alpha
        cache: dict = {}

        def accept(vec):
            key = tuple((m > 0) - (m < 0) for m in vec)
            hit = cache.get(key)
            if hit is None:
                hit = cache[key] = _copeland_signs_winner(key, pairs, cands, p, alpha, model)
            return hit

    return base, unit, accept


# ---------------------------------------------------------------------------
# Manipulation solvers
# ---------------------------------------------------------------------------


def cwcm_exact(
    inst: ManipulationInstance,
    *,
    max_manipulators: int = 6,
    max_candidates: int = 4,
    dp_fallback: bool = True,
) -> Decision:
    """Exhaustive search over all domain vote assignments.

    Beyond the enumeration caps, 3-candidate scoring/Copeland instances fall
    back to the pseudo-polynomial dynamic program; anything else is a
    CapExceededError.
    """
    _check_rule_domain(inst)
    m, k = len(inst.candidates), len(inst.manipulator_weights)
    if m > max_candidates or k > max_manipulators:
        if dp_fallback and m == 3:
            return cwcm_3cand_dp(inst)
        raise CapExceededError(
            f"{m} candidates / {k} manipulators exceed the enumeration caps "
            f"({max_candidates} candidates, {max_manipulators} manipulators)"
        )
    votes = domain_votes(inst.candidates, inst.domain)
    base, unit, accept = _make_accept(inst, votes)
    scaled = [[tuple(w * x for x in u) for u in unit] for w in inst.manipulator_weights]
    chosen = [0] * k

    def search(i, acc):
        if i == k:
            return accept(acc)
        for vi, contrib in enumerate(scaled[i]):
            chosen[i] = vi
            if search(i + 1, tuple(a + c for a, c in zip(acc, contrib))):
                return True
        return False

    if search(0, base):
        return Decision(True, tuple(votes[vi] for vi in chosen))
    return Decision(False, None)


def cwcm_3cand_dp(inst: ManipulationInstance) -> Decision:
    """Reachable-set dynamic program over aggregate manipulator contributions.

    State is the coalition's total contribution vector (exact scaled scores
    for scoring rules, pairwise margins for Copeland); each manipulator in
    turn picks any admissible vote. Pseudo-polynomial in total manipulator
    weight; exactly three candidates.
    """
    if len(inst.candidates) != 3:
        raise UnsupportedRegimeError("the reachable-set dynamic program needs exactly 3 candidates")
    if inst.rule.kind not in ("scoring", "copeland"):
        raise UnsupportedRegimeError(f"unsupported rule kind {inst.rule.kind!r}")
    _check_rule_domain(inst)
    votes = domain_votes(inst.candidates, inst.domain)
    base, unit, accept = _make_accept(inst, votes)
    zero = (0, 0, 0)
    levels = [{zero: None}]
    for w in inst.manipulator_weights:
        contribs = [(w * a, w * b, w * c) for a, b, c in unit]
        nxt = {}
        for state in sorted(levels[-1]):
            sa, sb, sc = state
            for vi, (ca, cb, cc) in enumerate(contribs):
                ns = (sa + ca, sb + cb, sc + cc)
                if ns not in nxt:
                    nxt[ns] = (state, vi)
        levels.append(nxt)
    hit = None
    for state in sorted(levels[-1]):
        if accept(tuple(b + s for b, s in zip(base, state))):
            hit = state
            break
    if hit is None:
        return Decision(False, None)
    picks = []
    state = hit
    for i in range(len(inst.manipulator_weights), 0, -1):
        state, vi = levels[i][state]
        picks.append(vi)
    picks.reverse()
    return Decision(True, tuple(votes[vi] for vi in picks))


def _p_first_rest_tied(candidates, preferred) -> Order:
    rest = [c for c in candidates if c != preferred]
    return Order.ranked([[preferred], rest] if rest else [[preferred]])


def cwcm_min_extension(inst: ManipulationInstance) -> Decision:
    """Polynomial manipulation for the min extension.

    Ranking p first with everyone else tied last gives p the top score and
    every rival the bottom score, so it dominates all other manipulator
    votes; the decision reduces to a single winner check.
    """
    if inst.rule.kind != "scoring" or inst.rule.extension is not ScoringExtension.MIN:
        raise UnsupportedRegimeError("this shortcut applies to the min extension only")
    vote = _p_first_rest_tied(inst.candidates, inst.preferred)
    if not inst.domain.admits(vote):
        raise UnsupportedRegimeError("vote domain does not admit ranking p first, rest tied")
    witness = tuple(vote for _ in inst.manipulator_weights)
    if is_winner(manipulation_outcome(inst, witness), inst.rule, inst.preferred):
        return Decision(True, witness)
    return Decision(False, None)


def copeland_cwcm_regime(alpha, winner_model: WinnerModel) -> str:
    """Known complexity of 3-candidate Copeland manipulation: 'p' or 'np-hard'."""
    alpha = Fraction(alpha)
    if winner_model is WinnerModel.NONUNIQUE:
        return "p" if alpha == 1 else "np-hard"
    return "np-hard" if alpha == 0 else "p"


def cwcm_copeland_3cand_p(inst: ManipulationInstance) -> Decision:
    """Polynomial 3-candidate Copeland manipulation in its tractable regimes.

    Tries the constant family of uniform coalition strategies (p over the
    rest in either strict order, p over the rest tied, everyone tied),
    filtered by the vote domain. Putting p first maximizes p's pairwise
    points while minimizing the rivals', and for these (alpha, winner model)
    pairs one of the uniform rival orientations is always optimal; the
    equivalence against the dynamic program is enforced by tests.
    """
    if inst.rule.kind != "copeland" or len(inst.candidates) != 3:
        raise UnsupportedRegimeError("needs a 3-candidate Copeland rule")
    if copeland_cwcm_regime(inst.rule.alpha, inst.rule.winner_model) != "p":
        raise UnsupportedRegimeError(
            f"alpha={inst.rule.alpha} under the {inst.rule.winner_model.value} winner model "
            "has no known polynomial algorithm"
        )
    if inst.domain.axis is not None:
        raise UnsupportedRegimeError("axis-constrained domains are outside the known polynomial cases")
    p = inst.preferred
    x, y = (c for c in inst.candidates if c != p)
    strategies = (
        Order.ranked([[p], [x], [y]]),
        Order.ranked([[p], [y], [x]]),
        Order.ranked([[p], [x, y]]),
        Order.ranked([[p, x, y]]),
    )
    for vote in strategies:
        if not inst.domain.admits(vote):
            continue
        witness = tuple(vote for _ in inst.manipulator_weights)
        if is_winner(manipulation_outcome(inst, witness), inst.rule, inst.preferred):
            return Decision(True, witness)
    return Decision(False, None)


# ---------------------------------------------------------------------------
# Max flow and the Llull manipulation algorithm for irrational voters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network with nonnegative integer capacities, no parallel edges."""

    nodes: tuple
    source: str
    sink: str
    capacities: dict

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        nodeset = set(self.nodes)
        if self.source not in nodeset or self.sink not in nodeset:
            raise ValueError("source and sink must be nodes")
        for (u, v), c in self.capacities.items():
            if u == v or u not in nodeset or v not in nodeset:
                raise ValueError(f"bad edge ({u!r}, {v!r})")
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"capacity of ({u!r}, {v!r}) must be a nonnegative integer")


def max_flow(net: FlowNetwork):
    """Maximum s-t flow via BFS augmenting paths; returns (value, per-edge flows)."""
    flow = {edge: 0 for edge in net.capacities}
    adjacency = {u: set() for u in net.nodes}
    for u, v in net.capacities:
        adjacency[u].add(v)
        adjacency[v].add(u)

    def residual(u, v):
        r = net.capacities.get((u, v), 0) - flow.get((u, v), 0)
        return r + flow.get((v, u), 0)

    value = 0
    while True:
        parent = {net.source: None}
        queue = deque([net.source])
        while queue and net.sink not in parent:
            u = queue.popleft()
            for v in sorted(adjacency[u]):
                if v not in parent and residual(u, v) > 0:
                    parent[v] = u
                    queue.append(v)
        if net.sink not in parent:
            return value, flow
        path = []
        v = net.sink
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        path.reverse()
        push = min(residual(u, v) for u, v in path)
        for u, v in path:
            cancel = min(push, flow.get((v, u), 0))
            if cancel:
                flow[(v, u)] -= cancel
            if push - cancel:
                flow[(u, v)] = flow.get((u, v), 0) + push - cancel
        value += push


def llull_irrational_cwcm_flow(inst: ManipulationInstance) -> Decision:
    """Polynomial Llull (Copeland^1) manipulation with irrational votes.

    All manipulators rank p above everyone, fixing p's score. On each rival
    pair they start on the nonmanipulators' majority side (lexicographic on
    ties), and a pair can be flipped as a bloc iff the coalition outweighs
    the standing margin, moving exactly one point between the rivals. A flow
    network with one unit edge per flippable pair then decides whether every
    rival's score can be pushed to at most p's score (one less under the
    unique winner model); the witness flips the unit-flow pairs.
    """
    if inst.rule.kind != "copeland" or inst.rule.alpha != 1:
        raise UnsupportedRegimeError("the flow algorithm is specific to Copeland with alpha=1")
    if not inst.domain.irrational:
        raise UnsupportedRegimeError("the flow algorithm needs irrational votes to be allowed")
    p = inst.preferred
    weights = inst.manipulator_weights
    others = [c for c in inst.candidates if c != p]
    if not weights:
        ok = is_winner(inst.nonmanipulators, inst.rule, p)
        return Decision(ok, () if ok else None)
    if not others:
        return Decision(True, tuple(Order.ranked([[p]]) for _ in weights))
    total = sum(weights)
    graph = induced_majority_graph(inst.nonmanipulators)

    # Initial shared manipulator relation: p first; rival pairs on the
    # standing majority side, lexicographically smaller candidate on ties.
    orientation = {}  # rival pair (x, y), x < y -> +1 if manipulators set x > y
    for x, y in itertools.combinations(others, 2):
        orientation[(x, y)] = 1 if graph.margin(x, y) >= 0 else -1

    score_p = sum(1 for c in others if graph.margin(p, c) + total >= 0)
    score0 = {}
    for a in others:
        s = 1 if graph.margin(a, p) - total >= 0 else 0
        for b in others:
            if b == a:
                continue
            pair = (a, b) if a < b else (b, a)
            if orientation[pair] == (1 if a < b else -1):
                s += 1
        score0[a] = s

    model = inst.rule.winner_model
    if model is WinnerModel.UNIQUE and score_p == 0:
        return Decision(False, None)  # some rival keeps a point against p
    sink_cap = score_p - 1 if model is WinnerModel.UNIQUE else score_p

    capacities = {}
    for a in others:
        capacities[("s", a)] = score0[a]
        capacities[(a, "t")] = sink_cap
    for x, y in itertools.combinations(others, 2):
        margin = graph.margin(x, y)
        winner, loser = (x, y) if orientation[(x, y)] > 0 else (y, x)
        if abs(margin) < total:  # flipping the whole coalition flips the pair
            capacities[(winner, loser)] = 1
    net = FlowNetwork(("s", "t", *others), "s", "t", capacities)
    value, flows = max_flow(net)
    if value != sum(score0.values()):
        return Decision(False, None)

    rel = {}
    for x, y in itertools.combinations(inst.candidates, 2):
        if p in (x, y):
            rel[(x, y)] = 1 if x == p else -1
        else:
            v = orientation[(x, y)]
            winner, loser = (x, y) if v > 0 else (y, x)
            if flows.get((winner, loser), 0) == 1:
                v = -v
            rel[(x, y)] = v
    vote = Order.pairwise(inst.candidates, rel)
    return Decision(True, tuple(vote for _ in weights))


# ---------------------------------------------------------------------------
# Control and bribery
# ---------------------------------------------------------------------------


def ccav_exact(
    inst: ControlAVInstance, *, max_unregistered: int = 20, max_add_limit: int = 6
) -> Decision:
    """Exhaustive search over subcollections of at most k unregistered voters."""
    n = len(inst.unregistered.voters)
    if n > max_unregistered or inst.add_limit > max_add_limit:
        raise CapExceededError(
            f"{n} unregistered voters / add limit {inst.add_limit} exceed the caps "
            f"({max_unregistered}, {max_add_limit})"
        )
    for size in range(inst.add_limit + 1):
        for combo in itertools.combinations(range(n), size):
            if is_winner(control_outcome(inst, combo), inst.rule, inst.preferred):
                return Decision(True, combo)
    return Decision(False, None)


def bribery_exact(
    inst: BriberyInstance,
    *,
    max_voters: int = 8,
    max_bribes: int = 3,
    max_domain: int = 512,
) -> Decision:
    """Exhaustive search over voter subsets and replacement votes."""
    _check_rule_domain(inst)
    n = len(inst.voters.voters)
    if n > max_voters or inst.bribe_limit > max_bribes:
        raise CapExceededError(
            f"{n} voters / bribe limit {inst.bribe_limit} exceed the caps "
            f"({max_voters}, {max_bribes})"
        )
    votes = domain_votes(inst.candidates, inst.domain)
    if len(votes) > max_domain:
        raise CapExceededError(f"vote domain size {len(votes)} exceeds the cap {max_domain}")
    for size in range(inst.bribe_limit + 1):
        for combo in itertools.combinations(range(n), size):
            for replacement in itertools.product(votes, repeat=size):
                changes = tuple(zip(combo, replacement))
                if is_winner(bribery_outcome(inst, changes), inst.rule, inst.preferred):
                    return Decision(True, changes)
    return Decision(False, None)


def _compositions(total: int, caps):
    """All ways to split `total` across len(caps) slots, slot i at most caps[i]."""
    if not caps:
        if total == 0:
            yield ()
        return
    head = caps[0]
    for take in range(min(total, head) + 1):
        for rest in _compositions(total - take, caps[1:]):
            yield (take,) + rest


def weighted_bribery_t_approval(inst: BriberyInstance, *, max_candidates: int = 6) -> Decision:
    """Polynomial weighted bribery for t-approval under the min extension.

    Bribed voters are always moved to "p first, rest tied", which scores 1
    for p and 0 for everyone else, so only the heaviest voters of each
    vote-type are worth bribing. With a fixed candidate count there are
    constantly many vote-types, and the search enumerates how to distribute
    the bribe budget among them.
    """
    rule = inst.rule
    m = len(inst.candidates)
    if m > max_candidates:
        raise CapExceededError(f"{m} candidates exceed the cap {max_candidates}")
    if rule.kind != "scoring" or rule.extension is not ScoringExtension.MIN:
        raise UnsupportedRegimeError("needs a t-approval rule under the min extension")
    t = sum(1 for s in rule.vector if s == 1)
    if rule.vector != (Fraction(1),) * t + (Fraction(0),) * (m - t) or not 2 <= t < m:
        raise UnsupportedRegimeError("needs a t-approval vector with 2 <= t < m")
    if inst.domain.irrational or inst.domain.axis is not None or inst.domain.kind not in (
        OrderKind.TOP,
        OrderKind.WEAK,
    ):
        raise UnsupportedRegimeError("replacement domain must be top or weak orders")

    pvote = _p_first_rest_tied(inst.candidates, inst.preferred)
    types: dict = {}
    for i, (order, _) in enumerate(inst.voters.voters):
        types.setdefault(order, []).append(i)
    type_order = sorted(types, key=format_order)
    # heaviest first within each type; index breaks weight ties
    ranked = [
        sorted(types[o], key=lambda i: (-inst.voters.voters[i][1], i)) for o in type_order
    ]
    caps = [len(r) for r in ranked]
    for budget in range(inst.bribe_limit + 1):
        for comp in _compositions(budget, caps):
            bribed = []
            for slot, count in enumerate(comp):
                bribed.extend(ranked[slot][:count])
            changes = tuple((i, pvote) for i in sorted(bribed))
            if is_winner(bribery_outcome(inst, changes), rule, inst.preferred):
                return Decision(True, changes)
    return Decision(False, None)


# ---------------------------------------------------------------------------
# Algorithm dispatch (used by the command line)
# ---------------------------------------------------------------------------

MANIPULATION_ALGORITHMS = ("exact", "dp", "min-fast", "copeland-p", "llull-flow")


def solve_manipulation(inst: ManipulationInstance, algo: str = "auto", **caps):
    """Run the requested manipulation algorithm; returns (algorithm name, Decision)."""
    if algo == "auto":
        if inst.rule.kind == "copeland":
            if inst.rule.alpha == 1 and inst.domain.irrational:
                algo = "llull-flow"
            elif (
                len(inst.candidates) == 3
                and inst.domain.axis is None
                and copeland_cwcm_regime(inst.rule.alpha, inst.rule.winner_model) == "p"
            ):
                algo = "copeland-p"
            else:
                algo = "dp" if len(inst.candidates) == 3 else "exact"
        elif inst.rule.extension is ScoringExtension.MIN and inst.domain.admits(
            _p_first_rest_tied(inst.candidates, inst.preferred)
        ):
            algo = "min-fast"
        else:
            algo = "dp" if len(inst.candidates) == 3 else "exact"
    if algo == "exact":
        return algo, cwcm_exact(inst, **caps)
    if algo == "dp":
        return algo, cwcm_3cand_dp(inst)
    if algo == "min-fast":
        return algo, cwcm_min_extension(inst)
    if algo == "copeland-p":
        return algo, cwcm_copeland_3cand_p(inst)
    if algo == "llull-flow":
        return algo, llull_irrational_cwcm_flow(inst)
    raise ValueError(f"unknown algorithm {algo!r}")


# ---------------------------------------------------------------------------
# Instance text format
#
#   type: manipulation | control-av | bribery
#   candidates: a,b,p
#   rule: borda | plurality | t-approval | copeland | scoring
#   extension: min|max|round-down|average      (scoring rules)
#   t: 2 / alpha: 1/2 / vector: 2,1,0          (rule-specific)
#   winner-model: nonunique | unique
#   preferred: p
#   domain: total|top|bottom|weak|irrational   (manipulation, bribery)
#   axis: a,p,b                                (optional)
#   weights: 1,1      (manipulation)    limit: 2   (control, bribery)
#   voters: / registered: / unregistered:      followed by profile voter lines
# ---------------------------------------------------------------------------

_SECTION_KEYS = ("voters", "registered", "unregistered")
_HEADER_RE = re.compile(r"^([a-z-]+):(.*)$")


def _split_instance_text(text: str):
    headers: dict = {}
    sections: dict = {name: [] for name in _SECTION_KEYS}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _HEADER_RE.match(line)
        if m and m.group(1) in _SECTION_KEYS and not m.group(2).strip():
            current = m.group(1)
            continue
        if current is not None:
            sections[current].append((lineno, line))
            continue
        if not m:
            raise ParseError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, value = m.group(1), m.group(2).strip()
        if key in headers:
            raise ParseError(f"line {lineno}: duplicate header {key!r}")
        headers[key] = value
    return headers, sections


def _parse_voter_lines(lines, candidates) -> WeightedProfile:
    voters = []
    weight_re = re.compile(r"^(\d+)\s*:\s*(.+)$")
    for lineno, line in lines:
        m = weight_re.match(line)
        weight, order_text = (int(m.group(1)), m.group(2)) if m else (1, line)
        try:
            voters.append((parse_order(order_text, candidates), weight))
        except ParseError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return WeightedProfile(candidates, voters)


def _require_header(headers, key):
    if key not in headers:
        raise ParseError(f"missing required header {key!r}")
    return headers[key]


def _parse_rule_headers(headers, m: int) -> Rule:
    name = _require_header(headers, "rule")
    model = WinnerModel(headers.get("winner-model", "nonunique"))
    if name == "copeland":
        return Rule.copeland(Fraction(_require_header(headers, "alpha")), model)
    extension = ScoringExtension(_require_header(headers, "extension"))
    if name == "borda":
        return Rule.borda(m, extension, model)
    if name == "plurality":
        return Rule.plurality(m, extension, model)
    if name == "t-approval":
        return Rule.t_approval(m, int(_require_header(headers, "t")), extension, model)
    if name == "scoring":
        vector = [Fraction(s) for s in _require_header(headers, "vector").split(",")]
        return Rule.scoring(vector, extension, model)
    raise ParseError(f"unknown rule {name!r}")


def _rule_header_lines(rule: Rule, m: int) -> list:
    lines = []
    if rule.kind == "copeland":
        lines.append("rule: copeland")
        lines.append(f"alpha: {rule.alpha}")
    else:
        vec = rule.vector
        ones = sum(1 for s in vec if s == 1)
        if vec == tuple(Fraction(s) for s in range(m - 1, -1, -1)):
            lines.append("rule: borda")
        elif vec == (Fraction(1),) + (Fraction(0),) * (m - 1):
            lines.append("rule: plurality")
        elif vec == (Fraction(1),) * ones + (Fraction(0),) * (m - ones):
            lines.append("rule: t-approval")
            lines.append(f"t: {ones}")
        else:
            lines.append("rule: scoring")
            lines.append("vector: " + ",".join(str(s) for s in vec))
        lines.append(f"extension: {rule.extension.value}")
    lines.append(f"winner-model: {rule.winner_model.value}")
    return lines


def _parse_domain_headers(headers) -> VoteDomain:
    name = headers.get("domain", "weak")
    axis = None
    if "axis" in headers and headers["axis"]:
        axis = tuple(s.strip() for s in headers["axis"].split(","))
    if name == "irrational":
        return VoteDomain(irrational=True)
    return VoteDomain(kind=OrderKind(name), axis=axis)


def _domain_header_lines(domain: VoteDomain) -> list:
    lines = [f"domain: {'irrational' if domain.irrational else domain.kind.value}"]
    if domain.axis is not None:
        lines.append("axis: " + ",".join(domain.axis))
    return lines


def _parse_candidates_header(headers) -> tuple:
    names = [s.strip() for s in _require_header(headers, "candidates").split(",")]
    if names == [""] or len(names) != len(set(names)):
        raise ParseError("bad candidates header")
    return tuple(sorted(names))


def parse_instance(text: str):
    """Parse any instance file; dispatches on the 'type:' header."""
    headers, sections = _split_instance_text(text)
    kind = _require_header(headers, "type")
    cands = _parse_candidates_header(headers)
    rule = _parse_rule_headers(headers, len(cands))
    preferred = _require_header(headers, "preferred")
    if kind == "manipulation":
        weights_text = _require_header(headers, "weights")
        weights = tuple(int(s) for s in weights_text.split(",") if s.strip())
        return ManipulationInstance(
            cands,
            _parse_voter_lines(sections["voters"], cands),
            weights,
            preferred,
            rule,
            _parse_domain_headers(headers),
        )
    if kind == "control-av":
        return ControlAVInstance(
            cands,
            _parse_voter_lines(sections["registered"], cands),
            _parse_voter_lines(sections["unregistered"], cands),
            preferred,
            int(_require_header(headers, "limit")),
            rule,
        )
    if kind == "bribery":
        return BriberyInstance(
            cands,
            _parse_voter_lines(sections["voters"], cands),
            preferred,
            int(_require_header(headers, "limit")),
            rule,
            _parse_domain_headers(headers),
        )
    raise ParseError(f"unknown instance type {kind!r}")


def _voter_lines(profile: WeightedProfile) -> list:
    return [f"{w}: {format_order(order)}" for order, w in profile.voters]


def format_instance(inst) -> str:
    """Canonical instance text; parse_instance(format_instance(x)) == x."""
    cands = inst.candidates
    lines = []
    if isinstance(inst, ManipulationInstance):
        lines.append("type: manipulation")
        lines.append("candidates: " + ",".join(cands))
        lines.extend(_rule_header_lines(inst.rule, len(cands)))
        lines.append(f"preferred: {inst.preferred}")
        lines.extend(_domain_header_lines(inst.domain))
        lines.append("weights: " + ",".join(str(w) for w in inst.manipulator_weights))
        lines.append("voters:")
        lines.extend(_voter_lines(inst.nonmanipulators))
    elif isinstance(inst, ControlAVInstance):
        lines.append("type: control-av")
        lines.append("candidates: " + ",".join(cands))
        lines.extend(_rule_header_lines(inst.rule, len(cands)))
        lines.append(f"preferred: {inst.preferred}")
        lines.append(f"limit: {inst.add_limit}")
        lines.append("registered:")
        lines.extend(_voter_lines(inst.registered))
        lines.append("unregistered:")
        lines.extend(_voter_lines(inst.unregistered))
    elif isinstance(inst, BriberyInstance):
        lines.append("type: bribery")
        lines.append("candidates: " + ",".join(cands))
        lines.extend(_rule_header_lines(inst.rule, len(cands)))
        lines.append(f"preferred: {inst.preferred}")
        lines.extend(_domain_header_lines(inst.domain))
        lines.append(f"limit: {inst.bribe_limit}")
        lines.append("voters:")
        lines.extend(_voter_lines(inst.voters))
    else:
        raise TypeError(f"not an instance: {inst!r}")
    return "\n".join(lines) + "\n"
