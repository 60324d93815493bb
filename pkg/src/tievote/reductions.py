"""Hardness-construction generators with brute-force equivalence checking.

Each generator maps a source problem instance (number partitioning, its
three-way variant, or exact cover by 3-sets) to a manipulation or control
instance whose answer provably matches the source's. The generators are
deterministic; :func:`verify_reduction` decides both sides with independent
oracles and reports agreement, which is how the constructions are validated
at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .orders import CapExceededError, Order, OrderKind, WeightedProfile
from .rules import Rule, ScoringExtension, WinnerModel
from .solvers import (
    ControlAVInstance,
    ManipulationInstance,
    UnsupportedRegimeError,
    VoteDomain,
    ccav_exact,
    cwcm_3cand_dp,
)


# ---------------------------------------------------------------------------
# Source problems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionInstance:
    """Positive integers with even sum 2K; asks for a subset summing to K."""

    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        if not values:
            raise ValueError("partition instance needs at least one value")
        for v in values:
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"values must be positive integers, got {v!r}")
        if sum(values) % 2 != 0:
            raise ValueError("value sum must be even")
        object.__setattr__(self, "values", values)

    @property
    def half_sum(self) -> int:
        return sum(self.values) // 2


@dataclass(frozen=True)
class PartitionPrimeInstance:
    """Positive even integers plus an even target.

    Asks for a three-way partition (A, B, C) of the values with
    sum(A) = sum(B) + target.
    """

    values: tuple
    target: int

    def __post_init__(self):
        values = tuple(self.values)
        if not values:
            raise ValueError("instance needs at least one value")
        for v in values:
            if not isinstance(v, int) or v < 1 or v % 2 != 0:
                raise ValueError(f"values must be positive even integers, got {v!r}")
        if not isinstance(self.target, int) or self.target < 1 or self.target % 2 != 0:
            raise ValueError(f"target must be a positive even integer, got {self.target!r}")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class X3CInstance:
    """Base elements b_1..b_3k and a collection of 3-element subsets."""

    base: tuple
    sets: tuple

    def __post_init__(self):
        base = tuple(self.base)
        if not base or len(base) % 3 != 0 or len(base) != len(set(base)):
            raise ValueError("base must be 3k distinct elements, k >= 1")
        sets = tuple(frozenset(s) for s in self.sets)
        for s in sets:
            if len(s) != 3 or not s <= set(base):
                raise ValueError(f"every set must be a 3-element subset of the base, got {sorted(s)}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "sets", sets)

    @property
    def cover_size(self) -> int:
        return len(self.base) // 3


# ---------------------------------------------------------------------------
# Brute-force source deciders
# ---------------------------------------------------------------------------


def partition_witness(inst: PartitionInstance, max_values: int = 24):
    """First subset (as indices) summing to half the total, or None."""
    t = len(inst.values)
    if t > max_values:
        raise CapExceededError(f"{t} values exceed the cap {max_values}")
    target = inst.half_sum
    for mask in range(1 << t):
        picked = [i for i in range(t) if mask >> i & 1]
        if sum(inst.values[i] for i in picked) == target:
            return tuple(picked)
    return None


def partition_brute(inst: PartitionInstance, max_values: int = 24) -> bool:
    return partition_witness(inst, max_values) is not None


def partition_prime_witness(inst: PartitionPrimeInstance, max_values: int = 15):
    """First assignment (A, B, C index tuples) with sum(A) = sum(B) + target, or None."""
    t = len(inst.values)
    if t > max_values:
        raise CapExceededError(f"{t} values exceed the cap {max_values}")
    for assignment in itertools.product((0, 1, 2), repeat=t):
        sums = [0, 0, 0]
        for v, part in zip(inst.values, assignment):
            sums[part] += v
        if sums[0] == sums[1] + inst.target:
            parts = ([], [], [])
            for i, part in enumerate(assignment):
                parts[part].append(i)
            return tuple(tuple(p) for p in parts)
    return None


def partition_prime_brute(inst: PartitionPrimeInstance, max_values: int = 15) -> bool:
    return partition_prime_witness(inst, max_values) is not None


def x3c_witness(inst: X3CInstance, max_sets: int = 20):
    """First exact cover (as set indices), or None."""
    n = len(inst.sets)
    if n > max_sets:
        raise CapExceededError(f"{n} sets exceed the cap {max_sets}")
    k = inst.cover_size
    full = set(inst.base)
    for combo in itertools.combinations(range(n), k):
        union = set()
        for i in combo:
            union |= inst.sets[i]
        if union == full:  # k disjoint 3-sets covering 3k elements
            return combo
    return None


def x3c_brute(inst: X3CInstance, max_sets: int = 20) -> bool:
    return x3c_witness(inst, max_sets) is not None


# ---------------------------------------------------------------------------
# Partition -> Partition'
# ---------------------------------------------------------------------------


def partition_to_partition_prime(src: PartitionInstance) -> PartitionPrimeInstance:
    """Sound and complete translation into the three-way variant.

    With t source values summing to 2K, the output values are
    k'_i = 4^i + 4^(t+1)·k_i and l'_i = 4^i, and the target is
    4^(t+1)·K + sum_i 4^i. Base-4 digit positions 1..t each carry a single
    marker digit, so subset sums never produce carries there, and the last
    digit is 0, keeping every number even.
    """
    t = len(src.values)
    big = 4 ** (t + 1)
    kp = [4 ** i + big * v for i, v in enumerate(src.values, start=1)]
    lp = [4 ** i for i in range(1, t + 1)]
    target = big * src.half_sum + sum(lp)
    return PartitionPrimeInstance(tuple(kp + lp), target)


# ---------------------------------------------------------------------------
# Manipulation and control generators
# ---------------------------------------------------------------------------

_ABP = ("a", "b", "p")
_AXIS = ("a", "p", "b")
_A_FIRST = Order.ranked([["a"], ["b", "p"]])  # a > p ~ b
_B_FIRST = Order.ranked([["b"], ["a", "p"]])  # b > p ~ a


def _canonical_no_target(rule: Rule, domain: VoteDomain) -> ManipulationInstance:
    """Fixed zero-manipulator instance where p loses; used by permissive mode."""
    profile = WeightedProfile(_ABP, [(Order.ranked([["a"], ["p"], ["b"]]), 1)])
    return ManipulationInstance(_ABP, profile, (), "p", rule, domain)


def gen_borda_cwcm(src: PartitionInstance, extension: ScoringExtension) -> ManipulationInstance:
    """Borda manipulation instance over single-peaked top orders.

    Two weight-3K blockers vote a > p~b and b > p~a; the manipulators carry
    the source values as weights. Under the max extension p can reach 10K
    while a and b can absorb only K each from the manipulators, forcing an
    exact split; the same construction is used for round-down.
    """
    if extension not in (ScoringExtension.MAX, ScoringExtension.ROUND_DOWN):
        raise UnsupportedRegimeError("construction applies to the max and round-down extensions")
    k3 = 3 * src.half_sum
    profile = WeightedProfile(_ABP, [(_A_FIRST, k3), (_B_FIRST, k3)])
    return ManipulationInstance(
        _ABP,
        profile,
        src.values,
        "p",
        Rule.borda(3, extension, WinnerModel.NONUNIQUE),
        VoteDomain(kind=OrderKind.TOP, axis=_AXIS),
    )


def gen_borda_avg_cwcm(src: PartitionPrimeInstance, strict: bool = True) -> ManipulationInstance:
    """Borda-average manipulation instance over single-peaked top orders.

    With the values summing to 2S and target T, the blockers weigh 6S+T
    (a > p~b) and 6S-T (b > p~a), and the manipulators carry triple the
    source values. Requires T at most 2S; permissive mode maps larger
    targets (always NO) to a canonical NO instance.
    """
    two_k = sum(src.values)
    rule = Rule.borda(3, ScoringExtension.AVERAGE, WinnerModel.NONUNIQUE)
    domain = VoteDomain(kind=OrderKind.TOP, axis=_AXIS)
    if src.target > two_k:
        if strict:
            raise ValueError(f"target {src.target} exceeds the value sum {two_k}")
        return _canonical_no_target(rule, domain)
    k6 = 3 * two_k
    profile = WeightedProfile(_ABP, [(_A_FIRST, k6 + src.target), (_B_FIRST, k6 - src.target)])
    weights = tuple(3 * v for v in src.values)
    return ManipulationInstance(_ABP, profile, weights, "p", rule, domain)


def gen_copeland_cwcm(
    src: PartitionPrimeInstance, alpha, winner_model: WinnerModel, strict: bool = True
) -> ManipulationInstance:
    """Copeland manipulation instance over weak orders.

    With the values summing to 2S and target T, the nonunique layout
    (alpha in [0,1)) has blockers of weight S+T/2 voting a > b > p and
    S-T/2 voting b > a > p; the unique layout (alpha = 0) moves the heavier
    blocker to a > p > b. Manipulators carry the source values. A
    zero-weight blocker (T = 2S) is omitted.
    """
    alpha = Fraction(alpha)
    rule = Rule.copeland(alpha, winner_model)
    domain = VoteDomain(kind=OrderKind.WEAK)
    if winner_model is WinnerModel.NONUNIQUE and 0 <= alpha < 1:
        heavy = Order.ranked([["a"], ["b"], ["p"]])
    elif winner_model is WinnerModel.UNIQUE and alpha == 0:
        heavy = Order.ranked([["a"], ["p"], ["b"]])
    else:
        raise UnsupportedRegimeError(
            f"no construction for alpha={alpha} under the {winner_model.value} winner model"
        )
    two_k = sum(src.values)
    if src.target > two_k:
        if strict:
            raise ValueError(f"target {src.target} exceeds the value sum {two_k}")
        return _canonical_no_target(rule, domain)
    k = two_k // 2
    light = Order.ranked([["b"], ["a"], ["p"]])
    voters = [(heavy, k + src.target // 2)]
    if k - src.target // 2 > 0:
        voters.append((light, k - src.target // 2))
    profile = WeightedProfile(_ABP, voters)
    return ManipulationInstance(_ABP, profile, src.values, "p", rule, domain)


def _lex_completed(candidates, top_group) -> Order:
    """Tied top group, all remaining candidates following in lexicographic order."""
    rest = sorted(set(candidates) - set(top_group))
    return Order.ranked([top_group] + [[c] for c in rest])


def _pad_x3c(src: X3CInstance) -> X3CInstance:
    """Pad so the cover size is divisible by 4 without changing the answer.

    Adds disjoint dummy triples over fresh elements; any exact cover must
    take all of them, so the padded instance is YES iff the original is.
    """
    delta = -src.cover_size % 4
    if delta == 0:
        return src
    existing = set(src.base)
    fresh = []
    counter = 0
    while len(fresh) < 3 * delta:
        name = f"zpad{counter}"
        counter += 1
        if name not in existing:
            fresh.append(name)
    dummy_sets = [frozenset(fresh[3 * i : 3 * i + 3]) for i in range(delta)]
    return X3CInstance(src.base + tuple(fresh), src.sets + tuple(dummy_sets))


def gen_x3c_plurality_ccav(src: X3CInstance, strict: bool = True) -> ControlAVInstance:
    """Control-by-adding-voters instance under plurality with the average extension.

    With |B| = 3k, k divisible by 4 and l = 3k/4: candidates are p plus the
    base; for each block index i, k+3 registered voters tie the four
    candidates b_i, b_{i+l}, b_{i+2l}, b_{i+3l} on top; one registered voter
    puts p on top; each source set becomes an unregistered voter tying p
    with its three elements on top. Remaining candidates always follow
    lexicographically, the addition limit is k, and each base candidate
    starts (k-1)/4 points ahead of p.

    Note the registered collection counts l·(k+3) block voters plus the one
    p-first voter, i.e. (3k^2+9k)/4 + 1 voters in total.
    """
    if "p" in src.base:
        raise ValueError("base elements may not be named 'p'")
    if src.cover_size % 4 != 0:
        if strict:
            raise ValueError(
                f"cover size {src.cover_size} is not divisible by 4; pad or use permissive mode"
            )
        src = _pad_x3c(src)
    k = src.cover_size
    ell = 3 * k // 4
    candidates = tuple(sorted(src.base + ("p",)))
    registered = []
    for i in range(ell):
        block = [src.base[i + j * ell] for j in range(4)]
        registered.append((_lex_completed(candidates, block), k + 3))
    registered.append((_lex_completed(candidates, ["p"]), 1))
    unregistered = [(_lex_completed(candidates, sorted(s) + ["p"]), 1) for s in src.sets]
    # the addition limit is k; with fewer than k unregistered voters the
    # limit is vacuous, so it is clamped to keep the instance invariant
    return ControlAVInstance(
        candidates,
        WeightedProfile(candidates, registered),
        WeightedProfile(candidates, unregistered),
        "p",
        min(k, len(unregistered)),
        Rule.plurality(len(candidates), ScoringExtension.AVERAGE, WinnerModel.NONUNIQUE),
    )


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionReport:
    kind: str
    source: object
    target: object
    source_answer: bool
    target_answer: bool
    source_witness: object
    target_witness: object

    @property
    def agree(self) -> bool:
        return self.source_answer == self.target_answer


REDUCTION_KINDS = (
    "partition-prime",
    "borda-max",
    "borda-rounddown",
    "borda-avg",
    "copeland-0-nonunique",
    "copeland-half-nonunique",
    "copeland-0-unique",
    "x3c-ccav",
)

_COPELAND_KINDS = {
    "copeland-0-nonunique": (Fraction(0), WinnerModel.NONUNIQUE),
    "copeland-half-nonunique": (Fraction(1, 2), WinnerModel.NONUNIQUE),
    "copeland-0-unique": (Fraction(0), WinnerModel.UNIQUE),
}


def verify_reduction(kind: str, src, strict: bool = False) -> ReductionReport:
    """Decide source and generated target with independent oracles."""
    if kind == "partition-prime":
        target = partition_to_partition_prime(src)
        sw = partition_witness(src)
        tw = partition_prime_witness(target)
        return ReductionReport(kind, src, target, sw is not None, tw is not None, sw, tw)
    if kind in ("borda-max", "borda-rounddown"):
        ext = ScoringExtension.MAX if kind == "borda-max" else ScoringExtension.ROUND_DOWN
        target = gen_borda_cwcm(src, ext)
        sw = partition_witness(src)
        decision = cwcm_3cand_dp(target)
        return ReductionReport(kind, src, target, sw is not None, decision.answer, sw, decision.witness)
    if kind == "borda-avg":
        target = gen_borda_avg_cwcm(src, strict=strict)
        sw = partition_prime_witness(src)
        decision = cwcm_3cand_dp(target)
        return ReductionReport(kind, src, target, sw is not None, decision.answer, sw, decision.witness)
    if kind in _COPELAND_KINDS:
        alpha, model = _COPELAND_KINDS[kind]
        target = gen_copeland_cwcm(src, alpha, model, strict=strict)
        sw = partition_prime_witness(src)
        decision = cwcm_3cand_dp(target)
        return ReductionReport(kind, src, target, sw is not None, decision.answer, sw, decision.witness)
    if kind == "x3c-ccav":
        target = gen_x3c_plurality_ccav(src, strict=strict)
        sw = x3c_witness(src)
        decision = ccav_exact(target, max_unregistered=len(target.unregistered.voters))
        return ReductionReport(kind, src, target, sw is not None, decision.answer, sw, decision.witness)
    raise ValueError(f"unknown reduction kind {kind!r}")


# ---------------------------------------------------------------------------
# Sweep enumeration and sampling
# ---------------------------------------------------------------------------


def enumerate_partition_instances(max_values: int, max_value: int):
    """Every value multiset with even sum, nondecreasing tuples; answers are order-invariant."""
    for t in range(1, max_values + 1):
        for values in itertools.combinations_with_replacement(range(1, max_value + 1), t):
            if sum(values) % 2 == 0:
                yield PartitionInstance(values)


def enumerate_partition_prime_instances(max_values: int, max_value: int):
    """Every even-value multiset paired with every even target up to the value sum."""
    for t in range(1, max_values + 1):
        for values in itertools.combinations_with_replacement(range(2, max_value + 1, 2), t):
            for target in range(2, sum(values) + 1, 2):
                yield PartitionPrimeInstance(values, target)


def random_x3c_instance(rng, cover_size: int = 4, max_sets: int = 7) -> X3CInstance:
    """Seeded random instance; half the draws embed an exact cover."""
    base = tuple(f"b{i:02d}" for i in range(1, 3 * cover_size + 1))
    n = rng.randint(1, max_sets)
    sets = []
    if rng.random() < 0.5 and n >= cover_size:
        shuffled = list(base)
        rng.shuffle(shuffled)
        sets.extend(frozenset(shuffled[3 * i : 3 * i + 3]) for i in range(cover_size))
    all_triples = list(itertools.combinations(base, 3))
    while len(sets) < n:
        sets.append(frozenset(all_triples[rng.randrange(len(all_triples))]))
    rng.shuffle(sets)
    return X3CInstance(base, tuple(sets))
