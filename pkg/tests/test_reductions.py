import itertools
import random
from fractions import Fraction

import pytest

from tievote import (
    CapExceededError,
    OrderKind,
    PartitionInstance,
    PartitionPrimeInstance,
    ScoringExtension,
    UnsupportedRegimeError,
    WinnerModel,
    X3CInstance,
    ccav_exact,
    copeland_scores,
    cwcm_3cand_dp,
    enumerate_partition_instances,
    enumerate_partition_prime_instances,
    format_instance,
    gen_borda_avg_cwcm,
    gen_borda_cwcm,
    gen_copeland_cwcm,
    gen_x3c_plurality_ccav,
    partition_brute,
    partition_prime_brute,
    partition_to_partition_prime,
    profile_scores,
    random_x3c_instance,
    replay_control,
    verify_reduction,
    x3c_brute,
)

MAX, RD, AVG = ScoringExtension.MAX, ScoringExtension.ROUND_DOWN, ScoringExtension.AVERAGE


class TestSourceBrutes:
    def test_partition(self):
        assert partition_brute(PartitionInstance((1, 1)))
        assert not partition_brute(PartitionInstance((1, 1, 4)))
        assert partition_brute(PartitionInstance((2, 2, 2, 2)))

    def test_partition_prime(self):
        assert partition_prime_brute(PartitionPrimeInstance((2, 2), 4))
        # A={2}, B=empty, C={2} gives 2 = 0 + 2
        assert partition_prime_brute(PartitionPrimeInstance((2, 2), 2))
        assert not partition_prime_brute(PartitionPrimeInstance((2,), 6))

    def test_x3c(self):
        base3 = ("b1", "b2", "b3")
        assert x3c_brute(X3CInstance(base3, ({"b1", "b2", "b3"},)))
        assert x3c_brute(X3CInstance(base3, ({"b1", "b2", "b3"}, {"b1", "b2", "b3"})))
        base6 = ("b1", "b2", "b3", "b4", "b5", "b6")
        overlapping = [s for s in itertools.combinations(base6, 3) if "b1" in s]
        assert not x3c_brute(X3CInstance(base6, tuple(overlapping[:8])))

    def test_caps(self):
        with pytest.raises(CapExceededError):
            partition_brute(PartitionInstance((2,) * 25))
        with pytest.raises(CapExceededError):
            partition_prime_brute(PartitionPrimeInstance((2,) * 16, 2))
        base9 = tuple(f"b{i}" for i in range(1, 10))
        triples = tuple(itertools.combinations(base9, 3))[:21]
        with pytest.raises(CapExceededError):
            x3c_brute(X3CInstance(base9, triples))

    def test_validation(self):
        with pytest.raises(ValueError):
            PartitionInstance((1, 2))  # odd sum
        with pytest.raises(ValueError):
            PartitionPrimeInstance((2, 3), 2)  # odd value
        with pytest.raises(ValueError):
            PartitionPrimeInstance((2, 2), 3)  # odd target
        with pytest.raises(ValueError):
            X3CInstance(("b1", "b2"), ())  # not 3k elements


class TestPartitionToPartitionPrime:
    def test_two_value_example(self):
        out = partition_to_partition_prime(PartitionInstance((1, 1)))
        assert out.values == (68, 80, 4, 16)
        assert out.target == 84

    def test_single_value_example(self):
        out = partition_to_partition_prime(PartitionInstance((2,)))
        assert out.values == (36, 4)
        assert out.target == 20

    def test_all_outputs_even(self):
        for src in enumerate_partition_instances(3, 5):
            out = partition_to_partition_prime(src)
            assert all(v % 2 == 0 for v in out.values) and out.target % 2 == 0

    def test_no_carries_in_marker_digits(self):
        # summing any subset never carries across base-4 digit positions 1..t
        for src in enumerate_partition_instances(3, 4):
            out = partition_to_partition_prime(src)
            t = len(src.values)
            numbers = out.values + (out.target,)
            for size in range(1, len(numbers) + 1):
                for combo in itertools.combinations(numbers, size):
                    digit_sum = [0] * (t + 1)
                    for value in combo:
                        for pos in range(1, t + 1):
                            digit_sum[pos] += value // 4**pos % 4
                    total = sum(combo)
                    if all(d < 4 for d in digit_sum):
                        for pos in range(1, t + 1):
                            assert total // 4**pos % 4 == digit_sum[pos]

    def test_equivalence_sweep(self):
        for src in enumerate_partition_instances(4, 6):
            out = partition_to_partition_prime(src)
            assert partition_brute(src) == partition_prime_brute(out)


class TestBordaGenerators:
    def test_max_layout(self):
        inst = gen_borda_cwcm(PartitionInstance((1, 1)), MAX)
        weights = sorted(w for _, w in inst.nonmanipulators.voters)
        assert weights == [3, 3]
        assert inst.manipulator_weights == (1, 1)
        assert inst.domain.kind is OrderKind.TOP and inst.domain.axis == ("a", "p", "b")
        scores = profile_scores(inst.nonmanipulators, inst.rule.vector, MAX)
        assert scores == {"a": 9, "b": 9, "p": 6}

    def test_avg_layout(self):
        inst = gen_borda_avg_cwcm(PartitionPrimeInstance((2, 2), 4))
        assert sorted(w for _, w in inst.nonmanipulators.voters) == [8, 16]
        assert inst.manipulator_weights == (6, 6)
        scores = profile_scores(inst.nonmanipulators, inst.rule.vector, AVG)
        assert scores["p"] == 12

    def test_avg_identities(self):
        for src in enumerate_partition_prime_instances(3, 6):
            inst = gen_borda_avg_cwcm(src)
            two_k = sum(src.values)
            scores = profile_scores(inst.nonmanipulators, inst.rule.vector, AVG)
            assert scores["a"] + scores["b"] == Fraction(15 * two_k)
            assert scores["a"] - scores["b"] == Fraction(3 * src.target)

    def test_avg_normalization(self):
        big = PartitionPrimeInstance((2, 2), 8)  # target beyond the value sum
        with pytest.raises(ValueError):
            gen_borda_avg_cwcm(big)
        relaxed = gen_borda_avg_cwcm(big, strict=False)
        assert not cwcm_3cand_dp(relaxed).answer

    def test_max_equivalence_sweep(self):
        for src in enumerate_partition_instances(3, 5):
            report = verify_reduction("borda-max", src)
            assert report.agree

    def test_rounddown_equivalence_sweep(self):
        for src in enumerate_partition_instances(3, 5):
            report = verify_reduction("borda-rounddown", src)
            assert report.agree

    def test_avg_equivalence_sweep(self):
        for src in enumerate_partition_prime_instances(3, 4):
            report = verify_reduction("borda-avg", src)
            assert report.agree

    def test_deterministic(self):
        src = PartitionInstance((1, 3))
        assert format_instance(gen_borda_cwcm(src, MAX)) == format_instance(gen_borda_cwcm(src, MAX))
        prime = PartitionPrimeInstance((2, 4), 2)
        assert format_instance(
            gen_copeland_cwcm(prime, 0, WinnerModel.NONUNIQUE)
        ) == format_instance(gen_copeland_cwcm(prime, 0, WinnerModel.NONUNIQUE))
        base = tuple(f"b{i:02d}" for i in range(1, 13))
        cover = tuple(frozenset(base[i : i + 3]) for i in range(0, 12, 3))
        src_x = X3CInstance(base, cover)
        assert format_instance(gen_x3c_plurality_ccav(src_x)) == format_instance(
            gen_x3c_plurality_ccav(src_x)
        )


class TestCopelandGenerator:
    def test_nonunique_layout(self):
        inst = gen_copeland_cwcm(PartitionPrimeInstance((2, 2, 2), 2), 0, WinnerModel.NONUNIQUE)
        votes = {str(order): w for order, w in inst.nonmanipulators.voters}
        assert votes == {"a > b > p": 4, "b > a > p": 2}
        assert copeland_scores(inst.nonmanipulators, 0) == {"a": 2, "b": 1, "p": 0}

    def test_unique_layout(self):
        inst = gen_copeland_cwcm(PartitionPrimeInstance((2, 2, 2), 2), 0, WinnerModel.UNIQUE)
        votes = {str(order): w for order, w in inst.nonmanipulators.voters}
        assert votes == {"a > p > b": 4, "b > a > p": 2}
        assert copeland_scores(inst.nonmanipulators, 0) == {"a": 2, "p": 1, "b": 0}

    def test_boundary_target_drops_zero_weight_voter(self):
        inst = gen_copeland_cwcm(PartitionPrimeInstance((2, 2), 4), 0, WinnerModel.NONUNIQUE)
        assert len(inst.nonmanipulators.voters) == 1

    def test_unsupported_pair(self):
        with pytest.raises(UnsupportedRegimeError):
            gen_copeland_cwcm(PartitionPrimeInstance((2, 2), 2), 1, WinnerModel.NONUNIQUE)
        with pytest.raises(UnsupportedRegimeError):
            gen_copeland_cwcm(PartitionPrimeInstance((2, 2), 2), "1/2", WinnerModel.UNIQUE)

    @pytest.mark.parametrize(
        "kind", ["copeland-0-nonunique", "copeland-half-nonunique", "copeland-0-unique"]
    )
    def test_equivalence_sweep(self, kind):
        for src in enumerate_partition_prime_instances(3, 4):
            report = verify_reduction(kind, src)
            assert report.agree, (kind, src)


class TestX3cGenerator:
    def _cover_instance(self):
        base = tuple(f"b{i:02d}" for i in range(1, 13))
        cover = [frozenset(base[i : i + 3]) for i in range(0, 12, 3)]
        extra = [frozenset(("b01", "b02", "b04")), frozenset(("b05", "b07", "b09"))]
        return X3CInstance(base, tuple(cover + extra))

    def test_structure(self):
        inst = gen_x3c_plurality_ccav(self._cover_instance())
        assert len(inst.candidates) == 13
        assert inst.add_limit == 4
        # 3 blocks of weight k+3 = 7 plus one p-first voter: 22 voters
        assert inst.registered.total_weight == 22
        # every base candidate appears in exactly one block's top group
        block_tops = [order.groups[0] for order, w in inst.registered.voters if w == 7]
        assert len(block_tops) == 3
        seen = set().union(*block_tops)
        assert seen == set(inst.candidates) - {"p"}
        assert sum(len(g) for g in block_tops) == 12

    def test_score_lead(self):
        inst = gen_x3c_plurality_ccav(self._cover_instance())
        scores = profile_scores(inst.registered, inst.rule.vector, AVG)
        for c in inst.candidates:
            if c != "p":
                assert scores[c] - scores["p"] == Fraction(3, 4)

    def test_yes_instance(self):
        inst = gen_x3c_plurality_ccav(self._cover_instance())
        decision = ccav_exact(inst)
        assert decision.answer
        assert replay_control(inst, decision.witness)
        from tievote.solvers import control_outcome

        final = profile_scores(control_outcome(inst, decision.witness), inst.rule.vector, AVG)
        assert all(final[c] == 2 for c in inst.candidates)

    def test_no_instance(self):
        base = tuple(f"b{i:02d}" for i in range(1, 13))
        overlapping = tuple(frozenset(("b01",) + pair) for pair in itertools.combinations(base[1:7], 2))
        inst = gen_x3c_plurality_ccav(X3CInstance(base, overlapping[:6]))
        assert not ccav_exact(inst).answer

    def test_strict_rejects_bad_cover_size(self):
        base = ("b1", "b2", "b3")
        src = X3CInstance(base, ({"b1", "b2", "b3"},))
        with pytest.raises(ValueError):
            gen_x3c_plurality_ccav(src)

    def test_permissive_pads_preserving_answer(self):
        base = ("b1", "b2", "b3")
        yes_src = X3CInstance(base, ({"b1", "b2", "b3"},))
        inst = gen_x3c_plurality_ccav(yes_src, strict=False)
        assert inst.add_limit == 4
        assert ccav_exact(inst).answer
        no_src = X3CInstance(
            ("b1", "b2", "b3", "b4", "b5", "b6"),
            ({"b1", "b2", "b3"}, {"b1", "b2", "b4"}),
        )
        inst = gen_x3c_plurality_ccav(no_src, strict=False)
        assert not ccav_exact(inst).answer

    def test_random_equivalence(self):
        rng = random.Random(42)
        answers = set()
        for _ in range(25):
            src = random_x3c_instance(rng, max_sets=6)
            report = verify_reduction("x3c-ccav", src)
            assert report.agree
            answers.add(report.source_answer)
        assert answers == {True, False}


class TestVerifyReports:
    def test_yes_yes(self):
        report = verify_reduction("borda-max", PartitionInstance((1, 1)))
        assert report.agree and report.source_answer and report.target_answer
        assert report.source_witness is not None and report.target_witness is not None

    def test_no_no(self):
        report = verify_reduction("partition-prime", PartitionInstance((1, 1, 4)))
        assert report.agree and not report.source_answer and not report.target_answer
        assert report.source_witness is None and report.target_witness is None

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            verify_reduction("nope", PartitionInstance((1, 1)))
