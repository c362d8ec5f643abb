import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfmedoids.costs import medoid_dichotomic, cluster_cost_naive
from pfmedoids.errors import InstanceTooLarge, KOutOfRange, MalformedPartition, TooManyCandidates
from pfmedoids.oracles import (
    PartitionCandidate,
    brute_all_partitions,
    brute_interval,
    candidate_from_clustering,
    find_non_unimodal_witness,
    is_local_minimum,
    is_unimodal,
    medoid_profile,
    pam_heuristic,
)
from pfmedoids.pareto import ParetoInstance
from pfmedoids.solver import solve_general, solve_k1

from conftest import affine, fronts, rel_close, seeded_fronts


def test_brute_interval_examples(affine5):
    res = brute_interval(affine5, 2, 2)
    assert res.breaks == (2,) and res.total == 6.0
    k1 = brute_interval(affine5, 1, 2)
    assert (k1.total, k1.medoids) == (solve_k1(affine5, 2).total, solve_k1(affine5, 2).medoids)
    assert brute_interval(affine5, 5, 2).total == 0.0
    with pytest.raises(KOutOfRange):
        brute_interval(affine5, 6, 2)
    with pytest.raises(TooManyCandidates):
        brute_interval(affine(200), 6, 2)


def test_brute_interval_picks_lexicographic_first_on_ties():
    # affine 4 at alpha 2: every split costs 4
    assert brute_interval(affine(4), 2, 2).breaks == (1,)
    # affine 6, K=3: sizes (1,2,3), (2,2,2), ... all cost 6
    assert brute_interval(affine(6), 3, 2).total == 6.0
    assert brute_interval(affine(6), 3, 2).breaks == (1, 3)


def test_brute_all_examples(affine4):
    best, interval = brute_all_partitions(affine4, 2, 2)
    assert best.total == 4.0 and interval
    three = affine(3)
    best, interval = brute_all_partitions(three, 3, 2)
    assert best.total == 0.0 and interval
    with pytest.raises(InstanceTooLarge):
        brute_all_partitions(affine(13), 2, 2)
    with pytest.raises(InstanceTooLarge):
        brute_all_partitions(affine(8), 5, 2)


def test_brute_all_agrees_with_interval_oracle():
    rng = np.random.default_rng(12)
    for inst in seeded_fronts(15, (3, 10), seed=12):
        K = int(rng.integers(1, min(4, inst.n) + 1))
        alpha = float(rng.choice([1.0, 2.0]))
        best, interval = brute_all_partitions(inst, K, alpha)
        assert interval and best.is_interval()
        assert rel_close(best.total, brute_interval(inst, K, alpha).total)
        assert sorted(set(best.assignment)) == list(range(K))


def test_partition_candidate_shape():
    assert PartitionCandidate((0, 0, 1, 1, 2), (0, 2, 4), 0.0).is_interval()
    assert not PartitionCandidate((0, 1, 0), (0, 1), 0.0).is_interval()
    assert PartitionCandidate((0, 1, 0), (0, 1), 0.0).k == 2


def test_pam_examples():
    inst = affine(9)
    res = pam_heuristic(inst, 3, 2, init_medoids=[2, 4, 6])
    assert res.total == 12.0 and res.converged
    full = pam_heuristic(inst, 9, 2, seed=4)
    assert full.total == 0.0
    with pytest.raises(KOutOfRange):
        pam_heuristic(inst, 10, 2)
    with pytest.raises(ValueError):
        pam_heuristic(inst, 2, 2, init_medoids=[1, 1])


def test_pam_is_deterministic_per_seed():
    inst = next(seeded_fronts(1, (40, 40), seed=0))
    assert pam_heuristic(inst, 4, 1.0, seed=7) == pam_heuristic(inst, 4, 1.0, seed=7)


@settings(max_examples=30, deadline=None)
@given(fronts(min_n=2, max_n=30), st.integers(1, 5), st.integers(0, 1000), st.sampled_from([1.0, 2.0]))
def test_pam_fixed_points(inst, K, seed, alpha):
    K = min(K, inst.n)
    res = pam_heuristic(inst, K, alpha, seed=seed)
    assert res.converged
    assert res.is_interval()
    assert is_local_minimum(inst, res, alpha)
    assert solve_general(inst, K, alpha).total <= res.total * (1 + 1e-9) + 1e-12


def test_local_minimum_checks():
    inst = next(seeded_fronts(1, (20, 20), seed=1))
    for K in (1, 2, 4):
        opt = solve_general(inst, K, 2)
        assert is_local_minimum(inst, candidate_from_clustering(opt, inst.n), 2)


def test_swapped_blobs_are_not_a_local_minimum():
    a = [(i * 0.01, 10 - i * 0.01) for i in range(5)]
    b = [(10 + i * 0.01, -i * 0.01) for i in range(5)]
    inst = ParetoInstance(np.array(a + b))
    opt = candidate_from_clustering(solve_general(inst, 2, 2), inst.n)
    assert is_local_minimum(inst, opt, 2)
    labels = list(opt.assignment)
    labels[4], labels[5] = labels[5], labels[4]
    swapped = PartitionCandidate(tuple(labels), opt.medoids, opt.total)
    assert not is_local_minimum(inst, swapped, 2)


def test_local_minimum_rejects_malformed():
    inst = affine(4)
    with pytest.raises(MalformedPartition):
        is_local_minimum(inst, PartitionCandidate((0, 0, 0), (0,), 0.0), 2)
    with pytest.raises(MalformedPartition):
        is_local_minimum(inst, PartitionCandidate((0, 0, 1, 1), (2, 3), 0.0), 2)
    with pytest.raises(MalformedPartition):
        is_local_minimum(inst, PartitionCandidate((0, 0, 0, 0), (0, 1), 0.0), 2)


def test_is_unimodal():
    assert is_unimodal([3, 2, 1, 2, 3])
    assert is_unimodal([1, 1, 1])
    assert is_unimodal([1, 2, 3])
    assert is_unimodal([3, 1])
    assert not is_unimodal([3, 1, 2, 1, 3])
    assert not is_unimodal([1, 2, 1])


def test_non_unimodal_witness_search():
    found = find_non_unimodal_witness(max_trials=10**5, seed=0)
    assert found is not None
    inst, alpha, profile = found
    assert 5 <= inst.n <= 8
    assert not is_unimodal(profile)
    assert np.array_equal(profile, medoid_profile(inst, alpha))


def test_dichotomic_can_fail_off_hypothesis():
    # hunt for a front where bisection lands in the wrong valley
    for seed in range(50):
        found = find_non_unimodal_witness(max_trials=10**5, seed=seed)
        if found is None:
            continue
        inst, alpha, _ = found
        if medoid_dichotomic(inst, 0, inst.n - 1, alpha).cost > cluster_cost_naive(inst, 0, inst.n - 1, alpha).cost:
            return
    pytest.skip("no witness fooled bisection within the budget")
