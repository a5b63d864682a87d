import pytest

from profmatch import (
    Matching,
    blocking_pair,
    enumerate_stable_matchings,
    generate_I1,
    generate_uniform,
    is_stable,
    man_optimal,
    matching_degree,
    min_regret_degree,
    preprocess,
    truncate,
    woman_optimal,
)

from helpers import I0_MAN_OPTIMAL, I0_WOMAN_OPTIMAL, tiny_unique_instance


def test_man_optimal_i0(i0_pre):
    assert man_optimal(i0_pre) == Matching(I0_MAN_OPTIMAL)


def test_woman_optimal_i0(i0_pre):
    assert woman_optimal(i0_pre) == Matching(I0_WOMAN_OPTIMAL)


def test_single_mutual_first_pair():
    inst = preprocess(tiny_unique_instance())
    assert man_optimal(inst) == woman_optimal(inst) == Matching([(1, 1), (2, 2)])


def test_is_stable_i0(i0_pre):
    assert is_stable(i0_pre, Matching(I0_MAN_OPTIMAL))
    # Swapping (m1,w5),(m3,w8) to (m1,w8),(m3,w5) gives another stable matching.
    swapped = [(1, 8), (2, 3), (3, 5), (4, 6), (5, 7), (6, 1), (7, 2), (8, 4)]
    assert is_stable(i0_pre, Matching(swapped))


def test_empty_matching_is_blocked(i0_pre):
    witness = blocking_pair(i0_pre, Matching(()))
    assert witness is not None
    m, w = witness
    assert i0_pre.acceptable(m, w)


def test_blocking_pair_prefers_each_other():
    inst = preprocess(generate_uniform(5, 5, 1.0, seed=11))
    bad = Matching([(1, 2), (2, 1)] + [(m, m) for m in range(3, 6)])
    witness = blocking_pair(inst, bad)
    if witness is not None:
        m, w = witness
        h = bad.husband_of(w)
        wc = bad.wife_of(m)
        assert h is None or inst.women_rank[w][m] < inst.women_rank[w][h]
        assert wc is None or inst.men_rank[m][w] < inst.men_rank[m][wc]


def test_min_regret_degree_examples(i0_pre):
    assert min_regret_degree(preprocess(tiny_unique_instance())) == 1
    enumerated = enumerate_stable_matchings(i0_pre)
    best = min(matching_degree(i0_pre, M) for M in enumerated)
    assert min_regret_degree(i0_pre) == best
    assert min_regret_degree(preprocess(generate_I1(4))) == 2


def test_min_regret_degree_matches_enumeration_on_random_instances():
    for seed in range(12):
        inst = preprocess(generate_uniform(6, 6, 1.0 if seed % 2 else 0.6, seed=seed))
        if inst.n_men == 0:
            continue
        enumerated = enumerate_stable_matchings(inst)
        best = min(matching_degree(inst, M) for M in enumerated)
        assert min_regret_degree(inst) == best


def test_truncate_full_depth_is_identity(i0_pre):
    assert truncate(i0_pre, i0_pre.n_men).instance == i0_pre


def test_truncate_at_min_regret_stays_stable_in_original():
    for seed in range(10):
        inst = preprocess(generate_uniform(7, 7, 1.0, seed=100 + seed))
        d = min_regret_degree(inst)
        trunc = truncate(inst, d)
        assert trunc.cutoff == d and trunc.base == inst
        matching = man_optimal(trunc.instance)
        assert is_stable(inst, matching)
        assert matching_degree(inst, matching) <= d


def test_truncate_keeps_original_ranks(i0_pre):
    d = min_regret_degree(i0_pre)
    trunc = truncate(i0_pre, d).instance
    for m in range(1, trunc.n_men + 1):
        for w in trunc.men_lists[m]:
            assert trunc.men_rank[m][w] == i0_pre.men_rank[m][w]
            assert trunc.men_rank[m][w] <= d
            assert trunc.women_rank[w][m] <= d


def test_truncate_pair_count_bound(i0_pre):
    d = min_regret_degree(i0_pre)
    trunc = truncate(i0_pre, d).instance
    n = i0_pre.n_men
    assert trunc.acceptable_pairs <= min(i0_pre.acceptable_pairs, n * d)


def test_truncate_i1_blocks_collapse_to_partners():
    # In the paired-block family each woman's first choice ranks her last,
    # so cutting at rank 2 leaves exactly the block-diagonal pairs.
    inst = preprocess(generate_I1(4))
    trunc = truncate(inst, 2).instance
    for j in range(1, 5):
        assert trunc.women_lists[j] == (j,)
    for i in range(1, 5):
        assert trunc.men_lists[i] == (i,)


def test_min_regret_degree_on_rank_sparse_instance(i0_pre):
    # A truncated instance keeps the base ranks, which can exceed its list
    # lengths; the search must still find the right cutoff.
    d = min_regret_degree(i0_pre)
    trunc = truncate(i0_pre, d).instance
    assert min_regret_degree(trunc) == d


def test_truncate_below_min_regret_raises(i0_pre):
    d = min_regret_degree(i0_pre)
    with pytest.raises(ValueError):
        truncate(i0_pre, d - 1)


def test_gs_outputs_always_stable():
    for seed in range(15):
        inst = preprocess(generate_uniform(6, 7, 0.7, seed=200 + seed))
        assert is_stable(inst, man_optimal(inst))
        assert is_stable(inst, woman_optimal(inst))


def test_lattice_bounds_on_enumerated_matchings():
    for seed in range(8):
        inst = preprocess(generate_uniform(6, 6, 1.0, seed=300 + seed))
        if inst.n_men == 0:
            continue
        m0, mz = man_optimal(inst), woman_optimal(inst)
        for matching in enumerate_stable_matchings(inst):
            for m, w in matching:
                r = inst.men_rank[m][w]
                assert inst.men_rank[m][m0.wife_of(m)] <= r
                assert r <= inst.men_rank[m][mz.wife_of(m)]
                rw = inst.women_rank[w][m]
                assert inst.women_rank[w][mz.husband_of(w)] <= rw
                assert rw <= inst.women_rank[w][m0.husband_of(w)]
