import pytest

from profmatch import (
    Matching,
    Profile,
    build_digraph,
    eliminate_closed_subset,
    enumerate_stable_matchings,
    find_rotations,
    generate_I1,
    generate_uniform,
    is_stable,
    man_optimal,
    preprocess,
    profile_of,
    rotation_profile,
    woman_optimal,
)
from profmatch.rotations import dump_rotations

from helpers import (
    I0_DIGRAPH_EDGES,
    I0_RANK_MAXIMAL,
    I0_ROTATIONS,
    all_closed_subsets,
    rotation_name_map,
    tiny_unique_instance,
)


def test_i0_rotations_match_textbook_set(i0_pre):
    rotations = find_rotations(i0_pre)
    assert len(rotations) == 5
    found = {rot.pair_set(): rot.profile for rot in rotations}
    assert found == I0_ROTATIONS


def test_find_rotations_requires_preprocessed():
    from profmatch import parse_instance

    lopsided = parse_instance("2 1\n1\n1\n1 2\n")
    with pytest.raises(ValueError, match="preprocessed"):
        find_rotations(lopsided)


def test_no_rotations_when_lattice_is_trivial():
    inst = preprocess(tiny_unique_instance())
    assert find_rotations(inst) == []
    digraph = build_digraph(inst, [])
    assert digraph.size == 0 and digraph.edges() == ()


def test_i1_rotations():
    inst = preprocess(generate_I1(4))
    rotations = find_rotations(inst)
    assert len(rotations) == 2
    assert {rot.pair_set() for rot in rotations} == {
        frozenset({(1, 1), (2, 2)}),
        frozenset({(3, 3), (4, 4)}),
    }
    for rot in rotations:
        assert rot.profile == Profile([0, -2, 0, 2])
    # The two rotations are incomparable: no precedence edges at all.
    assert build_digraph(inst, rotations).edges() == ()


def test_i0_digraph_matches_textbook_edges(i0_pre):
    rotations = find_rotations(i0_pre)
    digraph = build_digraph(i0_pre, rotations)
    names = rotation_name_map(rotations)
    got = {(names[u], names[v]): labels for u, v, labels in digraph.edges()}
    assert got == I0_DIGRAPH_EDGES


def test_rotation_profile_recomputation_matches(i0_pre):
    for rot in find_rotations(i0_pre):
        assert rotation_profile(i0_pre, rot) == rot.profile


def test_rotation_profiles_sum_to_lattice_spread():
    for seed in range(10):
        inst = preprocess(generate_uniform(7, 7, 1.0 if seed % 2 else 0.7, seed=400 + seed))
        if inst.n_men == 0:
            continue
        total = Profile.zero()
        for rot in find_rotations(inst):
            total = total + rot.profile
        spread = profile_of(inst, woman_optimal(inst)) - profile_of(inst, man_optimal(inst))
        assert total == spread


def test_rotation_profiles_sum_to_zero_entrywise():
    # Rotating partners keeps everyone matched, so gains equal losses.
    for seed in range(8):
        inst = preprocess(generate_uniform(7, 7, 1.0, seed=450 + seed))
        for rot in find_rotations(inst):
            assert sum(rot.profile.elements) == 0


def test_each_pair_in_at_most_one_rotation():
    for seed in range(10):
        inst = preprocess(generate_uniform(7, 7, 1.0, seed=500 + seed))
        seen = set()
        for rot in find_rotations(inst):
            for pair in rot.cycle:
                assert pair not in seen
                seen.add(pair)
            assert len(rot.cycle) >= 2


def test_rotation_delta_is_matching_independent():
    # Eliminating an exposed rotation from any stable matching shifts the
    # profile by exactly the rotation's profile.
    for seed in range(6):
        inst = preprocess(generate_uniform(6, 6, 1.0, seed=600 + seed))
        if inst.n_men == 0:
            continue
        rotations = find_rotations(inst)
        digraph = build_digraph(inst, rotations)
        m0 = man_optimal(inst)
        for subset in all_closed_subsets(digraph):
            before = eliminate_closed_subset(inst, m0, rotations, digraph, subset)
            for rot in rotations:
                if rot.rid in subset:
                    continue
                if not all(p in subset for p in digraph.predecessors(rot.rid)):
                    continue
                after = eliminate_closed_subset(
                    inst, m0, rotations, digraph, subset | {rot.rid}
                )
                assert profile_of(inst, after) == profile_of(inst, before) + rot.profile


def test_digraph_is_acyclic():
    for seed in range(10):
        inst = preprocess(generate_uniform(7, 7, 1.0, seed=700 + seed))
        rotations = find_rotations(inst)
        digraph = build_digraph(inst, rotations)
        order = digraph.topological_order()
        assert sorted(order) == list(range(len(rotations)))


def test_eliminate_golden_subset(i0_pre):
    rotations = find_rotations(i0_pre)
    digraph = build_digraph(i0_pre, rotations)
    names = rotation_name_map(rotations)
    subset = {rid for rid, name in names.items() if name in {0, 1, 2}}
    result = eliminate_closed_subset(i0_pre, man_optimal(i0_pre), rotations, digraph, subset)
    assert result == Matching(I0_RANK_MAXIMAL)


def test_eliminate_empty_and_full(i0_pre):
    rotations = find_rotations(i0_pre)
    digraph = build_digraph(i0_pre, rotations)
    m0 = man_optimal(i0_pre)
    assert eliminate_closed_subset(i0_pre, m0, rotations, digraph, set()) == m0
    full = set(range(len(rotations)))
    assert eliminate_closed_subset(i0_pre, m0, rotations, digraph, full) == woman_optimal(i0_pre)


def test_eliminate_full_subset_reaches_woman_optimal_randomly():
    for seed in range(8):
        inst = preprocess(generate_uniform(6, 6, 1.0, seed=800 + seed))
        if inst.n_men == 0:
            continue
        rotations = find_rotations(inst)
        digraph = build_digraph(inst, rotations)
        full = set(range(len(rotations)))
        got = eliminate_closed_subset(inst, man_optimal(inst), rotations, digraph, full)
        assert got == woman_optimal(inst)


def test_eliminate_rejects_unclosed_subset(i0_pre):
    rotations = find_rotations(i0_pre)
    digraph = build_digraph(i0_pre, rotations)
    names = rotation_name_map(rotations)
    rho1 = next(rid for rid, name in names.items() if name == 1)
    with pytest.raises(ValueError, match="closed"):
        eliminate_closed_subset(i0_pre, man_optimal(i0_pre), rotations, digraph, {rho1})
    with pytest.raises(ValueError, match="unknown rotation"):
        eliminate_closed_subset(i0_pre, man_optimal(i0_pre), rotations, digraph, {99})


def test_closed_subsets_biject_with_stable_matchings():
    for seed in range(10):
        inst = preprocess(generate_uniform(6, 6, 1.0 if seed % 2 else 0.65, seed=900 + seed))
        if inst.n_men == 0:
            continue
        rotations = find_rotations(inst)
        if len(rotations) > 12:
            continue
        digraph = build_digraph(inst, rotations)
        m0 = man_optimal(inst)
        subsets = all_closed_subsets(digraph)
        matchings = {
            eliminate_closed_subset(inst, m0, rotations, digraph, s) for s in subsets
        }
        assert len(matchings) == len(subsets)  # distinct subsets, distinct matchings
        assert matchings == set(enumerate_stable_matchings(inst))
        for matching in matchings:
            assert is_stable(inst, matching)


def test_dump_rotations_format(i0_pre):
    rotations = find_rotations(i0_pre)
    text = dump_rotations(rotations)
    lines = text.strip().split("\n")
    assert len(lines) == 5
    assert lines[0].startswith("0: ")
    assert " | " in lines[0]
    assert dump_rotations([]) == ""
