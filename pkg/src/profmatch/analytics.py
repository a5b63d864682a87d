"""Experiment measures, storage-size estimates, and instance generators."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass

from .model import Instance, Matching, preprocess
from .profiles import Profile
from .rotations import find_rotations
from .solvers import (
    Criterion,
    DEFAULT_ENUMERATION_CAP,
    ENUMERATION_BACKED,
    EnumerationCapError,
    enumerate_stable_matchings,
    solve,
)


@dataclass(frozen=True)
class MatchingStats:
    """Per-matching measures over a perfect stable matching."""

    cost: int
    man_cost: int
    woman_cost: int
    sex_equal: int
    degree: int
    man_degree: int
    woman_degree: int
    first_choices: int
    last_pct_counts: dict[int, int]


def last_choice_threshold(n: int, pct: int) -> int:
    """First rank counted as lying in the worst pct% of a length-n list.

    b = floor((100 - pct) * n / 100) + 1; agents with partner rank >= b are
    counted.  Reduces to the exact formula whenever (100 - pct) * n is a
    multiple of 100.
    """
    if not 0 < pct <= 100:
        raise ValueError("percentage must be in (0, 100]")
    return (100 - pct) * n // 100 + 1


def matching_stats(inst: Instance, matching: Matching, pct_list=(10, 20, 50)) -> MatchingStats:
    """Measures for a perfect matching on a preprocessed instance."""
    if not matching.is_perfect(inst):
        raise ValueError("stats are defined for perfect matchings only")
    n = inst.n_men
    man_ranks = [inst.men_rank[m][w] for m, w in matching]
    woman_ranks = [inst.women_rank[w][m] for m, w in matching]
    man_cost = sum(man_ranks)
    woman_cost = sum(woman_ranks)
    all_ranks = man_ranks + woman_ranks
    first = sum(1 for r in all_ranks if r == 1)
    last_counts = {}
    for pct in pct_list:
        b = last_choice_threshold(n, pct)
        last_counts[pct] = sum(1 for r in all_ranks if r >= b)
    return MatchingStats(
        cost=man_cost + woman_cost,
        man_cost=man_cost,
        woman_cost=woman_cost,
        sex_equal=abs(man_cost - woman_cost),
        degree=max(all_ranks, default=0),
        man_degree=max(man_ranks, default=0),
        woman_degree=max(woman_ranks, default=0),
        first_choices=first,
        last_pct_counts=last_counts,
    )


@dataclass(frozen=True)
class SpaceReport:
    """Bit counts for storing per-rotation edge weights two ways.

    The exponential side stores each weight w_e = |sum p_i * d_t^(d_t-i)| in
    ceil(log2 w_e) bits plus one 32-bit length word.  The vector side stores
    each profile compressed as its z nonzero (index, value) pairs --
    z*ceil(log2 n) index bits plus z*(ceil(log2 2n)+1) value bits -- plus a
    32-bit word for z, and two global 32-bit words for the whole network.
    """

    n: int
    max_degree: int
    exponential_bits: tuple[int, ...]
    vector_bits: tuple[int, ...]
    exponential_total: int
    vector_total: int


def _ceil_log2(value: int) -> int:
    return (value - 1).bit_length() if value >= 1 else 0


def space_report(rotation_profiles: list[Profile], n: int) -> SpaceReport:
    """Estimate storage for the terminal-edge weights of a rotation network."""
    d_t = max((p.degree for p in rotation_profiles), default=0)
    exp_bits: list[int] = []
    vec_bits: list[int] = []
    # Analytic profile families repeat one shared vector; memoise per object
    # so the huge exponential weight is evaluated once.
    cache: dict[int, tuple[int, int]] = {}
    idx_bits = _ceil_log2(n)
    val_bits = _ceil_log2(2 * n) + 1
    for p in rotation_profiles:
        if d_t == 0:
            exp_bits.append(32)
            vec_bits.append(32)
            continue
        cached = cache.get(id(p))
        if cached is None:
            w_e = abs(
                sum(e * d_t ** (d_t - i) for i, e in enumerate(p.elements, start=1) if e)
            )
            eb = (1 if w_e == 0 else _ceil_log2(w_e)) + 32
            z = sum(1 for e in p.elements if e)
            cached = (eb, 32 + z * idx_bits + z * val_bits)
            cache[id(p)] = cached
        exp_bits.append(cached[0])
        vec_bits.append(cached[1])
    return SpaceReport(
        n=n,
        max_degree=d_t,
        exponential_bits=tuple(exp_bits),
        vector_bits=tuple(vec_bits),
        exponential_total=sum(exp_bits),
        vector_total=sum(vec_bits) + 64,
    )


def _nearest_rank(sorted_values: list[int], pct: int) -> int:
    idx = max(0, -(-pct * len(sorted_values) // 100) - 1)
    return sorted_values[idx]


def space_trend_summary(reports: list[SpaceReport]) -> dict[str, float]:
    """Mean and 5th/95th-percentile totals over a batch of space reports.

    The percentile pair is the usual 90% band for trend plots; percentiles
    use the nearest-rank rule.
    """
    if not reports:
        raise ValueError("no reports to summarise")
    exp = sorted(r.exponential_total for r in reports)
    vec = sorted(r.vector_total for r in reports)
    return {
        "exponential_mean": sum(exp) / len(exp),
        "exponential_p5": _nearest_rank(exp, 5),
        "exponential_p95": _nearest_rank(exp, 95),
        "vector_mean": sum(vec) / len(vec),
        "vector_p5": _nearest_rank(vec, 5),
        "vector_p95": _nearest_rank(vec, 95),
    }


def generate_uniform(
    n_men: int, n_women: int, density: float, seed: int
) -> Instance:
    """Random instance with mutually acceptable pairs and shuffled lists.

    The acceptable-pair set is sampled first (each pair kept with
    probability ``density``), then each agent's list is an independent
    shuffle of their acceptable partners.  Deterministic for a fixed seed.
    """
    if n_men < 0 or n_women < 0:
        raise ValueError("agent counts must be non-negative")
    if not 0 < density <= 1:
        raise ValueError("density must lie in (0, 1]")
    rng = random.Random(seed)
    men_sets: list[list[int]] = [[] for _ in range(n_men + 1)]
    women_sets: list[list[int]] = [[] for _ in range(n_women + 1)]
    complete = density >= 1
    for m in range(1, n_men + 1):
        for w in range(1, n_women + 1):
            if complete or rng.random() < density:
                men_sets[m].append(w)
                women_sets[w].append(m)
    for m in range(1, n_men + 1):
        rng.shuffle(men_sets[m])
    for w in range(1, n_women + 1):
        rng.shuffle(women_sets[w])
    return Instance.from_lists(men_sets[1:], women_sets[1:])


def generate_I1(n: int) -> Instance:
    """Paired-block worst-case family of even size n >= 4.

    Man 2i-1 ranks woman 2i-1 first and woman 2i last (everyone else in
    ascending order between), and symmetrically for man 2i; woman 2i-1
    ranks man 2i then man 2i-1 ahead of everyone else, and symmetrically
    for woman 2i.  Each block contributes one rotation whose profile is
    <0, -2, 0, ..., 0, +2> with the +2 at rank n.
    """
    if n < 4 or n % 2:
        raise ValueError("the paired-block family needs an even size of at least 4")
    men_lists = []
    women_lists = []
    for i in range(1, n + 1):
        mate = i + 1 if i % 2 else i - 1
        others = [w for w in range(1, n + 1) if w != i and w != mate]
        men_lists.append([i] + others + [mate])
        women_lists.append([mate, i] + others)
    return Instance.from_lists(men_lists, women_lists)


def i1_rotation_profiles(n: int) -> list[Profile]:
    """The n/2 rotation profiles of generate_I1(n), without extracting them."""
    if n < 4 or n % 2:
        raise ValueError("the paired-block family needs an even size of at least 4")
    template = Profile([0, -2] + [0] * (n - 3) + [2])
    return [template] * (n // 2)


def batch_stats(
    instances: list[tuple[str, Instance]],
    criteria: list[Criterion],
    pct_list=(10, 20, 50),
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> str:
    """CSV with one row per (instance, criterion).

    Instances are preprocessed here.  When the stable-matching count
    exceeds ``cap``, the count column and every enumeration-backed row are
    marked TIMEOUT instead of failing the whole batch.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = [
        "instance_id",
        "criterion",
        "n",
        "m",
        "num_rotations",
        "num_stable",
        "cost",
        "man_cost",
        "woman_cost",
        "sex_equal",
        "degree",
        "first_choices",
    ] + [f"last{p}" for p in pct_list]
    writer.writerow(header)
    for instance_id, raw in instances:
        inst = preprocess(raw)
        num_rotations = len(find_rotations(inst))
        try:
            num_stable: object = len(enumerate_stable_matchings(inst, cap))
        except EnumerationCapError:
            num_stable = "TIMEOUT"
        for criterion in criteria:
            row = [instance_id, criterion.value, inst.n_men, inst.total_list_length,
                   num_rotations, num_stable]
            if num_stable == "TIMEOUT" and criterion in ENUMERATION_BACKED:
                row += ["TIMEOUT"] * (6 + len(pct_list))
            else:
                matching = solve(inst, criterion, cap)
                stats = matching_stats(inst, matching, pct_list)
                row += [
                    stats.cost,
                    stats.man_cost,
                    stats.woman_cost,
                    stats.sex_equal,
                    stats.degree,
                    stats.first_choices,
                ] + [stats.last_pct_counts[p] for p in pct_list]
            writer.writerow(row)
    return out.getvalue()
