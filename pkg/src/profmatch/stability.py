"""Stable matchings: deferred acceptance, stability checks, regret, truncation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import Instance, Matching, gs_propose


def man_optimal(inst: Instance) -> Matching:
    """Man-optimal stable matching (perfect on a preprocessed instance)."""
    wife = gs_propose(inst.men_lists, inst.women_rank, inst.n_men, inst.n_women)
    return Matching.from_wife_array(wife)


def woman_optimal(inst: Instance) -> Matching:
    """Woman-optimal stable matching (perfect on a preprocessed instance)."""
    husband = gs_propose(inst.women_lists, inst.men_rank, inst.n_women, inst.n_men)
    return Matching((m, w) for w, m in enumerate(husband) if w >= 1 and m)


def blocking_pair(inst: Instance, matching: Matching) -> Optional[tuple[int, int]]:
    """A mutually acceptable pair preferring each other to their assignments.

    Returns None when the matching is stable.  An unmatched agent prefers
    every acceptable partner.  Scanning each man's list up to (not
    including) his current partner covers all candidate pairs.
    """
    matching.validate_in(inst)
    for m in range(1, inst.n_men + 1):
        w_cur = matching.wife_of(m)
        for w in inst.men_lists[m]:
            if w == w_cur:
                break
            h = matching.husband_of(w)
            if h is None or inst.women_rank[w][m] < inst.women_rank[w][h]:
                return (m, w)
    return None


def is_stable(inst: Instance, matching: Matching) -> bool:
    return blocking_pair(inst, matching) is None


@dataclass(frozen=True)
class TruncatedInstance:
    """An instance with every pair of rank > cutoff (either side) removed.

    ``instance`` keeps the base instance's ranks, so profiles computed on it
    line up rank-for-rank with profiles of the base instance.
    """

    base: Instance
    cutoff: int
    instance: Instance


def truncate(inst: Instance, cutoff: int) -> TruncatedInstance:
    """Drop every entry ranked worse than ``cutoff`` on either side.

    Raises ValueError if the truncation destroys all perfect stable
    matchings, i.e. if ``cutoff`` is below the minimum-regret degree.
    """
    if cutoff < 1:
        raise ValueError("cutoff rank must be >= 1")
    trunc = _truncated_instance(inst, cutoff)
    wife = gs_propose(trunc.men_lists, trunc.women_rank, trunc.n_men, trunc.n_women)
    if any(wife[m] == 0 for m in range(1, trunc.n_men + 1)) or trunc.n_men != trunc.n_women:
        raise ValueError(
            f"truncating at rank {cutoff} leaves no perfect stable matching"
        )
    return TruncatedInstance(inst, cutoff, trunc)


def _truncated_instance(inst: Instance, cutoff: int) -> Instance:
    men_rank, women_rank = inst.men_rank, inst.women_rank
    men_lists = [()]
    men_rows = [(0,) * (inst.n_women + 1)]
    for i in range(1, inst.n_men + 1):
        kept = tuple(
            w for w in inst.men_lists[i]
            if men_rank[i][w] <= cutoff and women_rank[w][i] <= cutoff
        )
        men_lists.append(kept)
        row = [0] * (inst.n_women + 1)
        for w in kept:
            row[w] = men_rank[i][w]
        men_rows.append(tuple(row))
    women_lists = [()]
    women_rows = [(0,) * (inst.n_men + 1)]
    for j in range(1, inst.n_women + 1):
        kept = tuple(
            m for m in inst.women_lists[j]
            if women_rank[j][m] <= cutoff and men_rank[m][j] <= cutoff
        )
        women_lists.append(kept)
        row = [0] * (inst.n_men + 1)
        for m in kept:
            row[m] = women_rank[j][m]
        women_rows.append(tuple(row))
    return Instance(
        tuple(men_lists),
        tuple(women_lists),
        tuple(men_rows),
        tuple(women_rows),
        inst.orig_men,
        inst.orig_women,
    )


def min_regret_degree(inst: Instance) -> int:
    """Smallest d such that truncating at rank d keeps a perfect stable matching.

    Equals the degree of every generous stable matching.  Feasibility is
    monotone in d (any stable matching of degree <= d survives truncation at
    d, and a perfect stable matching of the truncation is stable in the full
    instance), so a binary search over d with one proposal round per probe
    suffices.  Requires a preprocessed instance.
    """
    n = inst.n_men
    if n == 0:
        return 0

    def feasible(d: int) -> bool:
        trunc = _truncated_instance(inst, d)
        wife = gs_propose(trunc.men_lists, trunc.women_rank, n, inst.n_women)
        return all(wife[m] for m in range(1, n + 1))

    # Upper bound: the worst rank present anywhere (list lengths understate
    # it on instances whose ranks are inherited from a larger base).
    hi = 1
    for m in range(1, n + 1):
        for w in inst.men_lists[m]:
            r = inst.men_rank[m][w]
            if r > hi:
                hi = r
            r = inst.women_rank[w][m]
            if r > hi:
                hi = r
    if not feasible(hi):
        raise ValueError("instance admits no perfect stable matching; preprocess first")
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo
