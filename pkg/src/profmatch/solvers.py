"""Top-level solvers for profile-optimal and enumeration-backed criteria.

The flow-backed solvers (rank-maximal, generous) run the full pipeline:
rotations -> precedence digraph -> vector-capacity network -> max flow ->
min cut -> maximum-profile closed subset -> elimination from the
man-optimal matching.  The generous case first truncates preference lists
at the minimum-regret degree and swaps each rotation profile for its
reverse-negated image, after which the identical machinery applies.

Enumeration-backed criteria (egalitarian, sex-equal, median, minimum
regret) rank an explicit list of all stable matchings and refuse instances
whose count exceeds a cap.

``oracle_exponential_flow`` re-solves the same cut problem on a scalar
network whose capacities are exact exponential-weight integers.  It shares
no flow code with the vector pipeline on purpose: it exists to
cross-validate it.
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from math import ceil
from typing import Optional

from .model import Instance, Matching
from .profiles import Profile, high_weight
from .rotations import (
    Rotation,
    RotationDigraph,
    apply_rotation,
    build_digraph,
    eliminate_closed_subset,
    find_rotations,
)
from .stability import (
    blocking_pair,
    man_optimal,
    min_regret_degree,
    truncate,
    woman_optimal,
)
from .vbflow import build_vb_network, max_profile_closed_subset, max_vb_flow, min_cut


DEFAULT_ENUMERATION_CAP = 10**6


class Criterion(Enum):
    """Optimality criteria; values are the command-line tokens."""

    RANK_MAXIMAL = "rank-maximal"
    GENEROUS = "generous"
    EGALITARIAN = "egalitarian"
    SEX_EQUAL = "sex-equal"
    MEDIAN = "median"
    MIN_REGRET = "min-regret"
    MAN_OPTIMAL = "man-optimal"
    WOMAN_OPTIMAL = "woman-optimal"


ENUMERATION_BACKED = frozenset(
    {Criterion.EGALITARIAN, Criterion.SEX_EQUAL, Criterion.MEDIAN, Criterion.MIN_REGRET}
)


class EnumerationCapError(RuntimeError):
    """The instance has more stable matchings than the configured cap."""

    def __init__(self, cap: int):
        super().__init__(f"more than {cap} stable matchings; raise the cap to enumerate")
        self.cap = cap


def solve_rank_maximal(inst: Instance) -> Matching:
    """Stable matching with the lexicographically maximum profile."""
    m0 = man_optimal(inst)
    rotations = find_rotations(inst)
    if not rotations:
        return m0
    digraph = build_digraph(inst, rotations)
    subset = _optimal_closed_subset([r.profile for r in rotations], digraph)
    return eliminate_closed_subset(inst, m0, rotations, digraph, subset)


def solve_generous(inst: Instance) -> Matching:
    """Stable matching with the lexicographically minimum reverse profile.

    No agent does worse than the minimum-regret degree d in any generous
    matching, so preference lists are truncated at rank d first; maximising
    reverse-negated profiles over the truncation then reuses the
    rank-maximal machinery unchanged.  The output degree always equals d.
    """
    if inst.n_men == 0:
        return Matching(())
    degree = min_regret_degree(inst)
    trunc = truncate(inst, degree).instance
    m0 = man_optimal(trunc)
    rotations = find_rotations(trunc)
    if not rotations:
        return m0
    digraph = build_digraph(trunc, rotations)
    mapped = [r.profile.reverse_negate(degree) for r in rotations]
    subset = _optimal_closed_subset(mapped, digraph)
    return eliminate_closed_subset(trunc, m0, rotations, digraph, subset)


def _optimal_closed_subset(
    profiles: list[Profile], digraph: RotationDigraph
) -> frozenset[int]:
    net = build_vb_network(profiles, digraph)
    flow = max_vb_flow(net)
    cut = min_cut(net, flow)
    return max_profile_closed_subset(net, digraph, cut)


def enumerate_stable_matchings(
    inst: Instance, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[Matching]:
    """All stable matchings, man-optimal first, walking down the man-lattice.

    Breadth-first over predecessor-closed rotation subsets: each matching is
    reached by eliminating one exposed rotation from an already-emitted
    matching, so the list is ordered by closed-subset size.  Raises
    EnumerationCapError as soon as the count would exceed ``cap``.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    m0 = man_optimal(inst)
    rotations = find_rotations(inst)
    digraph = build_digraph(inst, rotations)
    out = [m0]
    seen = {frozenset()}
    queue = deque([(frozenset(), m0.wife_array(inst.n_men))])
    while queue:
        subset, wife = queue.popleft()
        for rot in rotations:
            if rot.rid in subset:
                continue
            if any(p not in subset for p in digraph.predecessors(rot.rid)):
                continue
            bigger = subset | {rot.rid}
            if bigger in seen:
                continue
            seen.add(bigger)
            wife2 = list(wife)
            husband2 = [0] * (inst.n_women + 1)
            for m in range(1, inst.n_men + 1):
                if wife2[m]:
                    husband2[wife2[m]] = m
            apply_rotation(wife2, husband2, rot.cycle)
            if len(out) + 1 > cap:
                raise EnumerationCapError(cap)
            out.append(Matching.from_wife_array(wife2))
            queue.append((bigger, wife2))
    return out


def _cost_pair(inst: Instance, matching: Matching) -> tuple[int, int]:
    man_cost = sum(inst.men_rank[m][w] for m, w in matching)
    woman_cost = sum(inst.women_rank[w][m] for m, w in matching)
    return man_cost, woman_cost


def matching_degree(inst: Instance, matching: Matching) -> int:
    """Worst rank over all assigned agents (0 for the empty matching)."""
    degree = 0
    for m, w in matching:
        degree = max(degree, inst.men_rank[m][w], inst.women_rank[w][m])
    return degree


def select_egalitarian(matchings: list[Matching], inst: Instance) -> Matching:
    """Minimum total rank; first enumerated wins ties."""
    if not matchings:
        raise ValueError("no matchings to select from")
    return min(matchings, key=lambda M: sum(_cost_pair(inst, M)))


def select_sex_equal(matchings: list[Matching], inst: Instance) -> Matching:
    """Minimum |man cost - woman cost|; first enumerated wins ties."""
    if not matchings:
        raise ValueError("no matchings to select from")

    def score(M: Matching) -> int:
        mc, wc = _cost_pair(inst, M)
        return abs(mc - wc)

    return min(matchings, key=score)


def select_min_regret(matchings: list[Matching], inst: Instance) -> Matching:
    """Minimum degree; first enumerated wins ties."""
    if not matchings:
        raise ValueError("no matchings to select from")
    return min(matchings, key=lambda M: matching_degree(inst, M))


def select_median(matchings: list[Matching], inst: Instance) -> Matching:
    """Generalised-median matching over the full enumeration.

    Pairs each man with the ceil(N/2)-th of his stable partners sorted by
    his own preference (a multiset; repeats count).  The assembled pair set
    is always itself a stable matching; both properties are verified.
    """
    if not matchings:
        raise ValueError("no matchings to select from")
    count = len(matchings)
    j = ceil(count / 2)
    pairs = []
    for m in range(1, inst.n_men + 1):
        partners = sorted(
            (M.wife_of(m) for M in matchings if M.wife_of(m) is not None),
            key=lambda w: inst.men_rank[m][w],
        )
        if not partners:
            continue
        if len(partners) != count:
            raise RuntimeError("median selection requires the full enumeration")
        pairs.append((m, partners[j - 1]))
    try:
        result = Matching(pairs)
    except ValueError as exc:
        raise RuntimeError(f"median assembly is not a matching: {exc}") from exc
    if blocking_pair(inst, result) is not None:
        raise RuntimeError("assembled median matching is not stable")
    return result


class OracleMode(Enum):
    RANK_MAX = "rank-max"
    GENEROUS = "generous"


def oracle_exponential_flow(
    rotations: list[Rotation],
    digraph: RotationDigraph,
    n: int,
    mode: OracleMode = OracleMode.RANK_MAX,
    window: Optional[int] = None,
) -> tuple[int, frozenset[int]]:
    """Exact scalar re-solution of the maximum-profile closed subset problem.

    Maps every rotation profile through the exponential weight function
    (after reverse-negation over ``window`` ranks in generous mode), builds
    the scalar flow network with arbitrary-precision capacities, and runs an
    independent breadth-first augmenting-path max flow.  Returns the max
    flow value and the closed subset derived from the residual cut.
    """
    profiles = [r.profile for r in rotations]
    if mode is OracleMode.GENEROUS:
        win = n if window is None else window
        profiles = [p.reverse_negate(win) for p in profiles]
    weights = [high_weight(p, n) for p in profiles]

    size = len(rotations)
    source, sink = size, size + 1
    # Edge record: [u, v, capacity, flow]; capacity None means uncapacitated.
    edges: list[list] = []
    adj: list[list[int]] = [[] for _ in range(size + 2)]
    radj: list[list[int]] = [[] for _ in range(size + 2)]

    def add_edge(u: int, v: int, cap: Optional[int]) -> None:
        adj[u].append(len(edges))
        radj[v].append(len(edges))
        edges.append([u, v, cap, 0])

    for u, v, _labels in digraph.edges():
        add_edge(u, v, None)
    for rid, wt in enumerate(weights):
        if wt < 0:
            add_edge(source, rid, -wt)
    for rid, wt in enumerate(weights):
        if wt > 0:
            add_edge(rid, sink, wt)

    def residual_bfs(stop_early: bool) -> dict[int, Optional[tuple[int, bool]]]:
        prev: dict[int, Optional[tuple[int, bool]]] = {source: None}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for ei in adj[u]:
                e = edges[ei]
                if e[1] not in prev and (e[2] is None or e[3] < e[2]):
                    prev[e[1]] = (ei, True)
                    if stop_early and e[1] == sink:
                        return prev
                    queue.append(e[1])
            for ei in radj[u]:
                e = edges[ei]
                if e[0] not in prev and e[3] > 0:
                    prev[e[0]] = (ei, False)
                    if stop_early and e[0] == sink:
                        return prev
                    queue.append(e[0])
        return prev

    while True:
        prev = residual_bfs(stop_early=True)
        if sink not in prev:
            break
        path = []
        node = sink
        while node != source:
            step = prev[node]
            assert step is not None
            path.append(step)
            ei, forward = step
            node = edges[ei][0] if forward else edges[ei][1]
        bottleneck: Optional[int] = None
        for ei, forward in path:
            e = edges[ei]
            if forward:
                if e[2] is None:
                    continue
                room = e[2] - e[3]
            else:
                room = e[3]
            if bottleneck is None or room < bottleneck:
                bottleneck = room
        assert bottleneck is not None and bottleneck > 0
        for ei, forward in path:
            edges[ei][3] += bottleneck if forward else -bottleneck

    value = sum(edges[ei][3] for ei in adj[source])
    reach = residual_bfs(stop_early=False)
    # The sink edge of rotation rid is cut exactly when rid stays reachable.
    kept = [rid for rid, wt in enumerate(weights) if wt > 0 and rid not in reach]
    return value, digraph.ancestors(kept)


def solve(
    inst: Instance, criterion: Criterion, cap: int = DEFAULT_ENUMERATION_CAP
) -> Matching:
    """Dispatch a preprocessed instance to the requested solver."""
    if criterion is Criterion.RANK_MAXIMAL:
        return solve_rank_maximal(inst)
    if criterion is Criterion.GENEROUS:
        return solve_generous(inst)
    if criterion is Criterion.MAN_OPTIMAL:
        return man_optimal(inst)
    if criterion is Criterion.WOMAN_OPTIMAL:
        return woman_optimal(inst)
    matchings = enumerate_stable_matchings(inst, cap)
    if criterion is Criterion.EGALITARIAN:
        return select_egalitarian(matchings, inst)
    if criterion is Criterion.SEX_EQUAL:
        return select_sex_equal(matchings, inst)
    if criterion is Criterion.MEDIAN:
        return select_median(matchings, inst)
    if criterion is Criterion.MIN_REGRET:
        return select_min_regret(matchings, inst)
    raise ValueError(f"unhandled criterion {criterion}")
