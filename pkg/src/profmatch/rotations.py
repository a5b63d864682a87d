"""Rotations: extraction, precedence digraph, and closed-subset elimination.

A rotation is an ordered cycle of man-woman pairs inside a stable matching;
re-assigning each man to the next woman in the cycle yields another stable
matching one step down the man-lattice.  Every run from the man-optimal to
the woman-optimal matching eliminates each rotation of the instance exactly
once, which is how :func:`find_rotations` collects them all.

The digraph records two kinds of forced precedence between rotations:

* type 1 -- a rotation containing pair (m, w) is preceded by the unique
  rotation that moves m to w;
* type 2 -- a rotation moving m below some woman w is preceded by the
  rotation that moves w above m (when that is a different rotation).

Predecessor-closed vertex sets of this digraph correspond one-to-one with
the stable matchings of the instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Instance, Matching, gs_propose
from .profiles import Profile


@dataclass(frozen=True)
class Rotation:
    """A rotation: cycle[i] = (man, his current wife); he moves to cycle[i+1]'s woman."""

    rid: int
    cycle: tuple[tuple[int, int], ...]
    profile: Profile

    def pair_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.cycle)


class RotationDigraph:
    """Directed graph over rotation ids with label sets on the edges."""

    def __init__(self, size: int, edge_labels: dict[tuple[int, int], frozenset[int]]):
        self._size = size
        self._labels = dict(sorted(edge_labels.items()))
        succs: list[list[int]] = [[] for _ in range(size)]
        preds: list[list[int]] = [[] for _ in range(size)]
        for u, v in self._labels:
            succs[u].append(v)
            preds[v].append(u)
        self._succs = tuple(tuple(s) for s in succs)
        self._preds = tuple(tuple(p) for p in preds)

    @property
    def size(self) -> int:
        return self._size

    def edges(self) -> tuple[tuple[int, int, frozenset[int]], ...]:
        return tuple((u, v, labs) for (u, v), labs in self._labels.items())

    def label_set(self, u: int, v: int) -> frozenset[int]:
        return self._labels.get((u, v), frozenset())

    def successors(self, u: int) -> tuple[int, ...]:
        return self._succs[u]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self._preds[v]

    def topological_order(self) -> list[int]:
        """Kahn's algorithm, smallest id first; raises on a cycle."""
        indeg = [len(self._preds[v]) for v in range(self._size)]
        import heapq

        ready = [v for v in range(self._size) if indeg[v] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            u = heapq.heappop(ready)
            order.append(u)
            for v in self._succs[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(ready, v)
        if len(order) != self._size:
            raise ValueError("precedence digraph contains a cycle")
        return order

    def ancestors(self, seeds) -> frozenset[int]:
        """Seeds plus everything reachable from them along predecessor edges."""
        out = set(seeds)
        stack = list(out)
        while stack:
            v = stack.pop()
            for u in self._preds[v]:
                if u not in out:
                    out.add(u)
                    stack.append(u)
        return frozenset(out)

    def is_closed(self, subset) -> bool:
        s = set(subset)
        return all(u in s for v in s for u in self._preds[v])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RotationDigraph)
            and self._size == other._size
            and self._labels == other._labels
        )

    def __repr__(self) -> str:
        return f"RotationDigraph(size={self._size}, edges={self.edges()!r})"


def find_rotations(inst: Instance) -> list[Rotation]:
    """All rotations of a preprocessed instance, in discovery order.

    Walks the man-lattice downward from the man-optimal matching.  For each
    man m the next woman on his list who strictly prefers m to her current
    partner defines a successor pointer; cycles of the successor map are
    exactly the rotations currently exposed, and eliminating them until none
    remain visits every rotation of the instance exactly once.

    Per-man scan pointers only ever advance (a woman who once rejected m
    keeps rejecting him as her partners improve), so the total scanning work
    is linear in the number of acceptable pairs.
    """
    n = inst.n_men
    if n == 0:
        return []
    wife = gs_propose(inst.men_lists, inst.women_rank, n, inst.n_women)
    if inst.n_women != n or any(wife[m] == 0 for m in range(1, n + 1)):
        raise ValueError("rotation extraction requires a preprocessed instance")
    husband = [0] * (inst.n_women + 1)
    for m in range(1, n + 1):
        husband[wife[m]] = m
    men_lists = inst.men_lists
    men_rank = inst.men_rank
    women_rank = inst.women_rank
    ptr = [0] * (n + 1)
    for m in range(1, n + 1):
        ptr[m] = inst.man_list_position(m, wife[m]) + 1

    rotations: list[Rotation] = []

    def extract(cycle_men: list[int]) -> None:
        # Canonical form: start the cycle at its smallest man index.
        k = len(cycle_men)
        lead = min(range(k), key=cycle_men.__getitem__)
        cycle_men = cycle_men[lead:] + cycle_men[:lead]
        pairs = tuple((m, wife[m]) for m in cycle_men)
        delta: dict[int, int] = {}

        def bump(rank: int, by: int) -> None:
            delta[rank] = delta.get(rank, 0) + by

        for idx in range(k):
            m = cycle_men[idx]
            m_next = cycle_men[(idx + 1) % k]
            w_old, w_new = wife[m], wife[m_next]
            bump(men_rank[m][w_old], -1)
            bump(men_rank[m][w_new], 1)
            bump(women_rank[w_new][m_next], -1)
            bump(women_rank[w_new][m], 1)
        top = max((r for r, d in delta.items() if d), default=0)
        profile = Profile(delta.get(r, 0) for r in range(1, top + 1))
        rotations.append(Rotation(len(rotations), pairs, profile))
        new_wives = [wife[cycle_men[(idx + 1) % k]] for idx in range(k)]
        for idx in range(k):
            m, w = cycle_men[idx], new_wives[idx]
            wife[m] = w
            husband[w] = m
            ptr[m] += 1

    while True:
        state = [0] * (n + 1)  # 0 fresh, 1 on current path, 2 settled this sweep
        progressed = False
        for start in range(1, n + 1):
            if state[start]:
                continue
            path: list[int] = []
            m = start
            while True:
                if state[m] == 1:
                    at = path.index(m)
                    extract(path[at:])
                    for x in path[at:]:
                        state[x] = 2
                    for x in path[:at]:
                        state[x] = 0
                    progressed = True
                    break
                if state[m] == 2:
                    for x in path:
                        state[x] = 2
                    break
                lst = men_lists[m]
                p = ptr[m]
                nxt = 0
                while p < len(lst):
                    w = lst[p]
                    if women_rank[w][m] < women_rank[w][husband[w]]:
                        nxt = w
                        break
                    p += 1
                ptr[m] = p
                if not nxt:
                    state[m] = 2
                    for x in path:
                        state[x] = 2
                    break
                state[m] = 1
                path.append(m)
                m = husband[nxt]
        if not progressed:
            break
    return rotations


def rotation_profile(inst: Instance, rotation: Rotation) -> Profile:
    """Net profile change caused by eliminating the rotation.

    Depends only on the cycle, not on the matching it is eliminated from.
    """
    cycle = rotation.cycle
    k = len(cycle)
    delta: dict[int, int] = {}

    def bump(rank: int, by: int) -> None:
        delta[rank] = delta.get(rank, 0) + by

    for idx in range(k):
        m, w_old = cycle[idx]
        m_next, w_new = cycle[(idx + 1) % k]
        bump(inst.men_rank[m][w_old], -1)
        bump(inst.men_rank[m][w_new], 1)
        bump(inst.women_rank[w_new][m_next], -1)
        bump(inst.women_rank[w_new][m], 1)
    top = max((r for r, d in delta.items() if d), default=0)
    return Profile(delta.get(r, 0) for r in range(1, top + 1))


def build_digraph(inst: Instance, rotations: list[Rotation]) -> RotationDigraph:
    """Precedence digraph with type-1/type-2 labels (merged per edge)."""
    mover: dict[tuple[int, int], int] = {}
    wmoves: dict[int, list[tuple[int, int, int]]] = {}
    for rot in rotations:
        k = len(rot.cycle)
        for idx, (m, _w) in enumerate(rot.cycle):
            m_next, w_next = rot.cycle[(idx + 1) % k]
            mover[(m, w_next)] = rot.rid
            # w_next's partner drops from rank `before` to rank `after`.
            wmoves.setdefault(w_next, []).append(
                (rot.rid, inst.women_rank[w_next][m_next], inst.women_rank[w_next][m])
            )

    labels: dict[tuple[int, int], set[int]] = {}

    def add(u: int, v: int, lab: int) -> None:
        labels.setdefault((u, v), set()).add(lab)

    for rot in rotations:
        k = len(rot.cycle)
        for idx, (m, w) in enumerate(rot.cycle):
            r1 = mover.get((m, w))
            if r1 is not None:
                add(r1, rot.rid, 1)
            _, w_next = rot.cycle[(idx + 1) % k]
            lst = inst.men_lists[m]
            a = inst.man_list_position(m, w)
            b = inst.man_list_position(m, w_next)
            for pos in range(a, b):
                wj = lst[pos]
                r_me = inst.women_rank[wj][m]
                for rid2, before, after in wmoves.get(wj, ()):
                    if after < r_me <= before:
                        if rid2 != rot.rid:
                            add(rid2, rot.rid, 2)
                        break
    return RotationDigraph(
        len(rotations), {e: frozenset(s) for e, s in labels.items()}
    )


def apply_rotation(wife: list[int], husband: list[int], cycle) -> None:
    """Advance each cycle man to the next woman, in place."""
    k = len(cycle)
    for m, w in cycle:
        if wife[m] != w:
            raise RuntimeError(f"rotation pair ({m},{w}) absent; rotation not exposed")
    new_wives = [cycle[(idx + 1) % k][1] for idx in range(k)]
    for idx in range(k):
        m = cycle[idx][0]
        wife[m] = new_wives[idx]
        husband[new_wives[idx]] = m


def eliminate_closed_subset(
    inst: Instance,
    man_opt: Matching,
    rotations: list[Rotation],
    digraph: RotationDigraph,
    subset,
) -> Matching:
    """Stable matching reached by eliminating a predecessor-closed rotation set.

    The subset is validated eagerly; its rotations are applied in
    topological order, each of which is guaranteed (and checked) to be
    exposed when its turn comes.
    """
    chosen = frozenset(subset)
    for rid in chosen:
        if not 0 <= rid < len(rotations):
            raise ValueError(f"unknown rotation id {rid}")
    if not digraph.is_closed(chosen):
        raise ValueError("rotation subset is not predecessor-closed")
    wife = man_opt.wife_array(inst.n_men)
    husband = [0] * (inst.n_women + 1)
    for m in range(1, inst.n_men + 1):
        if wife[m]:
            husband[wife[m]] = m
    for rid in digraph.topological_order():
        if rid in chosen:
            apply_rotation(wife, husband, rotations[rid].cycle)
    return Matching.from_wife_array(wife)


def dump_rotations(rotations: list[Rotation]) -> str:
    """One rotation per line: ``id: (i,j) (i,j) ... | profile``."""
    lines = []
    for rot in rotations:
        pairs = " ".join(f"({m},{w})" for m, w in rot.cycle)
        lines.append(f"{rot.rid}: {pairs} | {rot.profile.display()}")
    return "\n".join(lines) + ("\n" if lines else "")
