"""Flow network with vector capacities ordered lexicographically.

The network is built over the rotation digraph: a source s, a sink t, one
node per rotation.  Rotation-to-rotation edges are uncapacitated; each
rotation whose weight vector is lexicographically negative hangs off s with
capacity equal to the sign-flipped vector, and each positive rotation feeds
t with its vector as capacity.  Vectors form a totally ordered abelian
group, so the classic augmenting-path argument goes through unchanged:
residual capacities are vector differences, the bottleneck along a path is
the lexicographic minimum, and breadth-first (shortest) augmenting paths
guarantee termination after O(V*E) augmentations independently of the
capacity values.

When no augmenting path remains, the set of residual-reachable nodes yields
a cut whose capacity equals the flow value entry by entry; that cut is
lexicographically minimum, and the positive rotations whose sink edges
escape it, together with their digraph ancestors, form the closed subset of
maximum total profile.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .profiles import Profile
from .rotations import RotationDigraph

SOURCE = -1
SINK = -2

POSITIVE = 1
NEGATIVE = -1
ZERO = 0


@dataclass(frozen=True)
class VbCapacity:
    """Finite vector capacity, or the symbolic infinite marker (vec is None)."""

    vec: Optional[Profile]

    @classmethod
    def finite(cls, vec: Profile) -> "VbCapacity":
        if vec < Profile.zero():
            raise ValueError("finite capacities must be lexicographically non-negative")
        return cls(vec)

    @classmethod
    def infinite(cls) -> "VbCapacity":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.vec is None

    def display(self) -> str:
        return "INF" if self.vec is None else self.vec.display()


@dataclass(frozen=True)
class VbEdge:
    u: int
    v: int
    cap: VbCapacity


class VbNetwork:
    """Immutable network; nodes are rotation ids plus SOURCE and SINK."""

    def __init__(self, n_rotations: int, edges: list[VbEdge], polarity: list[int]):
        self.n_rotations = n_rotations
        self.edges = tuple(edges)
        self.polarity = tuple(polarity)
        out_edges: dict[int, list[int]] = {SOURCE: [], SINK: []}
        in_edges: dict[int, list[int]] = {SOURCE: [], SINK: []}
        for r in range(n_rotations):
            out_edges[r] = []
            in_edges[r] = []
        for ei, e in enumerate(self.edges):
            out_edges[e.u].append(ei)
            in_edges[e.v].append(ei)
        self.out_edges = out_edges
        self.in_edges = in_edges

    def sink_edge_of(self, rid: int) -> Optional[int]:
        for ei in self.out_edges.get(rid, ()):
            if self.edges[ei].v == SINK:
                return ei
        return None

    def node_name(self, node: int) -> str:
        if node == SOURCE:
            return "s"
        if node == SINK:
            return "t"
        return f"r{node}"


@dataclass(frozen=True)
class VbFlow:
    """Per-edge flow vectors plus the total value leaving the source."""

    edge_flows: tuple[Profile, ...]
    value: Profile


@dataclass(frozen=True)
class Cut:
    """An s-t cut: its edges and the vector sum of their capacities."""

    edges: frozenset[tuple[int, int]]
    capacity: Profile


def build_vb_network(profiles: list[Profile], digraph: RotationDigraph) -> VbNetwork:
    """Network over the digraph with the given per-rotation weight vectors.

    Zero vectors get no terminal edge; the node still relays flow.
    """
    if len(profiles) != digraph.size:
        raise ValueError("one weight vector per digraph node is required")
    polarity = [p.sign for p in profiles]
    edges: list[VbEdge] = []
    for u, v, _labels in digraph.edges():
        edges.append(VbEdge(u, v, VbCapacity.infinite()))
    for rid, p in enumerate(profiles):
        if polarity[rid] == NEGATIVE:
            edges.append(VbEdge(SOURCE, rid, VbCapacity.finite(p.abs_value())))
    for rid, p in enumerate(profiles):
        if polarity[rid] == POSITIVE:
            edges.append(VbEdge(rid, SINK, VbCapacity.finite(p)))
    return VbNetwork(len(profiles), edges, polarity)


def _residual_search(
    net: VbNetwork, flows: list[Profile], stop_at_sink: bool
) -> dict[int, Optional[tuple[int, bool]]]:
    """BFS over the residual graph from SOURCE.

    Returns node -> (edge index, is_forward) parent links; SOURCE maps to
    None.  Residual edges: forward while flow < capacity (always, for
    infinite capacities), backward while flow > 0, both under lex order.
    """
    zero = Profile.zero()
    prev: dict[int, Optional[tuple[int, bool]]] = {SOURCE: None}
    queue = deque([SOURCE])
    while queue:
        u = queue.popleft()
        for ei in net.out_edges[u]:
            e = net.edges[ei]
            if e.v not in prev and (e.cap.is_infinite or flows[ei] < e.cap.vec):
                prev[e.v] = (ei, True)
                if stop_at_sink and e.v == SINK:
                    return prev
                queue.append(e.v)
        for ei in net.in_edges[u]:
            e = net.edges[ei]
            if e.u not in prev and flows[ei] > zero:
                prev[e.u] = (ei, False)
                if stop_at_sink and e.u == SINK:
                    return prev
                queue.append(e.u)
    return prev


def max_vb_flow(net: VbNetwork) -> VbFlow:
    """Maximum flow by shortest augmenting paths with vector arithmetic.

    Each augmentation pushes the lexicographic minimum of the finite
    residual capacities along a shortest s-t path.  Every s-t path starts
    and ends with a finite-capacity edge, so the bottleneck is always
    defined and lexicographically positive; the Edmonds-Karp bound on the
    number of augmentations is combinatorial and applies verbatim to
    ordered-group capacities.
    """
    flows: list[Profile] = [Profile.zero()] * len(net.edges)
    while True:
        prev = _residual_search(net, flows, stop_at_sink=True)
        if SINK not in prev:
            break
        path: list[tuple[int, bool]] = []
        node = SINK
        while node != SOURCE:
            step = prev[node]
            assert step is not None
            path.append(step)
            ei, forward = step
            node = net.edges[ei].u if forward else net.edges[ei].v
        bottleneck: Optional[Profile] = None
        for ei, forward in path:
            e = net.edges[ei]
            if forward:
                if e.cap.is_infinite:
                    continue
                room = e.cap.vec - flows[ei]
            else:
                room = flows[ei]
            if bottleneck is None or room < bottleneck:
                bottleneck = room
        assert bottleneck is not None and bottleneck > Profile.zero()
        for ei, forward in path:
            flows[ei] = flows[ei] + bottleneck if forward else flows[ei] - bottleneck
    value = Profile.zero()
    for ei in net.out_edges[SOURCE]:
        value = value + flows[ei]
    return VbFlow(tuple(flows), value)


def min_cut(net: VbNetwork, flow: VbFlow) -> Cut:
    """Cut between residual-reachable nodes and the rest; capacity == value.

    Raises ValueError if the flow still admits an augmenting path.
    """
    flows = list(flow.edge_flows)
    reach = _residual_search(net, flows, stop_at_sink=False)
    if SINK in reach:
        raise ValueError("flow admits an augmenting path; compute max_vb_flow first")
    cut_edges = []
    capacity = Profile.zero()
    for e in net.edges:
        if e.u in reach and e.v not in reach:
            if e.cap.is_infinite:
                raise RuntimeError("minimum cut crossed an uncapacitated edge")
            cut_edges.append((e.u, e.v))
            capacity = capacity + e.cap.vec
    return Cut(frozenset(cut_edges), capacity)


def max_profile_closed_subset(
    net: VbNetwork, digraph: RotationDigraph, cut: Cut
) -> frozenset[int]:
    """Closed rotation subset of lexicographically maximum total profile.

    Takes the positive rotations whose sink edges survive the cut and closes
    the set under digraph predecessors.
    """
    kept = [
        rid
        for rid in range(net.n_rotations)
        if net.polarity[rid] == POSITIVE and (rid, SINK) not in cut.edges
    ]
    subset = digraph.ancestors(kept)
    if not digraph.is_closed(subset):
        raise RuntimeError("ancestor closure failed to produce a closed subset")
    return subset


def dump_network(net: VbNetwork, flow: Optional[VbFlow] = None) -> str:
    """Edge list ``u -> v : cap | flow`` with INF for infinite capacities."""
    lines = []
    for ei, e in enumerate(net.edges):
        line = f"{net.node_name(e.u)} -> {net.node_name(e.v)} : {e.cap.display()}"
        if flow is not None:
            line += f" | {flow.edge_flows[ei].display()}"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")
