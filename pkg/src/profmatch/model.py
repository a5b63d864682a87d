"""Two-sided preference instances, matchings, and matching profiles.

An instance holds, for each man and each woman, an ordered list of
acceptable partners on the other side plus a rank table.  Acceptability is
always mutual.  Indices are 1-based (slot 0 of every per-agent table is a
stub) to match the usual presentation of these problems.

Ranks are stored explicitly rather than recomputed from list positions so
that derived instances (truncated preference lists) can keep the ranks of
the instance they were derived from.

Instances built by :func:`parse_instance` or :meth:`Instance.from_lists`
have rank == list position.  :func:`preprocess` removes every agent that is
unassigned in all stable matchings (one proposal round identifies them) and
re-indexes densely, keeping a map back to the original indices.

Text format (ASCII, LF newlines, no comments)::

    line 1:                 <n_men> <n_women>
    lines 2 .. n_men+1:     man i's list, 1-based woman indices, best first
    next n_women lines:     women's lists symmetrically

An empty line is an empty preference list.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, NamedTuple, Optional, Sequence

from .profiles import Profile


class Side(Enum):
    MAN = "man"
    WOMAN = "woman"


class AgentRef(NamedTuple):
    """One agent, identified by side and 1-based index."""

    side: Side
    index: int


class ParseError(ValueError):
    """Raised on malformed instance text; the message names the line."""


@dataclass(frozen=True)
class Instance:
    """Immutable SMI instance with mutual acceptability.

    ``men_lists[i]`` / ``women_lists[j]`` are preference-ordered tuples of
    opposite-side indices; index 0 of the outer tuples is an empty stub.
    ``men_rank[i][w]`` is man i's rank of woman w (0 = unacceptable), and
    symmetrically for ``women_rank``.  ``orig_men`` / ``orig_women`` map
    dense indices back to the indices of the instance this one was derived
    from (identity for freshly parsed instances).
    """

    men_lists: tuple[tuple[int, ...], ...]
    women_lists: tuple[tuple[int, ...], ...]
    men_rank: tuple[tuple[int, ...], ...]
    women_rank: tuple[tuple[int, ...], ...]
    orig_men: tuple[int, ...] = field(default=())
    orig_women: tuple[int, ...] = field(default=())

    @classmethod
    def from_lists(
        cls,
        men_lists: Sequence[Sequence[int]],
        women_lists: Sequence[Sequence[int]],
        orig_men: Optional[Sequence[int]] = None,
        orig_women: Optional[Sequence[int]] = None,
    ) -> "Instance":
        """Build an instance with rank == list position; validates invariants."""
        n_men, n_women = len(men_lists), len(women_lists)
        m_lists = [()] + [tuple(int(w) for w in lst) for lst in men_lists]
        w_lists = [()] + [tuple(int(m) for m in lst) for lst in women_lists]
        m_rank = _positional_ranks(m_lists, n_women, "man", "woman")
        w_rank = _positional_ranks(w_lists, n_men, "woman", "man")
        for i in range(1, n_men + 1):
            for w in m_lists[i]:
                if w_rank[w][i] == 0:
                    raise ValueError(
                        f"acceptability is not mutual: man {i} lists woman {w} "
                        f"but not vice versa"
                    )
        om = tuple(range(n_men + 1)) if orig_men is None else tuple(orig_men)
        ow = tuple(range(n_women + 1)) if orig_women is None else tuple(orig_women)
        return cls(tuple(m_lists), tuple(w_lists), m_rank, w_rank, om, ow)

    @property
    def n_men(self) -> int:
        return len(self.men_lists) - 1

    @property
    def n_women(self) -> int:
        return len(self.women_lists) - 1

    @property
    def total_list_length(self) -> int:
        """Total length of all preference lists, both sides (twice the pairs)."""
        return sum(len(lst) for lst in self.men_lists) + sum(
            len(lst) for lst in self.women_lists
        )

    @property
    def acceptable_pairs(self) -> int:
        return sum(len(lst) for lst in self.men_lists)

    def rank_of_woman(self, man: int, woman: int) -> int:
        return self.men_rank[man][woman]

    def rank_of_man(self, woman: int, man: int) -> int:
        return self.women_rank[woman][man]

    def acceptable(self, man: int, woman: int) -> bool:
        return self.men_rank[man][woman] > 0

    def man_list_position(self, man: int, woman: int) -> int:
        """0-based position of an acceptable woman in a man's list.

        Ranks increase strictly along a list, so the position can be found
        by bisection even when ranks are sparse (truncated instances).
        """
        row = self.men_rank[man]
        return bisect_left(self.men_lists[man], row[woman], key=row.__getitem__)

    def pref_list(self, agent: AgentRef) -> tuple[int, ...]:
        lists = self.men_lists if agent.side is Side.MAN else self.women_lists
        return lists[agent.index]

    def rank(self, agent: AgentRef, other_index: int) -> int:
        table = self.men_rank if agent.side is Side.MAN else self.women_rank
        return table[agent.index][other_index]


def _positional_ranks(
    lists: list[tuple[int, ...]], n_other: int, side: str, other: str
) -> tuple[tuple[int, ...], ...]:
    rows = [(0,) * (n_other + 1)]
    for i, lst in enumerate(lists[1:], start=1):
        row = [0] * (n_other + 1)
        for pos, j in enumerate(lst, start=1):
            if not 1 <= j <= n_other:
                raise ValueError(f"{side} {i} lists {other} {j}, out of range 1..{n_other}")
            if row[j]:
                raise ValueError(f"{side} {i} lists {other} {j} more than once")
            row[j] = pos
        rows.append(tuple(row))
    return tuple(rows)


class Matching:
    """A set of disjoint man-woman pairs (each agent in at most one pair)."""

    __slots__ = ("_pairs", "_wife", "_husband")

    def __init__(self, pairs=()):
        ps = sorted((int(a), int(b)) for a, b in pairs)
        wife: dict[int, int] = {}
        husband: dict[int, int] = {}
        for m, w in ps:
            if m in wife:
                raise ValueError(f"man {m} appears in two pairs")
            if w in husband:
                raise ValueError(f"woman {w} appears in two pairs")
            wife[m] = w
            husband[w] = m
        self._pairs = tuple(ps)
        self._wife = wife
        self._husband = husband

    @classmethod
    def from_wife_array(cls, wife: Sequence[int]) -> "Matching":
        """Build from a 1-based array mapping man -> woman (0 = unmatched)."""
        return cls((m, w) for m, w in enumerate(wife) if m >= 1 and w)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return self._pairs

    def wife_of(self, man: int) -> Optional[int]:
        return self._wife.get(man)

    def husband_of(self, woman: int) -> Optional[int]:
        return self._husband.get(woman)

    def wife_array(self, n_men: int) -> list[int]:
        arr = [0] * (n_men + 1)
        for m, w in self._pairs:
            arr[m] = w
        return arr

    def validate_in(self, inst: Instance) -> None:
        """Raise ValueError unless every pair is mutually acceptable in inst."""
        for m, w in self._pairs:
            if not (1 <= m <= inst.n_men and 1 <= w <= inst.n_women):
                raise ValueError(f"pair ({m},{w}) references unknown agents")
            if not inst.acceptable(m, w):
                raise ValueError(f"pair ({m},{w}) is not mutually acceptable")

    def is_perfect(self, inst: Instance) -> bool:
        return len(self._pairs) == inst.n_men == inst.n_women

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._pairs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matching) and self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __repr__(self) -> str:
        return f"Matching({list(self._pairs)!r})"


def parse_instance(text: str, warnings: Optional[list[str]] = None) -> Instance:
    """Parse the text format; non-mutual entries are dropped, not rejected.

    Dropped entries are reported through the optional ``warnings`` list.
    Malformed integers, out-of-range indices and duplicate entries raise
    :class:`ParseError` naming the offending line.
    """
    lines = text.split("\n")
    if not lines or not lines[0].strip():
        raise ParseError("line 1: expected '<n_men> <n_women>'")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("line 1: expected exactly two integers '<n_men> <n_women>'")
    try:
        n_men, n_women = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError(f"line 1: malformed integer in header: {exc}") from None
    if n_men < 0 or n_women < 0:
        raise ParseError("line 1: agent counts must be non-negative")

    needed = 1 + n_men + n_women
    while len(lines) > needed and not lines[-1].strip():
        lines.pop()
    if len(lines) != needed:
        raise ParseError(
            f"expected {needed} lines (header plus one list per agent), got {len(lines)}"
        )

    def read_lists(start: int, count: int, n_other: int, side: str, other: str):
        out = []
        for k in range(count):
            lineno = start + k + 1
            seen = set()
            lst = []
            for tok in lines[start + k].split():
                try:
                    j = int(tok)
                except ValueError:
                    raise ParseError(f"line {lineno}: malformed integer {tok!r}") from None
                if not 1 <= j <= n_other:
                    raise ParseError(
                        f"line {lineno}: {other} index {j} out of range 1..{n_other}"
                    )
                if j in seen:
                    raise ParseError(f"line {lineno}: duplicate entry {j} in {side}'s list")
                seen.add(j)
                lst.append(j)
            out.append(lst)
        return out

    men_raw = read_lists(1, n_men, n_women, "man", "woman")
    women_raw = read_lists(1 + n_men, n_women, n_men, "woman", "man")

    men_sets = [set(lst) for lst in men_raw]
    women_sets = [set(lst) for lst in women_raw]
    men_lists, women_lists = [], []
    for i, lst in enumerate(men_raw, start=1):
        kept = [w for w in lst if i in women_sets[w - 1]]
        if warnings is not None:
            for w in lst:
                if i not in women_sets[w - 1]:
                    warnings.append(
                        f"man {i} lists woman {w} but not vice versa; entry dropped"
                    )
        men_lists.append(kept)
    for j, lst in enumerate(women_raw, start=1):
        kept = [m for m in lst if j in men_sets[m - 1]]
        if warnings is not None:
            for m in lst:
                if j not in men_sets[m - 1]:
                    warnings.append(
                        f"woman {j} lists man {m} but not vice versa; entry dropped"
                    )
        women_lists.append(kept)

    return Instance.from_lists(men_lists, women_lists)


def format_instance(inst: Instance) -> str:
    """Serialise an instance in the text format (inverse of parse_instance)."""
    out = [f"{inst.n_men} {inst.n_women}"]
    for i in range(1, inst.n_men + 1):
        out.append(" ".join(str(w) for w in inst.men_lists[i]))
    for j in range(1, inst.n_women + 1):
        out.append(" ".join(str(m) for m in inst.women_lists[j]))
    return "\n".join(out) + "\n"


def gs_propose(
    prop_lists: Sequence[Sequence[int]],
    recv_rank: Sequence[Sequence[int]],
    n_prop: int,
    n_recv: int,
) -> list[int]:
    """Deferred acceptance with the given side proposing.

    Returns the 1-based proposer -> receiver assignment (0 = unmatched).
    Proposers are processed in ascending index order so runs are
    reproducible, although the outcome is order-independent.
    """
    next_pos = [0] * (n_prop + 1)
    recv_match = [0] * (n_recv + 1)
    prop_match = [0] * (n_prop + 1)
    free = list(range(n_prop, 0, -1))
    while free:
        p = free.pop()
        lst = prop_lists[p]
        i = next_pos[p]
        while i < len(lst):
            r = lst[i]
            i += 1
            rank_row = recv_rank[r]
            cur = recv_match[r]
            if cur == 0:
                recv_match[r] = p
                prop_match[p] = r
                break
            if rank_row[p] < rank_row[cur]:
                recv_match[r] = p
                prop_match[p] = r
                prop_match[cur] = 0
                free.append(cur)
                break
        next_pos[p] = i
    return prop_match


def preprocess(inst: Instance) -> Instance:
    """Strip agents that no stable matching assigns; re-index densely.

    The same agents are assigned in every stable matching, so one proposer
    round identifies exactly who can be removed.  The result has equally
    many men and women, every one of whom is matched in every stable
    matching, and positional ranks over the filtered lists.
    """
    wife = gs_propose(inst.men_lists, inst.women_rank, inst.n_men, inst.n_women)
    kept_men = [m for m in range(1, inst.n_men + 1) if wife[m]]
    kept_women = sorted(wife[m] for m in kept_men)
    new_m = {old: new for new, old in enumerate(kept_men, start=1)}
    new_w = {old: new for new, old in enumerate(kept_women, start=1)}
    men_lists = [
        [new_w[w] for w in inst.men_lists[old] if w in new_w] for old in kept_men
    ]
    women_lists = [
        [new_m[m] for m in inst.women_lists[old] if m in new_m] for old in kept_women
    ]
    orig_men = (0,) + tuple(inst.orig_men[old] for old in kept_men)
    orig_women = (0,) + tuple(inst.orig_women[old] for old in kept_women)
    return Instance.from_lists(men_lists, women_lists, orig_men, orig_women)


def profile_of(inst: Instance, matching: Matching) -> Profile:
    """Profile of a matching: entry k counts men plus women at rank k."""
    matching.validate_in(inst)
    counts: dict[int, int] = {}
    for m, w in matching:
        rm = inst.men_rank[m][w]
        rw = inst.women_rank[w][m]
        counts[rm] = counts.get(rm, 0) + 1
        counts[rw] = counts.get(rw, 0) + 1
    if not counts:
        return Profile.zero()
    top = max(counts)
    return Profile(counts.get(k, 0) for k in range(1, top + 1))
