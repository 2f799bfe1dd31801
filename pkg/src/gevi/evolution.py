"""Cross-slot group linking and evolution-event classification.

Groups of slot i are linked to groups of slot i+1 whenever the modified
Jaccard measure meets the transition threshold ``th``; the resulting
dynamics graph is acyclic by construction.  Each edge then receives
exactly one event kind, decided in fixed precedence order:

1. addition / deletion -- the endpoint sizes differ by a factor >= ``sh``
   (a small group joins, or detaches from, a much larger one);
2. split_merge -- the source also feeds another similar-size successor
   AND the destination is also fed by another similar-size predecessor;
3. split -- only the source-side condition holds;
4. merge -- only the destination-side condition holds;
5. growth / decay / continuation -- by size comparison.

"Similar size" always means size ratio < ``sh``, measured against the
source for successor checks and against the destination for predecessor
checks.  Node events: a group with no incoming edge is a birth, one with
no outgoing edge is a death.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from gevi.cpm import Group


class EventKind(str, Enum):
    BIRTH = "birth"
    DEATH = "death"
    CONTINUATION = "continuation"
    GROWTH = "growth"
    DECAY = "decay"
    SPLIT = "split"
    MERGE = "merge"
    SPLIT_MERGE = "split_merge"
    ADDITION = "addition"
    DELETION = "deletion"


#: edge kinds drawn dashed by every renderer
DASHED_KINDS = frozenset({EventKind.ADDITION, EventKind.DELETION})


@dataclass(frozen=True)
class EvolutionParams:
    """Defaults reproduce the reference experiment settings."""

    th: float = 0.5
    sh: float = 10.0
    min_lifespan: int = 3

    def __post_init__(self) -> None:
        if not 0.0 < self.th <= 1.0:
            raise ValueError(f"th must be in (0, 1], got {self.th}")
        if self.sh <= 1.0:
            raise ValueError(f"sh must be > 1, got {self.sh}")
        if self.min_lifespan < 1:
            raise ValueError(f"min_lifespan must be >= 1, got {self.min_lifespan}")


@dataclass
class Transition:
    """Edge of the dynamics graph, slot i -> slot i+1."""

    src: Group
    dst: Group
    mj: float
    stability: float
    flow: int
    kind: EventKind | None = None

    @property
    def dashed(self) -> bool:
        return self.kind in DASHED_KINDS


@dataclass
class FlowAnnotation:
    """Member movement around one group.

    inflow/outflow sum per-edge flows and may double-count members shared
    by several overlapping neighbors; external_in/external_out are union
    complements (members arriving from, or leaving to, nowhere tracked).
    """

    inflow: int
    external_in: int
    outflow: int
    external_out: int


@dataclass
class EvolutionGraph:
    groups: list[Group]
    transitions: list[Transition]
    node_events: dict[str, list[EventKind]] = field(default_factory=dict)

    def group_by_label(self, label: str) -> Group | None:
        return {g.label: g for g in self.groups}.get(label)

    def incoming(self, group: Group) -> list[Transition]:
        return [t for t in self.transitions if t.dst == group]

    def outgoing(self, group: Group) -> list[Transition]:
        return [t for t in self.transitions if t.src == group]


def modified_jaccard(a: frozenset | set, b: frozenset | set) -> float:
    """max(|A∩B|/|A|, |A∩B|/|B|); 0 when either set is empty.

    Reaches 1 exactly when one non-empty set contains the other, which is
    what makes it catch containment-style continuation.
    """
    if not a or not b:
        return 0.0
    common = len(a & b)
    return max(common / len(a), common / len(b))


def size_ratio(a: frozenset | set, b: frozenset | set) -> float:
    """max(|A|/|B|, |B|/|A|) for non-empty sets; always >= 1."""
    if not a or not b:
        raise ValueError("size_ratio requires non-empty sets")
    return max(len(a) / len(b), len(b) / len(a))


def stability(src: frozenset | set, dst: frozenset | set) -> float:
    """Plain Jaccard |∩|/|∪|.  Never exceeds the modified Jaccard of the
    same pair, and collapses toward 0 on addition/deletion edges even
    when the modified Jaccard is 1."""
    if not src or not dst:
        raise ValueError("stability requires non-empty sets")
    return len(src & dst) / len(src | dst)


def find_transitions(
    groups_i: list[Group],
    groups_next: list[Group],
    params: EvolutionParams,
) -> list[Transition]:
    """All pairs across the two adjacent slots with mj >= th."""
    out = []
    for src in groups_i:
        for dst in groups_next:
            if dst.slot_index != src.slot_index + 1:
                raise ValueError(
                    f"groups {src.label} and {dst.label} are not in adjacent slots"
                )
            mj = modified_jaccard(src.members, dst.members)
            if mj >= params.th:
                out.append(
                    Transition(
                        src=src,
                        dst=dst,
                        mj=mj,
                        stability=stability(src.members, dst.members),
                        flow=len(src.members & dst.members),
                    )
                )
    return out


def build_evolution_graph(groups: list[Group], params: EvolutionParams) -> EvolutionGraph:
    """Link every adjacent slot pair and classify the result."""
    by_slot: dict[int, list[Group]] = {}
    for g in groups:
        by_slot.setdefault(g.slot_index, []).append(g)
    transitions: list[Transition] = []
    for slot in sorted(by_slot):
        nxt = by_slot.get(slot + 1)
        if nxt:
            transitions.extend(find_transitions(by_slot[slot], nxt, params))
    evolution = EvolutionGraph(groups=list(groups), transitions=transitions)
    classify_events(evolution, params)
    return evolution


def classify_events(evolution: EvolutionGraph, params: EvolutionParams) -> EvolutionGraph:
    """Assign one kind per edge and birth/death per node, in place."""
    succs: dict[str, list[Transition]] = {}
    preds: dict[str, list[Transition]] = {}
    for t in evolution.transitions:
        succs.setdefault(t.src.label, []).append(t)
        preds.setdefault(t.dst.label, []).append(t)

    for t in evolution.transitions:
        ds = size_ratio(t.src.members, t.dst.members)
        if ds >= params.sh:
            t.kind = (
                EventKind.ADDITION if t.dst.size > t.src.size else EventKind.DELETION
            )
            continue
        # another successor of src with size similar to src?
        splits = any(
            o.dst != t.dst and size_ratio(t.src.members, o.dst.members) < params.sh
            for o in succs[t.src.label]
        )
        # another predecessor of dst with size similar to dst?
        merges = any(
            o.src != t.src and size_ratio(o.src.members, t.dst.members) < params.sh
            for o in preds[t.dst.label]
        )
        if splits and merges:
            t.kind = EventKind.SPLIT_MERGE
        elif splits:
            t.kind = EventKind.SPLIT
        elif merges:
            t.kind = EventKind.MERGE
        elif t.dst.size > t.src.size:
            t.kind = EventKind.GROWTH
        elif t.dst.size < t.src.size:
            t.kind = EventKind.DECAY
        else:
            t.kind = EventKind.CONTINUATION

    evolution.node_events = {}
    for g in evolution.groups:
        events = []
        if g.label not in preds:
            events.append(EventKind.BIRTH)
        if g.label not in succs:
            events.append(EventKind.DEATH)
        if events:
            evolution.node_events[g.label] = events
    return evolution


def stable_groups(evolution: EvolutionGraph, params: EvolutionParams) -> set[str]:
    """Labels of groups lying on a transition path spanning at least
    min_lifespan consecutive slots (path length counted in slots)."""
    preds: dict[str, list[Group]] = {}
    succs: dict[str, list[Group]] = {}
    for t in evolution.transitions:
        preds.setdefault(t.dst.label, []).append(t.src)
        succs.setdefault(t.src.label, []).append(t.dst)

    ordered = sorted(evolution.groups, key=lambda g: g.slot_index)
    chain_up: dict[str, int] = {}  # longest chain ending here
    for g in ordered:
        chain_up[g.label] = 1 + max(
            (chain_up[p.label] for p in preds.get(g.label, [])), default=0
        )
    chain_down: dict[str, int] = {}  # longest chain starting here
    for g in reversed(ordered):
        chain_down[g.label] = 1 + max(
            (chain_down[s.label] for s in succs.get(g.label, [])), default=0
        )
    return {
        g.label
        for g in evolution.groups
        if chain_up[g.label] + chain_down[g.label] - 1 >= params.min_lifespan
    }


def hierarchies(evolution: EvolutionGraph) -> list[list[Group]]:
    """Weakly connected components, numbered by (earliest slot, smallest
    label) so hierarchy ids are reproducible.  Isolated groups form
    singleton hierarchies."""
    labels = [g.label for g in evolution.groups]
    index = {label: i for i, label in enumerate(labels)}
    parent = list(range(len(labels)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in evolution.transitions:
        ra, rb = find(index[t.src.label]), find(index[t.dst.label])
        if ra != rb:
            parent[rb] = ra

    components: dict[int, list[Group]] = {}
    for g in evolution.groups:
        components.setdefault(find(index[g.label]), []).append(g)
    ordered = []
    for member_groups in components.values():
        member_groups.sort(key=lambda g: (g.slot_index, g.ordinal))
        ordered.append(member_groups)
    ordered.sort(key=lambda gs: (gs[0].slot_index, gs[0].ordinal))
    return ordered


def member_flows(group: Group, evolution: EvolutionGraph) -> FlowAnnotation:
    """Aggregate inflow/outflow (per-edge sums) and the union-complement
    external joins/leaves for one group."""
    incoming = evolution.incoming(group)
    outgoing = evolution.outgoing(group)
    pred_union: set[str] = set()
    for t in incoming:
        pred_union |= t.src.members
    succ_union: set[str] = set()
    for t in outgoing:
        succ_union |= t.dst.members
    return FlowAnnotation(
        inflow=sum(t.flow for t in incoming),
        external_in=len(group.members - pred_union),
        outflow=sum(t.flow for t in outgoing),
        external_out=len(group.members - succ_union),
    )
