"""Preprocessing and safety rules for disjoint-FVS instances.

An instance partitions the vertices into two forest-inducing sides: the
solution may only use vertices from side one, side two is protected.  The
rules here delete vertices that are forced into every solution, peel away
vertices that can never lie on a cycle, and reject instances whose side-one
part is provably too large for the remaining budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .graph import Graph, VertexSet, bypass_degree2, components, is_forest


class Verdict(Enum):
    CONTINUE = "continue"
    NO_SOLUTION = "no-solution"


class DisjointInstance:
    """A graph, a bipartition (v1, v2) with both sides inducing forests,
    and a budget k for a feedback vertex set drawn from v1 only.

    k may be -1 transiently, as a rejected state.
    """

    __slots__ = ("g", "v1", "v2", "k")

    def __init__(self, g: Graph, v1: VertexSet, v2: VertexSet, k: int,
                 validate: bool = True) -> None:
        self.g = g
        self.v1 = set(v1)
        self.v2 = set(v2)
        self.k = k
        if validate:
            self.check()

    def check(self) -> None:
        verts = set(self.g.vertices)
        if self.v1 & self.v2 or self.v1 | self.v2 != verts:
            raise ValueError("(v1, v2) is not a partition of the vertices")
        if not is_forest(self.g, self.v1):
            raise ValueError("g[v1] is not a forest")
        if not is_forest(self.g, self.v2):
            raise ValueError("g[v2] is not a forest")
        if self.k < -1:
            raise ValueError(f"budget k={self.k} out of range")

    def copy(self) -> "DisjointInstance":
        return DisjointInstance(self.g.copy(), set(self.v1), set(self.v2),
                                self.k, validate=False)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (f"DisjointInstance(n={self.g.vertex_count}, "
                f"m={self.g.edge_count}, |v1|={len(self.v1)}, k={self.k})")


@dataclass
class ReductionOutcome:
    """Result of a reduction pass: the (mutated) instance, the vertices
    committed to the objective set, and whether to keep going."""

    instance: DisjointInstance
    forced: VertexSet = field(default_factory=set)
    verdict: Verdict = Verdict.CONTINUE


def _force(inst: DisjointInstance, v: int, forced: VertexSet) -> None:
    inst.g.remove_vertex(v)
    inst.v1.discard(v)
    forced.add(v)
    inst.k -= 1


def preprocess(inst: DisjointInstance) -> ReductionOutcome:
    """Resolve self-loops and parallel edge pairs.

    A self-loop forces its vertex when it is in v1 and is unbreakable when
    it is in v2.  A parallel pair forces its v1 endpoint; a pair lying
    entirely inside v2 is unbreakable.  Repeats until none remain or the
    budget is exhausted.
    """
    forced: VertexSet = set()
    while True:
        if inst.k < 0:
            return ReductionOutcome(inst, forced, Verdict.NO_SOLUTION)
        acted = False
        for eid, (u, v) in sorted(inst.g.edge_items()):
            if u == v:
                if u in inst.v2:
                    return ReductionOutcome(inst, forced, Verdict.NO_SOLUTION)
                _force(inst, u, forced)
                acted = True
                break
        if acted:
            continue
        seen: dict[tuple[int, int], int] = {}
        pair: tuple[int, int] | None = None
        for eid, (u, v) in sorted(inst.g.edge_items()):
            key = (u, v) if u <= v else (v, u)
            if key in seen:
                pair = key
                break
            seen[key] = eid
        if pair is None:
            return ReductionOutcome(inst, forced, Verdict.CONTINUE)
        u, v = pair
        in_v1 = [x for x in pair if x in inst.v1]
        if not in_v1:
            return ReductionOutcome(inst, forced, Verdict.NO_SOLUTION)
        if len(in_v1) == 2:
            raise ValueError("parallel pair inside v1; g[v1] is not a forest")
        _force(inst, in_v1[0], forced)


def rule1(inst: DisjointInstance) -> DisjointInstance:
    """Cascade away all vertices of degree <= 1 (either side)."""
    g = inst.g
    queue = [v for v in sorted(g.vertices) if g.degree(v) <= 1]
    while queue:
        nxt: list[int] = []
        for v in queue:
            if not g.has_vertex(v) or g.degree(v) > 1:
                continue
            nbrs = [x for _, x in g.incident(v)]
            g.remove_vertex(v)
            inst.v1.discard(v)
            inst.v2.discard(v)
            nxt.extend(x for x in nbrs if g.has_vertex(x) and g.degree(x) <= 1)
        queue = sorted(set(nxt))
    return inst


def rule2(inst: DisjointInstance, v: int, mode: str = "kernel") -> ReductionOutcome:
    """Handle a degree-2 vertex v of v1.

    If both neighbor slots of v land in one tree of g[v2], v closes a cycle
    that no other v1 vertex can break, so it is forced.  Otherwise v is
    harmless: kernel mode moves it into v2, branching mode bypasses it
    (splicing its two edges into one, possibly creating a parallel pair).
    """
    if mode not in ("kernel", "branching"):
        raise ValueError(f"unknown rule2 mode {mode!r}")
    if v not in inst.v1 or inst.g.degree(v) != 2:
        raise ValueError(f"vertex {v} is not a degree-2 v1 vertex")
    forced: VertexSet = set()
    comp = components(inst.g, inst.v2)
    seen_trees: set[int] = set()
    same_tree = False
    for _, other in inst.g.incident(v):
        if other in inst.v2:
            t = comp.label[other]
            if t in seen_trees:
                same_tree = True
            seen_trees.add(t)
    if same_tree:
        _force(inst, v, forced)
        verdict = Verdict.NO_SOLUTION if inst.k < 0 else Verdict.CONTINUE
        return ReductionOutcome(inst, forced, verdict)
    if mode == "kernel":
        inst.v1.discard(v)
        inst.v2.add(v)
    else:
        bypass_degree2(inst.g, v)
        inst.v1.discard(v)
    return ReductionOutcome(inst, forced, Verdict.CONTINUE)


def rules_applicable(inst: DisjointInstance) -> bool:
    """True if rule1 or rule2 can act anywhere on the instance."""
    g = inst.g
    for v in g.vertices:
        if g.degree(v) <= 1:
            return True
    return any(g.degree(v) == 2 for v in inst.v1)


def kernel_bound(inst: DisjointInstance) -> Verdict:
    """Reject a reduced instance whose v1 side exceeds 2k + l - tau,
    where l and tau count the trees of g[v2] and g[v1].

    Caller must have exhausted rules 1-2 first (checked).
    """
    if rules_applicable(inst):
        raise ValueError("kernel bound requires rules 1-2 to be exhausted")
    l = components(inst.g, inst.v2).count
    tau = components(inst.g, inst.v1).count
    if len(inst.v1) > 2 * inst.k + l - tau:
        return Verdict.NO_SOLUTION
    return Verdict.CONTINUE


def reduce_instance(inst: DisjointInstance, mode: str = "kernel") -> ReductionOutcome:
    """Run preprocess -> rule1 -> rule2 to a fixpoint.

    Degree-2 v1 vertices are taken in ascending id order; a bypass can
    create parallel edges, so preprocess re-runs after every rule2 action.
    """
    forced: VertexSet = set()
    while True:
        out = preprocess(inst)
        forced |= out.forced
        if out.verdict is Verdict.NO_SOLUTION:
            return ReductionOutcome(inst, forced, Verdict.NO_SOLUTION)
        before_n = inst.g.vertex_count
        rule1(inst)
        candidates = sorted(v for v in inst.v1 if inst.g.degree(v) == 2)
        acted = inst.g.vertex_count != before_n
        for v in candidates:
            if v in inst.v1 and inst.g.has_vertex(v) and inst.g.degree(v) == 2:
                out = rule2(inst, v, mode=mode)
                forced |= out.forced
                if out.verdict is Verdict.NO_SOLUTION:
                    return ReductionOutcome(inst, forced, Verdict.NO_SOLUTION)
                acted = True
                break
        if not acted:
            return ReductionOutcome(inst, forced, Verdict.CONTINUE)
