"""Measure-guided branch-and-search for the disjoint feedback vertex set
problem.

The search keeps a potential of twice the branching measure, 2k + l - 2p
(budget, protected-forest tree count, count of degree-3 v1 vertices whose
neighbors all lie in the protected side), as an exact integer.  Reduction
steps never increase it, every binary branch decreases it by fixed amounts
in both children, and the search rejects outright once it reaches zero, so
the number of explored leaves is bounded by 2^ceil(m).

The engine maintains the protected side's tree structure in a union-find
(trees only ever merge), the set of nice vertices, and a worklist of v1
vertices whose reduction class may have changed, so one search path costs
near-linear time instead of a rescan per step.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import (DisjointSet, VertexSet, bypass_degree2, components,
                    is_forest)
from .reductions import DisjointInstance
from .regular3 import solve_regular3

_REMOVE, _FORCE, _BYPASS = 4, 5, 6
# Required twice-measure drop per child at each branching step.
_BRANCH_DROPS = {7: (2, 2), 8: (3, 2), 9: (3, 3)}


class MeasureAuditError(AssertionError):
    """A transition violated its measure-decrement obligation."""


@dataclass(frozen=True)
class Measure:
    """The branching measure m = k + l/2 - p, stored as 2m exactly."""

    twice_m: int
    k: int
    l: int
    p: int

    def __post_init__(self) -> None:
        if self.twice_m != 2 * self.k + self.l - 2 * self.p:
            raise ValueError("inconsistent measure components")


@dataclass
class SearchStats:
    """Instrumentation counters for one or more searches."""

    branch_nodes: int = 0
    leaves: int = 0
    max_depth: int = 0
    forced_count: int = 0


def count_nice(inst: DisjointInstance) -> int:
    """Number of v1 vertices of degree 3 whose neighbors are all in v2."""
    g = inst.g
    total = 0
    for v in inst.v1:
        if g.degree(v) == 3 and all(o in inst.v2 for o in g.neighbors(v)):
            total += 1
    return total


def measure(inst: DisjointInstance) -> Measure:
    l = components(inst.g, inst.v2).count
    p = count_nice(inst)
    return Measure(2 * inst.k + l - 2 * p, inst.k, l, p)


class _State:
    """One search node: the mutable instance plus incremental bookkeeping."""

    __slots__ = ("g", "v1", "v2", "k", "dsu", "l", "nice", "root_adj",
                 "picks", "heap")

    @classmethod
    def from_instance(cls, inst: DisjointInstance) -> "_State":
        s = cls.__new__(cls)
        s.g = inst.g.copy()
        s.v1 = set(inst.v1)
        s.v2 = set(inst.v2)
        s.k = inst.k
        s.dsu = DisjointSet(s.v2)
        s.l = len(s.v2)
        for eid in s.g.edges_within(s.v2):
            u, v = s.g.endpoints(eid)
            if u == v or not s.dsu.union(u, v):
                raise ValueError("protected side does not induce a forest")
            s.l -= 1
        s.root_adj = {}
        for eid, (u, v) in s.g.edge_items():
            if u in s.v1 and v in s.v2:
                s.root_adj.setdefault(s.dsu.find(v), set()).add(u)
            elif v in s.v1 and u in s.v2:
                s.root_adj.setdefault(s.dsu.find(u), set()).add(v)
        s.nice = set()
        s.picks = set()
        s.heap = []
        for v in s.v1:
            s.push(v)
        return s

    def copy(self) -> "_State":
        s = _State.__new__(_State)
        s.g = self.g.copy()
        s.v1 = set(self.v1)
        s.v2 = set(self.v2)
        s.k = self.k
        s.dsu = self.dsu.copy()
        s.l = self.l
        s.nice = set(self.nice)
        s.root_adj = {r: set(a) for r, a in self.root_adj.items()}
        s.picks = set(self.picks)
        s.heap = list(self.heap)
        return s

    # -- bookkeeping -----------------------------------------------------

    def twice_m(self) -> int:
        return 2 * self.k + self.l - 2 * len(self.nice)

    def _update_nice(self, v: int) -> None:
        if (v in self.v1 and self.g.degree(v) == 3
                and all(o in self.v2 for o in self.g.neighbors(v))):
            self.nice.add(v)
        else:
            self.nice.discard(v)

    def classify(self, v: int) -> int | None:
        deg = self.g.degree(v)
        if deg <= 1:
            return _REMOVE
        seen: set[int] = set()
        for _, other in self.g.incident(v):
            if other in self.v2:
                r = self.dsu.find(other)
                if r in seen:
                    return _FORCE
                seen.add(r)
        if deg == 2:
            return _BYPASS
        return None

    def push(self, v: int) -> None:
        self._update_nice(v)
        cls = self.classify(v)
        if cls is not None:
            heapq.heappush(self.heap, (cls, v))

    def _union_trees(self, a: int, b: int) -> None:
        ra, rb = self.dsu.find(a), self.dsu.find(b)
        if ra == rb:
            raise AssertionError("merge would close a cycle in g[v2]")
        self.dsu.union(ra, rb)
        new_root = self.dsu.find(ra)
        old_root = rb if new_root == ra else ra
        self.l -= 1
        old_adj = self.root_adj.pop(old_root, set())
        new_adj = self.root_adj.setdefault(new_root, set())
        if len(old_adj) > len(new_adj):
            old_adj, new_adj = new_adj, old_adj
            self.root_adj[new_root] = new_adj
        for x in old_adj:
            if x in self.v1:  # stale members drop out lazily
                new_adj.add(x)
                self.push(x)

    # -- transitions -------------------------------------------------------

    def remove_v1(self, v: int, forced: bool) -> None:
        incident = [(e, o) for e, o in self.g.incident(v)]
        self.g.remove_vertex(v)
        self.v1.discard(v)
        self.nice.discard(v)
        if forced:
            self.k -= 1
            self.picks.add(v)
        for _, other in incident:
            if other in self.v1:
                self.push(other)

    def move_to_v2(self, v: int) -> None:
        self.v1.discard(v)
        self.nice.discard(v)
        self.v2.add(v)
        self.dsu.add(v)
        self.l += 1
        self.root_adj.setdefault(v, set())
        for _, other in list(self.g.incident(v)):
            if other in self.v2 and other != v:
                self._union_trees(v, other)
            elif other in self.v1:
                self.root_adj.setdefault(self.dsu.find(v), set()).add(other)
                self.push(other)

    def bypass(self, v: int) -> None:
        incident = list(self.g.incident(v))
        (_, a), (_, b) = incident
        if a == b:
            raise AssertionError("parallel pair must be forced, not bypassed")
        bypass_degree2(self.g, v)
        self.v1.discard(v)
        self.nice.discard(v)
        if a in self.v2 and b in self.v2:
            self._union_trees(a, b)
        elif a in self.v2:
            self.root_adj.setdefault(self.dsu.find(a), set()).add(b)
        elif b in self.v2:
            self.root_adj.setdefault(self.dsu.find(b), set()).add(a)
        if a in self.v1:
            self.push(a)
        if b in self.v1:
            self.push(b)

    # -- audit -------------------------------------------------------------

    def verify(self) -> None:
        """Recompute the maintained quantities from scratch (audit mode)."""
        if not is_forest(self.g, self.v1):
            raise MeasureAuditError("g[v1] lost the forest property")
        if not is_forest(self.g, self.v2):
            raise MeasureAuditError("g[v2] lost the forest property")
        l = components(self.g, self.v2).count
        if l != self.l:
            raise MeasureAuditError(f"tree count drifted: {self.l} != {l}")
        inst = DisjointInstance(self.g, self.v1, self.v2, max(self.k, -1),
                                validate=False)
        p = count_nice(inst)
        if p != len(self.nice):
            raise MeasureAuditError(f"nice count drifted: {len(self.nice)} != {p}")


def _drain(state: _State, stats: SearchStats, audit: bool) -> bool:
    """Apply steps 4-6 until quiescent; False once the budget is overdrawn."""
    heap = state.heap
    while heap:
        cls, v = heapq.heappop(heap)
        if v not in state.v1 or not state.g.has_vertex(v):
            continue
        actual = state.classify(v)
        if actual is None:
            state._update_nice(v)
            continue
        if actual != cls:
            heapq.heappush(heap, (actual, v))
            continue
        before = state.twice_m() if audit else 0
        if cls == _REMOVE:
            state.remove_v1(v, forced=False)
        elif cls == _FORCE:
            state.remove_v1(v, forced=True)
            stats.forced_count += 1
        else:
            state.bypass(v)
        if audit and state.twice_m() > before:
            raise MeasureAuditError(
                f"step {cls} increased the measure at vertex {v}")
        if state.k < 0:
            return False
    return True


def _v1_degree(state: _State, v: int) -> int:
    return sum(1 for o in state.g.neighbors(v) if o in state.v1)


def _v2_slots(state: _State, v: int) -> int:
    return sum(1 for o in state.g.neighbors(v) if o in state.v2)


def _find_step7(state: _State) -> int | None:
    for w in sorted(state.v1):
        if w in state.nice or _v1_degree(state, w) > 1:
            continue
        if _v2_slots(state, w) >= 3:
            return w
    return None


def _find_step8(state: _State) -> tuple[int, int] | None:
    for w in sorted(state.v1):
        nbrs = [o for o in state.g.neighbors(w) if o in state.v1]
        if len(nbrs) != 1:
            continue
        y = nbrs[0]
        if any(o in state.v2 for o in state.g.neighbors(y)):
            return w, y
    return None


def _find_step9(state: _State) -> tuple[int, int]:
    adj: dict[int, list[int]] = {v: [] for v in state.v1}
    for v in state.v1:
        adj[v] = [o for o in state.g.neighbors(v) if o in state.v1]
    seen: set[int] = set()
    best_tree: list[int] | None = None
    for v in sorted(state.v1):
        if v in seen:
            continue
        tree = []
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            tree.append(x)
            for o in adj[x]:
                if o not in seen:
                    seen.add(o)
                    stack.append(o)
        if len(tree) >= 3 and best_tree is None:
            best_tree = tree
    if best_tree is None:
        raise AssertionError("no branchable tree left in g[v1]")
    internal = sorted(v for v in best_tree if len(adj[v]) >= 2)
    root = internal[0]
    depth = {root: 0}
    parent: dict[int, int] = {}
    order = [root]
    for x in order:
        for o in adj[x]:
            if o not in depth:
                depth[o] = depth[x] + 1
                parent[o] = x
                order.append(o)
    leaves = [v for v in best_tree if len(adj[v]) == 1]
    w1 = min(leaves, key=lambda v: (-depth[v], v))
    return parent[w1], w1


def _search(state: _State, stats: SearchStats, depth: int, audit: bool,
            seed: int) -> VertexSet | None:
    while True:
        if state.k < 0 or not _drain(state, stats, audit):
            stats.leaves += 1
            return None
        if audit:
            state.verify()
        acyclic = is_forest(state.g, set(state.g.vertices))
        if state.k == 0 and not acyclic:
            stats.leaves += 1
            return None
        if acyclic:
            stats.leaves += 1
            return set(state.picks)
        twice = state.twice_m()
        if twice <= 0:
            # Measure at or below zero cannot admit a solution.
            stats.leaves += 1
            return None
        if len(state.nice) == len(state.v1):
            inst = DisjointInstance(state.g, state.v1, state.v2, state.k,
                                    validate=False)
            rest = solve_regular3(inst, seed=seed)
            stats.leaves += 1
            if rest is None:
                return None
            return state.picks | rest
        # Reduced-size rejection: with steps 4-6 exhausted, more than
        # 2k + l - tau vertices on side one is hopeless.
        tau = components(state.g, state.v1).count
        if len(state.v1) > 2 * state.k + state.l - tau:
            stats.leaves += 1
            return None

        # Branch selection.  `forced` goes into the solution in the first
        # child; `moved` joins the protected side in the second.
        w7 = _find_step7(state)
        if w7 is not None:
            step, forced, moved, also_moved = 7, w7, w7, None
        else:
            if audit:
                for w in state.v1:
                    if w not in state.nice and _v1_degree(state, w) <= 1:
                        if _v2_slots(state, w) != 2:
                            raise MeasureAuditError(
                                "non-nice leaf without exactly two v2 slots")
            found8 = _find_step8(state)
            if found8 is not None:
                w, y = found8
                step, forced, moved, also_moved = 8, y, y, w
            else:
                w, w1 = _find_step9(state)
                step, forced, moved, also_moved = 9, w, w, w1

        stats.branch_nodes += 1
        depth += 1
        stats.max_depth = max(stats.max_depth, depth)
        drop1, drop2 = _BRANCH_DROPS[step]
        child = state.copy()
        child.remove_v1(forced, forced=True)
        if also_moved is not None:
            child.move_to_v2(also_moved)
        stats.forced_count += 1
        if audit and child.twice_m() > twice - drop1:
            raise MeasureAuditError(f"step {step}.1 dropped the measure by "
                                    f"less than {drop1}/2")
        result = _search(child, stats, depth, audit, seed)
        if result is not None:
            return result
        state.move_to_v2(moved)
        if audit and state.twice_m() > twice - drop2:
            raise MeasureAuditError(f"step {step}.2 dropped the measure by "
                                    f"less than {drop2}/2")


def feedback(inst: DisjointInstance, stats: SearchStats | None = None, *,
             audit: bool = False, seed: int = 0) -> VertexSet | None:
    """Find a v1-only feedback vertex set of size <= k, or None.

    The input instance is not mutated.  `stats` accumulates branch/leaf
    counters across calls; `audit` additionally asserts the per-step
    measure obligations and the maintained-state invariants, at a constant
    factor of extra cost.
    """
    if stats is None:
        stats = SearchStats()
    inst.check()
    state = _State.from_instance(inst)
    return _search(state, stats, 0, audit, seed)
