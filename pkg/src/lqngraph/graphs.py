"""Directed-graph machinery behind perfect-matching enumeration.

Merging particle ``a`` and detector ``X_a`` into one vertex ``w_a`` turns the
bipartite network view into a digraph whose loops encode a chosen perfect
matching. Every other perfect matching is then reachable by exchanging edges
along pairwise vertex-disjoint elementary cycles, so enumerating cycles
enumerates matchings. The retained subgraph of loops plus cycle edges (the
"PM diagram") contains exactly the edges that participate in some matching,
and its color/connectivity structure is what the entanglement criteria
inspect.

All vertices are 1-based to match the external index convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidMatching, NoPerfectMatching
from .model import (
    BipartiteEdge,
    BipartiteView,
    Color,
    ColoredAdjacency,
    NetworkSpec,
    to_adjacency,
)

Cycle = tuple[int, ...]


@dataclass(frozen=True)
class DirectedEdge:
    tail: int
    head: int
    weight: complex
    color: Color


@dataclass(frozen=True)
class DirectedView:
    """Digraph on vertices w_1..w_n; loops allowed."""

    n: int
    edges: tuple[DirectedEdge, ...]

    def edge_map(self) -> dict[tuple[int, int], DirectedEdge]:
        return {(e.tail, e.head): e for e in self.edges}

    def successors(self) -> list[list[int]]:
        """Sorted non-loop out-neighbors per vertex (index 0 ↔ w_1)."""
        out: list[set[int]] = [set() for _ in range(self.n)]
        for e in self.edges:
            if e.tail != e.head:
                out[e.tail - 1].add(e.head)
        return [sorted(s) for s in out]


@dataclass(frozen=True)
class PerfectMatching:
    """A bijection particle → detector along existing edges.

    ``assignment[a-1]`` is the detector receiving particle ``a``;
    ``weights``/``colors`` follow the same particle order.
    """

    assignment: tuple[int, ...]
    weights: tuple[complex, ...]
    colors: tuple[Color, ...]

    @property
    def n(self) -> int:
        return len(self.assignment)


@dataclass(frozen=True)
class PMDiagram:
    """Loop-labeled digraph retaining only loops and elementary-cycle edges.

    ``view`` lives in relabeled coordinates where the reference matching is
    the diagonal, so every vertex carries a loop. ``relabeling[v-1]`` is the
    original detector whose column was moved to slot ``v`` (vertex ``w_v``
    therefore stands for particle ``v`` and original detector
    ``relabeling[v-1]``). ``cycles`` are the elementary cycles of the
    retained subgraph; ``removed`` lists the original-label bipartite edges
    that participate in no perfect matching.
    """

    view: DirectedView
    relabeling: tuple[int, ...]
    cycles: tuple[Cycle, ...]
    removed: tuple[BipartiteEdge, ...]

    @property
    def n(self) -> int:
        return self.view.n

    def detector_of_vertex(self, v: int) -> int:
        return self.relabeling[v - 1]

    def kept_bipartite_pairs(self) -> tuple[tuple[int, int], ...]:
        """Maximally matchable edges as original (particle, detector) pairs."""
        pairs = {
            (e.tail, self.relabeling[e.head - 1]) for e in self.view.edges
        }
        return tuple(sorted(pairs))

    def removed_bipartite_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((e.particle, e.detector) for e in self.removed))


def to_directed(adj: ColoredAdjacency) -> DirectedView:
    """Edge w_a → w_j for every nonzero adjacency entry (loops included)."""
    edges = []
    for a in range(adj.n):
        for j in range(adj.n):
            color = adj.colors[a, j]
            if color is not None:
                edges.append(
                    DirectedEdge(a + 1, j + 1, complex(adj.weights[a, j]), color)
                )
    return DirectedView(adj.n, tuple(edges))


def _matching_assignment(bip: BipartiteView) -> tuple[int, ...] | None:
    """Augmenting-path matching; deterministic in input edge order.

    Loop edges (a, X_a) are seeded first so a network that is already
    loop-labeled keeps the identity matching; remaining particles are
    matched by augmenting paths.
    """
    neighbors: list[list[int]] = [[] for _ in range(bip.n)]
    for e in bip.edges:
        neighbors[e.particle - 1].append(e.detector)

    owner = [0] * (bip.n + 1)  # detector -> particle, 0 = free
    matched = [False] * (bip.n + 1)
    for e in bip.edges:
        if e.particle == e.detector and owner[e.detector] == 0:
            owner[e.detector] = e.particle
            matched[e.particle] = True

    def try_assign(a: int, visited: set[int]) -> bool:
        for j in neighbors[a - 1]:
            if j in visited:
                continue
            visited.add(j)
            if owner[j] == 0 or try_assign(owner[j], visited):
                owner[j] = a
                return True
        return False

    for a in range(1, bip.n + 1):
        if not matched[a] and not try_assign(a, set()):
            return None

    assignment = [0] * bip.n
    for j in range(1, bip.n + 1):
        assignment[owner[j] - 1] = j
    return tuple(assignment)


def _pm_from_assignment(
    assignment: tuple[int, ...], edge_map: dict[tuple[int, int], BipartiteEdge]
) -> PerfectMatching:
    weights = []
    colors = []
    for a, j in enumerate(assignment, start=1):
        e = edge_map[(a, j)]
        weights.append(e.weight)
        colors.append(e.color)
    return PerfectMatching(assignment, tuple(weights), tuple(colors))


def initial_perfect_matching(bip: BipartiteView) -> PerfectMatching | None:
    """One perfect matching of the bipartite view, or None if there is none."""
    assignment = _matching_assignment(bip)
    if assignment is None:
        return None
    return _pm_from_assignment(assignment, {(e.particle, e.detector): e for e in bip.edges})


def relabel_to_loops(
    dir_view: DirectedView, pm: PerfectMatching
) -> tuple[DirectedView, tuple[int, ...]]:
    """Permute detector labels so the given matching becomes the diagonal.

    After relabeling every vertex has a loop. Returns the relabeled view and
    the relabeling: entry ``v-1`` is the original detector now in slot ``v``.
    """
    n = dir_view.n
    if sorted(pm.assignment) != list(range(1, n + 1)):
        raise InvalidMatching(f"assignment {pm.assignment} is not a bijection")
    edge_map = dir_view.edge_map()
    for a, j in enumerate(pm.assignment, start=1):
        if (a, j) not in edge_map:
            raise InvalidMatching(f"matching pair ({a}, {j}) is not a network edge")

    slot_of = [0] * (n + 1)  # original detector -> new slot
    for a, j in enumerate(pm.assignment, start=1):
        slot_of[j] = a
    edges = tuple(
        DirectedEdge(e.tail, slot_of[e.head], e.weight, e.color)
        for e in dir_view.edges
    )
    return DirectedView(n, edges), tuple(pm.assignment)


def _tarjan_sccs(n: int, succ: list[list[int]]) -> list[list[int]]:
    """Strongly connected components (Tarjan); vertices 1..n."""
    index_of: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = [0]

    def connect(v: int) -> None:
        index_of[v] = lowlink[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for w in succ[v - 1]:
            if w not in index_of:
                connect(w)
                lowlink[v] = min(lowlink[v], lowlink[w])
            elif w in on_stack:
                lowlink[v] = min(lowlink[v], index_of[w])
        if lowlink[v] == index_of[v]:
            comp = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                comp.append(w)
                if w == v:
                    break
            sccs.append(sorted(comp))

    for v in range(1, n + 1):
        if v not in index_of:
            connect(v)
    return sccs


def _elementary_cycles_from_succ(n: int, succ_all: list[list[int]]) -> list[Cycle]:
    """Johnson-style blocked search over sorted non-loop adjacency lists.

    For each start vertex s (ascending), only the strongly connected part of
    the subgraph on vertices >= s is explored, so every cycle is reported
    exactly once, rooted at its smallest vertex. Output is sorted
    lexicographically.
    """
    cycles: list[Cycle] = []

    for s in range(1, n + 1):
        restricted = [
            [w for w in succ_all[v - 1] if w >= s] if v >= s else []
            for v in range(1, n + 1)
        ]
        comp = next((c for c in _tarjan_sccs(n, restricted) if s in c), [s])
        if len(comp) < 2:
            continue
        comp_set = set(comp)
        succ = [
            [w for w in restricted[v - 1] if w in comp_set]
            for v in range(1, n + 1)
        ]

        blocked = {v: False for v in comp}
        block_list: dict[int, set[int]] = {v: set() for v in comp}
        path: list[int] = []

        def unblock(v: int) -> None:
            blocked[v] = False
            while block_list[v]:
                u = block_list[v].pop()
                if blocked[u]:
                    unblock(u)

        def circuit(v: int) -> bool:
            found = False
            path.append(v)
            blocked[v] = True
            for w in succ[v - 1]:
                if w == s:
                    cycles.append(tuple(path))
                    found = True
                elif not blocked[w]:
                    if circuit(w):
                        found = True
            if found:
                unblock(v)
            else:
                for w in succ[v - 1]:
                    block_list[w].add(v)
            path.pop()
            return found

        circuit(s)

    return sorted(cycles)


def elementary_cycles(dir_view: DirectedView) -> list[Cycle]:
    """All elementary cycles of length >= 2; loops are excluded."""
    return _elementary_cycles_from_succ(dir_view.n, dir_view.successors())


def _disjoint_cycle_assignments(n: int, cycles: list[Cycle]) -> list[tuple[int, ...]]:
    """Permutations from every subset of pairwise vertex-disjoint cycles.

    Walks vertices in ascending order; at the smallest free vertex either
    keep its loop or splice in one of the cycles rooted there (canonical
    cycles start at their minimum vertex, so each subset is built exactly
    once). The empty subset contributes the identity. Output size is
    exponential in the worst case, which is accepted: matching enumeration
    is inherently so.
    """
    by_root: list[list[Cycle]] = [[] for _ in range(n + 2)]
    for c in cycles:
        by_root[c[0]].append(c)
    results: list[tuple[int, ...]] = []
    perm = list(range(1, n + 1))
    used = [False] * (n + 1)

    def walk(v: int) -> None:
        while v <= n and used[v]:
            v += 1
        if v > n:
            results.append(tuple(perm))
            return
        walk(v + 1)  # v keeps its loop
        for c in by_root[v]:
            if any(used[u] for u in c):
                continue
            for k, u in enumerate(c):
                used[u] = True
                perm[u - 1] = c[(k + 1) % len(c)]
            walk(v + 1)
            for u in c:
                used[u] = False
                perm[u - 1] = u

    walk(1)
    return results


def enumerate_pms(bip: BipartiteView) -> list[PerfectMatching]:
    """The complete set of perfect matchings, lexicographic by assignment.

    Protocol: find one matching, relabel detectors so it becomes the
    diagonal (all loops), enumerate elementary cycles of the resulting
    digraph, and realize every subset of pairwise vertex-disjoint cycles as
    an edge exchange on the loops. Relabeling back yields each matching of
    the original network exactly once.
    """
    base = _matching_assignment(bip)
    if base is None:
        return []
    edge_map = {(e.particle, e.detector): e for e in bip.edges}

    slot_of = [0] * (bip.n + 1)
    for a, j in enumerate(base, start=1):
        slot_of[j] = a
    succ: list[set[int]] = [set() for _ in range(bip.n)]
    for e in bip.edges:
        head = slot_of[e.detector]
        if head != e.particle:
            succ[e.particle - 1].add(head)
    cycles = _elementary_cycles_from_succ(bip.n, [sorted(s) for s in succ])

    pms = []
    for rho in _disjoint_cycle_assignments(bip.n, cycles):
        assignment = tuple(base[rho[a - 1] - 1] for a in range(1, bip.n + 1))
        pms.append(_pm_from_assignment(assignment, edge_map))
    pms.sort(key=lambda pm: pm.assignment)
    return pms


def pm_diagram(dir_view: DirectedView) -> PMDiagram:
    """Restrict a loop-labelable digraph to loops plus elementary-cycle edges.

    Raises NoPerfectMatching when the underlying network has no matching
    (without one there is no loop labeling to define the diagram).
    """
    bip = BipartiteView(
        dir_view.n,
        tuple(
            BipartiteEdge(e.tail, e.head, e.weight, e.color)
            for e in dir_view.edges
        ),
    )
    base = _matching_assignment(bip)
    if base is None:
        raise NoPerfectMatching("network has no perfect matching")

    relabeled, relabeling = relabel_to_loops(
        dir_view,
        _pm_from_assignment(base, {(e.particle, e.detector): e for e in bip.edges}),
    )
    cycles = tuple(elementary_cycles(relabeled))

    kept: set[tuple[int, int]] = {(v, v) for v in range(1, dir_view.n + 1)}
    for c in cycles:
        for k, v in enumerate(c):
            kept.add((v, c[(k + 1) % len(c)]))

    kept_edges = tuple(
        e for e in relabeled.edges if (e.tail, e.head) in kept
    )
    removed = tuple(
        BipartiteEdge(e.tail, relabeling[e.head - 1], e.weight, e.color)
        for e in relabeled.edges
        if (e.tail, e.head) not in kept
    )
    return PMDiagram(
        DirectedView(dir_view.n, kept_edges), relabeling, cycles, removed
    )


def diagram_of_network(spec: NetworkSpec) -> PMDiagram:
    """Convenience chain: spec → adjacency → digraph → PM diagram."""
    return pm_diagram(to_directed(to_adjacency(spec)))


def weak_components(diag: PMDiagram) -> tuple[tuple[int, ...], ...]:
    """Vertex partition into connected components, ignoring direction."""
    n = diag.n
    parent = list(range(n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in diag.view.edges:
        ra, rb = find(e.tail), find(e.head)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    blocks: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        blocks.setdefault(find(v), []).append(v)
    return tuple(tuple(sorted(b)) for b in sorted(blocks.values()))


def strongly_connected(diag: PMDiagram) -> tuple[bool, tuple[tuple[int, ...], ...]]:
    """SCC decomposition; True iff one component spans every vertex."""
    sccs = _tarjan_sccs(diag.n, diag.view.successors())
    partition = tuple(tuple(c) for c in sorted(sccs))
    return len(partition) == 1, partition
