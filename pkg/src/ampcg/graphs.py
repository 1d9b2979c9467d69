"""Mixed graphs with directed and undirected edges (chain graphs).

A chain graph is a mixed graph without semi-directed cycles.  Its vertex
set splits uniquely into chain components: maximal subsets connected by
undirected paths, with all edges between components directed.  This module
provides the graph type, chain-graph validation, the component
decomposition, maximal cliques of component subgraphs, and a chordality
test, plus the plain-text graph file format used by the command line tool.

Vertex identity is by string label.  The order in which vertices are
declared is the canonical order: every matrix built downstream is indexed
by it, and all orderings produced here (components, parent sets, edge
listings) follow it so that reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

__all__ = [
    "MixedGraph",
    "ChainDecomposition",
    "GraphStructureError",
    "ChainGraphError",
    "validate_chain_graph",
    "chain_components",
    "maximal_cliques",
    "is_decomposable",
    "parse_graph_text",
    "load_graph",
]


class GraphStructureError(ValueError):
    """Malformed graph: unknown vertices, self-loops, duplicate or
    conflicting edges.  Distinct from chain-graph (cycle) violations."""


class ChainGraphError(ValueError):
    """The graph contains a semi-directed cycle."""


@dataclass(frozen=True)
class MixedGraph:
    """A mixed graph ``(V, E)`` with directed and undirected edges.

    Parameters
    ----------
    vertices:
        Vertex labels; their order fixes the matrix ordering used by all
        downstream code.
    directed:
        Pairs ``(u, v)`` meaning ``u -> v``.
    undirected:
        Pairs ``{u, v}`` meaning ``u -- v`` (given in either order).

    Raises
    ------
    GraphStructureError
        On duplicate labels, edges naming unknown vertices, self-loops,
        or a vertex pair carrying more than one edge.
    """

    vertices: tuple[str, ...]
    directed: frozenset[tuple[str, str]]
    undirected: frozenset[tuple[str, str]]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __init__(
        self,
        vertices: Iterable[str],
        directed: Iterable[tuple[str, str]] = (),
        undirected: Iterable[tuple[str, str]] = (),
    ):
        labels = tuple(str(v) for v in vertices)
        index = {v: i for i, v in enumerate(labels)}
        if len(index) != len(labels):
            dupes = sorted({v for v in labels if labels.count(v) > 1})
            raise GraphStructureError(f"duplicate vertex labels: {dupes}")

        def check(u: str, v: str, kind: str) -> None:
            for w in (u, v):
                if w not in index:
                    raise GraphStructureError(
                        f"{kind} edge ({u}, {v}) references unknown vertex {w!r}"
                    )
            if u == v:
                raise GraphStructureError(f"self-loop at {u!r}")

        dir_edges = set()
        for u, v in directed:
            check(u, v, "directed")
            if (u, v) in dir_edges:
                raise GraphStructureError(f"duplicate directed edge {u} -> {v}")
            dir_edges.add((u, v))

        undir_edges = set()
        for u, v in undirected:
            check(u, v, "undirected")
            key = (u, v) if index[u] < index[v] else (v, u)
            if key in undir_edges:
                raise GraphStructureError(f"duplicate undirected edge {u} -- {v}")
            undir_edges.add(key)

        for u, v in dir_edges:
            if (v, u) in dir_edges:
                raise GraphStructureError(
                    f"conflicting edges: both {u} -> {v} and {v} -> {u}"
                )
            key = (u, v) if index[u] < index[v] else (v, u)
            if key in undir_edges:
                raise GraphStructureError(
                    f"conflicting edges: {u} -> {v} and {u} -- {v}"
                )

        object.__setattr__(self, "vertices", labels)
        object.__setattr__(self, "directed", frozenset(dir_edges))
        object.__setattr__(self, "undirected", frozenset(undir_edges))
        object.__setattr__(self, "_index", index)

    # -- ordering helpers -------------------------------------------------

    def index(self, v: str) -> int:
        """Position of vertex ``v`` in the canonical order."""
        try:
            return self._index[v]
        except KeyError:
            raise GraphStructureError(f"unknown vertex {v!r}") from None

    def sort(self, labels: Iterable[str]) -> tuple[str, ...]:
        """Return ``labels`` as a tuple in canonical vertex order."""
        return tuple(sorted(labels, key=self.index))

    def parents(self, v: str) -> tuple[str, ...]:
        """Tails of directed edges into ``v``, in vertex order."""
        self.index(v)
        return self.sort(u for u, w in self.directed if w == v)

    def neighbors(self, v: str) -> tuple[str, ...]:
        """Undirected neighbors of ``v``, in vertex order."""
        self.index(v)
        out = set()
        for a, b in self.undirected:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return self.sort(out)

    def has_undirected(self, u: str, v: str) -> bool:
        i, j = self.index(u), self.index(v)
        key = (u, v) if i < j else (v, u)
        return key in self.undirected

    def directed_in_order(self) -> list[tuple[str, str]]:
        return sorted(self.directed, key=lambda e: (self.index(e[0]), self.index(e[1])))

    def undirected_in_order(self) -> list[tuple[str, str]]:
        return sorted(self.undirected, key=lambda e: (self.index(e[0]), self.index(e[1])))


@dataclass(frozen=True)
class ChainDecomposition:
    """Chain components of a chain graph, in topological order.

    ``components[k]`` holds the vertices of the k-th component and
    ``parent_sets[k]`` the union of parents of its members (disjoint from
    the component itself).  Both tuples follow the canonical vertex order
    of the graph; the component order is topological with respect to the
    directed edges, ties broken by smallest member label.
    """

    components: tuple[tuple[str, ...], ...]
    parent_sets: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.components)

    def component_of(self, v: str) -> int:
        """Index of the component containing vertex ``v``."""
        for k, comp in enumerate(self.components):
            if v in comp:
                return k
        raise KeyError(v)


def _undirected_adjacency(g: MixedGraph) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in g.vertices}
    for u, v in g.undirected:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _undirected_components(g: MixedGraph) -> list[tuple[str, ...]]:
    """Connected components of the undirected-edge-only subgraph, each in
    vertex order, listed by first member."""
    adj = _undirected_adjacency(g)
    seen: set[str] = set()
    comps = []
    for root in g.vertices:
        if root in seen:
            continue
        stack, members = [root], {root}
        seen.add(root)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    members.add(y)
                    stack.append(y)
        comps.append(g.sort(members))
    return comps


def _undirected_path(g: MixedGraph, start: str, goal: str) -> list[str]:
    """Shortest undirected path from ``start`` to ``goal`` (BFS), assuming
    both lie in the same undirected component."""
    if start == goal:
        return [start]
    adj = _undirected_adjacency(g)
    prev = {start: start}
    queue = [start]
    while queue:
        nxt = []
        for x in queue:
            for y in sorted(adj[x], key=g.index):
                if y not in prev:
                    prev[y] = x
                    if y == goal:
                        path = [y]
                        while path[-1] != start:
                            path.append(prev[path[-1]])
                        return path[::-1]
                    nxt.append(y)
        queue = nxt
    raise AssertionError("no undirected path; caller violated precondition")


def _format_cycle(g: MixedGraph, arcs: list[tuple[str, str]]) -> str:
    """Render a semi-directed cycle given its directed arcs in cycle order.

    Between the head of one arc and the tail of the next the cycle runs
    along undirected edges inside a single component.
    """
    parts: list[str] = []
    m = len(arcs)
    for i, (u, v) in enumerate(arcs):
        if not parts:
            parts.append(u)
        parts.append("->")
        parts.append(v)
        nxt_tail = arcs[(i + 1) % m][0]
        for w in _undirected_path(g, v, nxt_tail)[1:]:
            parts.append("--")
            parts.append(w)
    # the walk closes at the first vertex; drop the repeated endpoint
    if parts[-1] == parts[0] and len(parts) > 1:
        parts = parts[:-1] + [parts[0]]
    return " ".join(parts)


def validate_chain_graph(g: MixedGraph) -> Optional[str]:
    """Check the chain-graph property (no semi-directed cycles).

    Contracts the undirected-connected components and cycle-checks the
    resulting directed graph, which is equivalent to the path definition.
    Returns ``None`` if ``g`` is a chain graph, otherwise a description of
    one offending cycle such as ``"a -> b -- c -> a"``.
    """
    comps = _undirected_components(g)
    comp_of = {v: k for k, comp in enumerate(comps) for v in comp}

    # a directed edge within one undirected component closes a cycle with
    # the undirected path back to its tail
    for u, v in g.directed_in_order():
        if comp_of[u] == comp_of[v]:
            return _format_cycle(g, [(u, v)])

    succ: dict[int, dict[int, tuple[str, str]]] = {k: {} for k in range(len(comps))}
    for u, v in g.directed_in_order():
        succ[comp_of[u]].setdefault(comp_of[v], (u, v))

    # iterative DFS over the condensation; a back edge yields a cycle
    color = {k: 0 for k in range(len(comps))}  # 0 new, 1 active, 2 done
    parent_arc: dict[int, tuple[str, str]] = {}
    for root in range(len(comps)):
        if color[root] != 0:
            continue
        stack: list[tuple[int, list[int]]] = [(root, sorted(succ[root]))]
        color[root] = 1
        while stack:
            node, todo = stack[-1]
            if not todo:
                color[node] = 2
                stack.pop()
                continue
            child = todo.pop(0)
            if color[child] == 0:
                color[child] = 1
                parent_arc[child] = succ[node][child]
                stack.append((child, sorted(succ[child])))
            elif color[child] == 1:
                arcs = [succ[node][child]]
                walk = node
                while walk != child:
                    arcs.append(parent_arc[walk])
                    walk = comp_of[parent_arc[walk][0]]
                return _format_cycle(g, arcs[::-1])
    return None


def chain_components(g: MixedGraph) -> ChainDecomposition:
    """Decompose a chain graph into its ordered chain components.

    Raises :class:`ChainGraphError` when ``g`` is not a chain graph.
    """
    violation = validate_chain_graph(g)
    if violation is not None:
        raise ChainGraphError(f"not a chain graph: semi-directed cycle {violation}")

    comps = _undirected_components(g)
    comp_of = {v: k for k, comp in enumerate(comps) for v in comp}

    n = len(comps)
    succ: dict[int, set[int]] = {k: set() for k in range(n)}
    indeg = {k: 0 for k in range(n)}
    for u, v in g.directed:
        a, b = comp_of[u], comp_of[v]
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1

    # Kahn's algorithm; ties broken by smallest member label
    ready = sorted((k for k in range(n) if indeg[k] == 0), key=lambda k: min(comps[k]))
    order: list[int] = []
    while ready:
        k = ready.pop(0)
        order.append(k)
        released = []
        for b in succ[k]:
            indeg[b] -= 1
            if indeg[b] == 0:
                released.append(b)
        ready = sorted(ready + released, key=lambda k: min(comps[k]))
    assert len(order) == n

    components = tuple(comps[k] for k in order)
    parent_sets = []
    for comp in components:
        members = set(comp)
        pa = {u for u, v in g.directed if v in members}
        parent_sets.append(g.sort(pa - members))
    return ChainDecomposition(components=components, parent_sets=tuple(parent_sets))


def _require_component(g: MixedGraph, tau: Sequence[str]) -> tuple[str, ...]:
    wanted = set(tau)
    for comp in chain_components(g).components:
        if set(comp) == wanted:
            return comp
    raise ValueError(f"{sorted(wanted)} is not a chain component of the graph")


def maximal_cliques(g: MixedGraph, tau: Sequence[str]) -> list[tuple[str, ...]]:
    """All maximal cliques of the undirected subgraph induced by component
    ``tau``, each sorted by label, listed lexicographically.

    Uses Bron-Kerbosch with pivoting; components are small enough that the
    worst case is irrelevant.
    """
    comp = _require_component(g, tau)
    adj = {v: set(g.neighbors(v)) & set(comp) for v in comp}

    cliques: list[tuple[str, ...]] = []

    def expand(r: set[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            cliques.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda v: (len(adj[v] & p), v))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(comp), set())
    return sorted(cliques)


def _mcs_order(members: Sequence[str], adj: dict[str, set[str]]) -> list[str]:
    """Maximum cardinality search order, ties by label."""
    weights = {v: 0 for v in members}
    order: list[str] = []
    remaining = set(members)
    while remaining:
        v = max(sorted(remaining), key=lambda w: weights[w])
        order.append(v)
        remaining.remove(v)
        for w in adj[v] & remaining:
            weights[w] += 1
    return order


def is_decomposable(g: MixedGraph, tau: Sequence[str]) -> bool:
    """True iff the undirected subgraph induced by component ``tau`` is
    chordal (maximum cardinality search test)."""
    comp = _require_component(g, tau)
    adj = {v: set(g.neighbors(v)) & set(comp) for v in comp}
    order = _mcs_order(comp, adj)
    numbered: set[str] = set()
    for v in order:
        earlier = adj[v] & numbered
        for a in earlier:
            if not earlier - {a} <= adj[a]:
                return False
        numbered.add(v)
    return True


# -- graph file format -------------------------------------------------------
#
# UTF-8 text, one declaration per line:
#
#     node <label>
#     <u> -> <v>
#     <u> -- <v>
#
# '#' starts a comment; blank lines are ignored.  The order of the node
# lines fixes the matrix ordering.


def parse_graph_text(text: str) -> MixedGraph:
    """Parse the plain-text graph format into a :class:`MixedGraph`."""
    vertices: list[str] = []
    directed: list[tuple[str, str]] = []
    undirected: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "node" and len(tokens) == 2:
            vertices.append(tokens[1])
        elif len(tokens) == 3 and tokens[1] == "->":
            directed.append((tokens[0], tokens[2]))
        elif len(tokens) == 3 and tokens[1] == "--":
            undirected.append((tokens[0], tokens[2]))
        else:
            raise GraphStructureError(f"line {lineno}: cannot parse {raw!r}")
    return MixedGraph(vertices, directed, undirected)


def load_graph(path) -> MixedGraph:
    """Read a graph file (see :func:`parse_graph_text`)."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())
