"""Hopping graphs: square lattices (torus or open, optionally with
dangling boundary edges), incident-edge orderings, oriented edge signs,
cycle bases, and spanning trees.

Each edge carries one physical qubit.  A dangling edge has a single real
endpoint (``head is None``) plus a direction tag; it participates in
operators as a qubit but adds no fermionic mode.

Vertices of a lattice are indexed row-major from the top-left, so the
default orientation sign eps(j,k) is +1 exactly when k sits to the right
of or below j (wrap edges on the torus keep the same local sense).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvariantViolation

TORUS = "torus"
OPEN = "open"

UP, DOWN, LEFT, RIGHT = "up", "down", "left", "right"

# Default per-vertex incident-edge order, chosen so that the encoded
# plaquette stabilizers take the standard interior form (X on the top
# edge, Y on the two side edges read clockwise, X on the bottom edge,
# extra Z's hanging off the top-left vertex).  Restricted to the
# available directions at open boundaries, except the top-left corner.
DEFAULT_INTERIOR_ORDER = (DOWN, LEFT, UP, RIGHT)
TOP_LEFT_CORNER_ORDER = (RIGHT, DOWN)

GRAPH_SCHEMA = "fermenc/graph/v1"


@dataclass(frozen=True, slots=True)
class Edge:
    """Graph edge; ``head is None`` marks a dangling edge whose phantom
    endpoint lies one step from ``tail`` in ``direction``."""

    tail: int
    head: int | None
    orientation: str  # "h" | "v"
    direction: str | None = None  # dangling edges only

    @property
    def is_dangling(self) -> bool:
        return self.head is None

    def endpoints(self) -> tuple[int, ...]:
        return (self.tail,) if self.head is None else (self.tail, self.head)

    def other(self, v: int) -> int | None:
        if v == self.tail:
            return self.head
        if v == self.head:
            return self.tail
        raise InvariantViolation(f"vertex {v} is not an endpoint")


@dataclass
class HoppingGraph:
    """Indexed vertices and edges with per-vertex incident-edge orderings
    and oriented edge signs."""

    n_vertices: int
    edges: list[Edge]
    orderings: list[list[int]]  # per vertex: incident edge indices, ordered
    edge_signs: list[int]  # eps along each edge's stored (tail, head)
    boundary: str = OPEN
    coords: list[tuple[int, int]] | None = None  # (row, col) per vertex
    shape: tuple[int, int] | None = None  # (rows, cols) for lattices
    _pair_index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._validate()
        self._pair_index = {
            frozenset((e.tail, e.head)): i
            for i, e in enumerate(self.edges)
            if not e.is_dangling
        }

    # ---------------------------------------------------------- checks

    def _validate(self):
        seen_pairs = set()
        for e in self.edges:
            if not 0 <= e.tail < self.n_vertices:
                raise InvariantViolation(f"edge tail {e.tail} out of range")
            if e.is_dangling:
                if self.boundary == TORUS:
                    raise InvariantViolation(
                        "a torus has no boundary to dangle from"
                    )
                continue
            if not 0 <= e.head < self.n_vertices:
                raise InvariantViolation(f"edge head {e.head} out of range")
            if e.tail == e.head:
                raise InvariantViolation(f"self-loop at vertex {e.tail}")
            pair = frozenset((e.tail, e.head))
            if pair in seen_pairs:
                raise InvariantViolation(f"duplicate edge {set(pair)}")
            seen_pairs.add(pair)
        if len(self.orderings) != self.n_vertices:
            raise InvariantViolation("one incident-edge ordering per vertex")
        incident = [set() for _ in range(self.n_vertices)]
        for i, e in enumerate(self.edges):
            for v in e.endpoints():
                incident[v].add(i)
        for v, order in enumerate(self.orderings):
            if sorted(order) != sorted(incident[v]):
                raise InvariantViolation(
                    f"ordering at vertex {v} is not a permutation of its "
                    "incident edges"
                )
        if len(self.edge_signs) != len(self.edges) or any(
            s not in (1, -1) for s in self.edge_signs
        ):
            raise InvariantViolation("edge_signs must be one of ±1 per edge")
        # connectivity over real edges
        if self.n_vertices > 0:
            parent = list(range(self.n_vertices))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for e in self.edges:
                if not e.is_dangling:
                    parent[find(e.tail)] = find(e.head)
            roots = {find(v) for v in range(self.n_vertices)}
            if len(roots) > 1:
                raise InvariantViolation("graph is not connected")

    # ---------------------------------------------------------- queries

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def real_edge_indices(self) -> list[int]:
        return [i for i, e in enumerate(self.edges) if not e.is_dangling]

    @property
    def dangling_edge_indices(self) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.is_dangling]

    def incident_edges(self, v: int) -> list[int]:
        """Incident edge indices in this vertex's chosen order."""
        return list(self.orderings[v])

    def neighbors(self, v: int) -> list[int]:
        out = []
        for i in self.orderings[v]:
            other = self.edges[i].other(v)
            if other is not None:
                out.append(other)
        return out

    def edge_between(self, j: int, k: int) -> int:
        idx = self._pair_index.get(frozenset((j, k)))
        if idx is None:
            raise InvariantViolation(f"({j},{k}) is not a graph edge")
        return idx

    def epsilon(self, j: int, k: int) -> int:
        """Oriented sign eps(j,k) = -eps(k,j) for the edge between j, k."""
        idx = self.edge_between(j, k)
        e = self.edges[idx]
        return self.edge_signs[idx] if (j, k) == (e.tail, e.head) else -(
            self.edge_signs[idx]
        )

    def with_edge_signs(self, signs: list[int]) -> "HoppingGraph":
        return HoppingGraph(
            self.n_vertices,
            self.edges,
            self.orderings,
            list(signs),
            self.boundary,
            self.coords,
            self.shape,
        )

    def vertex_slots(self, v: int) -> dict[str, int]:
        """Map direction -> incident edge index, using the planar
        embedding; dangling edges fill their direction's slot."""
        if self.coords is None:
            raise InvariantViolation("graph has no planar embedding")
        slots: dict[str, int] = {}
        r, c = self.coords[v]
        for i in self.orderings[v]:
            e = self.edges[i]
            if e.is_dangling:
                slots[e.direction] = i
                continue
            ro, co = self.coords[e.other(v)]
            if self.boundary == TORUS and self.shape:
                rows, cols = self.shape
                dr = (ro - r) % rows
                dc = (co - c) % cols
                if dc == 1 and dr == 0:
                    slots[RIGHT] = i
                elif dc == cols - 1 and dr == 0:
                    slots[LEFT] = i
                elif dr == 1 and dc == 0:
                    slots[DOWN] = i
                elif dr == rows - 1 and dc == 0:
                    slots[UP] = i
                else:
                    raise InvariantViolation("non-lattice edge in slots")
            else:
                if (ro, co) == (r, c + 1):
                    slots[RIGHT] = i
                elif (ro, co) == (r, c - 1):
                    slots[LEFT] = i
                elif (ro, co) == (r + 1, c):
                    slots[DOWN] = i
                elif (ro, co) == (r - 1, c):
                    slots[UP] = i
                else:
                    raise InvariantViolation("non-lattice edge in slots")
        return slots

    def edge_label(self, i: int) -> str:
        e = self.edges[i]
        if e.is_dangling:
            return f"d{e.tail}{e.direction[0]}"
        return f"{e.tail}-{e.head}"

    def edge_labels(self) -> list[str]:
        return [self.edge_label(i) for i in range(self.n_edges)]

    def edge_adjacency(self) -> list[set[int]]:
        """For each edge, the set of edges sharing a real endpoint."""
        incident = [set() for _ in range(self.n_vertices)]
        for i, e in enumerate(self.edges):
            for v in e.endpoints():
                incident[v].add(i)
        out = []
        for i, e in enumerate(self.edges):
            adj = set()
            for v in e.endpoints():
                adj |= incident[v]
            adj.discard(i)
            out.append(adj)
        return out

    # ---------------------------------------------------- serialization

    def to_json_dict(self) -> dict:
        return {
            "schema": GRAPH_SCHEMA,
            "n_vertices": self.n_vertices,
            "boundary": self.boundary,
            "coords": self.coords,
            "shape": list(self.shape) if self.shape else None,
            "edges": [
                [e.tail, e.head, e.orientation, e.direction]
                for e in self.edges
            ],
            "orderings": self.orderings,
            "edge_signs": self.edge_signs,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "HoppingGraph":
        if doc.get("schema") != GRAPH_SCHEMA:
            raise InvariantViolation(
                f"expected schema {GRAPH_SCHEMA}, got {doc.get('schema')!r}"
            )
        return cls(
            n_vertices=doc["n_vertices"],
            edges=[Edge(t, h, o, d) for t, h, o, d in doc["edges"]],
            orderings=[list(o) for o in doc["orderings"]],
            edge_signs=list(doc["edge_signs"]),
            boundary=doc["boundary"],
            coords=[tuple(c) for c in doc["coords"]]
            if doc.get("coords")
            else None,
            shape=tuple(doc["shape"]) if doc.get("shape") else None,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "HoppingGraph":
        return cls.from_json_dict(json.loads(text))

    @classmethod
    def from_edges(
        cls,
        n_vertices: int,
        pairs: list[tuple[int, int]],
        orderings: list[list[int]] | None = None,
    ) -> "HoppingGraph":
        """General graph from an edge list; default ordering is by edge
        index at every vertex."""
        edges = [Edge(a, b, "h") for a, b in pairs]
        if orderings is None:
            orderings = [[] for _ in range(n_vertices)]
            for i, e in enumerate(edges):
                orderings[e.tail].append(i)
                orderings[e.head].append(i)
        return cls(
            n_vertices, edges, orderings, [1] * len(edges), boundary=OPEN
        )


def build_lattice(
    rows: int,
    cols: int,
    boundary: str = OPEN,
    with_dangling: bool = False,
) -> HoppingGraph:
    """Square-lattice hopping graph.

    The torus wraps in both directions (needs rows, cols >= 3 to stay a
    simple graph).  With ``with_dangling`` every missing direction at an
    open boundary vertex gets a dangling edge; the dangling edges are
    indexed clockwise starting from the top-left vertex's upward one.
    """
    if boundary not in (OPEN, TORUS):
        raise InvariantViolation(f"unknown boundary {boundary!r}")
    minimum = 3 if boundary == TORUS else 2
    if rows < minimum or cols < minimum:
        raise InvariantViolation(
            f"{boundary} lattice needs rows, cols >= {minimum}"
        )
    if with_dangling and boundary == TORUS:
        raise InvariantViolation("a torus has no boundary to dangle from")

    def vid(r: int, c: int) -> int:
        return (r % rows) * cols + (c % cols)

    edges: list[Edge] = []
    for r in range(rows):
        for c in range(cols):
            if boundary == TORUS or c < cols - 1:
                edges.append(Edge(vid(r, c), vid(r, c + 1), "h"))
            if boundary == TORUS or r < rows - 1:
                edges.append(Edge(vid(r, c), vid(r + 1, c), "v"))
    if with_dangling:
        for c in range(cols):  # top row, left to right: upward
            edges.append(Edge(vid(0, c), None, "v", UP))
        for r in range(rows):  # right column, top to bottom: rightward
            edges.append(Edge(vid(r, cols - 1), None, "h", RIGHT))
        for c in reversed(range(cols)):  # bottom row, right to left
            edges.append(Edge(vid(rows - 1, c), None, "v", DOWN))
        for r in reversed(range(rows)):  # left column, bottom to top
            edges.append(Edge(vid(r, 0), None, "h", LEFT))

    coords = [(v // cols, v % cols) for v in range(rows * cols)]

    # direction -> edge index per vertex, then apply the default order
    slot_map: list[dict[str, int]] = [{} for _ in range(rows * cols)]
    for i, e in enumerate(edges):
        if e.is_dangling:
            slot_map[e.tail][e.direction] = i
            continue
        r, c = coords[e.tail]
        if e.orientation == "h":
            slot_map[e.tail][RIGHT] = i
            slot_map[e.head][LEFT] = i
        else:
            slot_map[e.tail][DOWN] = i
            slot_map[e.head][UP] = i
    orderings = []
    for v in range(rows * cols):
        order = (
            TOP_LEFT_CORNER_ORDER
            if boundary == OPEN and v == 0
            else DEFAULT_INTERIOR_ORDER
        )
        chosen = [slot_map[v][d] for d in order if d in slot_map[v]]
        leftover = [
            slot_map[v][d] for d in slot_map[v] if d not in order
        ]
        orderings.append(chosen + sorted(leftover))

    return HoppingGraph(
        n_vertices=rows * cols,
        edges=edges,
        orderings=orderings,
        edge_signs=[1] * len(edges),
        boundary=boundary,
        coords=coords,
        shape=(rows, cols),
    )


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: dict[int, tuple[int, int]]  # vertex -> (parent vertex, edge idx)
    tree_edges: frozenset[int]

    def path_to_root(self, v: int) -> list[int]:
        out = [v]
        while out[-1] != self.root:
            out.append(self.parent[out[-1]][0])
        return out


def spanning_tree(g: HoppingGraph, root: int = 0) -> SpanningTree:
    """BFS spanning tree; neighbors are explored in incident-edge order."""
    parent: dict[int, tuple[int, int]] = {}
    tree_edges: set[int] = set()
    seen = {root}
    queue = [root]
    while queue:
        v = queue.pop(0)
        for i in g.orderings[v]:
            w = g.edges[i].other(v)
            if w is None or w in seen:
                continue
            seen.add(w)
            parent[w] = (v, i)
            tree_edges.add(i)
            queue.append(w)
    if len(seen) != g.n_vertices:
        raise InvariantViolation("graph is not connected")
    return SpanningTree(root, parent, frozenset(tree_edges))


@dataclass(frozen=True)
class CycleBasis:
    """Independent closed vertex paths spanning the cycle space.

    ``kinds`` labels each path: "face" for an elementary plaquette,
    "winding" for a global loop around a periodic direction, "cycle"
    for a generic fundamental cycle.
    """

    paths: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kinds and len(self.kinds) != len(self.paths):
            raise InvariantViolation("one kind label per cycle required")

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)


def path_edge_set(g: HoppingGraph, path) -> int:
    """Bitset of edge indices traversed by a closed/open vertex path."""
    bits = 0
    for a, b in zip(path, path[1:]):
        bits ^= 1 << g.edge_between(a, b)
    return bits


def cycle_basis(g: HoppingGraph) -> CycleBasis:
    """Cycle basis as closed vertex paths (size N_E_real - N_V + 1).

    Square lattices get plaquette faces (clockwise from each face's
    top-left vertex), plus one horizontal and one vertical winding loop
    on the torus (dropping one dependent plaquette).  Other graphs get
    the fundamental cycles of a BFS spanning tree.
    """
    if g.shape is not None and g.coords is not None:
        rows, cols = g.shape

        def vid(r, c):
            return (r % rows) * cols + (c % cols)

        faces = []
        max_r = rows if g.boundary == TORUS else rows - 1
        max_c = cols if g.boundary == TORUS else cols - 1
        for r in range(max_r):
            for c in range(max_c):
                faces.append(
                    (vid(r, c), vid(r, c + 1), vid(r + 1, c + 1),
                     vid(r + 1, c), vid(r, c))
                )
        kinds = ["face"] * len(faces)
        if g.boundary == TORUS:
            faces.pop()  # the last face is the product of all others
            kinds.pop()
            faces.append(tuple(vid(0, c) for c in range(cols)) + (vid(0, 0),))
            faces.append(tuple(vid(r, 0) for r in range(rows)) + (vid(0, 0),))
            kinds += ["winding", "winding"]
        basis = CycleBasis(tuple(faces), tuple(kinds))
    else:
        tree = spanning_tree(g)
        paths = []
        for i in g.real_edge_indices:
            if i in tree.tree_edges:
                continue
            e = g.edges[i]
            pa = tree.path_to_root(e.tail)
            pb = tree.path_to_root(e.head)
            shared = set(pa) & set(pb)
            # lowest common ancestor = first shared vertex on pa
            lca = next(v for v in pa if v in shared)
            up = pa[: pa.index(lca) + 1]  # tail .. lca
            down = pb[: pb.index(lca) + 1]  # head .. lca
            cycle = up + list(reversed(down))[1:] + [e.tail]
            paths.append(tuple(cycle))
        basis = CycleBasis(tuple(paths), ("cycle",) * len(paths))

    n_real = len(g.real_edge_indices)
    expect = n_real - g.n_vertices + 1
    if len(basis) != expect:
        raise InvariantViolation(
            f"cycle basis size {len(basis)} != E-V+1 = {expect}"
        )
    return basis


def epsilon_loop_sign(g: HoppingGraph, path) -> int:
    """Product of oriented eps(j,k) along a closed path."""
    if len(path) < 2 or path[0] != path[-1]:
        raise InvariantViolation("path must be closed (first == last vertex)")
    sign = 1
    for a, b in zip(path, path[1:]):
        sign *= g.epsilon(a, b)
    return sign
