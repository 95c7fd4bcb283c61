"""Graph models in the half-edge formalism.

A finite graph is a vertex count plus a flat array of half-edges; each
half-edge records its origin and the index of its partner (the reversed
half-edge). The rooted models built on top of it are

* :class:`FiniteGraph` - an explicit half-edge graph with a root vertex,
* :class:`Cycle` - the Cayley graph of Z/nZ with generators +1, -1,
* :class:`Lattice` - the integer lattice Z^d (symbolic, never materialized),
* :class:`Product` - a product of finite models, materialized lazily.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce
from pathlib import Path

import numpy as np

from .exceptions import (
    DomainError,
    GraphSpecError,
    InfiniteGraphError,
    UnsupportedError,
    UsageError,
)
from .validation import check_int


@dataclass(frozen=True)
class HalfEdgeGraph:
    """Connected graph stored as half-edges.

    ``origin[e]`` is the vertex half-edge ``e`` leaves from and
    ``partner[e]`` the reversed half-edge, so the terminus of ``e`` is
    ``origin[partner[e]]``. Self-loops and multi-edges are allowed.
    """

    n_vertices: int
    origin: tuple[int, ...]
    partner: tuple[int, ...]

    def __post_init__(self):
        n = self.n_vertices
        if n < 1:
            raise DomainError("a graph needs at least one vertex")
        if len(self.origin) != len(self.partner):
            raise DomainError("origin and partner arrays differ in length")
        m = len(self.partner)
        for e, (o, p) in enumerate(zip(self.origin, self.partner)):
            if not 0 <= o < n:
                raise DomainError(f"half-edge {e} has origin {o} outside 0..{n - 1}")
            if not 0 <= p < m:
                raise DomainError(f"half-edge {e} has partner {p} outside 0..{m - 1}")
            if p == e:
                raise DomainError(f"half-edge {e} is its own partner")
            if self.partner[p] != e:
                raise DomainError(f"partner map is not an involution at {e}")
        if not self._connected():
            raise DomainError("graph is not connected")

    @classmethod
    def from_edges(cls, n_vertices: int, edges) -> "HalfEdgeGraph":
        """Expand undirected ``(u, v)`` pairs into partnered half-edges."""
        origin, partner = [], []
        for u, v in edges:
            e = len(origin)
            origin += [int(u), int(v)]
            partner += [e + 1, e]
        return cls(int(n_vertices), tuple(origin), tuple(partner))

    def terminus(self, e: int) -> int:
        return self.origin[self.partner[e]]

    @property
    def n_half_edges(self) -> int:
        return len(self.origin)

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the termini of its outgoing half-edges."""
        nbrs = [[] for _ in range(self.n_vertices)]
        for e, o in enumerate(self.origin):
            nbrs[o].append(self.origin[self.partner[e]])
        return tuple(tuple(x) for x in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.out_neighbors)

    def edges(self) -> list[tuple[int, int]]:
        """One ``(u, v)`` pair per partnered half-edge pair."""
        return [
            (self.origin[e], self.terminus(e))
            for e in range(self.n_half_edges)
            if e < self.partner[e]
        ]

    def _connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        nbrs = self.out_neighbors
        while queue:
            v = queue.popleft()
            for w in nbrs[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n_vertices


class GraphModel:
    """Base class of the rooted graph models."""

    is_finite: bool = True
    is_transitive: bool = False

    @property
    def root_degree(self) -> int:
        return self.graph.degrees[self.root_index]

    @property
    def regular_degree(self) -> int | None:
        """Common vertex degree, or ``None`` if the graph is not regular."""
        degs = set(self.graph.degrees)
        return degs.pop() if len(degs) == 1 else None

    @property
    def n_vertices(self) -> int:
        return self.graph.n_vertices


@dataclass(frozen=True)
class FiniteGraph(GraphModel):
    graph: HalfEdgeGraph
    root: int = 0

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n_vertices:
            raise DomainError(f"root {self.root} is not a vertex")

    @property
    def root_index(self) -> int:
        return self.root


@dataclass(frozen=True)
class Cycle(GraphModel):
    n: int
    is_transitive = True

    def __post_init__(self):
        check_int("n", self.n, minimum=3)

    @property
    def root(self) -> int:
        return 0

    root_index = root

    @cached_property
    def graph(self) -> HalfEdgeGraph:
        n = self.n
        return HalfEdgeGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @property
    def root_degree(self) -> int:
        return 2

    @property
    def regular_degree(self) -> int:
        return 2


@dataclass(frozen=True)
class Lattice(GraphModel):
    d: int
    is_finite = False
    is_transitive = True

    def __post_init__(self):
        check_int("d", self.d, minimum=1)

    @property
    def root(self) -> tuple[int, ...]:
        return (0,) * self.d

    @property
    def root_degree(self) -> int:
        return 2 * self.d

    @property
    def regular_degree(self) -> int:
        return 2 * self.d

    @property
    def graph(self):
        raise InfiniteGraphError(f"Z^{self.d} has no finite half-edge graph")

    @property
    def n_vertices(self):
        raise InfiniteGraphError(f"Z^{self.d} has infinitely many vertices")


@dataclass(frozen=True)
class Product(GraphModel):
    """Rooted product of finite models; vertices are ordered row-major."""

    factors: tuple[GraphModel, ...]

    @property
    def is_transitive(self) -> bool:
        return all(f.is_transitive for f in self.factors)

    @property
    def root(self) -> tuple:
        return tuple(f.root for f in self.factors)

    @property
    def root_index(self) -> int:
        shape = tuple(f.n_vertices for f in self.factors)
        return int(np.ravel_multi_index(tuple(f.root_index for f in self.factors), shape))

    @cached_property
    def graph(self) -> HalfEdgeGraph:
        return reduce(_product_graph, (f.graph for f in self.factors))

    @property
    def root_degree(self) -> int:
        return sum(f.root_degree for f in self.factors)


def _product_graph(F: HalfEdgeGraph, G: HalfEdgeGraph) -> HalfEdgeGraph:
    nF, nG = F.n_vertices, G.n_vertices
    mF, mG = F.n_half_edges, G.n_half_edges
    origin, partner = [], []
    # half-edges (a, e) for a in V_F, e in E_G, then (f, b) for f in E_F, b in V_G
    for a in range(nF):
        for e in range(mG):
            origin.append(a * nG + G.origin[e])
            partner.append(a * mG + G.partner[e])
    offset = nF * mG
    for f in range(mF):
        for b in range(nG):
            origin.append(F.origin[f] * nG + b)
            partner.append(offset + F.partner[f] * nG + b)
    return HalfEdgeGraph(nF * nG, tuple(origin), tuple(partner))


def build_cycle(n: int) -> Cycle:
    """Cycle graph on ``n >= 3`` vertices rooted at vertex 0."""
    n = check_int("n", n)
    if n < 3:
        raise DomainError(f"cycles need n >= 3, got {n}")
    return Cycle(n)


def build_lattice(d: int) -> Lattice:
    return Lattice(check_int("d", d, minimum=1))


def complete_graph(n: int) -> FiniteGraph:
    n = check_int("n", n, minimum=2)
    return FiniteGraph(
        HalfEdgeGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    )


def build_product(models) -> GraphModel:
    """Rooted product of models.

    Lattice factors merge symbolically (``Z^a x Z^b = Z^(a+b)``); finite
    factors give a :class:`Product` whose half-edge graph is materialized on
    first use. Mixing the two is not supported.
    """
    flat: list[GraphModel] = []
    for m in models:
        if isinstance(m, Product):
            flat.extend(m.factors)
        elif isinstance(m, GraphModel):
            flat.append(m)
        else:
            raise UsageError(f"not a graph model: {m!r}")
    if not flat:
        raise UsageError("product of an empty list of graphs")
    if all(isinstance(m, Lattice) for m in flat):
        return Lattice(sum(m.d for m in flat))
    if any(isinstance(m, Lattice) for m in flat):
        raise UnsupportedError("products mixing lattices and finite graphs are not supported")
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def laplacian(model: GraphModel) -> np.ndarray:
    """Integer Laplacian matrix (``dtype=object`` holding Python ints).

    Entry ``(i, j)`` is ``[i == j] * deg(i) - #(half-edges from i to j)``,
    so a self-loop adds nothing to the diagonal.
    """
    if not model.is_finite:
        raise InfiniteGraphError("the Laplacian of a lattice is not a finite matrix")
    G = model.graph
    n = G.n_vertices
    L = np.zeros((n, n), dtype=object)
    for e, o in enumerate(G.origin):
        L[o, o] += 1
        L[o, G.terminus(e)] -= 1
    return L


def _apply_laplacian(G: HalfEdgeGraph, f: list[int]) -> list[int]:
    out = [0] * G.n_vertices
    for u, nbrs in enumerate(G.out_neighbors):
        fu = f[u]
        acc = 0
        for w in nbrs:
            acc += fu - f[w]
        out[u] = acc
    return out


def _lattice_moments(d: int, kmax: int, radius: int) -> list[int]:
    """<delta_0, Delta^k delta_0> for k <= kmax on the L1 ball of ``radius``.

    Outside the ball the function is taken to be zero while the diagonal stays
    at 2d; a closed walk of length k never leaves the ball of radius k/2.
    """
    steps = [tuple(s if i == j else 0 for i in range(d)) for j in range(d) for s in (1, -1)]
    origin = (0,) * d
    f = {origin: 1}
    out = [1]
    for _ in range(kmax):
        g: dict[tuple[int, ...], int] = {}
        for p, val in f.items():
            g[p] = g.get(p, 0) + 2 * d * val
            for s in steps:
                q = tuple(a + b for a, b in zip(p, s))
                if sum(abs(c) for c in q) <= radius:
                    g[q] = g.get(q, 0) - val
        f = {p: v for p, v in g.items() if v}
        out.append(f.get(origin, 0))
    return out


def spectral_moments(model: GraphModel, kmax: int) -> list[int]:
    """Exact rooted moments ``<delta_root, Delta^k delta_root>``, k = 0..kmax."""
    kmax = check_int("kmax", kmax, minimum=0)
    if isinstance(model, Lattice):
        return _lattice_moments(model.d, kmax, radius=kmax)
    G = model.graph
    f = [0] * G.n_vertices
    r = model.root_index
    f[r] = 1
    out = [1]
    for _ in range(kmax):
        f = _apply_laplacian(G, f)
        out.append(f[r])
    return out


def spectral_moment(model: GraphModel, k: int) -> int:
    k = check_int("k", k, minimum=0)
    return spectral_moments(model, k)[k]


def n_similar(a: GraphModel, b: GraphModel, n: int) -> bool:
    """Whether the rooted moments of ``a`` and ``b`` agree for all k <= n."""
    n = check_int("n", n, minimum=0)
    if a == b:
        return True
    return spectral_moments(a, n) == spectral_moments(b, n)


def graph_distance(model: GraphModel, u: int, v: int) -> int:
    """Breadth-first edge distance between two vertices of a finite model."""
    if not model.is_finite:
        raise InfiniteGraphError("graph_distance needs a finite model")
    G = model.graph
    for name, x in (("u", u), ("v", v)):
        check_int(name, x)
        if not 0 <= x < G.n_vertices:
            raise DomainError(f"{name} = {x} is not a vertex")
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in G.out_neighbors[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    raise DomainError("vertices are disconnected")  # unreachable for valid graphs


def graph_from_json(obj) -> FiniteGraph:
    """Build a rooted finite graph from ``{"vertices": n, "edges": [[u, v], ...]}``.

    An optional ``"root"`` key selects the root (default 0).
    """
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise GraphSpecError('graph JSON needs "vertices" and "edges" keys')
    n = obj["vertices"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise GraphSpecError(f'"vertices" must be a positive integer, got {n!r}')
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise GraphSpecError('"edges" must be a list of [u, v] pairs')
    pairs = []
    for item in edges:
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)
        ):
            raise GraphSpecError(f"bad edge entry {item!r}")
        pairs.append((item[0], item[1]))
    root = obj.get("root", 0)
    try:
        return FiniteGraph(HalfEdgeGraph.from_edges(n, pairs), root=root)
    except DomainError as exc:
        raise GraphSpecError(f"invalid graph: {exc}") from exc


def load_graph_json(path) -> FiniteGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphSpecError(f"cannot read graph file {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSpecError(f"graph file {path} is not valid JSON: {exc}") from exc
    return graph_from_json(obj)


def graph_to_json(model: GraphModel) -> dict:
    G = model.graph
    return {
        "vertices": G.n_vertices,
        "edges": [list(e) for e in G.edges()],
        "root": model.root_index,
    }


def parse_graph_spec(spec: str) -> GraphModel:
    """Parse ``cycle:<n>``, ``zd:<d>``, ``file:<path>`` or ``prod:<spec>,<spec>,...``."""
    if not isinstance(spec, str) or ":" not in spec:
        raise GraphSpecError(f"cannot parse graph spec {spec!r}")
    kind, _, arg = spec.partition(":")
    if kind == "prod":
        parts = arg.split(",")
        if not all(parts):
            raise GraphSpecError(f"empty factor in product spec {spec!r}")
        return build_product([parse_graph_spec(p) for p in parts])
    if kind == "file":
        return load_graph_json(arg)
    if kind not in ("cycle", "zd"):
        raise GraphSpecError(f"unknown graph kind {kind!r} in {spec!r}")
    try:
        value = int(arg)
    except ValueError:
        raise GraphSpecError(f"expected an integer after {kind!r}:, got {arg!r}") from None
    try:
        return build_cycle(value) if kind == "cycle" else build_lattice(value)
    except DomainError as exc:
        raise GraphSpecError(f"invalid graph spec {spec!r}: {exc}") from exc
