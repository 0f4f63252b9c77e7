"""Graph representation, parsing, all-pairs shortest paths and generators."""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass
class Polygon:
    """Cluster region given as precomputed vertices in layout units."""

    cluster: int
    vertices: np.ndarray  # (k, 2) float
    color: str = "#cccccc"


@dataclass
class Graph:
    """Undirected connected graph with dense integer node ids 0..n-1."""

    n: int
    edges: np.ndarray                 # (m, 2) int, u < v, unique
    weights: np.ndarray = None        # (m,) float > 0
    labels: list = None
    clusters: list = None             # per-node optional int
    positions: np.ndarray = None      # (n, 2) float, optional Euclidean layout
    polygons: list = field(default_factory=list)

    def __post_init__(self):
        self.edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        self.edges = np.sort(self.edges, axis=1)
        if self.weights is None:
            self.weights = np.ones(len(self.edges))
        self.weights = np.asarray(self.weights, dtype=float)
        if self.labels is None:
            self.labels = [str(i) for i in range(self.n)]
        if self.clusters is None:
            self.clusters = [None] * self.n
        self._validate()

    def _validate(self):
        if self.n < 1:
            raise GraphError("graph must have at least one node")
        m = len(self.edges)
        if m:
            if self.edges.min() < 0 or self.edges.max() >= self.n:
                raise GraphError("edge endpoint outside 0..n-1")
            if np.any(self.edges[:, 0] == self.edges[:, 1]):
                raise GraphError("self-loops are not allowed")
            keys = self.edges[:, 0] * self.n + self.edges[:, 1]
            if len(np.unique(keys)) != m:
                raise GraphError("duplicate edges are not allowed")
        if np.any(self.weights <= 0):
            raise GraphError("edge weights must be positive")
        if len(self.weights) != m:
            raise GraphError("weights length does not match edge count")
        ncomp, comp = connected_components(self.adjacency(), directed=False)
        if ncomp != 1:
            members = np.flatnonzero(comp == comp[0])
            raise GraphError(
                f"graph is disconnected ({ncomp} components; "
                f"one component is {members[:10].tolist()}...)")

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> csr_matrix:
        u, v = self.edges[:, 0], self.edges[:, 1]
        w = self.weights
        return csr_matrix(
            (np.r_[w, w], (np.r_[u, v], np.r_[v, u])), shape=(self.n, self.n))

    @property
    def unit_weighted(self) -> bool:
        return bool(np.all(self.weights == 1.0))


@dataclass
class DistanceMatrix:
    """All-pairs graph-theoretic distances with cached extremes."""

    n: int
    d: np.ndarray

    def __post_init__(self):
        self.d = np.asarray(self.d, dtype=float)
        if self.d.shape != (self.n, self.n):
            raise GraphError("distance matrix shape mismatch")
        iu = np.triu_indices(self.n, k=1)
        off = self.d[iu]
        self.d_max = float(off.max()) if len(off) else 0.0
        self.d_min = float(off.min()) if len(off) else 0.0

    def upper(self):
        """Flattened i<j entries in row-major order."""
        iu = np.triu_indices(self.n, k=1)
        return self.d[iu]


def apsp(g: Graph) -> DistanceMatrix:
    """Exact all-pairs shortest paths.

    Unit-weight graphs use per-source breadth-first search, weighted
    graphs a per-source priority-queue (Dijkstra) search; both via
    scipy.sparse.csgraph.
    """
    adj = g.adjacency()
    d = shortest_path(adj, method="D", directed=False,
                      unweighted=g.unit_weighted)
    if not np.all(np.isfinite(d)):
        raise GraphError("graph is disconnected")  # guarded at construction
    return DistanceMatrix(g.n, d)


# ---------------------------------------------------------------------------
# Parsing

_EDGE_RE = re.compile(r"^(\d+)\s+(\d+)(?:\s+([0-9.eE+-]+))?$")


def parse_edge_list(text: str) -> Graph:
    """One "u v [w]" per line; '#' starts a comment."""
    edges, weights = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _EDGE_RE.match(line)
        if not m:
            raise GraphParseError(f"expected 'u v [w]', got {raw!r}", lineno)
        u, v = int(m.group(1)), int(m.group(2))
        if u == v:
            raise GraphParseError(f"self-loop {u}--{v}", lineno)
        w = float(m.group(3)) if m.group(3) else 1.0
        if w <= 0:
            raise GraphParseError(f"non-positive weight {w}", lineno)
        edges.append((u, v))
        weights.append(w)
    if not edges:
        raise GraphParseError("no edges found")
    n = int(np.max(edges)) + 1
    return Graph(n=n, edges=np.array(edges), weights=np.array(weights))


_KNOWN_NODE_ATTRS = {"label", "cluster", "pos"}
_DOT_STMT_RE = re.compile(
    r"^\s*(?P<lhs>\"[^\"]*\"|\w+)\s*"
    r"(?:(?P<edge>--)\s*(?P<rhs>\"[^\"]*\"|\w+)\s*)?"
    r"(?:\[(?P<attrs>[^\]]*)\])?\s*;?\s*$")


def _unquote(tok):
    return tok[1:-1] if tok.startswith('"') else tok


def _parse_attrs(s):
    attrs = {}
    for part in re.findall(r'(\w+)\s*=\s*("[^"]*"|[^,\s]+)', s or ""):
        attrs[part[0]] = _unquote(part[1])
    return attrs


def parse_dot(text: str) -> Graph:
    """Restricted DOT subset: node and edge statements with label,
    cluster and pos attributes, plus graph-level polygon attributes of
    the form  polygon_<cluster> = "<color>:x1,y1;x2,y2;...".

    Unknown attributes are ignored with a warning.
    """
    body = text
    m = re.search(r"\{(.*)\}", text, re.S)
    if m:
        body = m.group(1)
    node_attrs = {}
    edges, weights = [], []
    polygons = []
    for lineno, raw in enumerate(body.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line or line in ("{", "}"):
            continue
        if line.startswith("polygon_"):
            # graph-level attribute statement: polygon_3 = "color:x,y;x,y"
            mm = re.match(r'^polygon_(\d+)\s*=\s*("[^"]*"|\S+)\s*;?\s*$', line)
            if not mm:
                raise GraphParseError(f"bad polygon attribute {raw!r}", lineno)
            cluster = int(mm.group(1))
            spec_str = _unquote(mm.group(2))
            color, _, verts = spec_str.partition(":")
            pts = []
            for pair in verts.split(";"):
                xs, _, ys = pair.partition(",")
                try:
                    pts.append((float(xs), float(ys)))
                except ValueError:
                    raise GraphParseError(f"bad polygon vertex {pair!r}", lineno)
            polygons.append(Polygon(cluster, np.array(pts), color or "#cccccc"))
            continue
        stmt = _DOT_STMT_RE.match(line)
        if not stmt:
            raise GraphParseError(f"cannot parse DOT statement {raw!r}", lineno)
        lhs = _unquote(stmt.group("lhs"))
        attrs = _parse_attrs(stmt.group("attrs"))
        if stmt.group("edge"):
            rhs = _unquote(stmt.group("rhs"))
            try:
                u, v = int(lhs), int(rhs)
            except ValueError:
                raise GraphParseError(
                    f"node ids must be integers, got {lhs!r} -- {rhs!r}", lineno)
            if u == v:
                raise GraphParseError(f"self-loop {u}--{v}", lineno)
            edges.append((min(u, v), max(u, v)))
            weights.append(float(attrs.pop("weight", 1.0)))
            _warn_unknown(attrs, lineno, known=())
        else:
            try:
                nid = int(lhs)
            except ValueError:
                raise GraphParseError(f"node id must be an integer, got {lhs!r}",
                                      lineno)
            _warn_unknown(attrs, lineno, known=_KNOWN_NODE_ATTRS)
            node_attrs[nid] = {k: v for k, v in attrs.items()
                               if k in _KNOWN_NODE_ATTRS}
    if not edges:
        raise GraphParseError("no edges found")
    n = max(int(np.max(edges)), max(node_attrs, default=0)) + 1
    labels = [str(i) for i in range(n)]
    clusters = [None] * n
    positions = None
    if any("pos" in a for a in node_attrs.values()):
        positions = np.zeros((n, 2))
    for nid, attrs in node_attrs.items():
        if "label" in attrs:
            labels[nid] = attrs["label"]
        if "cluster" in attrs:
            clusters[nid] = int(attrs["cluster"])
        if "pos" in attrs and positions is not None:
            xs, _, ys = attrs["pos"].partition(",")
            positions[nid] = (float(xs), float(ys))
    return Graph(n=n, edges=np.array(edges), weights=np.array(weights),
                 labels=labels, clusters=clusters, positions=positions,
                 polygons=polygons)


def _warn_unknown(attrs, lineno, known):
    for k in attrs:
        if k not in known:
            warnings.warn(f"line {lineno}: ignoring unknown attribute {k!r}")


def parse_graph(text: str, format: str = "edge-list") -> Graph:
    if format == "edge-list":
        return parse_edge_list(text)
    if format in ("dot", "dot-subset"):
        return parse_dot(text)
    raise GraphParseError(f"unknown format {format!r}")


# ---------------------------------------------------------------------------
# Generators


def path_graph(n: int) -> Graph:
    _require(n >= 1, "path needs n >= 1")
    e = [(i, i + 1) for i in range(n - 1)]
    return Graph(n=n, edges=np.array(e).reshape(-1, 2))


def cycle_graph(n: int) -> Graph:
    _require(n >= 3, "cycle needs n >= 3")
    e = [(i, (i + 1) % n) for i in range(n)]
    return Graph(n=n, edges=np.array(e))


def grid_graph(w: int, h: int) -> Graph:
    _require(w >= 1 and h >= 1, "grid needs positive dimensions")
    def nid(i, j):
        return i * w + j
    e = []
    for i in range(h):
        for j in range(w):
            if j + 1 < w:
                e.append((nid(i, j), nid(i, j + 1)))
            if i + 1 < h:
                e.append((nid(i, j), nid(i + 1, j)))
    return Graph(n=w * h, edges=np.array(e))


def triangular_lattice(rows: int) -> Graph:
    """rows x rows rhombic patch of the triangular lattice: grid edges
    plus one diagonal per cell."""
    _require(rows >= 2, "triangular lattice needs rows >= 2")
    w = h = rows
    def nid(i, j):
        return i * w + j
    e = []
    for i in range(h):
        for j in range(w):
            if j + 1 < w:
                e.append((nid(i, j), nid(i, j + 1)))
            if i + 1 < h:
                e.append((nid(i, j), nid(i + 1, j)))
            if i + 1 < h and j + 1 < w:
                e.append((nid(i, j), nid(i + 1, j + 1)))
    return Graph(n=w * h, edges=np.array(e))


def cube_graph() -> Graph:
    e = [(u, v) for u in range(8) for v in range(u + 1, 8)
         if bin(u ^ v).count("1") == 1]
    return Graph(n=8, edges=np.array(e))


def binary_tree(depth: int) -> Graph:
    """Full binary tree with `depth` edge levels: 2^(depth+1) - 1 nodes."""
    _require(depth >= 0, "depth must be >= 0")
    n = 2 ** (depth + 1) - 1
    e = [(((i + 1) // 2) - 1, i) for i in range(1, n)]
    return Graph(n=n, edges=np.array(e).reshape(-1, 2))


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree via a Prufer sequence."""
    _require(n >= 1, "tree needs n >= 1")
    if n == 1:
        return Graph(n=1, edges=np.empty((0, 2), dtype=np.int64))
    if n == 2:
        return Graph(n=2, edges=np.array([[0, 1]]))
    rng = np.random.default_rng(seed)
    prufer = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, dtype=np.int64)
    for x in prufer:
        degree[x] += 1
    e = []
    leaves = sorted(i for i in range(n) if degree[i] == 1)
    import heapq
    heapq.heapify(leaves)
    for x in prufer:
        leaf = heapq.heappop(leaves)
        e.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    e.append((u, v))
    return Graph(n=n, edges=np.array(e))


def random_graph(n: int, m: int, seed: int, max_retries: int = 100) -> Graph:
    """m edges picked uniformly among all pairs, resampled until connected."""
    _require(n >= 2, "random graph needs n >= 2")
    npairs = n * (n - 1) // 2
    _require(n - 1 <= m <= npairs,
             f"m must be in [{n - 1}, {npairs}] for n = {n}")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        flat = rng.choice(npairs, size=m, replace=False)
        i = (n - 2 - np.floor(
            np.sqrt(-8 * flat + 4 * n * (n - 1) - 7) / 2 - 0.5)).astype(np.int64)
        j = (flat + i + 1 - n * (n - 1) // 2
             + (n - i) * (n - i - 1) // 2).astype(np.int64)
        edges = np.column_stack([i, j])
        ncomp, _ = connected_components(
            csr_matrix((np.ones(m), (i, j)), shape=(n, n)), directed=False)
        if ncomp == 1:
            return Graph(n=n, edges=edges)
    raise GraphError(f"could not sample a connected graph in {max_retries} tries")


def _require(cond, msg):
    if not cond:
        raise GraphError(msg)


def generate(kind: str, *args, seed: int = 0) -> Graph:
    """Dispatch by family name used by the command-line `gen` command."""
    kinds = {
        "path": lambda n: path_graph(int(n)),
        "cycle": lambda n: cycle_graph(int(n)),
        "grid": lambda w, h: grid_graph(int(w), int(h)),
        "triangular-lattice": lambda r: triangular_lattice(int(r)),
        "cube": cube_graph,
        "binary-tree": lambda d: binary_tree(int(d)),
        "random-tree": lambda n: random_tree(int(n), seed),
        "random": lambda n, m: random_graph(int(n), int(m), seed),
    }
    if kind not in kinds:
        raise GraphError(f"unknown graph kind {kind!r}")
    return kinds[kind](*args)


def format_edge_list(g: Graph) -> str:
    lines = []
    for (u, v), w in zip(g.edges, g.weights):
        if w == 1.0:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {float(w)!r}")
    return "\n".join(lines) + "\n"
