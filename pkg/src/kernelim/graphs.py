"""Weighted undirected graphs: construction, file I/O, point-cloud generation, Laplacians."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import GraphFormatError


class LaplacianKind(Enum):
    STANDARD = "standard"
    NORMALIZED = "normalized"

    @classmethod
    def parse(cls, name: str) -> "LaplacianKind":
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ValueError(
                f"unknown laplacian kind {name!r}; expected 'standard' or 'normalized'"
            ) from None


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with strictly positive edge weights.

    Nodes are dense integers 0..n-1.  When a file used other identifiers,
    `labels` maps each dense id back to the original token.  Edges are stored
    canonically as (u, v, w) with u < v, sorted by (u, v).
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]
    positions: np.ndarray | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError("graph needs at least one node")
        canon = []
        seen = set()
        for u, v, w in self.edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"edge ({u},{v}) references a node outside 0..{self.n - 1}")
            if u == v:
                raise GraphFormatError(f"self-loop on node {u} is not allowed")
            if not (w > 0 and math.isfinite(w)):
                raise GraphFormatError(f"edge ({u},{v}) has non-positive weight {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            canon.append((key[0], key[1], w))
        canon.sort()
        object.__setattr__(self, "edges", tuple(canon))
        if self.positions is not None:
            pos = np.asarray(self.positions, dtype=float)
            if pos.shape != (self.n, 2):
                raise GraphFormatError(f"positions must have shape ({self.n}, 2), got {pos.shape}")
            object.__setattr__(self, "positions", pos)
        if self.labels is not None:
            labels = tuple(str(t) for t in self.labels)
            if len(labels) != self.n:
                raise GraphFormatError("label table length must equal the node count")
            object.__setattr__(self, "labels", labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        """Dense symmetric adjacency matrix."""
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] = w
            a[v, u] = w
        return a

    def degrees(self) -> np.ndarray:
        """Weighted degree of every node."""
        d = np.zeros(self.n)
        for u, v, w in self.edges:
            d[u] += w
            d[v] += w
        return d


def _map_labels(tokens: list[str]) -> dict[str, int]:
    # Numeric token sets sort numerically so plain 0-based files map to themselves.
    uniq = sorted(set(tokens), key=(lambda t: int(t)) if all(t.lstrip("-").isdigit() for t in tokens) else None)
    return {t: i for i, t in enumerate(uniq)}


def _parse_edge_list(text: str) -> Graph:
    raw = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) not in (2, 3):
            raise GraphFormatError(f"line {lineno}: expected 'u v [w]', got {len(tokens)} fields")
        if tokens[0] == tokens[1]:
            raise GraphFormatError(f"line {lineno}: self-loop on node {tokens[0]!r}")
        if len(tokens) == 3:
            try:
                w = float(tokens[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: weight {tokens[2]!r} is not a number") from None
        else:
            w = 1.0
        raw.append((lineno, tokens[0], tokens[1], w))
    if not raw:
        raise GraphFormatError("edge list contains no edges")
    ids = _map_labels([t for _, u, v, _ in raw for t in (u, v)])
    edges = []
    seen = set()
    for lineno, u, v, w in raw:
        a, b = ids[u], ids[v]
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge ({u},{v})")
        seen.add(key)
        edges.append((key[0], key[1], w))
    labels = tuple(sorted(ids, key=ids.get))
    if labels == tuple(str(i) for i in range(len(labels))):
        labels = None
    return Graph(n=len(ids), edges=tuple(edges), labels=labels)


def _parse_json_graph(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
        raise GraphFormatError("graph JSON must be an object with 'nodes' and 'edges'")
    nodes = doc["nodes"]
    n = len(nodes)
    ids = sorted(int(m["id"]) for m in nodes)
    if ids != list(range(n)):
        raise GraphFormatError("node ids must be the contiguous integers 0..n-1")
    with_pos = [m for m in nodes if m.get("pos") is not None]
    positions = None
    if with_pos:
        if len(with_pos) != n:
            raise GraphFormatError("either every node or no node may carry a position")
        positions = np.zeros((n, 2))
        for m in nodes:
            positions[int(m["id"])] = [float(m["pos"][0]), float(m["pos"][1])]
    labels = None
    if any("label" in m for m in nodes):
        labels = [""] * n
        for m in nodes:
            labels[int(m["id"])] = str(m.get("label", m["id"]))
        labels = tuple(labels)
    edges = tuple(
        (int(e["u"]), int(e["v"]), float(e.get("w", 1.0))) for e in doc["edges"]
    )
    return Graph(n=n, edges=edges, positions=positions, labels=labels)


def load_graph(path, fmt: str | None = None) -> Graph:
    """Read a graph from an edge-list or JSON file.

    The format is inferred from the extension unless `fmt` ('edge-list' or
    'json') is given.  Edge lists hold one 'u v [w]' record per line with '#'
    comments; missing weights default to 1.0.
    """
    path = str(path)
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "edge-list"
    if fmt == "json":
        return _parse_json_graph(text)
    if fmt == "edge-list":
        return _parse_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def graph_to_json(g: Graph) -> str:
    """Canonical JSON serialization (stable byte-for-byte for equal graphs)."""
    nodes = []
    for i in range(g.n):
        m = {"id": i}
        if g.positions is not None:
            m["pos"] = [float(g.positions[i, 0]), float(g.positions[i, 1])]
        if g.labels is not None:
            m["label"] = g.labels[i]
        nodes.append(m)
    edges = [{"u": u, "v": v, "w": w} for u, v, w in g.edges]
    return json.dumps({"nodes": nodes, "edges": edges}, sort_keys=True, separators=(",", ":")) + "\n"


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(graph_to_json(g))


def graph_hash(g: Graph) -> str:
    """SHA-256 of the canonical JSON serialization."""
    return hashlib.sha256(graph_to_json(g).encode("utf-8")).hexdigest()


def uniform_points(count: int, seed: int) -> np.ndarray:
    """Seeded uniform points in the unit square (the synthetic sensor recipe)."""
    if count < 1:
        raise GraphFormatError("point generator needs count >= 1")
    return np.random.default_rng(seed).random((count, 2))


def generate_points_graph(
    points=None,
    *,
    count: int | None = None,
    seed: int = 0,
    thin_radius: float = 0.0,
    link_radius: float,
) -> Graph:
    """Build a geometric graph from 2-D points.

    Points are thinned greedily in input order so that every surviving pair is
    at least `thin_radius` apart, then all surviving pairs within `link_radius`
    are linked with weight 1.0.  Pass either explicit `points` or a generator
    spec (`count`, `seed`) for uniform points in the unit square.
    """
    if link_radius <= 0:
        raise ValueError("link_radius must be positive")
    if thin_radius < 0:
        raise ValueError("thin_radius must be nonnegative")
    if points is None:
        if count is None:
            raise ValueError("pass points or a (count, seed) generator spec")
        points = uniform_points(count, seed)
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise GraphFormatError("points must be an (m, 2) array")
    if pts.shape[0] == 0:
        raise GraphFormatError("no points left after thinning (empty input)")

    kept: list[int] = []
    for i in range(pts.shape[0]):
        if all(math.dist(pts[i], pts[j]) >= thin_radius for j in kept):
            kept.append(i)
    surv = pts[kept]
    m = surv.shape[0]

    diff = surv[:, None, :] - surv[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    edges = tuple(
        (i, j, 1.0) for i in range(m) for j in range(i + 1, m) if dist[i, j] <= link_radius
    )
    return Graph(n=m, edges=edges, positions=surv)


def laplacian(g: Graph, kind: LaplacianKind = LaplacianKind.STANDARD) -> np.ndarray:
    """Standard (D - A) or normalized (D^-1/2 L D^-1/2) graph Laplacian."""
    a = g.adjacency()
    deg = a.sum(axis=1)
    ls = np.diag(deg) - a
    if kind is LaplacianKind.STANDARD:
        return ls
    if kind is LaplacianKind.NORMALIZED:
        if np.any(deg <= 0):
            isolated = int(np.argmax(deg <= 0))
            raise GraphFormatError(
                f"normalized Laplacian undefined: node {isolated} is isolated"
            )
        dinv = 1.0 / np.sqrt(deg)
        ln = ls * dinv[:, None] * dinv[None, :]
        return (ln + ln.T) / 2.0  # exact symmetry under rounding
    raise ValueError(f"unknown Laplacian kind {kind!r}")


def degree_top_n(g: Graph, n_sel: int) -> list[int]:
    """Nodes by descending weighted degree, ties broken by ascending id."""
    if not 1 <= n_sel <= g.n:
        raise ValueError(f"n_sel must be in 1..{g.n}, got {n_sel}")
    deg = g.degrees()
    order = np.lexsort((np.arange(g.n), -deg))
    return [int(i) for i in order[:n_sel]]
