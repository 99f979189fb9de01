"""Shared test utilities: graph factories and independent oracles.

Oracles here deliberately avoid the library's own code paths (union-find for
components, truncated Taylor for the matrix exponential, dense linear solves
for PageRank and posterior variance).
"""

import numpy as np

from kernelim import Graph, laplacian


def random_connected_graph(rng, n, extra_edge_prob=0.15, weight_lo=0.5, weight_hi=1.5,
                           unit_spectral=False):
    """Random spanning tree plus extra edges, uniform weights.

    With unit_spectral=True the weights are rescaled so the standard Laplacian
    has largest eigenvalue 1; this keeps diffusion kernels finite and
    well-conditioned for any |t| <= 20.
    """
    edges = {}
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges[(u, v)] = float(rng.uniform(weight_lo, weight_hi))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra_edge_prob:
                edges[(u, v)] = float(rng.uniform(weight_lo, weight_hi))
    g = Graph(n=n, edges=tuple((u, v, w) for (u, v), w in edges.items()))
    if unit_spectral:
        lam_max = float(np.linalg.eigvalsh(laplacian(g))[-1])
        g = Graph(n=n, edges=tuple((u, v, w / lam_max) for u, v, w in g.edges))
    return g


def random_graph(rng, n, edge_prob=0.1, weight_lo=0.5, weight_hi=1.5):
    """Erdos-Renyi style graph; may be disconnected, never edgeless."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.append((u, v, float(rng.uniform(weight_lo, weight_hi))))
    if not edges:
        edges.append((0, min(1, n - 1) or 1, 1.0))
    return Graph(n=n, edges=tuple(edges))


def component_count(g: Graph) -> int:
    """Connected components by union-find, independent of any spectral code."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(i) for i in range(g.n)})


def component_of(g: Graph, node: int) -> set:
    """Nodes in the same component as `node` (breadth-first, adjacency lists)."""
    adj = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {node}
    queue = [node]
    while queue:
        u = queue.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def expm_taylor(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a truncated Taylor series."""
    a = np.asarray(a, dtype=float)
    norm = float(np.abs(a).sum(axis=1).max()) if a.size else 0.0
    squarings = max(0, int(np.ceil(np.log2(max(norm, 1e-300) / 0.5))))
    b = a / (2.0**squarings)
    out = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, 30):
        term = term @ b / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def power_oracle(spectrum, kernel, sampling_set):
    """Posterior standard deviation from the full kernel matrix and np.linalg.solve."""
    from kernelim import kernel_matrix

    full = kernel_matrix(spectrum, kernel)
    nodes = list(sampling_set)
    if not nodes:
        return np.sqrt(np.diag(full))
    sub = full[np.ix_(nodes, nodes)]
    cross = full[:, nodes]
    quad = np.sum(cross * np.linalg.solve(sub, cross.T).T, axis=1)
    return np.sqrt(np.maximum(np.diag(full) - quad, 0.0))


def pagerank_oracle(g: Graph, damping: float) -> np.ndarray:
    """Stationary scores from the dense linear system (I - d M^T) x = (1-d)/n."""
    a = g.adjacency()
    deg = a.sum(axis=1)
    m = np.zeros((g.n, g.n))
    for i in range(g.n):
        m[i] = a[i] / deg[i] if deg[i] > 0 else 1.0 / g.n
    x = np.linalg.solve(np.eye(g.n) - damping * m.T, np.full(g.n, (1 - damping) / g.n))
    return x / x.sum()
