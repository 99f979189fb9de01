"""Stochastic and centrality baselines: Independent Cascade, PageRank.

Cascades are simulated in the live-edge form: every directed edge keeps its
own coin, drawn once per run from a substream keyed by (master_seed, run), and
a run's outcome is the set reachable from the seeds over live edges.  This is
distributionally identical to activating neighbors one attempt at a time, and
it makes the coins independent of the seed set, so runs sharing a substream
are exactly monotone under seed growth and safe to reuse across candidates.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError
from .graphs import Graph


@dataclass(frozen=True)
class ICConfig:
    """Spread probability, Monte-Carlo repetitions, master seed."""

    p: float
    runs: int
    master_seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"spread probability must be in [0, 1], got {self.p}")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if self.master_seed < 0:
            raise ValueError("master_seed must be nonnegative")


@dataclass(frozen=True)
class SpreadEstimate:
    mean_spread: float
    std_err: float
    runs: int


def _directed_adjacency(g: Graph) -> list[list[tuple[int, int]]]:
    # adj[u] holds (neighbor, directed-edge index); undirected edge j owns
    # directed indices 2j (u->v) and 2j+1 (v->u).
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for j, (u, v, _) in enumerate(g.edges):
        adj[u].append((v, 2 * j))
        adj[v].append((u, 2 * j + 1))
    for lst in adj:
        lst.sort()
    return adj


def _validate_seeds(g: Graph, seeds) -> list[int]:
    out = sorted({int(v) for v in seeds})
    if not out:
        raise ValueError("seed set must be nonempty")
    if out[0] < 0 or out[-1] >= g.n:
        raise ValueError(f"seed id out of range 0..{g.n - 1}")
    return out


def _reach(adj, coins, seeds, active) -> int:
    """Flood from `seeds` over live edges, marking `active`; returns new count."""
    stack = []
    count = 0
    for s in seeds:
        if not active[s]:
            active[s] = True
            stack.append(s)
            count += 1
    while stack:
        u = stack.pop()
        for v, e in adj[u]:
            if coins[e] and not active[v]:
                active[v] = True
                stack.append(v)
                count += 1
    return count


def _run_counts(g: Graph, seeds: list[int], cfg: ICConfig, workers: int) -> np.ndarray:
    adj = _directed_adjacency(g)
    m2 = 2 * len(g.edges)

    def one(run: int) -> int:
        coins = np.random.default_rng((cfg.master_seed, run)).random(m2) < cfg.p
        return _reach(adj, coins, seeds, [False] * g.n)

    counts = np.zeros(cfg.runs, dtype=np.int64)
    if workers <= 1:
        for r in range(cfg.runs):
            counts[r] = one(r)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for r, c in enumerate(pool.map(one, range(cfg.runs))):
                counts[r] = c
    return counts


def ic_spread(g: Graph, seeds, cfg: ICConfig, workers: int = 1) -> SpreadEstimate:
    """Monte-Carlo estimate of the expected number of activated nodes.

    Run r draws from the substream (master_seed, r), so the estimate does not
    depend on execution order or worker count.
    """
    counts = _run_counts(g, _validate_seeds(g, seeds), cfg, workers)
    mean = float(counts.mean())
    err = float(counts.std(ddof=1) / np.sqrt(cfg.runs)) if cfg.runs > 1 else 0.0
    return SpreadEstimate(mean_spread=mean, std_err=err, runs=cfg.runs)


def ic_score(g: Graph, seeds, cfg: ICConfig, workers: int = 1) -> float:
    """Mean fraction of nodes NOT reached by cascades from the seed set."""
    seeds = sorted({int(v) for v in seeds})
    if not seeds:
        return 1.0
    if seeds[0] < 0 or seeds[-1] >= g.n:
        raise ValueError(f"seed id out of range 0..{g.n - 1}")
    counts = _run_counts(g, seeds, cfg, workers)
    return float(np.mean((g.n - counts) / g.n))


def ic_greedy_select(g: Graph, budget: int, cfg: ICConfig) -> list[int]:
    """Greedy seed selection under estimated marginal spread.

    Each round evaluates every remaining candidate on the same `runs` live-edge
    samples (common random numbers, substreams (master_seed, round, run)), then
    keeps the node with the largest mean spread, ties to the smallest id.
    """
    if not 1 <= budget <= g.n:
        raise ValueError(f"budget must be in 1..{g.n}, got {budget}")
    adj = _directed_adjacency(g)
    m2 = 2 * len(g.edges)
    chosen: list[int] = []
    chosen_mask = [False] * g.n
    visited = [0] * g.n
    stamp = 0

    for round_idx in range(budget):
        totals = np.zeros(g.n)
        for run in range(cfg.runs):
            coins = np.random.default_rng((cfg.master_seed, round_idx, run)).random(m2) < cfg.p
            active = [False] * g.n
            base = _reach(adj, coins, chosen, active) if chosen else 0
            for v in range(g.n):
                if chosen_mask[v]:
                    continue
                if active[v]:
                    totals[v] += base
                    continue
                # Marginal reach: nodes already reached are closed under live
                # edges, so the new part never needs to pass through them.
                stamp += 1
                visited[v] = stamp
                stack = [v]
                extra = 1
                while stack:
                    u = stack.pop()
                    for w, e in adj[u]:
                        if coins[e] and not active[w] and visited[w] != stamp:
                            visited[w] = stamp
                            stack.append(w)
                            extra += 1
                totals[v] += base + extra
        masked = np.where(chosen_mask, -np.inf, totals)
        pick = int(np.argmax(masked))  # first maximum = smallest id among ties
        chosen.append(pick)
        chosen_mask[pick] = True
    return chosen


def pagerank(
    g: Graph,
    damping: float = 0.85,
    tol: float = 1e-9,
    max_iter: int = 1000,
    x0: np.ndarray | None = None,
) -> np.ndarray:
    """Power iteration with uniform teleport and weighted transitions.

    Dangling nodes redistribute their mass uniformly.  Converges when the L1
    change between iterates drops below `tol`.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must lie strictly between 0 and 1")
    n = g.n
    a = g.adjacency()
    deg = a.sum(axis=1)
    dangling = deg == 0
    trans = np.zeros((n, n))
    nz = ~dangling
    trans[nz] = a[nz] / deg[nz, None]

    if x0 is None:
        x = np.full(n, 1.0 / n)
    else:
        x = np.asarray(x0, dtype=float)
        if x.shape != (n,) or np.any(x < 0) or x.sum() <= 0:
            raise ValueError("x0 must be a nonnegative length-n vector with positive sum")
        x = x / x.sum()
    for _ in range(max_iter):
        x_new = damping * (trans.T @ x + x[dangling].sum() / n) + (1.0 - damping) / n
        x_new /= x_new.sum()
        if np.abs(x_new - x).sum() < tol:
            return x_new
        x = x_new
    raise ConvergenceError(f"pagerank did not converge within {max_iter} iterations")


def pagerank_top_n(g: Graph, n_sel: int, damping: float = 0.85, tol: float = 1e-9, max_iter: int = 1000) -> list[int]:
    """Top nodes by PageRank score, ties broken by ascending id."""
    if not 1 <= n_sel <= g.n:
        raise ValueError(f"n_sel must be in 1..{g.n}, got {n_sel}")
    scores = pagerank(g, damping=damping, tol=tol, max_iter=max_iter)
    order = np.lexsort((np.arange(g.n), -scores))
    return [int(i) for i in order[:n_sel]]
