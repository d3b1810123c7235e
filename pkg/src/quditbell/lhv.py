"""Local hidden variable side: deterministic strategies and their maximum.

By convexity the LHV optimum of the Bell function is reached on a
deterministic assignment, so the engine only ranges over the d^(2N)
strategies (alpha_j, beta_j) with A_j = omega^alpha_j and B_j = omega^beta_j.

Strategy index layout: a mixed-radix counter over
(alpha_1, beta_1, ..., alpha_N, beta_N) with party N least significant,
i.e. index = sum_j (alpha_j * d + beta_j) * (d^2)^(N - j).
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import EnumerationLimitError
from .quantum import Scenario, omega

ENUMERATION_CAP = 10**8
CHUNK_STRATEGIES = 2**16
TIE_TOL = 1e-12
THREADS_ENV = "QUDITBELL_THREADS"

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Strategy:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta must have one entry per party")

    @property
    def key(self) -> tuple[int, ...]:
        return self.alpha + self.beta

    def check(self, s: Scenario):
        if len(self.alpha) != s.parties:
            raise ValueError(f"strategy has {len(self.alpha)} parties, scenario has {s.parties}")
        if any(not 0 <= v < s.dim for v in self.key):
            raise ValueError(f"strategy entries must lie in [0, {s.dim})")

    def to_index(self, d: int) -> int:
        idx = 0
        for a, b in zip(self.alpha, self.beta):
            idx = idx * d * d + a * d + b
        return idx


@dataclass(frozen=True)
class MaxResult:
    max_value: float
    argmax: Strategy
    strategies_evaluated: int
    exhaustive: bool


def classical_bell_value(s: Scenario, strat: Strategy) -> float:
    """Deterministic Bell value, reference implementation.

    2 Re[ 2^-N sum_n omega^(nu n) prod_j (omega^(n alpha_j) + omega^(n (beta_j + 1/2))) ]
    """
    strat.check(s)
    d = s.dim
    total = 0j
    for n in range(1, d):
        term = omega(d, s.nu * n)
        for a, b in zip(strat.alpha, strat.beta):
            term *= omega(d, n * a) + omega(d, n * (b + HALF))
        total += term
    return 2 * total.real / 2**s.parties


def factor_table(s: Scenario) -> np.ndarray:
    """T[a*d + b, n-1] = omega^(n a) + omega^(n (b + 1/2)), shape (d^2, d-1)."""
    d = s.dim
    t = np.empty((d * d, d - 1), dtype=np.complex128)
    for a in range(d):
        for b in range(d):
            t[a * d + b] = [omega(d, n * a) + omega(d, n * (b + HALF)) for n in range(1, d)]
    return t


def phase_weights(s: Scenario) -> np.ndarray:
    return np.array([omega(s.dim, s.nu * n) for n in range(1, s.dim)])


def decode(indices: np.ndarray, s: Scenario) -> tuple[np.ndarray, np.ndarray]:
    """Strategy indices -> (alpha, beta) integer arrays of shape (k, N)."""
    d, N = s.dim, s.parties
    rem = np.asarray(indices, dtype=np.int64).copy()
    pairs = np.empty((rem.shape[0], N), dtype=np.int64)
    for j in range(N - 1, -1, -1):
        pairs[:, j] = rem % (d * d)
        rem //= d * d
    return pairs // d, pairs % d


def evaluate_indices(s: Scenario, indices, table=None, weights=None) -> np.ndarray:
    """Vectorized Bell values for arbitrary strategy indices."""
    table = factor_table(s) if table is None else table
    weights = phase_weights(s) if weights is None else weights
    indices = np.asarray(indices, dtype=np.int64)
    alpha, beta = decode(indices, s)
    pairs = alpha * s.dim + beta
    prod = np.broadcast_to(weights, (indices.shape[0], s.dim - 1)).copy()
    for j in range(s.parties):
        prod *= table[pairs[:, j]]
    return prod.sum(axis=1).real * (2 / 2**s.parties)


# --- exhaustive search -------------------------------------------------------

# worker-process state, filled by _init_worker
_W: dict = {}


def _init_worker(scenario, table, weighted_last, objective):
    _W.update(s=scenario, table=table, wlast=weighted_last, objective=objective)


def _block_values(b0: int, b1: int) -> np.ndarray:
    """Values for all strategies in blocks [b0, b1); row = block, column = last party pair."""
    s, table, wlast = _W["s"], _W["table"], _W["wlast"]
    d2 = s.dim * s.dim
    rem = np.arange(b0, b1, dtype=np.int64)
    prefix = np.ones((rem.shape[0], s.dim - 1), dtype=np.complex128)
    for _ in range(s.parties - 1):
        prefix *= table[rem % d2]
        rem //= d2
    vals = (prefix[:, None, :] * wlast[None, :, :]).sum(axis=2).real * (2 / 2**s.parties)
    if _W["objective"] == "abs":
        vals = np.abs(vals)
    return vals.reshape(-1)


def _lexmin(s: Scenario, indices: np.ndarray) -> tuple[int, ...]:
    alpha, beta = decode(indices, s)
    keys = np.hstack([alpha, beta])
    first = np.lexsort(keys.T[::-1])[0]
    return tuple(int(v) for v in keys[first])


def _scan_chunk(task):
    """Return (chunk max, lexmin key among strategies >= threshold)."""
    b0, b1, threshold = task
    s = _W["s"]
    vals = _block_values(b0, b1)
    m = float(vals.max())
    thr = m - TIE_TOL if threshold is None else threshold
    hits = np.flatnonzero(vals >= thr) + b0 * s.dim * s.dim
    return m, (_lexmin(s, hits) if hits.size else None)


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(THREADS_ENV, "1"))
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    return workers


def _chunk_ranges(n_blocks: int, blocks_per_chunk: int) -> list[tuple[int, int]]:
    return [(b, min(b + blocks_per_chunk, n_blocks)) for b in range(0, n_blocks, blocks_per_chunk)]


def _run_tasks(tasks, initargs, workers):
    if workers == 1 or len(tasks) == 1:
        _init_worker(*initargs)
        return [_scan_chunk(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=initargs) as ex:
        return list(ex.map(_scan_chunk, tasks))


def _reduce(s, results, rescan):
    """Global max and lexicographically smallest tied strategy.

    Ties are strategies within TIE_TOL of the exact global maximum M.  A chunk
    whose own max sits in [M - tol, M) used a looser threshold in the first
    pass, so it is rescanned with M - tol; the result does not depend on how
    the index range was chunked.
    """
    M = max(m for m, _ in results)
    keys = []
    redo = []
    for i, (m, key) in enumerate(results):
        if m == M:
            keys.append(key)
        elif m >= M - TIE_TOL:
            redo.append(i)
    for m, key in rescan(redo, M - TIE_TOL):
        if key is not None:
            keys.append(key)
    best = min(keys)
    N = s.parties
    return M, Strategy(best[:N], best[N:])


def brute_force_max(
    s: Scenario,
    workers: int | None = None,
    cap: int = ENUMERATION_CAP,
    objective: str = "max",
) -> MaxResult:
    """Exact maximum of the classical Bell value over all d^(2N) strategies.

    ``objective="abs"`` maximizes |value| instead.  Output is identical for
    any worker count: the chunk schedule depends only on the scenario.
    """
    if objective not in ("max", "abs"):
        raise ValueError(f"unknown objective {objective!r}")
    total = s.strategy_count
    if total > cap:
        raise EnumerationLimitError(
            f"{s} needs {total} strategies, above the enumeration cap {cap}; "
            "use the closed-form or sampled mode"
        )
    workers = resolve_workers(workers)
    d2 = s.dim * s.dim
    table = factor_table(s)
    wlast = table * phase_weights(s)[None, :]
    initargs = (s, table, wlast, objective)
    ranges = _chunk_ranges(total // d2, max(1, math.ceil(CHUNK_STRATEGIES / d2)))
    results = _run_tasks([(b0, b1, None) for b0, b1 in ranges], initargs, workers)

    def rescan(which, thr):
        return _run_tasks([(*ranges[i], thr) for i in which], initargs, workers) if which else []

    value, arg = _reduce(s, results, rescan)
    return MaxResult(value, arg, total, True)


# --- sampled search ----------------------------------------------------------

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)


def _splitmix64(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = x + np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


class StrategyStream:
    """Counter-based stream: index -> strategy index, keyed by a seed.

    A 4-round Feistel network on 2h bits with cycle walking is a bijection of
    [0, d^(2N)), so the first d^(2N) draws visit every strategy exactly once.
    Draw i depends only on (seed, i), never on the evaluation schedule.
    """

    ROUNDS = 4

    def __init__(self, s: Scenario, seed: int):
        self.size = s.strategy_count
        self.half_bits = max(1, math.ceil((self.size - 1).bit_length() / 2))
        self.half_mask = np.uint64((1 << self.half_bits) - 1)
        mixed = [(seed ^ ((r + 1) * 0x632BE59BD9B4E019)) & 0xFFFFFFFFFFFFFFFF for r in range(self.ROUNDS)]
        self.round_keys = list(_splitmix64(np.array(mixed, dtype=np.uint64)))

    def _permute(self, x: np.ndarray) -> np.ndarray:
        h = np.uint64(self.half_bits)
        left, right = x >> h, x & self.half_mask
        for key in self.round_keys:
            f = _splitmix64(right ^ key) & self.half_mask
            left, right = right, left ^ f
        return (left << h) | right

    def __call__(self, counters) -> np.ndarray:
        x = np.asarray(counters, dtype=np.uint64) % np.uint64(self.size)
        x = self._permute(x)
        out_of_range = x >= np.uint64(self.size)
        while out_of_range.any():
            x[out_of_range] = self._permute(x[out_of_range])
            out_of_range = x >= np.uint64(self.size)
        return x.astype(np.int64)


def _init_sample_worker(scenario, seed, objective):
    _W.update(s=scenario, stream=StrategyStream(scenario, seed), objective=objective,
              table=factor_table(scenario), weights=phase_weights(scenario))


def _scan_samples(task):
    c0, c1, threshold = task
    s = _W["s"]
    idx = _W["stream"](np.arange(c0, c1, dtype=np.uint64))
    vals = evaluate_indices(s, idx, _W["table"], _W["weights"])
    if _W["objective"] == "abs":
        vals = np.abs(vals)
    m = float(vals.max())
    thr = m - TIE_TOL if threshold is None else threshold
    hits = idx[vals >= thr]
    return m, (_lexmin(s, hits) if hits.size else None)


def sampled_max(
    s: Scenario,
    samples: int,
    seed: int = 0,
    workers: int | None = None,
    objective: str = "max",
) -> MaxResult:
    """Maximum over ``samples`` draws of the seeded strategy stream (a lower bound)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if objective not in ("max", "abs"):
        raise ValueError(f"unknown objective {objective!r}")
    workers = resolve_workers(workers)
    ranges = _chunk_ranges(samples, CHUNK_STRATEGIES)
    initargs = (s, seed, objective)

    def run(tasks):
        if workers == 1 or len(tasks) == 1:
            _init_sample_worker(*initargs)
            return [_scan_samples(t) for t in tasks]
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_sample_worker,
                                 initargs=initargs) as ex:
            return list(ex.map(_scan_samples, tasks))

    results = run([(c0, c1, None) for c0, c1 in ranges])
    value, arg = _reduce(s, results, lambda which, thr: run([(*ranges[i], thr) for i in which]) if which else [])
    return MaxResult(value, arg, samples, False)


def random_strategies(s: Scenario, count: int, rng: np.random.Generator) -> list[Strategy]:
    """Uniform random strategies, for cross-checks and tests."""
    draws = rng.integers(0, s.dim, size=(count, 2, s.parties))
    return [Strategy(a, b) for a, b in draws]


def max_over(s: Scenario, strategies: Sequence[Strategy]) -> float:
    return max(classical_bell_value(s, st) for st in strategies)
