"""Truncated breadth-first exploration on a realized graph.

Vertices carry one of three states: veiled (untouched), active (current
frontier), dead (explored).  A step walks the active vertices in increasing
label order, turns every veiled neighbour that clears the generation's
label cutoff into a pre-active child of its discoverer, then retires the
frontier.  Discovered parent edges always form a tree rooted at the start
vertex.  An optional parity filter restricts which younger endpoints a
vertex may examine, letting two explorations share a graph while keeping
their edge examinations disjoint.

Scores are the Gamma-ratio scores of the rules module: S is the score of
the active set, H of active plus dead.
"""

from dataclasses import dataclass, field

import numpy as np

from .backend import USE_NUMBA, njit
from .graph import Graph
from .rules import TruncationSequence, xi_values

VEILED, ACTIVE, DEAD, PREACTIVE = 0, 1, 2, 3

PARITY_CODES = {"none": 0, "odd": 1, "even": 2}


@njit
def _nb_step(offsets, neighbors, states, parent, active, ell, parity, n_limit, buf):
    cnt = 0
    for ai in range(active.size):
        v = active[ai]
        for i in range(offsets[v], offsets[v + 1]):
            w = neighbors[i]
            if w > n_limit or w < ell:
                continue
            if states[w] != 0:
                continue
            if parity != 0 and w > v and (w & 1) != (parity & 1):
                continue
            states[w] = 3
            parent[w] = v
            buf[cnt] = w
            cnt += 1
    for ai in range(active.size):
        states[active[ai]] = 2
    for j in range(cnt):
        states[buf[j]] = 1
    return cnt


def _np_step(g, states, parent, active, ell, parity, n_limit):
    off = g.offsets
    starts = off[active]
    counts = off[active + 1] - starts
    total = int(counts.sum())
    if total:
        block = np.concatenate([[0], np.cumsum(counts)[:-1]])
        idx = np.arange(total, dtype=np.int64) - np.repeat(block, counts) + np.repeat(starts, counts)
        w = g.neighbors[idx]
        vrep = np.repeat(active, counts)
        mask = (w <= n_limit) & (w >= ell) & (states[w] == VEILED)
        if parity:
            mask &= (w <= vrep) | ((w & 1) == (parity & 1))
        w, vrep = w[mask], vrep[mask]
    else:
        w = vrep = np.empty(0, dtype=np.int64)
    uniq, first = np.unique(w, return_index=True)
    parent[uniq] = vrep[first]
    states[active] = DEAD
    states[uniq] = ACTIVE
    return uniq


@dataclass
class ExplorationReport:
    """Per-generation ledger of one exploration run."""

    rows: list = field(default_factory=list)  # (k, ell_k, S_k, H_k, a_k, n_active, n_dead)
    status: str = "running"
    main_phase_start: int | None = None

    def record(self, k, ell, s, h, a, n_active, n_dead):
        self.rows.append((k, ell, s, h, a, n_active, n_dead))

    @property
    def generations(self) -> int:
        return self.rows[-1][0] if self.rows else 0

    def to_csv(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("k,ell_k,S_k,H_k,a_k,n_active,n_dead\n")
            for k, ell, s, h, a, na, nd in self.rows:
                fh.write(f"{k},{ell},{s!r},{h!r},{a},{na},{nd}\n")


class Configuration:
    """Single-owner mutable exploration state on an immutable graph."""

    def __init__(self, g: Graph, start: int, trunc: TruncationSequence,
                 parity: str = "none", n_limit: int | None = None,
                 xi_cache: np.ndarray | None = None):
        if not 1 <= start <= g.n:
            raise ValueError("start vertex out of range")
        self.g = g
        self.n_limit = g.n if n_limit is None else int(n_limit)
        if start > self.n_limit:
            raise ValueError("start vertex beyond the exploration limit")
        self.trunc = trunc
        self.parity = PARITY_CODES[parity]
        self.generation = 0
        self.trunc_offset = 0  # generations spent before the truncated phase
        self.states = np.zeros(g.n + 1, dtype=np.uint8)
        self.parent = np.zeros(g.n + 1, dtype=np.int64)
        self.active = np.array([start], dtype=np.int64)
        self.xi = xi_values(self.n_limit) if xi_cache is None else xi_cache
        self._buf = np.empty(self.n_limit + 1, dtype=np.int64)
        self.states[start] = ACTIVE
        self.score_S = float(self.xi[start])
        self.score_H = float(self.xi[start])
        self.min_active = start
        self.n_dead = 0

    def current_ell(self, k: int | None = None) -> int:
        k = self.generation + 1 if k is None else k
        return self.trunc.level(max(1, k - self.trunc_offset))

    def step(self, ell: int | None = None) -> "Configuration":
        """Run one exploration generation; mutates and returns self."""
        if self.active.size == 0:
            raise RuntimeError("died out")
        k = self.generation + 1
        ell = self.current_ell(k) if ell is None else int(ell)
        if USE_NUMBA:
            cnt = _nb_step(self.g.offsets, self.g.neighbors, self.states, self.parent,
                           self.active, ell, self.parity, self.n_limit, self._buf)
            new = np.sort(self._buf[:cnt].copy())
        else:
            new = _np_step(self.g, self.states, self.parent, self.active, ell,
                           self.parity, self.n_limit)
        self.n_dead += self.active.size
        self.active = new
        self.generation = k
        self.score_S = float(self.xi[new].sum()) if new.size else 0.0
        self.score_H += self.score_S
        self.min_active = int(new.min()) if new.size else 0
        return self

    def record_into(self, report: ExplorationReport, ell=None):
        report.record(self.generation, 0 if ell is None else ell, self.score_S,
                      self.score_H, self.min_active, self.active.size, self.n_dead)

    def tree_vertices(self) -> np.ndarray:
        return np.nonzero((self.states == ACTIVE) | (self.states == DEAD))[0]


def new_exploration(g: Graph, start: int, trunc: TruncationSequence,
                    parity: str = "none", n_limit: int | None = None,
                    xi_cache: np.ndarray | None = None) -> Configuration:
    return Configuration(g, start, trunc, parity=parity, n_limit=n_limit,
                         xi_cache=xi_cache)


def step(config: Configuration, g: Graph | None = None) -> Configuration:
    return config.step()


def is_proper(config: Configuration) -> bool:
    """True iff parent edges form one tree covering exactly active + dead."""
    states = config.states
    in_tree = (states == ACTIVE) | (states == DEAD)
    nodes = np.nonzero(in_tree)[0]
    if nodes.size == 0:
        return False
    parent = config.parent
    roots = nodes[parent[nodes] == 0]
    if roots.size != 1:
        return False
    # veiled vertices must carry no tree edge
    outside = np.nonzero(~in_tree)[0]
    if np.any(parent[outside] != 0):
        return False
    # every non-root parent must itself be in the tree, and following parents
    # must terminate at the root (memoised walk)
    ok = np.zeros(states.size, dtype=np.uint8)  # 0 unknown, 1 good, 2 on path
    root = int(roots[0])
    ok[root] = 1
    for v in nodes:
        path = []
        x = int(v)
        while ok[x] == 0:
            if not in_tree[x]:
                return False
            ok[x] = 2
            path.append(x)
            x = int(parent[x])
            if x == 0:
                return False  # second root
            if ok[x] == 2:
                return False  # cycle
        if ok[x] != 1:
            return False
        for y in path:
            ok[y] = 1
    return True


def run_to_score(config: Configuration, g: Graph | None, target: float,
                 max_steps: int, s0: float | None = None,
                 restart_active: bool = False) -> ExplorationReport:
    """Iterate steps until the explored score H reaches the target.

    With ``s0`` given, an untruncated initial phase runs first until the
    active score reaches s0 times the score of its oldest member; the
    truncation sequence then starts counting from the switch generation.
    ``restart_active`` re-roots the main phase on the qualifying active set
    (the full set, so the dead part of the tree is simply kept).
    """
    if target <= 0:
        raise ValueError("need target > 0")
    report = ExplorationReport()
    config.record_into(report)
    in_initial = s0 is not None

    def initial_done():
        return (config.active.size
                and config.score_S >= s0 * float(config.xi[config.min_active]))

    if in_initial and initial_done():
        in_initial = False
        config.trunc_offset = config.generation
        report.main_phase_start = config.generation
    while config.generation < max_steps:
        if config.score_H >= target:
            report.status = "score_target_reached"
            return report
        if config.active.size == 0:
            report.status = "died_out"
            return report
        ell = 1 if in_initial else config.current_ell()
        config.step(ell=ell)
        config.record_into(report, ell=ell)
        if in_initial and initial_done():
            in_initial = False
            config.trunc_offset = config.generation
            report.main_phase_start = config.generation
            if restart_active:
                pass  # full active set is kept: nothing to veil
    if config.score_H >= target:
        report.status = "score_target_reached"
    elif config.active.size == 0:
        report.status = "died_out"
    else:
        report.status = "max_steps"
    return report
