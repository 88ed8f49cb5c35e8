"""Sublinear preferential attachment graph generation.

The graph on labels 1..N inserts edge (m, n), m < n, with probability
f(Z[m, n-1])/(n-1) capped at 1, where Z[m, t] counts the younger neighbours
of m at time t.  Degree evolutions of distinct vertices are independent, so
generation runs per older vertex m: while f(z) < t the waiting time to the
next jump has the exact Gamma-ratio survival function evaluated here in
log-space and inverted by integer bisection; while f(z) >= t (which forces
connection probability 1) steps are simulated individually.

Randomness: vertex m draws from counter stream m; the trial at time t uses
draw index 2t (per-step) or 2t+1 (jump-time query), so output is
reproducible under any work partition.  ``reference_generate`` is the
literal per-pair construction used as a distributional oracle; it shares
the per-step draw indices.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import rng
from .backend import USE_NUMBA, njit
from .graph import Graph, from_edge_arrays
from .rules import FORM_CRITICAL, FORM_TABULATED, AttachmentRule

_E = float(np.e)
# simulate_evolution substreams live far away from the per-vertex graph streams
_EVO_STREAM_BASE = 1 << 33

REFERENCE_N_MAX = 10_000


@dataclass
class DegreeState:
    """One degree evolution frozen at a point in time."""

    vertex: int
    indegree: int
    current_time: int


def no_jump_prob(c: float, a: int, b: int) -> float:
    """prod_{i=a}^{b-1} (1 - c/i), evaluated through log-gamma.

    This is the probability that a degree evolution sitting at f-value c at
    time a makes no jump at times a+1..b.
    """
    if not 0 <= c < a:
        raise ValueError("need 0 <= c < a")
    if b < a:
        raise ValueError("need a <= b")
    if b == a or c == 0.0:
        return 1.0
    return math.exp(math.lgamma(b - c) - math.lgamma(a - c)
                    + math.lgamma(a) - math.lgamma(b))


def next_jump_time(state: DegreeState, rule: AttachmentRule, u: float, horizon: int):
    """Smallest time t' in (current_time, horizon] whose no-jump probability
    drops below u, or None if the evolution survives past the horizon.

    Inverse-transform sampling: with u uniform on (0,1] the returned time has
    survival function exactly ``no_jump_prob(f(z), current_time, t')``.
    """
    c = rule(state.indegree)
    t = state.current_time
    if c >= t:
        raise ValueError("per-step regime")
    if not 0.0 < u <= 1.0:
        raise ValueError("need u in (0, 1]")
    if t >= horizon:
        raise ValueError("need current_time < horizon")
    base = math.lgamma(t) - math.lgamma(t - c)
    logu = math.log(u)

    def log_surv(b):
        return base + math.lgamma(b - c) - math.lgamma(b)

    if log_surv(horizon) >= logu:
        return None
    lo, hi = t, horizon  # log_surv(lo) = 0 >= logu > log_surv(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if log_surv(mid) < logu:
            hi = mid
        else:
            lo = mid
    return hi


# -- numba kernels ------------------------------------------------------------


@njit
def _nb_rule_f(form, alpha, beta, gamma, prefix, k):
    if k < prefix.size:
        return prefix[k]
    if form == 2:
        raise ValueError("rule domain exceeded")
    kk = float(k)
    if form == 0:
        return 0.5 * kk + 0.5 * alpha * kk / math.log(max(kk, _E)) + beta
    return gamma * kk + beta


@njit
def _nb_pa_edges(n, seed, form, alpha, beta, gamma, prefix, src, dst):
    """Fill (src, dst) with the PA edge list; returns count or -1 on overflow."""
    cap = src.size
    cnt = 0
    for m in range(1, n):
        state = rng.nb_stream_state(np.uint64(seed), np.uint64(m))
        z = 0
        t = m
        while t < n:
            fz = _nb_rule_f(form, alpha, beta, gamma, prefix, z)
            if fz >= t:
                # connection probability is capped at 1: deterministic edge,
                # but the trial still consumes its draw
                rng.nb_unit_at(state, np.uint64(2 * t))
                if cnt >= cap:
                    return -1
                src[cnt] = m
                dst[cnt] = t + 1
                cnt += 1
                z += 1
                t += 1
            else:
                u = rng.nb_unit_open_at(state, np.uint64(2 * t + 1))
                logu = math.log(u)
                base = math.lgamma(float(t)) - math.lgamma(float(t) - fz)
                if base + math.lgamma(float(n) - fz) - math.lgamma(float(n)) >= logu:
                    break  # no jump up to the horizon: vertex m is finished
                lo = t
                hi = n
                while hi - lo > 1:
                    mid = (lo + hi) // 2
                    if base + math.lgamma(float(mid) - fz) - math.lgamma(float(mid)) < logu:
                        hi = mid
                    else:
                        lo = mid
                if cnt >= cap:
                    return -1
                src[cnt] = m
                dst[cnt] = hi
                cnt += 1
                z += 1
                t = hi
    return cnt


@njit
def _nb_evolve(seed, stream, m, z0, t_to, form, alpha, beta, gamma, prefix,
               jump_times, jump_z):
    """One degree evolution from Z[m,m] = z0 up to time t_to.

    Records jumps into the output arrays; returns (n_jumps, final_z), or
    (-1, -1) if the output arrays are too small.
    """
    state = rng.nb_stream_state(seed, stream)
    cap = jump_times.size
    z = z0
    t = m
    cnt = 0
    while t < t_to:
        fz = _nb_rule_f(form, alpha, beta, gamma, prefix, z)
        if fz >= t:
            rng.nb_unit_at(state, np.uint64(2 * t))
            z += 1
            t += 1
            if cnt >= cap:
                return -1, -1
            jump_times[cnt] = t
            jump_z[cnt] = z
            cnt += 1
        else:
            u = rng.nb_unit_open_at(state, np.uint64(2 * t + 1))
            logu = math.log(u)
            base = math.lgamma(float(t)) - math.lgamma(float(t) - fz)
            if base + math.lgamma(float(t_to) - fz) - math.lgamma(float(t_to)) >= logu:
                break
            lo = t
            hi = t_to
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if base + math.lgamma(float(mid) - fz) - math.lgamma(float(mid)) < logu:
                    hi = mid
                else:
                    lo = mid
            z += 1
            t = hi
            if cnt >= cap:
                return -1, -1
            jump_times[cnt] = t
            jump_z[cnt] = z
            cnt += 1
    return cnt, z


# -- numpy fallback kernels ------------------------------------------------------


def _np_pa_edges(n, seed, rule):
    """Vectorised PA generation: all vertices advance one jump per round."""
    if n < 2:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    m = np.arange(1, n, dtype=np.int64)
    states = rng.stream_states_vec(seed, m)
    t = m.copy()
    z = np.zeros(n - 1, dtype=np.int64)
    alive = np.ones(n - 1, dtype=bool)
    src_parts, dst_parts = [], []
    log_n_gamma = float(gammaln(n))
    while True:
        idx = np.nonzero(alive)[0]
        if idx.size == 0:
            break
        fz = rule.values(z[idx])
        tt = t[idx]
        step = fz >= tt
        si = idx[step]
        if si.size:
            rng.units_for_states(states[si], (2 * t[si]).astype(np.uint64))
            src_parts.append(m[si])
            dst_parts.append(t[si] + 1)
            z[si] += 1
            t[si] += 1
            alive[si] = t[si] < n
        ji = idx[~step]
        if ji.size:
            c = fz[~step]
            a = t[ji].astype(np.float64)
            u = rng.units_for_states(states[ji], (2 * t[ji] + 1).astype(np.uint64),
                                     open_interval=True)
            logu = np.log(u)
            base = gammaln(a) - gammaln(a - c)
            done = base + gammaln(n - c) - log_n_gamma >= logu
            alive[ji[done]] = False
            live = ji[~done]
            if live.size:
                cl = c[~done]
                bl = base[~done]
                ul = logu[~done]
                lo = t[live].copy()
                hi = np.full(live.size, n, dtype=np.int64)
                while True:
                    open_mask = hi - lo > 1
                    if not open_mask.any():
                        break
                    mid = (lo[open_mask] + hi[open_mask]) // 2
                    below = (bl[open_mask] + gammaln(mid - cl[open_mask])
                             - gammaln(mid.astype(np.float64))) < ul[open_mask]
                    sel = np.nonzero(open_mask)[0]
                    hi[sel[below]] = mid[below]
                    lo[sel[~below]] = mid[~below]
                src_parts.append(m[live])
                dst_parts.append(hi)
                z[live] += 1
                t[live] = hi
                alive[live] = t[live] < n
    if not src_parts:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return np.concatenate(src_parts), np.concatenate(dst_parts)


# -- public generation API ---------------------------------------------------------


def generate(n: int, rule: AttachmentRule, seed: int) -> Graph:
    """Generate the preferential attachment graph on labels 1..n.

    Deterministic in (n, rule, seed); independent of thread count and of any
    work partition over vertices.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if USE_NUMBA:
        form, alpha, beta, gamma, prefix = rule.kernel_args()
        cap = max(64, 8 * n)
        while True:
            src = np.empty(cap, dtype=np.int64)
            dst = np.empty(cap, dtype=np.int64)
            cnt = _nb_pa_edges(n, np.uint64(seed & rng.MASK), form, alpha, beta, gamma,
                               prefix, src, dst)
            if cnt >= 0:
                src, dst = src[:cnt], dst[:cnt]
                break
            cap *= 2
    else:
        src, dst = _np_pa_edges(n, seed & rng.MASK, rule)
    return from_edge_arrays(n, src, dst)


def reference_generate(n: int, rule: AttachmentRule, seed: int) -> Graph:
    """Literal per-pair Bernoulli construction (distributional oracle).

    O(n^2); refuses n beyond 10^4.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > REFERENCE_N_MAX:
        raise ValueError(f"reference generator refuses n > {REFERENCE_N_MAX}")
    seed &= rng.MASK
    m = np.arange(1, n, dtype=np.int64)
    states = rng.stream_states_vec(seed, m)
    z = np.zeros(n - 1, dtype=np.int64)
    src_parts, dst_parts = [], []
    for t in range(1, n):
        older = m[:t]
        p = rule.values(z[:t]) / t
        u = rng.units_for_states(states[:t], np.full(t, 2 * t, dtype=np.uint64))
        hit = u < np.minimum(p, 1.0)
        if hit.any():
            winners = older[hit]
            src_parts.append(winners)
            dst_parts.append(np.full(winners.size, t + 1, dtype=np.int64))
            z[:t][hit] += 1
    if not src_parts:
        return from_edge_arrays(n, np.empty(0, np.int64), np.empty(0, np.int64))
    return from_edge_arrays(n, np.concatenate(src_parts), np.concatenate(dst_parts))


def simulate_evolution(m: int, start_k: int, to: int, rule: AttachmentRule,
                       seed: int, substream: int = 0) -> np.ndarray:
    """One trajectory of the degree evolution of vertex m started at start_k.

    Returns an array of (time, indegree) rows beginning with (m, start_k)
    and one row per jump.  Distinct substreams give independent replicas,
    all disjoint from the streams used by ``generate``.
    """
    if m < 1 or to < m:
        raise ValueError("need 1 <= m <= to")
    if start_k < 0:
        raise ValueError("need start_k >= 0")
    stream = _EVO_STREAM_BASE + substream * _EVO_STREAM_BASE + m
    seed &= rng.MASK
    if USE_NUMBA:
        form, alpha, beta, gamma, prefix = rule.kernel_args()
        cap = 256
        while True:
            jt = np.empty(cap, dtype=np.int64)
            jz = np.empty(cap, dtype=np.int64)
            cnt, _ = _nb_evolve(np.uint64(seed), np.uint64(stream & rng.MASK), m, start_k, to,
                                form, alpha, beta, gamma, prefix, jt, jz)
            if cnt >= 0:
                break
            cap *= 2
        jt, jz = jt[:cnt], jz[:cnt]
    else:
        jt, jz = _py_evolve(seed, stream & rng.MASK, m, start_k, to, rule)
    out = np.empty((jt.size + 1, 2), dtype=np.int64)
    out[0, 0] = m
    out[0, 1] = start_k
    out[1:, 0] = jt
    out[1:, 1] = jz
    return out


def _py_evolve(seed, stream, m, z0, t_to, rule):
    """Scalar-python evolution (numpy backend); same draws as the kernel."""
    state = rng.stream_state(seed, stream)
    z = z0
    t = m
    times, zs = [], []
    while t < t_to:
        fz = rule(z)
        if fz >= t:
            rng.unit_for_state(state, 2 * t)  # consumed per the draw contract
            z += 1
            t += 1
            times.append(t)
            zs.append(z)
        else:
            u = rng.unit_open_for_state(state, 2 * t + 1)
            logu = math.log(u)
            base = math.lgamma(float(t)) - math.lgamma(float(t) - fz)
            if base + math.lgamma(float(t_to) - fz) - math.lgamma(float(t_to)) >= logu:
                break
            lo, hi = t, t_to
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if base + math.lgamma(float(mid) - fz) - math.lgamma(float(mid)) < logu:
                    hi = mid
                else:
                    lo = mid
            z += 1
            t = hi
            times.append(t)
            zs.append(z)
    return np.asarray(times, dtype=np.int64), np.asarray(zs, dtype=np.int64)


def degree_at(m: int, start_k: int, times, rule: AttachmentRule, seed: int,
              replicas: int, substream_base: int = 0) -> np.ndarray:
    """Monte Carlo indegrees Z[m, t] at the requested times.

    Returns an int64 array of shape (replicas, len(times)); replica r uses
    substream ``substream_base + r``.
    """
    times = np.asarray(sorted(times), dtype=np.int64)
    if times.size == 0 or times[0] < m:
        raise ValueError("times must be >= m")
    out = np.empty((replicas, times.size), dtype=np.int64)
    horizon = int(times[-1])
    for r in range(replicas):
        traj = simulate_evolution(m, start_k, horizon, rule, seed,
                                  substream=substream_base + r)
        # indegree at time t = last recorded z with jump time <= t
        idx = np.searchsorted(traj[:, 0], times, side="right") - 1
        out[r] = traj[idx, 1]
    return out
