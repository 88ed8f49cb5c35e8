"""Norros-Reittu rank-one random graphs with heavy-tailed i.i.d. weights.

Weights follow the law with survival function

    S(w) = min(1, norm_c * w^-2 * log(e v w)^(2*alpha))   for w >= w_min,

normalised so S(w_min) = 1 and flattened to its nonincreasing envelope on
the short stretch where the raw expression would increase (only possible
for alpha > 1); the k^-2 (log k)^(2*alpha) tail is untouched.  Sampling is
inverse-transform with bracketed bisection (closed form at alpha = 0).

The graph draws a Poisson total number of candidate edges with mean
(L^2 - sum W_i^2)/(2L), picks each candidate's endpoints independently
proportional to weight through an alias table, rejects equal endpoints,
and merges parallel edges, which gives every unordered pair an independent
Poisson(W_v W_w / L) multiplicity.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import rng
from .backend import njit
from .graph import Graph, from_edge_arrays
from .rng import MASK

# draw streams (disjoint from the PA per-vertex streams, which sit below 2^33)
_S_WEIGHTS = (1 << 40) + 1
_S_EDGE_COUNT = (1 << 40) + 2
_S_PAIRS = (1 << 40) + 3

REFERENCE_N_MAX = 3000


@dataclass(frozen=True)
class WeightDistribution:
    """Heavy-tailed weight law with tail exponent 2 and log correction 2*alpha."""

    alpha: float = 0.0
    w_min: float = 1.0

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("need alpha >= 0")
        if self.w_min < 1:
            raise ValueError("need w_min >= 1")

    @property
    def norm_c(self) -> float:
        return self.w_min ** 2 / math.log(max(self.w_min, math.e)) ** (2 * self.alpha)

    def _raw(self, w):
        w = np.asarray(w, dtype=np.float64)
        return self.norm_c * w ** -2.0 * np.log(np.maximum(w, np.e)) ** (2 * self.alpha)

    def survival(self, w):
        """P(W >= w): the nonincreasing envelope of the raw tail expression."""
        w = np.asarray(w, dtype=np.float64)
        out = np.minimum(1.0, self._raw(np.maximum(w, self.w_min)))
        if self.alpha > 1 and self.w_min < math.e:
            # raw expression increases on (e, e^alpha); hold the value at e
            hold = float(self._raw(math.e))
            out = np.where(w > math.e, np.minimum(out, hold), out)
        return out if out.ndim else float(out)

    def inverse_survival(self, u):
        """Generalised inverse inf{w >= w_min : survival(w) <= u} by bisection."""
        scalar = np.isscalar(u)
        u = np.atleast_1d(np.asarray(u, dtype=np.float64))
        if np.any(u <= 0):
            raise ValueError("need u > 0 (u = 0 would be an infinite weight)")
        if self.alpha == 0.0:
            out = np.where(u >= 1.0, self.w_min, self.w_min / np.sqrt(u))
            return float(out[0]) if scalar else out
        lo = np.full(u.shape, self.w_min)
        hi = np.full(u.shape, self.w_min * 2.0)
        need = self.survival(hi) > u
        while np.any(need):
            lo[need] = hi[need]
            hi[need] *= 2.0
            need = self.survival(hi) > u
        for _ in range(80):  # to ~1e-12 relative
            mid = 0.5 * (lo + hi)
            high = self.survival(mid) > u
            lo[high] = mid[high]
            hi[~high] = mid[~high]
        out = np.where(u >= 1.0, self.w_min, hi)
        return float(out[0]) if scalar else out

    def to_json_obj(self) -> dict:
        return {"alpha": self.alpha, "w_min": self.w_min, "norm_c": self.norm_c}


def sample_weight(dist: WeightDistribution, u: float) -> float:
    """Inverse-transform sample: the weight whose survival equals u in (0, 1]."""
    if not 0.0 < u <= 1.0:
        raise ValueError("need u in (0, 1]")
    return float(dist.inverse_survival(u))


@dataclass(frozen=True)
class WeightSequence:
    weights: np.ndarray  # index by vertex label; slot 0 is nan
    total: float
    sum_sq: float
    sum_cube: float
    max_w: float

    @staticmethod
    def from_weights(weights: np.ndarray) -> "WeightSequence":
        w = weights[1:]
        return WeightSequence(weights, float(w.sum()), float((w ** 2).sum()),
                              float((w ** 3).sum()), float(w.max()))


def sample_weights(n: int, dist: WeightDistribution, seed: int) -> WeightSequence:
    """n i.i.d. weights; draw i comes from counter index i of the weight stream."""
    u = rng.units_open_at(seed & MASK, _S_WEIGHTS, np.arange(n, dtype=np.uint64))
    w = np.empty(n + 1, dtype=np.float64)
    w[0] = np.nan
    w[1:] = dist.inverse_survival(u)
    return WeightSequence.from_weights(w)


# -- Poisson sampling off the counter streams -------------------------------------


def _poisson_small(lam: float, u: float) -> int:
    p = math.exp(-lam)
    s = p
    k = 0
    while u > s:
        k += 1
        p *= lam / k
        s += p
        if k > 10_000_000:
            raise RuntimeError("poisson inversion ran away")
    return k


def poisson_draw(lam: float, seed: int, stream: int) -> int:
    """One Poisson(lam) variate; consumes draws sequentially from the stream."""
    if lam < 0:
        raise ValueError("need lam >= 0")
    if lam == 0.0:
        return 0
    state = rng.stream_state(seed & MASK, stream)
    if lam < 10.0:
        return _poisson_small(lam, rng.unit_open_for_state(state, 0))
    # Hormann's transformed rejection (PTRS); two draws per attempt
    b = 0.931 + 2.53 * math.sqrt(lam)
    a = -0.059 + 0.02483 * b
    inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    v_r = 0.9277 - 3.6224 / (b - 2.0)
    log_lam = math.log(lam)
    for i in range(10_000):
        u = rng.unit_for_state(state, 2 * i) - 0.5
        v = rng.unit_open_for_state(state, 2 * i + 1)
        us = 0.5 - abs(u)
        k = math.floor((2.0 * a / us + b) * u + lam + 0.43)
        if us >= 0.07 and v <= v_r:
            return int(k)
        if k < 0 or (us < 0.013 and v > us):
            continue
        if (math.log(v * inv_alpha / (a / (us * us) + b))
                <= k * log_lam - lam - math.lgamma(k + 1.0)):
            return int(k)
    raise RuntimeError("poisson rejection did not terminate")


def poisson_draws(lams: np.ndarray, seed: int, stream: int) -> np.ndarray:
    """Independent Poisson(lams[i]) variates, one inversion draw per entry."""
    lams = np.asarray(lams, dtype=np.float64)
    u = rng.units_open_at(seed & MASK, stream, np.arange(lams.size, dtype=np.uint64))
    out = np.zeros(lams.size, dtype=np.int64)
    p = np.exp(-lams)
    s = p.copy()
    active = u > s
    k = 0
    while active.any():
        k += 1
        if k > 100_000:
            raise RuntimeError("poisson inversion ran away")
        p[active] *= lams[active] / k
        s[active] += p[active]
        out[active] = k
        active = u > s
    return out


# -- alias table ---------------------------------------------------------------------


def build_alias(weights: np.ndarray):
    """Vose alias table for sampling indices proportional to weights."""
    w = np.asarray(weights, dtype=np.float64)
    n = w.size
    scaled = w * (n / w.sum())
    prob = np.ones(n, dtype=np.float64)
    alias = np.arange(n, dtype=np.int64)
    small = [i for i in range(n) if scaled[i] < 1.0]
    large = [i for i in range(n) if scaled[i] >= 1.0]
    scaled = scaled.copy()
    while small and large:
        s = small.pop()
        l = large.pop()
        prob[s] = scaled[s]
        alias[s] = l
        scaled[l] -= 1.0 - scaled[s]
        if scaled[l] < 1.0:
            small.append(l)
        else:
            large.append(l)
    return prob, alias


@njit
def _nb_alias_pick(prob, alias, u):
    n = prob.size
    x = u * n
    j = int(x)
    if j >= n:
        j = n - 1
    if x - j < prob[j]:
        return j
    return alias[j]


def _np_alias_pick(prob, alias, u):
    n = prob.size
    x = u * n
    j = np.minimum(x.astype(np.int64), n - 1)
    frac = x - j
    return np.where(frac < prob[j], j, alias[j])


# -- graph generation ------------------------------------------------------------------


def candidate_edges(weights: np.ndarray, seed: int):
    """The multigraph candidate list underlying the fast NR construction.

    Returns (src, dst) with src < dst, one entry per retained Poisson
    candidate, before merging.  Candidate c resamples its endpoint pair
    (retry j) from draw indices 2*(c + M*j) and 2*(c + M*j) + 1, so the
    result is independent of how candidates are partitioned over workers.
    """
    w = weights[1:]
    n = w.size
    total = float(w.sum())
    lam = (total * total - float((w ** 2).sum())) / (2.0 * total)
    m_edges = poisson_draw(lam, seed, _S_EDGE_COUNT)
    if m_edges == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    prob, alias = build_alias(w)
    src = np.empty(m_edges, dtype=np.int64)
    dst = np.empty(m_edges, dtype=np.int64)
    pending = np.arange(m_edges, dtype=np.uint64)
    retry = 0
    while pending.size:
        if retry > 200:
            raise RuntimeError("endpoint rejection did not terminate")
        base = 2 * (pending + np.uint64(retry * m_edges))
        u1 = rng.units_at(seed & MASK, _S_PAIRS, base)
        u2 = rng.units_at(seed & MASK, _S_PAIRS, base + np.uint64(1))
        v = _np_alias_pick(prob, alias, u1) + 1
        x = _np_alias_pick(prob, alias, u2) + 1
        ok = v != x
        sel = pending[ok].astype(np.int64)
        src[sel] = np.minimum(v[ok], x[ok])
        dst[sel] = np.maximum(v[ok], x[ok])
        pending = pending[~ok]
        retry += 1
    return src, dst


def generate_nr(n: int, dist: WeightDistribution, seed: int):
    """Sample weights and the Norros-Reittu graph; returns (Graph, WeightSequence)."""
    if n < 2:
        raise ValueError("need n >= 2")
    ws = sample_weights(n, dist, seed)
    src, dst = candidate_edges(ws.weights, seed)
    return from_edge_arrays(n, src, dst, merge=True), ws


def generate_nr_with_weights(weights: np.ndarray, seed: int) -> Graph:
    """Fast construction on a fixed weight sequence (label-indexed, slot 0 unused)."""
    src, dst = candidate_edges(weights, seed)
    return from_edge_arrays(weights.size - 1, src, dst, merge=True)


def reference_generate_nr(n: int, dist: WeightDistribution, seed: int):
    """Literal per-pair Poisson construction, merged to a simple graph (oracle)."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n > REFERENCE_N_MAX:
        raise ValueError(f"reference generator refuses n > {REFERENCE_N_MAX}")
    ws = sample_weights(n, dist, seed)
    g = reference_generate_nr_with_weights(ws.weights, seed)
    return g, ws


def reference_generate_nr_with_weights(weights: np.ndarray, seed: int) -> Graph:
    n = weights.size - 1
    if n > REFERENCE_N_MAX:
        raise ValueError(f"reference generator refuses n > {REFERENCE_N_MAX}")
    w = weights[1:]
    total = float(w.sum())
    iu, iv = np.triu_indices(n, k=1)
    lams = w[iu] * w[iv] / total
    counts = poisson_draws(lams, seed, _S_PAIRS)
    keep = counts > 0
    return from_edge_arrays(n, iu[keep] + 1, iv[keep] + 1)


# -- diagnostics --------------------------------------------------------------------


def weight_diagnostics(ws: WeightSequence, dist: WeightDistribution) -> dict:
    """Scale the observed extremes and power sums by their theoretical quantiles.

    The reference scales are the generalised inverses of 1/(1 - F_k) at N for
    the first three powers of the weight law; the squared sum is centred at
    its truncated mean before scaling.
    """
    n = ws.weights.size - 1
    w_spread = ws.max_w / ws.weights[1:].min()
    degenerate = w_spread < 1.0 + 1e-9
    q1 = float(dist.inverse_survival(1.0 / n))
    q2, q3 = q1 ** 2, q1 ** 3
    s = q1  # sqrt(q2): truncation point of J(N) in weight units

    def integrand(x):
        return 2.0 * x * dist.survival(x)

    mean_trunc_sq, _ = quad(integrand, 0.0, s, limit=200)
    mean_trunc_sq -= s * s * float(dist.survival(s))
    j_n = n * mean_trunc_sq
    return {
        "n": n,
        "degenerate": bool(degenerate),
        "max_ratio": ws.max_w / q1,
        "sum_sq_ratio": (ws.sum_sq - j_n) / q2,
        "sum_cube_ratio": ws.sum_cube / q3,
        "quantile_1": q1,
        "quantile_2": q2,
        "quantile_3": q3,
        "truncated_mean_sq": j_n,
    }
