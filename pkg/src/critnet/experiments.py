"""Quantitative studies: distance scaling, degree laws, moment diagnostics,
core extraction, path-counting floors, and the log-sum inequality check.

Reports are plain dicts (JSON-serialisable after small massaging) plus CSV
writers for the sample tables.  Every randomized routine takes an explicit
seed and draws from counter streams, so reports are reproducible and
independent of worker count.
"""

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import pa, nr, rng
from .graph import BfsScratch, Graph, bfs_distance, bfs_sweep, components, subset_diameter
from .rules import AttachmentRule, log_xi, mu_values, truncation_sequence, xi_values
from .explore import Configuration, run_to_score
from .nr import WeightDistribution

_S_PAIRS = (1 << 42) + 1
_S_STARTS = (1 << 42) + 2
_CORE_SUBSTREAM = 1 << 20
_MOMENT_SUBSTREAM = 1 << 21

DEFAULT_S0 = 100.0
DEFAULT_DELTA0 = 0.25
DEFAULT_KAPPA = 0.25


@dataclass
class ExperimentConfig:
    model: str  # "pa" or "nr"
    alpha: float
    n_grid: list
    seeds: list
    pairs_per_graph: int = 200
    beta: float = 1.0
    w_min: float = 1.0
    workers: int = 1

    def __post_init__(self):
        if self.model not in ("pa", "nr"):
            raise ValueError("model must be 'pa' or 'nr'")
        if not self.n_grid:
            raise ValueError("n_grid must be nonempty")
        if list(self.n_grid) != sorted(self.n_grid):
            raise ValueError("n_grid must be ascending")
        if self.pairs_per_graph < 1:
            raise ValueError("pairs_per_graph must be >= 1")

    def rule(self) -> AttachmentRule:
        return AttachmentRule.critical(self.alpha, self.beta)

    def dist(self) -> WeightDistribution:
        return WeightDistribution(alpha=self.alpha, w_min=self.w_min)


def _make_graph(model: str, alpha: float, beta: float, w_min: float, n: int, seed: int) -> Graph:
    if model == "pa":
        return pa.generate(n, AttachmentRule.critical(alpha, beta), seed)
    g, _ = nr.generate_nr(n, WeightDistribution(alpha=alpha, w_min=w_min), seed)
    return g


def sample_component_pairs(members: np.ndarray, k: int, seed: int,
                           stream: int = _S_PAIRS):
    """k vertex pairs uniform (with replacement) from members, u != v."""
    if members.size < 2:
        return []
    out = []
    i = 0
    while len(out) < k:
        if i > 1000 * (k + 10):
            raise RuntimeError("pair sampling stalled")
        u = members[int(rng.unit_at(seed, stream, i) * members.size)]
        v = members[int(rng.unit_at(seed, stream, i + 1) * members.size)]
        i += 2
        if u != v:
            out.append((int(u), int(v)))
    return out


def _distance_cell(args):
    model, alpha, beta, w_min, n, seed, pairs = args
    g = _make_graph(model, alpha, beta, w_min, n, seed)
    comp = components(g)
    members = comp.largest_members()
    rows = []
    if members.size < 2:
        return {"n": n, "seed": seed, "rows": rows, "giant": int(members.size),
                "skipped": True}
    scratch = BfsScratch(g.n)
    for u, v in sample_component_pairs(members, pairs, seed):
        d = bfs_distance(g, u, v, scratch)
        rows.append((n, seed, u, v, int(d)))
    return {"n": n, "seed": seed, "rows": rows, "giant": int(members.size),
            "skipped": False}


def _x_of_n(n: float) -> float:
    return math.log(n) / math.log(math.log(n))


def fit_distance_constant(xs, ys):
    """OLS of mean distance on log N / loglog N with intercept.

    Returns (slope, slope_stderr, intercept).  The intercept absorbs the
    additive O(1) contributions (cores, initial phases).
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.size < 2 or np.ptp(xs) == 0:
        return float("nan"), float("nan"), float(ys.mean())
    design = np.column_stack([np.ones_like(xs), xs])
    coef, *_ = np.linalg.lstsq(design, ys, rcond=None)
    resid = ys - design @ coef
    dof = max(1, xs.size - 2)
    s2 = float(resid @ resid) / dof
    sxx = float(((xs - xs.mean()) ** 2).sum())
    stderr = math.sqrt(s2 / sxx) if sxx > 0 else float("nan")
    return float(coef[1]), stderr, float(coef[0])


def typical_distance_study(cfg: ExperimentConfig) -> dict:
    """Distance samples over the (N, seed) grid plus the fitted scaling constant."""
    cells = [(cfg.model, cfg.alpha, cfg.beta, cfg.w_min, int(n), int(s), cfg.pairs_per_graph)
             for n in cfg.n_grid for s in cfg.seeds]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_distance_cell, cells))
    else:
        results = [_distance_cell(c) for c in cells]
    rows = []
    cell_means = {}
    skipped = []
    for res in results:
        rows.extend(res["rows"])
        if res["skipped"]:
            skipped.append((res["n"], res["seed"]))
        else:
            ds = [r[4] for r in res["rows"]]
            cell_means[(res["n"], res["seed"])] = float(np.mean(ds))
    xs = [_x_of_n(n) for (n, _s) in cell_means]
    ys = list(cell_means.values())
    c_hat, stderr, intercept = fit_distance_constant(xs, ys)
    per_seed = {}
    for s in cfg.seeds:
        pts = [(_x_of_n(n), cell_means[(n, s)]) for n in cfg.n_grid if (n, s) in cell_means]
        if len(pts) >= 2:
            per_seed[int(s)] = fit_distance_constant(*zip(*pts))[0]
    return {
        "model": cfg.model,
        "alpha": cfg.alpha,
        "n_grid": [int(n) for n in cfg.n_grid],
        "seeds": [int(s) for s in cfg.seeds],
        "pairs_per_graph": cfg.pairs_per_graph,
        "samples": rows,
        "cell_means": cell_means,
        "c_hat": c_hat,
        "c_hat_stderr": stderr,
        "c_hat_ci95": (c_hat - 1.96 * stderr, c_hat + 1.96 * stderr),
        "intercept": intercept,
        "per_seed_c_hat": per_seed,
        "skipped_cells": skipped,
    }


def fit_split_stability(report: dict) -> dict:
    """Refit on even- and odd-index halves of the N grid; they should agree
    within their joint confidence interval."""
    grid = report["n_grid"]
    means = report["cell_means"]
    halves = []
    for par in (0, 1):
        pts = [(_x_of_n(n), m) for (n, s), m in means.items()
               if grid.index(n) % 2 == par]
        halves.append(fit_distance_constant(*zip(*pts)) if len(pts) >= 2
                      else (float("nan"), float("nan"), float("nan")))
    (c0, e0, _), (c1, e1, _) = halves
    joint = 1.96 * math.hypot(e0 if e0 == e0 else 0.0, e1 if e1 == e1 else 0.0)
    return {"c_even": c0, "c_odd": c1, "joint_ci": joint,
            "consistent": bool(abs(c0 - c1) <= max(joint, 1e-9))
            if c0 == c0 and c1 == c1 else True}


def compare_distance_constants(rep_pa: dict, rep_nr: dict) -> dict:
    """One-sided Welch test that the PA scaling constant exceeds the NR one."""
    a = np.array(list(rep_pa["per_seed_c_hat"].values()))
    b = np.array(list(rep_nr["per_seed_c_hat"].values()))
    t = stats.ttest_ind(a, b, equal_var=False, alternative="greater")
    ratio = rep_pa["c_hat"] / rep_nr["c_hat"] if rep_nr["c_hat"] else float("nan")
    return {"t_stat": float(t.statistic), "p_one_sided": float(t.pvalue),
            "ratio": float(ratio), "c_pa": rep_pa["c_hat"], "c_nr": rep_nr["c_hat"]}


# -- degree law -----------------------------------------------------------------


def _merge_buckets(obs, expected, min_expected=5.0):
    """Merge adjacent count buckets until every expected count is >= min."""
    mo, me = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(obs, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            mo.append(acc_o)
            me.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 and mo:
        mo[-1] += acc_o
        me[-1] += acc_e
    elif acc_e > 0:
        mo.append(acc_o)
        me.append(acc_e)
    return np.array(mo), np.array(me)


def degree_law_check(g: Graph, rule: AttachmentRule, min_n: int = 100,
                     tail_k_range=(10, 300)) -> dict:
    """Compare a PA graph's degree statistics with the analytic laws.

    Indegrees go against the limiting law mu_k (chi-square, buckets merged
    to expected >= 5, total mass folded into the tail bucket); outdegrees
    against a Poisson with matched mean; the total-degree ccdf tail slope is
    fitted on a log grid.
    """
    n = g.n
    if n < min_n:
        return {"status": "skipped", "reason": f"n={n} too small for mass", "n": n}
    indeg = g.indegrees()[1:]
    outdeg = g.outdegrees()[1:]
    k_max = int(indeg.max())
    obs = np.bincount(indeg, minlength=k_max + 1).astype(np.float64)
    mu = mu_values(rule, k_max + 1)
    expected = n * mu[: k_max + 1]
    expected[-1] += n * max(0.0, 1.0 - mu[: k_max + 1].sum())  # fold the tail
    obs_m, exp_m = _merge_buckets(obs, expected)
    exp_m *= obs_m.sum() / exp_m.sum()
    chi = stats.chisquare(obs_m, f_exp=exp_m)
    # outdegree vs Poisson at the empirical mean
    lam = float(outdeg.mean())
    ko = int(outdeg.max())
    obs_o = np.bincount(outdeg, minlength=ko + 1).astype(np.float64)
    pmf = stats.poisson.pmf(np.arange(ko + 1), lam)
    exp_o = n * pmf
    exp_o[-1] += n * max(0.0, 1.0 - pmf.sum())
    obs_om, exp_om = _merge_buckets(obs_o, exp_o)
    exp_om *= obs_om.sum() / exp_om.sum()
    if obs_om.size > 2:
        stat_o = float(((obs_om - exp_om) ** 2 / exp_om).sum())
        p_out = float(stats.chi2.sf(stat_o, df=obs_om.size - 2))  # mean estimated
    else:
        p_out = float("nan")
    slope = ccdf_tail_slope(np.asarray(indeg + outdeg), *tail_k_range)
    return {
        "status": "checked",
        "n": n,
        "indegree_chi2_p": float(chi.pvalue),
        "indegree_buckets": int(obs_m.size),
        "outdegree_poisson_p": p_out,
        "outdegree_mean": lam,
        "ccdf_tail_slope": slope,
    }


def ccdf_tail_slope(samples: np.ndarray, k_lo: int, k_hi: int, n_points: int = 25) -> float:
    """OLS slope of log ccdf against log k on a log-spaced grid."""
    ks = np.unique(np.geomspace(k_lo, k_hi, n_points).astype(np.int64))
    ccdf = np.array([(samples >= k).mean() for k in ks])
    good = ccdf > 0
    if good.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(ks[good]), np.log(ccdf[good]), 1)[0])


# -- moment bounds ----------------------------------------------------------------


def moment_bounds_check(rule: AttachmentRule, m_grid, n_grid, replicas: int,
                        seed: int = 0, start_k: int = 0, alpha: float | None = None,
                        band_limit: float = 10.0) -> dict:
    """Monte Carlo first/second moments of f(Z[m,n]) against the scaling shapes.

    The first-moment ratio divides by sqrt(n/m) (1 v log n/m)^alpha, the
    second by its square; PASS means the first-moment ratios across the grid
    fit a positive band no wider than ``band_limit``.
    """
    if replicas < 10:
        raise ValueError("need replicas >= 10")
    if alpha is None:
        alpha = rule.alpha if rule.form == 0 else 0.0
    cells = []
    for m in sorted(set(int(m) for m in m_grid)):
        times = [int(n) for n in n_grid if n >= m]
        if not times:
            continue
        zs = pa.degree_at(m, start_k, times, rule, seed, replicas,
                          substream_base=_MOMENT_SUBSTREAM + m)
        f = rule.values(zs.reshape(-1)).reshape(zs.shape)
        for j, n in enumerate(times):
            shape = math.sqrt(n / m) * max(1.0, math.log(n / m)) ** alpha
            e1 = float(f[:, j].mean())
            e2 = float((f[:, j] ** 2).mean())
            se1 = float(f[:, j].std(ddof=1) / math.sqrt(replicas))
            cells.append({"m": m, "n": n, "e_f": e1, "e_f_se": se1, "e_f2": e2,
                          "ratio1": e1 / shape, "ratio2": e2 / shape ** 2,
                          "xi_ratio": e1 / math.exp(float(log_xi(m, n)))})
    r1 = np.array([c["ratio1"] for c in cells])
    r2 = np.array([c["ratio2"] for c in cells])
    width1 = float(r1.max() / r1.min()) if r1.size else float("nan")
    width2 = float(r2.max() / r2.min()) if r2.size else float("nan")
    return {
        "cells": cells,
        "band1": (float(r1.min()), float(r1.max())) if r1.size else None,
        "band2": (float(r2.min()), float(r2.max())) if r2.size else None,
        "width1": width1,
        "width2": width2,
        "passed": bool(r1.size and r1.min() > 0 and width1 <= band_limit),
    }


# -- core extraction -----------------------------------------------------------------


def restricted_indegrees(g: Graph, up_to: int, horizon: int) -> np.ndarray:
    """Z[v, horizon] for v = 1..up_to: adjacent labels in (v, horizon]."""
    out = np.empty(up_to + 1, dtype=np.int64)
    out[0] = 0
    for v in range(1, up_to + 1):
        nb = g.adj(v)
        out[v] = np.searchsorted(nb, horizon, side="right") - np.searchsorted(nb, v, side="right")
    return out


def core_study(g: Graph, *, rule: AttachmentRule | None = None,
               weights: np.ndarray | None = None, alpha: float, r_exp: float,
               eps: float = 0.1, replicas: int = 1000, seed: int = 0) -> dict:
    """Extract the old-vertex core and measure its size and diameter.

    PA arm (rule given): the core keeps v <= M_N whose degree toward
    [N_eps] clears half the Monte Carlo estimate of the reference
    expectation E f(Z[M_N, N_eps]).  NR arm (weights given): the M_N
    heaviest vertices.  Distances are measured in the full graph.
    """
    if (rule is None) == (weights is None):
        raise ValueError("pass exactly one of rule (PA) or weights (NR)")
    n = g.n
    m_n = int(math.log(n) ** r_exp)
    n_eps = math.ceil(n / (1.0 + eps))
    if m_n < 1 or m_n > n_eps:
        raise ValueError("need 1 <= M_N <= N_eps")
    report = {"n": n, "m_n": m_n, "n_eps": n_eps, "alpha": alpha, "r_exp": r_exp}
    if rule is not None:
        zs = pa.degree_at(m_n, 0, [n_eps], rule, seed, replicas,
                          substream_base=_CORE_SUBSTREAM)
        est = float(rule.values(zs[:, 0]).mean())
        threshold = 0.5 * est
        z_real = restricted_indegrees(g, m_n, n_eps)
        core = np.nonzero(rule.values(z_real)[1:] >= threshold)[0] + 1
        report.update(reference_mean=est, threshold=threshold, members=core)
    else:
        order = np.argsort(-weights[1:], kind="stable")
        core = np.sort(order[:m_n] + 1)
        report.update(min_core_weight=float(weights[1:][order[m_n - 1]]), members=core)
    if core.size == 0:
        report.update(status="empty_core", core_size=0)
        return report
    diam = subset_diameter(g, core)
    bound = max(6, int(r_exp / alpha) + 2) if alpha > 0 else 6
    report.update(status="ok", core_size=int(core.size),
                  core_fraction=float(core.size / m_n),
                  diameter=None if diam is None else int(diam),
                  diameter_bound=bound,
                  diameter_ok=diam is not None and diam <= bound)
    return report


# -- log-sum (pigeonhole) inequality ---------------------------------------------------


def logsum_default_c(alpha: float, c_xi: float = 1.0) -> float:
    return 1.0 / (2.0 ** alpha * (1.0 + alpha) * (1.0 + c_xi))


def logsum_eta(alpha: float) -> float:
    eps0 = math.exp(-((2.0 + 2.0 * math.log(math.e ** alpha + 0.5 * math.e ** -2))
                      ** (1.0 / (1.0 + alpha))))
    return eps0 ** 2


def logsum_bound_check(n: int, v0: int, a_set, alpha: float, c: float | None = None) -> dict:
    """Exact verification of the pigeonhole log-sum lower bound.

    Checks the hypothesis (admissible A, small v0, score mass condition) and
    then evaluates the left side exactly for every a in A.
    """
    if c is None:
        c = logsum_default_c(alpha)
    a_arr = np.asarray(sorted(set(int(a) for a in a_set)), dtype=np.int64)
    report = {"n": n, "v0": v0, "alpha": alpha, "c": c, "a_size": int(a_arr.size)}
    lo_label = math.ceil(2 * math.e ** 2)
    if a_arr.size == 0 or a_arr.min() < lo_label or a_arr.max() > n:
        report.update(status="hypothesis not satisfied", reason="A outside admissible labels")
        return report
    if not (v0 >= 1 and v0 < min(a_arr.min() / math.e ** 2, logsum_eta(alpha) * n)):
        report.update(status="hypothesis not satisfied", reason="v0 too large")
        return report
    xi_sq = np.exp(2.0 * log_xi(a_arr, n)).sum()
    lhs_cond = max(1.0, math.log(n / a_arr.min())) ** alpha * xi_sq
    rhs_cond = 0.5 * c * n * math.log(n / v0) ** (alpha + 1.0)
    report.update(score_mass=float(lhs_cond), score_mass_bound=float(rhs_cond))
    if lhs_cond > rhs_cond:
        report.update(status="hypothesis not satisfied", reason="score mass condition fails")
        return report
    v = np.arange(v0, n + 1, dtype=np.float64)
    keep = np.ones(v.size, dtype=bool)
    keep[a_arr - v0] = False
    v = v[keep]
    rhs = 0.5 * c * math.log(n / v0) ** (alpha + 1.0)
    margins = []
    for a in a_arr:
        ratio = np.where(v >= a, v / a, a / v)
        lhs = float((np.maximum(np.log(ratio), 1.0) ** alpha / v).sum())
        margins.append(lhs / rhs)
    margins = np.asarray(margins)
    report.update(status="checked", rhs=float(rhs),
                  violations=int((margins < 1.0).sum()),
                  min_margin=float(margins.min()))
    return report


# -- first-moment distance floor -------------------------------------------------------


def distance_floor(n: int, psi: float, kappa: float = 1.0) -> int:
    return math.ceil(math.log(n) / (math.log(math.log(n)) + math.log(psi) + math.log(kappa)))


def lower_bound_audit_pa(rule: AttachmentRule, n: int, seeds, alpha: float,
                         n_buckets: int = 10, pairs: int = 200) -> dict:
    """Fit the edge-probability envelope Psi_N/sqrt(vw) on label buckets and
    compare the implied path-counting floor with sampled distances."""
    bounds = np.unique(np.geomspace(1, n + 1, n_buckets + 1).astype(np.int64))
    n_buckets = bounds.size - 1
    edges_count = np.zeros((n_buckets, n_buckets))
    pair_count = np.zeros((n_buckets, n_buckets))
    gmean = np.sqrt(bounds[:-1] * (bounds[1:] - 1.0))
    sizes = (bounds[1:] - bounds[:-1]).astype(np.float64)
    min_ds = []
    all_ds = []
    for s in seeds:
        g = pa.generate(n, rule, int(s))
        u, v = g.edge_arrays()
        bu = np.searchsorted(bounds, u, side="right") - 1
        bv = np.searchsorted(bounds, v, side="right") - 1
        np.add.at(edges_count, (bu, bv), 1)
        np.add.at(edges_count, (bv, bu), 1)
        comp = components(g)
        members = comp.largest_members()
        scratch = BfsScratch(g.n)
        ds = [bfs_distance(g, a, b, scratch)
              for a, b in sample_component_pairs(members, pairs, int(s))]
        all_ds.extend(ds)
        min_ds.append(min(ds))
    for i in range(n_buckets):
        for j in range(n_buckets):
            pair_count[i, j] = sizes[i] * sizes[j] if i != j else sizes[i] * (sizes[i] - 1)
    pair_count *= len(seeds)
    with np.errstate(invalid="ignore", divide="ignore"):
        p_hat = edges_count / pair_count
    envelope = 1.0 / np.sqrt(np.outer(gmean, gmean))
    ratio = p_hat / envelope
    c_fit = float(np.nanmax(ratio)) / math.log(n) ** alpha
    psi = c_fit * math.log(n) ** alpha
    floor = distance_floor(n, psi, 1.0)
    all_ds = np.asarray(all_ds)
    return {
        "model": "pa",
        "n": n,
        "psi_constant": c_fit,
        "psi": psi,
        "floor": floor,
        "min_distance_per_seed": min_ds,
        "frac_above_floor": float((all_ds >= floor - 1).mean()),
        "mean_distance": float(all_ds.mean()),
    }


def lower_bound_audit_nr(dist: WeightDistribution, n: int, seeds, alpha: float,
                         eps: float = 0.05, c_env: float = 2.0) -> dict:
    """Order-statistic envelope check for the rank-one model.

    Counts the seeds whose sorted weights violate
    W^(v) <= c_env * sqrt((N/v) (log N)^(2*alpha)) for any v >= 2M, where M
    comes from the Bernstein tail budget for eps.
    """
    m_floor = math.ceil(-8.0 / 3.0 * math.log(0.5 * eps * (1.0 - math.exp(-3.0 / 8.0))))
    v = np.arange(2 * m_floor, n + 1)
    bound = c_env * np.sqrt(n / v) * math.log(n) ** alpha
    bad_seeds = 0
    for s in seeds:
        ws = nr.sample_weights(n, dist, int(s))
        order = np.sort(ws.weights[1:])[::-1]
        if np.any(order[v - 1] > bound):
            bad_seeds += 1
    psi = math.log(n) ** (2 * alpha)
    return {
        "model": "nr",
        "n": n,
        "m_floor": m_floor,
        "violating_seeds": bad_seeds,
        "n_seeds": len(list(seeds)),
        "violation_fraction": bad_seeds / max(1, len(list(seeds))),
        "floor": distance_floor(n, psi, 1.0),
    }


# -- upper-bound pipeline ----------------------------------------------------------------


def _tree_depth(parent: np.ndarray, v: int) -> int:
    d = 0
    while parent[v] != 0:
        v = int(parent[v])
        d += 1
    return d


def _tree_path(parent: np.ndarray, v: int) -> list:
    path = [int(v)]
    while parent[path[-1]] != 0:
        path.append(int(parent[path[-1]]))
    return path  # v .. root


def _bfs_path(g: Graph, a: int, b: int) -> list | None:
    """One shortest path a..b, reconstructed from a BFS distance field."""
    if a == b:
        return [a]
    scratch = bfs_sweep(g, b)
    if scratch.epoch[a] != scratch.cur:
        return None
    path = [a]
    v = a
    while v != b:
        dv = scratch.dist[v]
        for w in g.adj(v):
            if scratch.epoch[w] == scratch.cur and scratch.dist[w] == dv - 1:
                path.append(int(w))
                v = int(w)
                break
        else:
            return None
    return path


def verify_path(g: Graph, path: list) -> bool:
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def distance_upper_pipeline(g: Graph, rule: AttachmentRule, alpha: float,
                            params: dict | None = None, seed: int = 0) -> dict:
    """Two-phase two-exploration distance upper-bound construction.

    Runs parity-disjoint truncated explorations from two uniform giant
    starts inside the ratio-trimmed prefix graph, extracts the old-vertex
    core, connects each exploration's discovered set to the core through a
    young vertex, and reports the realized path length as a witness upper
    bound for the distance of the two starts.
    """
    p = {"eps": 0.1, "s0": DEFAULT_S0, "delta0": DEFAULT_DELTA0,
         "kappa": DEFAULT_KAPPA, "r_exp": 2 * alpha + 2, "max_steps": 60,
         "replicas": 400}
    if params:
        p.update(params)
    n = g.n
    n_eps = math.ceil(n / (1.0 + p["eps"]))
    comp = components(g)
    members = comp.largest_members()
    members = members[members <= n_eps]
    if members.size < 2:
        return {"status": "giant_too_small"}
    i = 0
    starts = []
    while len(starts) < 2 and i < 10_000:
        cand = int(members[int(rng.unit_at(seed, _S_STARTS, i) * members.size)])
        i += 1
        if cand not in starts:
            starts.append(cand)
    u_start, v_start = starts
    report = {"n": n, "n_eps": n_eps, "u": u_start, "v": v_start}
    if u_start == v_start:
        report.update(status="success", total_length=0, bfs_distance=0)
        return report
    xi_cache = xi_values(n_eps)
    trunc = truncation_sequence(n_eps, p["s0"], p["delta0"], p["kappa"], alpha)
    target = math.sqrt(n_eps) / math.log(n_eps) ** (alpha + 1.0)
    sides = []
    for start, parity in ((u_start, "odd"), (v_start, "even")):
        config = Configuration(g, start, trunc, parity=parity, n_limit=n_eps,
                               xi_cache=xi_cache)
        rep = run_to_score(config, g, target, p["max_steps"], s0=p["s0"])
        sides.append((config, rep))
    report["phase_status"] = [rep.status for _, rep in sides]
    if any(rep.status == "died_out" for _, rep in sides):
        report.update(status="died_out")
        return report
    if any(rep.status != "score_target_reached" for _, rep in sides):
        report.update(status="score_target_missed")
        return report
    tree_u = sides[0][0].tree_vertices()
    tree_v = sides[1][0].tree_vertices()
    common = np.intersect1d(tree_u, tree_v)
    bfs_d = bfs_distance(g, u_start, v_start)
    report["bfs_distance"] = None if bfs_d is None else int(bfs_d)
    x_scale = _x_of_n(n)
    if common.size:
        best = None
        for x in common:
            cand = _tree_depth(sides[0][0].parent, int(x)) + _tree_depth(sides[1][0].parent, int(x))
            if best is None or cand < best[0]:
                best = (cand, int(x))
        length, x = best
        path = _tree_path(sides[0][0].parent, x)[::-1][:-1] + _tree_path(sides[1][0].parent, x)
        report.update(status="success", via="collision", total_length=length,
                      path_ok=verify_path(g, path) and len(path) - 1 == length,
                      sound=bfs_d is not None and length >= bfs_d,
                      ratio=length / x_scale)
        return report
    core_rep = core_study(g, rule=rule, alpha=alpha, r_exp=p["r_exp"], eps=p["eps"],
                          replicas=p["replicas"], seed=seed)
    report["core"] = {k: core_rep.get(k) for k in
                      ("core_size", "core_fraction", "diameter", "m_n")}
    if core_rep.get("status") != "ok" or core_rep.get("core_size", 0) == 0:
        report.update(status="empty_core")
        return report
    core_flag = np.zeros(n + 1, dtype=bool)
    core_flag[core_rep["members"]] = True
    attach = []
    for config, _rep in sides:
        tree_flag = np.zeros(n + 1, dtype=bool)
        tv = config.tree_vertices()
        tree_flag[tv] = True
        best = None
        for young in range(n_eps + 1, n + 1):
            nb = g.adj(young)
            hits_tree = nb[tree_flag[nb]]
            hits_core = nb[core_flag[nb]]
            if hits_tree.size and hits_core.size:
                for tvx in hits_tree:
                    depth = _tree_depth(config.parent, int(tvx))
                    cand = (depth, int(tvx), int(young), int(hits_core[0]))
                    if best is None or cand[0] < best[0]:
                        best = cand
        if best is None:
            report.update(status="no_connector")
            return report
        attach.append(best)
    (d1, v1, y1, w1), (d2, v2, y2, w2) = attach
    mid = _bfs_path(g, w1, w2)
    if mid is None:
        report.update(status="core_disconnected")
        return report
    path = (_tree_path(sides[0][0].parent, v1)[::-1] + [y1] + mid + [y2]
            + _tree_path(sides[1][0].parent, v2))
    length = len(path) - 1
    report.update(status="success", via="core", total_length=length,
                  core_span=len(mid) - 1,
                  path_ok=verify_path(g, path),
                  sound=bfs_d is not None and length >= bfs_d,
                  ratio=length / x_scale)
    return report


# -- report output -----------------------------------------------------------------------


def write_distance_csv(rows, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n,seed,u,v,d\n")
        for n, s, u, v, d in rows:
            fh.write(f"{n},{s},{u},{v},{d}\n")


def write_json(obj, path):
    def clean(x):
        if isinstance(x, dict):
            return {str(k): clean(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [clean(v) for v in x]
        if isinstance(x, (np.integer,)):
            return int(x)
        if isinstance(x, (np.floating,)):
            return float(x)
        if isinstance(x, np.ndarray):
            return clean(x.tolist())
        return x

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(clean(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")
