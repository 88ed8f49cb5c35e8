"""Attachment rules and the analytic functions derived from them.

An attachment rule is a positive concave function f on the nonnegative
integers that drives the preferential attachment model.  This module holds
the rule itself plus everything computed from it alone: increments, the
Gamma-ratio score ``xi``, the linearising scale ``phi`` and its inverse,
the limiting indegree law ``mu``, and the exploration truncation sequence.
All Gamma-ratio and product evaluations go through log-gamma; identity
checks elsewhere in the package use 1e-10 relative tolerance against these.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

FORM_CRITICAL = 0
FORM_AFFINE = 1
FORM_TABULATED = 2

_FORM_NAMES = {FORM_CRITICAL: "critical", FORM_AFFINE: "affine", FORM_TABULATED: "tabulated"}
_FORM_CODES = {v: k for k, v in _FORM_NAMES.items()}

# Window scanned for concavity violations of the critical closed form.  The
# perturbation k/log(k v e) has increasing increments only below e^2, so any
# violation sits far inside this window; scanning further is defensive.
_FIX_SCAN = 64


def _critical_raw(k: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    kk = np.asarray(k, dtype=np.float64)
    return 0.5 * kk + 0.5 * alpha * kk / np.log(np.maximum(kk, np.e)) + beta


def _concave_prefix(alpha: float, beta: float) -> tuple[np.ndarray, bool]:
    """Concave minorant of the critical closed form on its violating prefix.

    Returns the corrected values f(0..K-1) where K is the anchor index from
    which the closed form is concave on its own, plus a flag telling whether
    any value actually changed.
    """
    raw = _critical_raw(np.arange(_FIX_SCAN + 2), alpha, beta)
    diffs = np.diff(raw)
    bad = np.nonzero(diffs[1:] > diffs[:-1] + 1e-12)[0]  # violation at k: df(k+1) > df(k)
    if bad.size == 0:
        return np.empty(0, dtype=np.float64), False
    anchor = int(bad[-1]) + 2
    if anchor > _FIX_SCAN - 8:
        raise ValueError("concavity violation outside the scanned prefix window")
    # Greatest concave g <= raw with g = raw from the anchor on: walk right to
    # left taking the smallest admissible slope at each step.
    g = raw[: anchor + 1].copy()
    slope = raw[anchor + 1] - raw[anchor]
    for k in range(anchor - 1, -1, -1):
        slope = max(slope, g[k + 1] - raw[k])
        g[k] = g[k + 1] - slope
    changed = bool(np.any(g < raw[: anchor + 1] - 1e-15))
    return g[:anchor], changed


@dataclass(frozen=True)
class AttachmentRule:
    """A concave positive attachment rule f with cached evaluation data.

    ``prefix`` holds explicit f-values for small k (the concave-minorant
    fixup for the critical form, or the full table for tabulated rules);
    beyond it the closed form applies.
    """

    form: int
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    prefix: np.ndarray = field(default_factory=lambda: np.empty(0))
    concavity_fixup: bool = False

    @staticmethod
    def critical(alpha: float, beta: float) -> "AttachmentRule":
        if alpha < 0:
            raise ValueError("critical rule needs alpha >= 0")
        if beta <= 0:
            raise ValueError("critical rule needs beta > 0")
        prefix, changed = _concave_prefix(alpha, beta)
        return AttachmentRule(FORM_CRITICAL, alpha=alpha, beta=beta,
                              prefix=prefix, concavity_fixup=changed)

    @staticmethod
    def affine(gamma: float, beta: float) -> "AttachmentRule":
        if not 0.0 < gamma < 1.0:
            raise ValueError("affine rule needs gamma in (0,1)")
        if beta <= 0:
            raise ValueError("affine rule needs beta > 0")
        return AttachmentRule(FORM_AFFINE, beta=beta, gamma=gamma)

    @staticmethod
    def tabulated(values) -> "AttachmentRule":
        table = np.asarray(values, dtype=np.float64)
        if table.ndim != 1 or table.size < 2:
            raise ValueError("tabulated rule needs at least two values")
        if np.any(table <= 0):
            raise ValueError("attachment rule values must be positive")
        diffs = np.diff(table)
        if np.any(diffs < 0):
            raise ValueError("tabulated rule must be nondecreasing")
        if table.size > 2 and np.any(np.diff(diffs) > 1e-12):
            raise ValueError("tabulated rule must be concave")
        return AttachmentRule(FORM_TABULATED, prefix=table)

    @property
    def max_k(self):
        """Largest k the rule is defined for (None if unbounded)."""
        if self.form == FORM_TABULATED:
            return self.prefix.size - 1
        return None

    def __call__(self, k: int) -> float:
        if k < 0:
            raise ValueError("attachment rule argument must be >= 0")
        if k < self.prefix.size:
            return float(self.prefix[k])
        if self.form == FORM_TABULATED:
            raise ValueError("rule domain exceeded")
        if self.form == FORM_CRITICAL:
            return float(_critical_raw(np.float64(k), self.alpha, self.beta))
        return self.gamma * k + self.beta

    def values(self, ks) -> np.ndarray:
        """Vectorised evaluation over an integer array."""
        ks = np.asarray(ks, dtype=np.int64)
        if ks.ndim == 0:
            ks = ks.reshape(1)
        if np.any(ks < 0):
            raise ValueError("attachment rule argument must be >= 0")
        if self.form == FORM_TABULATED:
            if np.any(ks >= self.prefix.size):
                raise ValueError("rule domain exceeded")
            return self.prefix[ks]
        if self.form == FORM_AFFINE:
            return self.gamma * ks + self.beta
        out = _critical_raw(ks, self.alpha, self.beta)
        if self.prefix.size:
            small = ks < self.prefix.size
            out[small] = self.prefix[ks[small]]
        return out

    def delta(self, k: int) -> float:
        return self(k + 1) - self(k)

    def deltas(self, ks) -> np.ndarray:
        ks = np.asarray(ks, dtype=np.int64)
        return self.values(ks + 1) - self.values(ks)

    def kernel_args(self):
        """(form, alpha, beta, gamma, prefix) tuple consumed by the kernels."""
        return (np.int64(self.form), np.float64(self.alpha), np.float64(self.beta),
                np.float64(self.gamma), np.ascontiguousarray(self.prefix, dtype=np.float64))

    # -- serialisation ---------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "form": _FORM_NAMES[self.form],
            "alpha": self.alpha if self.form == FORM_CRITICAL else None,
            "beta": self.beta if self.form != FORM_TABULATED else None,
            "gamma": self.gamma if self.form == FORM_AFFINE else None,
            "table": self.prefix.tolist() if self.form == FORM_TABULATED else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @staticmethod
    def from_json_obj(obj: dict) -> "AttachmentRule":
        form = obj.get("form")
        if form == "critical":
            return AttachmentRule.critical(float(obj["alpha"]), float(obj["beta"]))
        if form == "affine":
            return AttachmentRule.affine(float(obj["gamma"]), float(obj["beta"]))
        if form == "tabulated":
            return AttachmentRule.tabulated(obj["table"])
        raise ValueError(f"unknown rule form: {form!r}")

    @staticmethod
    def from_json(text: str) -> "AttachmentRule":
        return AttachmentRule.from_json_obj(json.loads(text))


# -- score xi ------------------------------------------------------------------


def log_xi(m, n):
    """log of the score product prod_{i=m}^{n-1} (1 + 1/(2i)), via log-gamma."""
    m = np.asarray(m, dtype=np.float64)
    n = np.asarray(n, dtype=np.float64)
    if np.any(m < 1) or np.any(n < m):
        raise ValueError("xi needs 1 <= m <= n")
    out = gammaln(n + 0.5) + gammaln(m) - gammaln(m + 0.5) - gammaln(n)
    return np.where(n == m, 0.0, out)  # empty product, exactly 1


def xi(m: int, n: int) -> float:
    """Score of vertex m at network size n (expected-degree scale)."""
    return float(np.exp(log_xi(m, n)))


def xi_values(n: int) -> np.ndarray:
    """xi(v, n) for all v; index by vertex label, slot 0 unused."""
    v = np.arange(1, n + 1, dtype=np.float64)
    out = np.empty(n + 1, dtype=np.float64)
    out[0] = np.nan
    out[1:] = np.exp(gammaln(n + 0.5) - gammaln(n) + gammaln(v) - gammaln(v + 0.5))
    return out


# -- linearising scale phi -----------------------------------------------------


class PhiTable:
    """Cumulative sums of 1/f with lazy extension, backing phi and its inverse."""

    def __init__(self, rule: AttachmentRule):
        self.rule = rule
        self._cum = np.zeros(1)  # _cum[x] = phi(x)

    def _extend(self, x: int):
        have = self._cum.size - 1
        if x <= have:
            return
        grow = max(x, 2 * have, 1024)
        if self.rule.max_k is not None:
            grow = min(grow, self.rule.max_k + 1)
            if x > grow:
                raise ValueError("rule domain exceeded")
        ks = np.arange(have, grow, dtype=np.int64)
        inc = np.cumsum(1.0 / self.rule.values(ks))
        self._cum = np.concatenate([self._cum, self._cum[-1] + inc])

    def phi(self, x: int) -> float:
        if x < 0:
            raise ValueError("phi needs x >= 0")
        self._extend(x)
        return float(self._cum[x])

    def phi_inverse(self, y: float) -> float:
        """Piecewise-linear interpolation of the inverse of phi on [phi(1), inf)."""
        lo = 1.0 / self.rule(0)
        if y < lo:
            raise ValueError("phi_inverse needs y >= 1/f(0)")
        while self._cum[-1] < y:
            have = self._cum.size - 1
            if self.rule.max_k is not None and have >= self.rule.max_k + 1:
                raise ValueError("rule domain exceeded")
            self._extend(max(2 * have, 1024))
        idx = int(np.searchsorted(self._cum, y, side="left"))
        # idx >= 1 and _cum[idx-1] < y <= _cum[idx]
        if self._cum[idx] == y:
            return float(idx)
        x0, x1 = idx - 1, idx
        y0, y1 = self._cum[x0], self._cum[x1]
        return float(x0 + (y - y0) / (y1 - y0))


def phi(rule: AttachmentRule, x: int) -> float:
    return PhiTable(rule).phi(x)


def phi_inverse(rule: AttachmentRule, y: float) -> float:
    return PhiTable(rule).phi_inverse(y)


# -- limiting indegree law mu ---------------------------------------------------


def log_mu_values(rule: AttachmentRule, k_max: int) -> np.ndarray:
    """log mu_k for k = 0..k_max, by accumulating log f(j) - log(1+f(j))."""
    f = rule.values(np.arange(k_max + 1, dtype=np.int64))
    step = np.log(f) - np.log1p(f)
    csum = np.concatenate([[0.0], np.cumsum(step[:-1])])
    return csum - np.log1p(f)


def mu(rule: AttachmentRule, k: int) -> float:
    if k < 0:
        raise ValueError("mu needs k >= 0")
    return float(np.exp(log_mu_values(rule, k)[k]))


def mu_values(rule: AttachmentRule, k_max: int) -> np.ndarray:
    return np.exp(log_mu_values(rule, k_max))


# -- truncation sequence ---------------------------------------------------------


@dataclass(frozen=True)
class TruncationSequence:
    """Nonincreasing per-generation label cutoffs for the truncated exploration.

    ``levels[k-1]`` is the cutoff for generation k; the sequence is stored up
    to its stabilisation index (the first k whose successor equals it) and is
    constant from there on.
    """

    levels: np.ndarray
    n: int
    s0: float
    delta0: float
    kappa: float
    alpha: float

    @property
    def k_star(self) -> int:
        return self.levels.size

    def level(self, k: int) -> int:
        """Cutoff for generation k >= 1 (stabilised value past k_star)."""
        if k < 1:
            raise ValueError("generation index starts at 1")
        return int(self.levels[min(k, self.k_star) - 1])

    def to_csv(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("k,ell_k\n")
            for i, lv in enumerate(self.levels, start=1):
                fh.write(f"{i},{int(lv)}\n")


def truncation_sequence(n: int, s0: float, delta0: float, kappa: float = 0.25,
                        alpha: float = 0.0, max_len: int = 10_000) -> TruncationSequence:
    """Compute the truncation cutoffs ell_1 >= ell_2 >= ... up to stabilisation.

    ell_k is the largest label whose score sqrt(N/ell_k) still exceeds a
    threshold that grows by a factor kappa * log(N/ell_i)^(alpha+1) per
    completed generation; an empty constraint set yields 1.  Evaluation runs
    in log space.  If the raw recursion ever fails to decrease (possible for
    parameter choices outside the intended growth regime) the sequence is
    clamped to its previous value, which marks stabilisation.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if s0 <= 0 or not (0 < delta0 < 0.5) or kappa <= 0:
        raise ValueError("need s0 > 0, delta0 in (0, 1/2), kappa > 0")
    log_n = math.log(n)
    levels: list[int] = []
    log_prod = 0.0  # log prod_{i<k} kappa * log(N/ell_i)^(alpha+1)
    for k in range(1, max_len + 1):
        log_t = math.log(s0 * delta0) - math.log(max(1.0, math.log(k))) + log_prod
        if log_t <= 0:
            ell = n
        elif 2.0 * log_t >= log_n:
            ell = 1
        else:
            # float fudge keeps exact-integer boundaries (e.g. N/(s0*d0)^2) stable
            ell = max(1, min(n, int(math.floor(n * math.exp(-2.0 * log_t) * (1 + 1e-12)))))
        if levels and ell >= levels[-1]:
            # raw recursion stopped decreasing: stabilised at K* = k-1
            break
        levels.append(ell)
        if ell >= n:
            # log(N/ell) = 0 zeroes the product, so the next level repeats
            break
        log_prod += math.log(kappa) + (alpha + 1.0) * math.log(log_n - math.log(ell))
    else:
        raise RuntimeError("truncation sequence did not stabilise")
    return TruncationSequence(np.asarray(levels, dtype=np.int64), n=n, s0=s0,
                              delta0=delta0, kappa=kappa, alpha=alpha)


def untruncated(n: int) -> TruncationSequence:
    """The degenerate all-ones truncation (plain breadth-first exploration)."""
    return TruncationSequence(np.ones(1, dtype=np.int64), n=n, s0=1.0,
                              delta0=0.25, kappa=0.25, alpha=0.0)


def decay_index(alpha: float, delta: float) -> int:
    """Smallest k >= 3 with delta*log k >= (2a+2-delta)*k*log(1+1/k) + 1."""
    if not 0 < delta < 2 * alpha + 2:
        raise ValueError("need delta in (0, 2*alpha+2)")
    k = 3
    while True:
        if delta * math.log(k) >= (2 * alpha + 2 - delta) * k * math.log1p(1.0 / k) + 1:
            return k
        k += 1
        if k > 10_000_000:
            raise RuntimeError("decay index out of range")


# -- one-step conditional-expectation identities --------------------------------


def degree_martingale_residuals(rule: AttachmentRule, z_values, n_values):
    """Exact one-step residuals of the score-normalised degree processes.

    For the process f(Z)/xi the one-step conditional expectation multiplies
    f(z) by (1 + df(z)/n) while xi gains a factor (1 + 1/(2n)); for the
    second process the analogous exact factors are formed from the one-step
    second-moment identity.  Returns (r1, r2) with shape (len(z), len(n)):
    both are exactly 0 for affine rules and >= 0 for concave rules with
    increments >= 1/2.
    """
    z = np.asarray(z_values, dtype=np.int64)[:, None]
    n = np.asarray(n_values, dtype=np.float64)[None, :]
    f = rule.values(z)
    df = rule.deltas(z)
    r1 = (1.0 + df / n) / (1.0 + 0.5 / n) - 1.0
    # E[f(Z')^2 + f(Z')/2 | z] against the affine identity (1+1/n)(f^2 + f/2)
    lhs = f * f + (2.0 * f * df + df * df) * f / n + 0.5 * (f + f * df / n)
    rhs = (1.0 + 1.0 / n) * (f * f + 0.5 * f)
    r2 = lhs / rhs - 1.0
    return r1, r2
