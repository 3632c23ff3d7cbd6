"""Candidate comparison functions and numeric membership proxies.

A comparison function maps non-negative reals to non-negative reals and is
non-decreasing; the classes of interest are

    class 1:  iterates vanish      theta^n(t) -> 0          for every t > 0
    class 2:  iterates summable    sum_n theta^n(t) < inf   for every t > 0

Both are limit statements, undecidable from finitely many evaluations, so the
checkers return three-valued verdicts {holds, fails, inconclusive} with
explicit numeric semantics:

  * class 1 holds   when theta^N(t) drops below eps for every probe;
  * class 1 fails   when iterates either run non-decreasing above eps, or
                    form a Cauchy stall (successive difference < eps * 1e-3
                    while the value stays above eps), pinning a positive limit;
  * class 2 holds   when terms fall below tail_tol and the late term ratios
                    stay below 1 (a geometric tail bound closes the sum);
  * class 2 fails   when partial sums exceed the budget, terms stall above
                    zero, or the decay is measured harmonic-or-slower: the
                    per-step decrement u_n = 1 - t_{n+1}/t_n both scales like
                    1/n (it halves when n doubles) and has n * u_n <= 1.05,
                    which bounds the terms below by ~C/n.

Anything else is inconclusive. These are proxies, never proofs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EvaluationError

DEFAULT_PROBES = (1e-3, 0.1, 1.0, 10.0, 100.0)
DEFAULT_CAP = 10_000
DEFAULT_EPS = 1e-8
DEFAULT_BUDGET = 1e9
DEFAULT_TAIL_TOL = 1e-12

# Consecutive non-decreasing steps above eps before declaring non-decay.
_NONDECREASING_RUN = 16
# Tolerance around the 1/n-scaling check and the harmonic threshold.
_HARMONIC_MARGIN = 0.05
_SCALING_TOL = 0.2
# Stall extrapolation trusts the diff ratio only below this bound.
_GEOMETRIC_RHO_MAX = 0.99


class ComparisonFn:
    """Base class; subclasses implement apply() on arrays and may provide a
    scalar fast path for the iteration-heavy checks."""

    label = "theta"
    params = ()

    def apply(self, t):
        raise NotImplementedError

    def scalar(self, t):
        return float(self.apply(t))

    def __call__(self, t):
        v = self.scalar(float(t))
        if not math.isfinite(v):
            raise EvaluationError(f"{self.label} produced a non-finite value",
                                  operands=(t,))
        return v

    def describe(self):
        return {"family": self.label, "params": list(self.params)}


class Linear(ComparisonFn):
    def __init__(self, k):
        k = float(k)
        if k < 0:
            raise ValueError("linear slope must be >= 0")
        self.k = k
        self.params = (k,)
        self.label = f"linear:{k:g}"

    def apply(self, t):
        return self.k * np.asarray(t, float)

    def scalar(self, t):
        return self.k * t


class RationalDecay(ComparisonFn):
    """t / (1 + t); iterates have the closed form t / (1 + n t)."""

    label = "rational_decay"

    def apply(self, t):
        t = np.asarray(t, float)
        return t / (1.0 + t)

    def scalar(self, t):
        return t / (1.0 + t)


class SqrtShift(ComparisonFn):
    """sqrt(1 + t) - 1; behaves like t/2 near 0."""

    label = "sqrt_shift"

    def apply(self, t):
        return np.sqrt(1.0 + np.asarray(t, float)) - 1.0

    def scalar(self, t):
        return math.sqrt(1.0 + t) - 1.0


class Power(ComparisonFn):
    def __init__(self, p):
        p = float(p)
        if p <= 0:
            raise ValueError("power exponent must be > 0")
        self.p = p
        self.params = (p,)
        self.label = f"power:{p:g}"

    def apply(self, t):
        return np.asarray(t, float) ** self.p

    def scalar(self, t):
        return t ** self.p


class TableTheta(ComparisonFn):
    """Piecewise-linear interpolation of a (t, theta(t)) table.

    Constant extrapolation beyond the grid; t values must be strictly
    increasing. Monotonicity of the values is checked, not assumed.
    """

    def __init__(self, ts, values, label="table"):
        ts = np.asarray(ts, float)
        values = np.asarray(values, float)
        if ts.ndim != 1 or ts.shape != values.shape or ts.size < 2:
            raise ValueError("table needs two equal-length columns (>= 2 rows)")
        if not np.all(np.diff(ts) > 0):
            raise ValueError("table t values must be strictly increasing")
        if np.any(ts < 0) or np.any(values < 0) or not np.isfinite(values).all():
            raise ValueError("table values must be finite and non-negative")
        self.ts = ts
        self.values = values
        self.label = label

    def apply(self, t):
        return np.interp(np.asarray(t, float), self.ts, self.values)


class Compose(ComparisonFn):
    def __init__(self, outer, inner):
        self.outer = outer
        self.inner = inner
        self.label = f"{outer.label}({inner.label})"

    def apply(self, t):
        return self.outer.apply(self.inner.apply(t))

    def scalar(self, t):
        return self.outer.scalar(self.inner.scalar(t))


def load_table_theta(path, label=None):
    data = np.loadtxt(path, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"table file {path!r} must have exactly two columns")
    return TableTheta(data[:, 0], data[:, 1], label or f"table:{path}")


_FAMILIES = {"linear": (Linear, 1), "rational_decay": (RationalDecay, 0),
             "sqrt_shift": (SqrtShift, 0), "power": (Power, 1)}


def theta_from_ref(ref):
    """Build a comparison function from a `name[:param,...]` reference."""
    name, _, rest = ref.partition(":")
    if name == "table":
        if not rest:
            raise ValueError("table theta needs a file path: table:PATH")
        return load_table_theta(rest)
    if name not in _FAMILIES:
        raise ValueError(f"unknown comparison function {name!r}; expected one of "
                         f"{sorted(_FAMILIES) + ['table']}")
    cls, arity = _FAMILIES[name]
    params = tuple(float(p) for p in rest.split(",")) if rest else ()
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return cls(*params)


def iterate_theta(theta, t, n):
    """n-fold composition theta^n(t); theta^0(t) = t."""
    t = float(t)
    if t < 0:
        raise ValueError("iterates are defined for t >= 0")
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    cur = t
    for _ in range(int(n)):
        cur = theta(cur)
    return cur


def default_grid(lo=0.0, hi=100.0):
    """Default evaluation grid: dense near 0, geometric out to hi."""
    fine = np.linspace(lo, min(1.0, hi), 401)
    coarse = np.geomspace(max(lo, 1e-3) or 1e-3, hi, 301)
    return np.unique(np.concatenate([fine, coarse]))


@dataclass(frozen=True)
class GridWitness:
    t1: float
    t2: float
    v1: float
    v2: float


@dataclass(frozen=True)
class GridReport:
    ok: bool
    checked: int
    witness: GridWitness | None


def check_monotone(theta, grid=None):
    """Non-decreasing on the grid; witness is a consecutive violating pair."""
    grid = np.asarray(default_grid() if grid is None else grid, float)
    if grid.size < 2:
        raise ValueError("monotonicity grid needs at least two points")
    vals = np.atleast_1d(np.asarray(theta.apply(grid), float))
    if not np.isfinite(vals).all():
        bad = int(np.argwhere(~np.isfinite(vals))[0][0])
        raise EvaluationError(f"{theta.label} non-finite at t={grid[bad]}",
                              operands=(grid[bad],))
    drop = vals[:-1] > vals[1:] + RTOL_GRID * (1.0 + np.abs(vals[:-1]))
    if drop.any():
        i = int(np.argmax(drop))
        return GridReport(False, grid.size,
                          GridWitness(float(grid[i]), float(grid[i + 1]),
                                      float(vals[i]), float(vals[i + 1])))
    return GridReport(True, grid.size, None)


RTOL_GRID = 1e-12


def check_subdiagonal(theta, grid=None):
    """theta(t) < t on a strictly positive grid."""
    grid = np.asarray(default_grid(1e-3) if grid is None else grid, float)
    grid = grid[grid > 0]
    if grid.size == 0:
        raise ValueError("subdiagonal grid needs positive points")
    vals = np.atleast_1d(np.asarray(theta.apply(grid), float))
    above = vals >= grid * (1.0 - RTOL_GRID)
    if above.any():
        i = int(np.argmax(above))
        return GridReport(False, grid.size,
                          GridWitness(float(grid[i]), float(grid[i]),
                                      float(vals[i]), float(grid[i])))
    return GridReport(True, grid.size, None)


@dataclass(frozen=True)
class ProbeOutcome:
    t: float
    status: str       # "holds" | "fails" | "inconclusive"
    steps: int
    final: float
    detail: str
    value: float = float("nan")  # sum estimate / limit estimate, when meaningful


@dataclass
class ThetaVerdict:
    class_name: str   # "theta1" | "theta2"
    verdict: str      # "holds" | "fails" | "inconclusive"
    probes: list = field(default_factory=list)
    cap: int = DEFAULT_CAP
    eps: float = DEFAULT_EPS

    def evidence(self):
        for p in self.probes:
            if p.status == self.verdict:
                return p
        return self.probes[0] if self.probes else None


def _aggregate(class_name, outcomes, cap, eps):
    statuses = [o.status for o in outcomes]
    if "fails" in statuses:
        verdict = "fails"
    elif all(s == "holds" for s in statuses):
        verdict = "holds"
    else:
        verdict = "inconclusive"
    return ThetaVerdict(class_name, verdict, list(outcomes), cap, eps)


def _stall_limit(value, diff, prev_diff):
    """Limit estimate for a stalling orbit, or None when undecidable.

    Trustworthy only when successive differences decay geometrically (directly
    at a fixed point, diff == 0); algebraic decay toward 0 has a diff ratio
    creeping up to 1 and must not be extrapolated, so it returns None.
    """
    if diff == 0.0:
        return value
    if prev_diff is None or prev_diff <= 0.0:
        return None
    rho = diff / prev_diff
    if rho > _GEOMETRIC_RHO_MAX:
        return None
    return max(0.0, value - diff * rho / (1.0 - rho))


def check_theta1(theta, probes=DEFAULT_PROBES, cap=DEFAULT_CAP, eps=DEFAULT_EPS):
    """Vanishing-iterates proxy. See the module docstring for the semantics."""
    outcomes = []
    for t in probes:
        if t <= 0:
            raise ValueError("probes must be strictly positive")
        cur = float(t)
        prev_diff = None
        streak = 0
        streak_start = 0
        outcome = None
        for n in range(1, int(cap) + 1):
            nxt = theta(cur)
            if nxt < eps:
                outcome = ProbeOutcome(t, "holds", n, nxt,
                                       f"iterate below eps after {n} steps")
                break
            diff = abs(nxt - cur)
            if diff < eps * 1e-3:
                limit = _stall_limit(nxt, diff, prev_diff)
                if limit is not None and limit > eps:
                    outcome = ProbeOutcome(
                        t, "fails", n, nxt,
                        f"iterates stall above eps (limit ~ {limit:.6g})",
                        value=limit)
                    break
            if nxt >= cur:
                if streak == 0:
                    streak_start = n
                streak += 1
                if streak >= _NONDECREASING_RUN or nxt > 1e15:
                    outcome = ProbeOutcome(
                        t, "fails", n, nxt,
                        f"iterates non-decreasing above eps from step {streak_start}",
                        value=nxt)
                    break
            else:
                streak = 0
            prev_diff = diff
            cur = nxt
        if outcome is None:
            outcome = ProbeOutcome(t, "inconclusive", int(cap), cur,
                                   "cap exhausted while iterates still decay")
        outcomes.append(outcome)
    return _aggregate("theta1", outcomes, int(cap), eps)


def _window_median(values):
    return float(np.median(np.asarray(values, float))) if values else float("nan")


def check_theta2(theta, probes=DEFAULT_PROBES, cap=DEFAULT_CAP,
                 budget=DEFAULT_BUDGET, tail_tol=DEFAULT_TAIL_TOL):
    """Summable-iterates proxy. See the module docstring for the semantics."""
    outcomes = []
    for t in probes:
        if t <= 0:
            raise ValueError("probes must be strictly positive")
        term = float(t)
        total = float(t)
        ratios = []          # trailing ratios t_{n+1}/t_n
        mid_u = []           # decrements near cap/2, for the 1/n-scaling check
        end_u = []           # decrements near cap
        cap = int(cap)
        mid_lo, mid_hi = cap // 2 - 16, cap // 2 + 16
        end_lo = cap - 32
        prev_diff = None
        outcome = None
        for n in range(1, cap + 1):
            nxt = theta(term)
            total += nxt
            if total > budget:
                outcome = ProbeOutcome(t, "fails", n, nxt,
                                       f"partial sum exceeded budget {budget:g}",
                                       value=total)
                break
            if term > 0:
                ratio = nxt / term
                ratios.append(ratio)
                if len(ratios) > 8:
                    ratios.pop(0)
                if mid_lo <= n <= mid_hi:
                    mid_u.append(1.0 - ratio)
                if n >= end_lo:
                    end_u.append(1.0 - ratio)
            if nxt < tail_tol:
                r_hat = max(ratios) if ratios else 0.0
                if r_hat < 1.0:
                    est = total + nxt * r_hat / (1.0 - r_hat)
                    outcome = ProbeOutcome(
                        t, "holds", n, nxt,
                        f"terms below tail tolerance, late ratio {r_hat:.3g}",
                        value=est)
                else:
                    outcome = ProbeOutcome(t, "inconclusive", n, nxt,
                                           "terms vanish but ratios reach 1")
                break
            diff = abs(nxt - term)
            if diff < 1e-12 * (1.0 + nxt):
                limit = _stall_limit(nxt, diff, prev_diff)
                if limit is not None and limit > 1000.0 * tail_tol:
                    outcome = ProbeOutcome(
                        t, "fails", n, nxt,
                        f"terms stall above zero (limit ~ {limit:.6g}); sum diverges",
                        value=total)
                    break
            prev_diff = diff
            term = nxt
        if outcome is None:
            u_end = _window_median(end_u)
            u_mid = _window_median(mid_u)
            p_hat = cap * u_end
            harmonic_scaling = (np.isfinite(u_mid) and u_mid > 0
                                and abs(u_end / u_mid - 0.5) <= _SCALING_TOL)
            if harmonic_scaling and p_hat <= 1.0 + _HARMONIC_MARGIN:
                outcome = ProbeOutcome(
                    t, "fails", cap, term,
                    f"harmonic-or-slower decay (n*u_n ~ {p_hat:.3g}); "
                    f"partial sums outgrow any budget", value=total)
            else:
                outcome = ProbeOutcome(t, "inconclusive", cap, term,
                                       "cap exhausted without a tail certificate")
        outcomes.append(outcome)
    return _aggregate("theta2", outcomes, int(cap), tail_tol)
