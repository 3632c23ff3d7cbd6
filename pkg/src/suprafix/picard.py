"""Picard iteration, contraction certificates and fixed-point diagnostics.

The solver iterates x, Tx, T^2 x, ... and stops when the consecutive-step
distance drops below tol; convergence is only declared after an extra
residual check d(z, Tz) <= residual_tol, since a single small step does not
certify a fixed point. The certificate checkers evaluate the contraction
inequality over seeded pair samples mixed with orbit-derived pairs (the pairs
the iteration actually visits), and boundedness of orbits is reported as
evidence with a growth heuristic, never as a proof.

All operations are deterministic given (map, start, oracle, config, seed);
there is no shared mutable state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainEscapeError, EvaluationError
from .sampling import SampleSpec, sample_pairs, stress_points

DIVERGENCE_THRESHOLD = 1e12


# ---------------------------------------------------------------------------
# self-maps

class AffineMap:
    """T(x) = a*x + b on an analytic carrier (componentwise on R^d)."""

    kind = "affine"

    def __init__(self, a, b=0.0):
        self.a = float(a)
        self.b = float(b)
        self.label = f"affine:{self.a:g},{self.b:g}"

    def apply(self, x):
        return self.a * np.asarray(x, float) + self.b

    def describe(self):
        return {"kind": "affine", "a": self.a, "b": self.b}


class TableMap:
    """Total map on a finite carrier, given as an index table."""

    kind = "table"

    def __init__(self, targets, n=None):
        targets = np.asarray(targets, dtype=np.intp)
        if targets.ndim != 1 or targets.size == 0:
            raise ValueError("table map needs a non-empty 1-d index array")
        n = int(n) if n is not None else int(targets.size)
        if targets.size != n:
            raise ValueError(f"table map must be total: expected {n} entries")
        if targets.min() < 0 or targets.max() >= n:
            raise ValueError("table map targets must lie in [0, n)")
        self.targets = targets
        self.label = "table:" + ",".join(str(i) for i in targets)

    def apply(self, i):
        return self.targets[np.asarray(i, dtype=np.intp)]

    def describe(self):
        return {"kind": "table", "targets": [int(i) for i in self.targets]}


def map_from_ref(ref, space):
    """Build a self-map from a `name[:param,...]` reference for a space."""
    name, _, rest = ref.partition(":")
    if name == "affine":
        params = [float(p) for p in rest.split(",")] if rest else []
        if len(params) not in (1, 2):
            raise ValueError("affine map takes 1 or 2 parameters: affine:a[,b]")
        return AffineMap(*params)
    if name == "halving":
        return AffineMap(0.5)
    if name == "doubling":
        return AffineMap(2.0)
    if name == "identity":
        return AffineMap(1.0)
    if name == "table":
        if space.kind != "finite":
            raise ValueError("table maps require a finite space")
        targets = [int(p) for p in rest.split(",")] if rest else []
        return TableMap(targets, n=space.n)
    raise ValueError(f"unknown map reference {ref!r}")


def _apply_in_carrier(tmap, x, space, iteration):
    """One map application with the carrier-membership check."""
    nxt = tmap.apply(x)
    if space.kind == "analytic" and not np.all(space.contains(nxt)):
        raise DomainEscapeError(
            f"map left the domain box at iteration {iteration}",
            iteration=iteration, point=np.asarray(nxt, float))
    return nxt


# ---------------------------------------------------------------------------
# orbits

@dataclass
class OrbitTrace:
    points: np.ndarray          # T^0 x .. T^N x
    step_distances: np.ndarray  # d(T^{n+1} x, T^n x)
    truncated: bool = False
    bound_M: float | None = None

    def __len__(self):
        return int(np.asarray(self.points).shape[0])


def run_orbit(tmap, x0, space, n, on_escape="raise"):
    """Record n+1 orbit points and the n consecutive-step distances.

    on_escape: "raise" propagates a domain escape; "truncate" returns the
    partial trace with truncated=True.
    """
    if space.kind == "analytic":
        x0 = np.atleast_1d(np.asarray(x0, float))
        if not np.all(space.contains(x0)):
            raise DomainEscapeError("start point lies outside the domain box",
                                    iteration=0, point=x0)
    pts = [x0]
    truncated = False
    for k in range(int(n)):
        try:
            pts.append(_apply_in_carrier(tmap, pts[-1], space, k + 1))
        except DomainEscapeError:
            if on_escape == "raise":
                raise
            truncated = True
            break
    pts = np.asarray(pts)
    if len(pts) > 1:
        steps = np.atleast_1d(space.pairwise(pts[1:], pts[:-1]))
    else:
        steps = np.zeros(0)
    if not np.isfinite(steps).all():
        raise EvaluationError("non-finite step distance along the orbit")
    return OrbitTrace(pts, np.asarray(steps, float), truncated=truncated)


@dataclass(frozen=True)
class OrbitBound:
    M: float
    window: int
    growing: bool
    prefix_maxima: tuple  # M over prefixes of doubling length


def _pairwise_max(space, pts):
    best = 0.0
    for i in range(len(pts) - 1):
        d = np.atleast_1d(space.pairwise(pts[i], pts[i + 1:]))
        best = max(best, float(d.max()))
    return best


def check_orbit_bounded(trace, space, window=None):
    """Empirical orbit bound M = max pairwise distance over the stored window.

    Evidence for (not proof of) the bounded-orbit hypothesis. The growth
    heuristic flags a likely-unbounded orbit when M keeps growing by at least
    1.5x across the last two doublings of the prefix window.
    """
    pts = np.asarray(trace.points)
    if window is not None:
        pts = pts[: int(window)]
    if len(pts) < 2:
        bound = OrbitBound(0.0, len(pts), False, (0.0,))
        trace.bound_M = bound.M
        return bound
    prefix = []
    length = 2
    while length < len(pts):
        prefix.append(_pairwise_max(space, pts[:length]))
        length *= 2
    prefix.append(_pairwise_max(space, pts))
    growing = (len(prefix) >= 3 and prefix[-3] > 0
               and prefix[-1] >= 1.5 * prefix[-2] >= 2.25 * prefix[-3])
    bound = OrbitBound(float(prefix[-1]), len(pts), bool(growing), tuple(prefix))
    trace.bound_M = bound.M
    return bound


def cauchy_diagnostic(trace, space, window):
    """d_n = max over m in [n, n+window] of d(T^n x, T^m x), for each n."""
    pts = np.asarray(trace.points)
    w = int(window)
    if len(pts) <= w:
        raise ValueError("trace shorter than the diagnostic window")
    out = np.empty(len(pts) - w)
    for n in range(len(pts) - w):
        d = np.atleast_1d(space.pairwise(pts[n], pts[n + 1: n + w + 1]))
        out[n] = float(d.max())
    return out


# ---------------------------------------------------------------------------
# fixed-point solver

@dataclass(frozen=True)
class SolveConfig:
    tol: float = 1e-10
    residual_tol: float = 1e-8
    max_iter: int = 10_000
    divergence_threshold: float = DIVERGENCE_THRESHOLD

    def __post_init__(self):
        if self.tol <= 0 or self.residual_tol <= 0 or self.max_iter <= 0:
            raise ValueError("solver tolerances and max_iter must be positive")


@dataclass
class SolveResult:
    fixed_point: object
    iterations: int
    last_step: float
    residual: float
    status: str  # "converged" | "max_iter" | "diverged"
    note: str = ""

    @property
    def converged(self):
        return self.status == "converged"


def solve_fixed_point(tmap, x0, space, config=None, record_trace=False):
    """Iterate T until the consecutive step falls below tol, then confirm
    with the residual d(z, Tz). Returns a SolveResult; with record_trace=True
    returns (SolveResult, OrbitTrace).

    Status "diverged" covers both a step distance beyond the divergence
    threshold and the map escaping the domain box.
    """
    config = config or SolveConfig()
    if space.kind == "analytic":
        cur = np.atleast_1d(np.asarray(x0, float))
        if not np.all(space.contains(cur)):
            raise DomainEscapeError("start point lies outside the domain box",
                                    iteration=0, point=cur)
    else:
        cur = x0
    pts = [cur]
    steps = []

    def _result(status, z, iterations, last_step, residual, note=""):
        res = SolveResult(space.point_native(z), int(iterations),
                          float(last_step), float(residual), status, note)
        if record_trace:
            return res, OrbitTrace(np.asarray(pts), np.asarray(steps, float),
                                   truncated=(status != "converged"))
        return res

    n = 0
    while n < config.max_iter:
        try:
            nxt = _apply_in_carrier(tmap, cur, space, n + 1)
        except DomainEscapeError as exc:
            return _result("diverged", cur, n, steps[-1] if steps else 0.0,
                           float("nan"), note=str(exc))
        step = float(np.atleast_1d(space.pairwise(nxt, cur))[0])
        if not np.isfinite(step):
            raise EvaluationError("non-finite step distance during solve",
                                  operands=(cur, nxt))
        pts.append(nxt)
        steps.append(step)
        if step > config.divergence_threshold:
            return _result("diverged", nxt, n, step, float("nan"),
                           note=f"step distance exceeded {config.divergence_threshold:g}")
        if step < config.tol:
            # Residual confirmation: one extra application.
            try:
                after = _apply_in_carrier(tmap, nxt, space, n + 2)
            except DomainEscapeError as exc:
                return _result("diverged", nxt, n, step, float("nan"), note=str(exc))
            residual = float(np.atleast_1d(space.pairwise(nxt, after))[0])
            if residual <= config.residual_tol:
                return _result("converged", nxt, n, step, residual)
            # Small step without a small residual: keep iterating from Tz.
            pts.append(after)
            steps.append(residual)
            cur = after
            n += 2
            continue
        cur = nxt
        n += 1
    return _result("max_iter", cur, config.max_iter,
                   steps[-1] if steps else float("nan"), float("nan"),
                   note="iteration budget exhausted before the step tolerance")


# ---------------------------------------------------------------------------
# contraction certificates

@dataclass(frozen=True)
class ContractionCertificate:
    kind: str            # "ciric" | "plain"
    theta_label: str
    pairs_checked: int
    worst_slack: float
    worst_pair: tuple
    verdict: str         # "no_violation" | "violated"
    tolerance: float

    @property
    def violated(self):
        return self.verdict == "violated"


CERT_RTOL = 1e-9


def _certificate_pairs(space, spec, tmap, x0):
    """Uniform + stress pairs, plus orbit-derived pairs (T^i x0, T^j x0)."""
    base = sample_pairs(space, spec)
    xs = [np.asarray(base.xs)]
    ys = [np.asarray(base.ys)]
    if x0 is not None:
        trace = run_orbit(tmap, x0, space, 32, on_escape="truncate")
        pts = np.asarray(trace.points)
        if len(pts) >= 2:
            i, j = np.triu_indices(len(pts), k=1)
            xs.append(pts[i])
            ys.append(pts[j])
    if space.kind == "finite":
        return np.concatenate(xs), np.concatenate(ys)
    return np.vstack(xs), np.vstack(ys)


def _contraction_certificate(kind, tmap, space, theta, spec, x0):
    xs, ys = _certificate_pairs(space, spec, tmap, x0)
    try:
        txs = _apply_in_carrier(tmap, xs, space, 1)
        tys = _apply_in_carrier(tmap, ys, space, 1)
    except DomainEscapeError as exc:
        raise DomainEscapeError(
            f"map is not a self-map of the carrier on the sampled pairs: {exc}",
            iteration=1) from exc
    d_xy = np.atleast_1d(space.pairwise(xs, ys))
    d_txty = np.atleast_1d(space.pairwise(txs, tys))
    if kind == "ciric":
        d_xtx = np.atleast_1d(space.pairwise(xs, txs))
        d_yty = np.atleast_1d(space.pairwise(ys, tys))
        m = np.maximum(d_xy, np.maximum(d_xtx, d_yty))
    else:
        m = d_xy
    theta_m = np.asarray(theta.apply(m), float)
    if not np.isfinite(theta_m).all():
        bad = int(np.argwhere(~np.isfinite(theta_m))[0][0])
        raise EvaluationError(
            f"{theta.label} non-finite at the pair "
            f"({space.point_text(xs[bad])}, {space.point_text(ys[bad])})",
            operands=(xs[bad], ys[bad]))
    slack = theta_m - d_txty
    norm = slack / (1.0 + np.abs(theta_m))
    worst = int(np.argmin(norm))
    violated = bool(norm[worst] < -CERT_RTOL)
    return ContractionCertificate(
        kind=kind, theta_label=theta.label, pairs_checked=int(slack.shape[0]),
        worst_slack=float(slack[worst]),
        worst_pair=(space.point_native(xs[worst]), space.point_native(ys[worst])),
        verdict="violated" if violated else "no_violation",
        tolerance=CERT_RTOL)


def check_ciric_contraction(tmap, space, theta, spec=None, x0=None):
    """Worst slack of theta(max{d(x,y), d(x,Tx), d(y,Ty)}) - d(Tx,Ty)."""
    return _contraction_certificate("ciric", tmap, space, theta,
                                    spec or SampleSpec(), x0)


def check_plain_contraction(tmap, space, theta, spec=None, x0=None):
    """Worst slack of theta(d(x,y)) - d(Tx,Ty)."""
    return _contraction_certificate("plain", tmap, space, theta,
                                    spec or SampleSpec(), x0)


# ---------------------------------------------------------------------------
# uniqueness probe and continuity probe

@dataclass
class UniquenessReport:
    ok: bool
    results: list            # SolveResult per start
    max_pairwise: float
    merge_tol: float
    note: str = ""


def uniqueness_probe(tmap, space, starts, config=None, merge_tol=1e-8):
    """Solve from several starts; ok iff all converge to one merged point."""
    starts = list(starts)
    if len(starts) < 2:
        raise ValueError("uniqueness probe needs at least two starts")
    config = config or SolveConfig()
    results = [solve_fixed_point(tmap, x0, space, config) for x0 in starts]
    if not all(r.converged for r in results):
        bad = sum(1 for r in results if not r.converged)
        return UniquenessReport(False, results, float("nan"), merge_tol,
                                note=f"{bad} start(s) did not converge")
    if space.kind == "analytic":
        fps = np.asarray([np.atleast_1d(np.asarray(r.fixed_point, float))
                          for r in results])
    else:
        fps = np.asarray([r.fixed_point for r in results])
    worst = 0.0
    for i in range(len(fps) - 1):
        d = np.atleast_1d(space.pairwise(fps[i], fps[i + 1:]))
        worst = max(worst, float(d.max()))
    ok = worst <= merge_tol
    return UniquenessReport(ok, results, worst, merge_tol,
                            note="" if ok else "distinct fixed points found")


@dataclass(frozen=True)
class ContinuityProbe:
    verdict: str       # "consistent" | "refuted" | "vacuous"
    base: float
    anchor: float
    detail: str


def probe_separate_continuity(space, anchor, base, n_steps=40):
    """Numeric probe of separate continuity of the distance at `base`.

    Builds x_k -> base (Euclidean-wise), requires d(x_k, base) -> 0 (otherwise
    the premise is vacuous on this path), then checks d(anchor, x_k) ->
    d(anchor, base). Can refute continuity, never prove it.
    """
    if space.kind != "analytic":
        raise ValueError("continuity probe applies to analytic spaces")
    base_pt = np.atleast_1d(np.asarray(base, float))
    anchor_pt = np.atleast_1d(np.asarray(anchor, float))
    lo, hi = space.box
    offset = min(1.0, (hi - lo) / 8.0)
    direction = 1.0 if float(base_pt[0]) + offset <= hi else -1.0
    ks = np.arange(1, n_steps + 1)
    xs = base_pt[None, :] + direction * offset * 0.5 ** ks[:, None]
    d_to_base = np.atleast_1d(space.pairwise(xs, base_pt[None, :]))
    if float(d_to_base[-1]) > 1e-9:
        return ContinuityProbe("vacuous", float(base_pt[0]), float(anchor_pt[0]),
                               "no sequence converging to the base point found "
                               f"(d stalls at {float(d_to_base[-1]):.3g})")
    d_anchor = np.atleast_1d(space.pairwise(anchor_pt[None, :], xs))
    d_limit = float(np.atleast_1d(space.pairwise(anchor_pt, base_pt))[0])
    gap = float(np.abs(d_anchor[-1] - d_limit))
    if gap > 1e-6 * (1.0 + abs(d_limit)):
        return ContinuityProbe("refuted", float(base_pt[0]), float(anchor_pt[0]),
                               f"d(anchor, x_k) stalls {gap:.3g} away from the limit")
    return ContinuityProbe("consistent", float(base_pt[0]), float(anchor_pt[0]),
                           "sampled distances track the limit")
