"""Axiom checks, constant fitting and classification for generalized metrics.

Six inequality families are supported, all of the shape

    d(x, y) <= rhs(d(x, z), d(z, y))           for all ordered triples (x, z, y)

with rhs one of:

    metric                A + B              (b-metric at s = 1)
    b-metric              s (A + B)
    strong b-metric       A + s B
    b-suprametric         s (A + B) + c A B   (suprametric when s = 1)
    strong b-suprametric  s A + B + c A B
    interpolative         A + B + c A^alpha B^(1-alpha)

Fitting the defining constants is exact on the sampled constraint set: the
one-constant forms take a supremum of ratios, and the (s, c) forms solve the
two-variable linear feasibility problem in closed form (every constraint is a
half-plane, so the lexicographic optimum sits on the c = c_max clamp and the
binding constraint; no iterative LP is involved).

Verdicts from sampling are never proofs: a class "fails" only with an explicit
witness triple, and "holds" means holds-at-the-fitted-constants on the sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSampleError
from .sampling import SampleSpec, TripleBatch, sample_pairs, sample_points, sample_triples

# Relative slack tolerance: an inequality is accepted when
# slack >= -RTOL * (1 + |rhs|). Absorbs exp/pow rounding at large scales.
RTOL = 1e-9

CLASS_NAMES = (
    "metric",
    "strong_b_metric",
    "b_metric",
    "suprametric",
    "b_suprametric",
    "strong_b_suprametric",
    "interpolative",
)

# Implications that any report must respect on a shared sample
# (a holds => b cannot fail). Violations indicate a bug, not bad data.
LATTICE_EDGES = (
    ("metric", "strong_b_metric"),
    ("strong_b_metric", "b_metric"),
    ("b_metric", "b_suprametric"),
    ("suprametric", "b_suprametric"),
    ("interpolative", "b_metric"),
)


@dataclass(frozen=True)
class TripleWitness:
    """A concrete ordered triple (x, z, y) with its slack under some rhs."""

    x: object
    z: object
    y: object
    lhs: float
    leg_a: float
    leg_b: float
    slack: float

    def as_dict(self):
        return {
            "x": self.x, "z": self.z, "y": self.y,
            "lhs": self.lhs, "leg_a": self.leg_a, "leg_b": self.leg_b,
            "slack": self.slack,
        }


@dataclass(frozen=True)
class PairWitness:
    x: object
    y: object
    d_xy: float
    d_yx: float
    kind: str = "symmetry"

    def as_dict(self):
        return {"kind": self.kind, "x": self.x, "y": self.y,
                "d_xy": self.d_xy, "d_yx": self.d_yx}


@dataclass(frozen=True)
class ConstantsFit:
    kind: str
    s: float | None
    c: float | None
    alpha: float | None
    extremal: TripleWitness
    samples_used: int
    exhaustive: bool

    def constants(self):
        out = {}
        if self.s is not None:
            out["s"] = self.s
        if self.c is not None:
            out["c"] = self.c
        if self.alpha is not None:
            out["alpha"] = self.alpha
        return out


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    checked: int
    violations: int
    worst: TripleWitness | None
    tolerance: float = RTOL


@dataclass(frozen=True)
class SemimetricReport:
    ok: bool
    points_checked: int
    pairs_checked: int
    witnesses: tuple


@dataclass
class ClassVerdict:
    status: str  # "holds" | "fails" | "inconclusive"
    constants: dict = field(default_factory=dict)
    witness: TripleWitness | None = None
    note: str = ""
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class FitLimits:
    """Feasibility bounds for fitted constants and the interpolative grid."""

    s_max: float = 1e6
    c_max: float = 1e6
    alpha_grid: tuple = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


@dataclass
class AxiomReport:
    oracle: dict
    sampling: dict
    semimetric_ok: bool
    semimetric_witnesses: tuple
    classes: dict
    declared: list


# ---------------------------------------------------------------------------
# right-hand sides (shared between fitting, verification and generators)

def rhs_b_metric(leg_a, leg_b, s):
    return s * (leg_a + leg_b)


def rhs_strong_b_metric(leg_a, leg_b, s):
    return leg_a + s * leg_b


def rhs_b_supra(leg_a, leg_b, s, c):
    return s * (leg_a + leg_b) + c * leg_a * leg_b


def rhs_strong_b_supra(leg_a, leg_b, s, c):
    return s * leg_a + leg_b + c * leg_a * leg_b


def rhs_interpolative(leg_a, leg_b, alpha, c):
    # 0^alpha follows the numpy convention and equals 0 for alpha > 0.
    return leg_a + leg_b + c * leg_a ** alpha * leg_b ** (1.0 - alpha)


def young_gap(a, b, alpha):
    """alpha*a + (1-alpha)*b - a^alpha * b^(1-alpha), for a, b >= 0.

    Young's inequality makes the exact value non-negative, with equality at
    a == b; rounding residue at the equality case (a couple of ulp below
    zero) is snapped to 0 so the non-negativity contract holds verbatim.
    Accepts scalars or broadcastable arrays.
    """
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    alpha = np.asarray(alpha, float)
    if np.any(a < 0) or np.any(b < 0):
        raise ValueError("young_gap requires a, b >= 0")
    if np.any(alpha <= 0) or np.any(alpha >= 1):
        raise ValueError("young_gap requires 0 < alpha < 1")
    gap = np.maximum(alpha * a + (1.0 - alpha) * b - a ** alpha * b ** (1.0 - alpha), 0.0)
    if gap.ndim == 0:
        return float(gap)
    return gap


def interpolative_to_b_index(alpha, c):
    """b-metric index implied by interpolative constants (alpha, c)."""
    alpha = float(alpha)
    c = float(c)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if c < 0.0:
        raise ValueError(f"c must be >= 0, got {c}")
    return max(1.0 + c * alpha, 1.0 + c * (1.0 - alpha))


# ---------------------------------------------------------------------------
# semi-metric check

def check_semimetric(space, spec=None, max_witnesses=10):
    """Sampled check of non-negativity, identity of indiscernibles, symmetry.

    Returns every violation found, up to max_witnesses; ok iff none.
    """
    spec = spec or SampleSpec()
    points = sample_points(space, spec)
    witnesses = []

    d_self = np.atleast_1d(space.pairwise(points, points))
    for (i,) in np.argwhere(np.abs(d_self) > RTOL)[:max_witnesses]:
        p = space.point_native(points[i])
        witnesses.append(PairWitness(p, p, float(d_self[i]), float(d_self[i]),
                                     kind="self_distance"))

    pairs = sample_pairs(space, spec)
    d_xy = np.atleast_1d(space.pairwise(pairs.xs, pairs.ys))
    d_yx = np.atleast_1d(space.pairwise(pairs.ys, pairs.xs))

    def _pw(i, kind):
        return PairWitness(space.point_native(pairs.xs[i]),
                           space.point_native(pairs.ys[i]),
                           float(d_xy[i]), float(d_yx[i]), kind=kind)

    neg = d_xy < -RTOL * (1.0 + np.abs(d_xy))
    for (i,) in np.argwhere(neg)[:max_witnesses]:
        witnesses.append(_pw(i, "negative"))

    asym = np.abs(d_xy - d_yx) > RTOL * (1.0 + np.maximum(np.abs(d_xy), np.abs(d_yx)))
    for (i,) in np.argwhere(asym)[:max_witnesses]:
        witnesses.append(_pw(i, "symmetry"))

    if space.kind == "finite":
        distinct = np.asarray(pairs.xs) != np.asarray(pairs.ys)
    else:
        distinct = np.any(np.asarray(pairs.xs) != np.asarray(pairs.ys), axis=-1)
    # Identity of indiscernibles is checked against exact zeros: distances may
    # legitimately shrink below any tolerance for nearby distinct points.
    zero = distinct & (d_xy == 0.0) & (d_yx == 0.0)
    for (i,) in np.argwhere(zero)[:max_witnesses]:
        witnesses.append(_pw(i, "zero_distance"))

    witnesses = tuple(witnesses[:max_witnesses])
    return SemimetricReport(ok=not witnesses,
                            points_checked=int(np.atleast_1d(points).shape[0]),
                            pairs_checked=len(pairs),
                            witnesses=witnesses)


# ---------------------------------------------------------------------------
# shared fit/verify machinery

def _as_batch(space, sample):
    if isinstance(sample, TripleBatch):
        return sample
    return sample_triples(space, sample or SampleSpec())

def _witness(space, batch, i, slack):
    return TripleWitness(
        x=space.point_native(batch.xs[i]),
        z=space.point_native(batch.zs[i]),
        y=space.point_native(batch.ys[i]),
        lhs=float(batch.lhs[i]),
        leg_a=float(batch.leg_a[i]),
        leg_b=float(batch.leg_b[i]),
        slack=float(slack),
    )


def _tie_mask(batch):
    # Fully-zero triples (x = z = y) tie every slack minimum at 0 without
    # carrying information; push them to the back of the selection.
    return (batch.lhs == 0) & (batch.leg_a == 0) & (batch.leg_b == 0)


def _worst_index(batch, slack, rhs):
    with np.errstate(invalid="ignore"):
        norm = slack / (1.0 + np.abs(rhs))
    norm = np.where(np.isfinite(norm), norm, -np.inf)
    ranked = np.where(_tie_mask(batch), np.inf, norm)
    if not np.isfinite(ranked).any() and not np.isneginf(ranked).any():
        return 0, norm
    return int(np.argmin(ranked)), norm


def _verify(space, batch, rhs, tolerance=RTOL):
    with np.errstate(invalid="ignore"):
        slack = rhs - batch.lhs
    worst_i, norm = _worst_index(batch, slack, rhs)
    bad = norm < -tolerance
    worst = _witness(space, batch, worst_i, slack[worst_i])
    return VerifyReport(ok=not bool(bad.any()), checked=len(batch),
                        violations=int(bad.sum()), worst=worst,
                        tolerance=tolerance)


def _extremal_at(space, batch, rhs):
    slack = rhs - batch.lhs
    i, _ = _worst_index(batch, slack, rhs)
    return _witness(space, batch, i, slack[i])


def _sup_ratio(num, den):
    """sup num/den over den > 0; +inf when a den == 0 constraint has num > 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(den > 0, num / den,
                         np.where(num > 0, np.inf, -np.inf))
    if not np.any(den > 0):
        raise DegenerateSampleError("no usable triples: every denominator is zero")
    i = int(np.argmax(ratio))
    return float(ratio[i]), i


def fit_b_index(space, sample=None):
    """Least b-metric index on the sample: max(1, sup lhs / (legA + legB)).

    Triples with legA + legB == 0 are skipped (they force lhs == 0).
    """
    batch = _as_batch(space, sample)
    den = batch.leg_a + batch.leg_b
    sup, _ = _sup_ratio(batch.lhs, den)
    s = max(1.0, sup)
    extremal = _extremal_at(space, batch, rhs_b_metric(batch.leg_a, batch.leg_b, s))
    return ConstantsFit("b", s, None, None, extremal, len(batch), batch.exhaustive)


def fit_strong_b_index(space, sample=None):
    """Least strong-b index on the sample for lhs <= legA + s*legB."""
    batch = _as_batch(space, sample)
    sup, _ = _sup_ratio(batch.lhs - batch.leg_a, batch.leg_b)
    s = max(1.0, sup)
    extremal = _extremal_at(space, batch,
                            rhs_strong_b_metric(batch.leg_a, batch.leg_b, s))
    return ConstantsFit("strong_b", s, None, None, extremal, len(batch),
                        batch.exhaustive)


def _fit_su_plus_cv(space, batch, u, v, num, rhs_fn, kind, objective="lex",
                    s_fixed=None, s_max=1e6, c_max=1e6):
    """Exact fit of constraints s*u + c*v >= num with s >= 1, c in [0, c_max].

    objective "lex" minimizes s first (allowing c up to c_max), then c;
    objective "min_c" keeps s = s_fixed and minimizes c. Returned constants
    may exceed (s_max, c_max); callers compare against their limits.
    """
    if objective == "lex":
        with np.errstate(divide="ignore", invalid="ignore"):
            s_req = np.where(u > 0, (num - c_max * v) / u,
                             np.where((v <= 0) & (num > 0), np.inf, -np.inf))
        s = max(1.0, float(np.max(s_req))) if len(s_req) else 1.0
    elif objective == "min_c":
        s = float(s_fixed)
        if s < 1.0:
            raise ValueError("fixed s must be >= 1")
    else:
        raise ValueError(f"unknown objective {objective!r}")
    resid = num - s * u
    with np.errstate(divide="ignore", invalid="ignore"):
        c_req = np.where(v > 0, resid / v,
                         np.where(resid > RTOL * (1.0 + np.abs(num)), np.inf, -np.inf))
    c = max(0.0, float(np.max(c_req))) if len(c_req) else 0.0
    if objective == "lex" and c_max < c <= c_max * (1.0 + RTOL):
        # The lex optimum sits exactly on the c = c_max boundary; division
        # rounding can land a hair above it.
        c = c_max
    if np.isfinite(s) and np.isfinite(c):
        extremal = _extremal_at(space, batch,
                                rhs_fn(batch.leg_a, batch.leg_b, s, c))
    else:
        i = int(np.argmax(s_req)) if not np.isfinite(s) else int(np.argmax(c_req))
        extremal = _witness(space, batch, i, float("-inf"))
    return ConstantsFit(kind, s, c, None, extremal, len(batch), batch.exhaustive)


def fit_suprametric_constants(space, sample=None, objective="lex", s_fixed=None,
                              s_max=1e6, c_max=1e6):
    """Fit (s, c) for lhs <= s*(legA + legB) + c*legA*legB.

    Every sampled triple is a half-plane constraint in the (s, c) plane; the
    optimum under either objective is computed exactly from the constraint
    envelope. kind is "supra" when the fitted c is positive, else "b".
    """
    batch = _as_batch(space, sample)
    fit = _fit_su_plus_cv(space, batch,
                          u=batch.leg_a + batch.leg_b,
                          v=batch.leg_a * batch.leg_b,
                          num=batch.lhs, rhs_fn=rhs_b_supra, kind="supra",
                          objective=objective, s_fixed=s_fixed,
                          s_max=s_max, c_max=c_max)
    if fit.c == 0.0:
        return ConstantsFit("b", fit.s, fit.c, None, fit.extremal,
                            fit.samples_used, fit.exhaustive)
    return fit


def fit_strong_suprametric_constants(space, sample=None, objective="lex",
                                     s_fixed=None, s_max=1e6, c_max=1e6):
    """Fit (s, c) for the one-leg-weighted form lhs <= s*legA + legB + c*legA*legB."""
    batch = _as_batch(space, sample)
    return _fit_su_plus_cv(space, batch,
                           u=batch.leg_a,
                           v=batch.leg_a * batch.leg_b,
                           num=batch.lhs - batch.leg_b,
                           rhs_fn=rhs_strong_b_supra, kind="strong_supra",
                           objective=objective, s_fixed=s_fixed,
                           s_max=s_max, c_max=c_max)


def fit_interpolative_c(space, alpha, sample=None):
    """Minimal c making the space (alpha, c)-interpolative on the sample."""
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    batch = _as_batch(space, sample)
    w = batch.leg_a ** alpha * batch.leg_b ** (1.0 - alpha)
    resid = batch.lhs - (batch.leg_a + batch.leg_b)
    with np.errstate(divide="ignore", invalid="ignore"):
        c_req = np.where(w > 0, resid / w,
                         np.where(resid > RTOL * (1.0 + np.abs(batch.lhs)),
                                  np.inf, -np.inf))
    c = max(0.0, float(np.max(c_req)))
    if np.isfinite(c):
        extremal = _extremal_at(space, batch,
                                rhs_interpolative(batch.leg_a, batch.leg_b, alpha, c))
    else:
        extremal = _witness(space, batch, int(np.argmax(c_req)), float("-inf"))
    return ConstantsFit("interpolative", None, c, alpha, extremal, len(batch),
                        batch.exhaustive)


def verify_b_metric(space, s, sample=None, tolerance=RTOL):
    if s < 1.0:
        raise ValueError(f"b-metric index must be >= 1, got {s}")
    batch = _as_batch(space, sample)
    return _verify(space, batch, rhs_b_metric(batch.leg_a, batch.leg_b, float(s)),
                   tolerance)


def verify_strong_b_metric(space, s, sample=None, tolerance=RTOL):
    if s < 1.0:
        raise ValueError(f"strong b-metric index must be >= 1, got {s}")
    batch = _as_batch(space, sample)
    return _verify(space, batch,
                   rhs_strong_b_metric(batch.leg_a, batch.leg_b, float(s)), tolerance)


def verify_b_suprametric(space, s, c, sample=None, tolerance=RTOL):
    if s < 1.0 or c < 0.0:
        raise ValueError(f"need s >= 1 and c >= 0, got ({s}, {c})")
    batch = _as_batch(space, sample)
    return _verify(space, batch,
                   rhs_b_supra(batch.leg_a, batch.leg_b, float(s), float(c)),
                   tolerance)


def verify_strong_b_suprametric(space, s, c, sample=None, tolerance=RTOL):
    """Check lhs <= s*legA + legB + c*legA*legB over all sampled ordered triples."""
    if s < 1.0 or c < 0.0:
        raise ValueError(f"need s >= 1 and c >= 0, got ({s}, {c})")
    batch = _as_batch(space, sample)
    return _verify(space, batch,
                   rhs_strong_b_supra(batch.leg_a, batch.leg_b, float(s), float(c)),
                   tolerance)


def verify_interpolative(space, alpha, c, sample=None, tolerance=RTOL):
    alpha = float(alpha)
    c = float(c)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if c < 0.0:
        raise ValueError(f"c must be >= 0, got {c}")
    batch = _as_batch(space, sample)
    return _verify(space, batch,
                   rhs_interpolative(batch.leg_a, batch.leg_b, alpha, c), tolerance)


VERIFIERS = {
    "metric": lambda space, batch, k: verify_b_metric(space, 1.0, batch),
    "b_metric": lambda space, batch, k: verify_b_metric(space, k["s"], batch),
    "strong_b_metric": lambda space, batch, k: verify_strong_b_metric(space, k["s"], batch),
    "suprametric": lambda space, batch, k: verify_b_suprametric(space, 1.0, k["c"], batch),
    "b_suprametric": lambda space, batch, k: verify_b_suprametric(space, k["s"], k["c"], batch),
    "strong_b_suprametric": lambda space, batch, k: verify_strong_b_suprametric(
        space, k["s"], k["c"], batch),
    "interpolative": lambda space, batch, k: verify_interpolative(
        space, k["alpha"], k["c"], batch),
}


# ---------------------------------------------------------------------------
# classification

def _holds_or_fails(space, batch, fit, limits, constants, rhs_at_limits):
    """Verdict from a fit: holds at the fitted constants, or fails with the
    most-violating triple evaluated at the configured limits."""
    s_ok = fit.s is None or fit.s <= limits.s_max
    c_ok = fit.c is None or fit.c <= limits.c_max
    if s_ok and c_ok and np.all([np.isfinite(val) for val in constants.values()]):
        return ClassVerdict("holds", constants=constants, witness=fit.extremal)
    worst = _extremal_at(space, batch, rhs_at_limits)
    return ClassVerdict("fails", constants=constants, witness=worst,
                        note="no admissible constants within configured bounds")


def check_lattice(classes):
    """Raise if verdicts contradict the implication lattice (an internal bug)."""
    for stronger, weaker in LATTICE_EDGES:
        if classes[stronger].status == "holds" and classes[weaker].status == "fails":
            raise RuntimeError(
                f"classification bug: {stronger} holds but {weaker} fails")


def classify(space, spec=None, limits=None, declared=None):
    """Full lattice report for one oracle under a single seeded sample.

    Runs the semi-metric check, fits every class on one shared triple batch,
    scans the interpolative alpha grid, optionally verifies declared
    (class, constants) expectations, and cross-validates the implication
    lattice. If the semi-metric check fails, class verdicts are inconclusive
    (their preconditions do not hold).
    """
    spec = spec or SampleSpec()
    limits = limits or FitLimits()
    semi = check_semimetric(space, spec)
    sampling_info = {"seed": spec.seed, "n_triples_requested": spec.n_triples,
                     "stress": spec.include_stress}

    if not semi.ok:
        classes = {name: ClassVerdict("inconclusive",
                                      note="semi-metric axioms fail on the sample")
                   for name in CLASS_NAMES}
        return AxiomReport(space.describe(), sampling_info, False,
                           semi.witnesses, classes, [])

    batch = sample_triples(space, spec)
    sampling_info["n_triples_used"] = len(batch)
    sampling_info["exhaustive"] = batch.exhaustive
    classes = {}

    metric_check = verify_b_metric(space, 1.0, batch)
    if metric_check.ok:
        classes["metric"] = ClassVerdict("holds", constants={"s": 1.0})
    else:
        classes["metric"] = ClassVerdict("fails", constants={"s": 1.0},
                                         witness=metric_check.worst)

    fit_b = fit_b_index(space, batch)
    classes["b_metric"] = _holds_or_fails(
        space, batch, fit_b, limits, {"s": fit_b.s},
        rhs_b_metric(batch.leg_a, batch.leg_b, limits.s_max))
    classes["b_metric"].detail["required_s"] = fit_b.s

    fit_sb = fit_strong_b_index(space, batch)
    classes["strong_b_metric"] = _holds_or_fails(
        space, batch, fit_sb, limits, {"s": fit_sb.s},
        rhs_strong_b_metric(batch.leg_a, batch.leg_b, limits.s_max))

    fit_supra = fit_suprametric_constants(space, batch, objective="min_c",
                                          s_fixed=1.0, c_max=limits.c_max)
    classes["suprametric"] = _holds_or_fails(
        space, batch, fit_supra, limits, {"s": 1.0, "c": fit_supra.c},
        rhs_b_supra(batch.leg_a, batch.leg_b, 1.0, limits.c_max))

    fit_bsupra = fit_suprametric_constants(space, batch, objective="lex",
                                           s_max=limits.s_max, c_max=limits.c_max)
    classes["b_suprametric"] = _holds_or_fails(
        space, batch, fit_bsupra, limits, {"s": fit_bsupra.s, "c": fit_bsupra.c},
        rhs_b_supra(batch.leg_a, batch.leg_b, limits.s_max, limits.c_max))

    fit_ssupra = fit_strong_suprametric_constants(space, batch, objective="lex",
                                                  s_max=limits.s_max,
                                                  c_max=limits.c_max)
    classes["strong_b_suprametric"] = _holds_or_fails(
        space, batch, fit_ssupra, limits, {"s": fit_ssupra.s, "c": fit_ssupra.c},
        rhs_strong_b_supra(batch.leg_a, batch.leg_b, limits.s_max, limits.c_max))

    grid = []
    best = None
    for alpha in limits.alpha_grid:
        fit_i = fit_interpolative_c(space, alpha, batch)
        grid.append({"alpha": alpha, "c": fit_i.c})
        if best is None or fit_i.c < best.c:
            best = fit_i
    if best.c <= limits.c_max and np.isfinite(best.c):
        verdict = ClassVerdict("holds", constants={"alpha": best.alpha, "c": best.c},
                               witness=best.extremal)
    else:
        worst = _extremal_at(space, batch,
                             rhs_interpolative(batch.leg_a, batch.leg_b,
                                               best.alpha, limits.c_max))
        verdict = ClassVerdict("fails", constants={"alpha": best.alpha, "c": best.c},
                               witness=worst,
                               note="no admissible c within configured bounds")
    verdict.detail["grid"] = grid
    classes["interpolative"] = verdict

    declared_out = []
    for name, constants in (declared or []):
        rep = VERIFIERS[name](space, batch, constants)
        declared_out.append({"class": name, "constants": dict(constants),
                             "ok": rep.ok,
                             "worst_slack": rep.worst.slack if rep.worst else None})

    check_lattice(classes)
    return AxiomReport(space.describe(), sampling_info, True, (), classes,
                       declared_out)


# ---------------------------------------------------------------------------
# falsification

@dataclass(frozen=True)
class Claim:
    kind: str
    params: tuple

    def text(self):
        if not self.params:
            return self.kind
        return self.kind + ":" + ",".join(f"{p:g}" for p in self.params)


_CLAIM_ARITY = {"b_metric": 1, "strong_b": 1, "supra": 2, "interpolative": 2,
                "symmetry": 0}


def parse_claim(text):
    name, _, rest = text.partition(":")
    if name not in _CLAIM_ARITY:
        raise ValueError(f"unknown claim {name!r}; expected one of "
                         f"{sorted(_CLAIM_ARITY)}")
    params = tuple(float(p) for p in rest.split(",")) if rest else ()
    if len(params) != _CLAIM_ARITY[name]:
        raise ValueError(f"claim {name!r} takes {_CLAIM_ARITY[name]} parameter(s)")
    if name in ("b_metric", "strong_b") and params[0] < 1.0:
        raise ValueError("claimed index s must be >= 1")
    if name == "supra" and (params[0] < 1.0 or params[1] < 0.0):
        raise ValueError("claimed constants need s >= 1, c >= 0")
    if name == "interpolative" and not (0.0 < params[0] < 1.0 and params[1] >= 0.0):
        raise ValueError("claimed constants need 0 < alpha < 1, c >= 0")
    return Claim(name, params)


def falsify(space, claim, spec=None):
    """Search for a witness refuting a universally quantified axiom claim.

    Combines the structured stress inputs (corners, midpoint triples) with
    seeded uniform sampling. Returns a witness or None; absence of a witness
    never proves the claim.
    """
    spec = spec or SampleSpec()
    if claim.kind == "symmetry":
        pairs = sample_pairs(space, spec)
        d_xy = np.atleast_1d(space.pairwise(pairs.xs, pairs.ys))
        d_yx = np.atleast_1d(space.pairwise(pairs.ys, pairs.xs))
        gap = np.abs(d_xy - d_yx) - RTOL * (1.0 + np.maximum(np.abs(d_xy),
                                                             np.abs(d_yx)))
        i = int(np.argmax(gap))
        if gap[i] <= 0:
            return None
        return PairWitness(space.point_native(pairs.xs[i]),
                           space.point_native(pairs.ys[i]),
                           float(d_xy[i]), float(d_yx[i]))

    batch = sample_triples(space, spec)
    if claim.kind == "b_metric":
        rhs = rhs_b_metric(batch.leg_a, batch.leg_b, *claim.params)
    elif claim.kind == "strong_b":
        rhs = rhs_strong_b_metric(batch.leg_a, batch.leg_b, *claim.params)
    elif claim.kind == "supra":
        rhs = rhs_b_supra(batch.leg_a, batch.leg_b, *claim.params)
    else:
        rhs = rhs_interpolative(batch.leg_a, batch.leg_b, *claim.params)
    report = _verify(space, batch, rhs)
    if report.ok:
        return None
    return report.worst
