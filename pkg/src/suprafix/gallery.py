"""Curated spaces and maps with known ground truth.

Each item bundles a distance oracle with its expected classification (and,
when it makes sense, a self-map, a comparison function and the known fixed
point), so every theorem-test in the suite has a fixture whose properties are
established independently:

  euclidean_line   |x - y|            metric; the reference point of the lattice
  power_square     |x - y|^2          b-metric with index 2, not a metric
  exp_abs          e^|x-y| (x != y)   suprametric (1, 1); triangle ratios grow
                                      like e^(t/2)/2 along midpoint triples, so
                                      no finite b-index survives a growing box
  exp_signed       e^(x-y) (x != y)   kept verbatim as written; asymmetric, so
                                      the semi-metric check must flag it
  supra_expm1      e^|x-y| - 1        suprametric (1, 1) via the identity
                                      e^(a+b)-1 = A + B + A*B; with T = x/2 the
                                      halved distance equals sqrt(1+d)-1 exactly
  halving_euclid   |x - y|            metric with T = x/2, theta = linear(0.5)
  doubling_euclid  |x - y|            metric with T = 2x; diverging control

The random generator produces finite spaces feasible-by-construction for a
target class: entries are drawn symmetric with a zero diagonal and then
relaxed by repeated min-with-rhs passes (a Floyd-Warshall-style sweep with the
class right-hand side) until every ordered triple satisfies the inequality
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import axioms
from .comparison import ComparisonFn, Linear, SqrtShift
from .errors import SupraError
from .picard import AffineMap
from .spaces import AnalyticSpace, FiniteSpace, finite_from_analytic, save_space


@dataclass
class GalleryItem:
    name: str
    oracle: object
    expected: list = field(default_factory=list)  # (class_name, constants)
    tmap: object = None
    theta: ComparisonFn | None = None
    fixed_point: float | None = None
    continuity: str = ""
    note: str = ""

    def summary(self):
        return {
            "name": self.name,
            "oracle": self.oracle.describe(),
            "expected": [{"class": c, "constants": dict(k)} for c, k in self.expected],
            "map": self.tmap.describe() if self.tmap is not None else None,
            "theta": self.theta.describe() if self.theta is not None else None,
            "fixed_point": self.fixed_point,
            "continuity": self.continuity,
            "note": self.note,
        }


def _euclidean_line():
    return GalleryItem(
        name="euclidean_line",
        oracle=AnalyticSpace("euclidean", box=(-1000.0, 1000.0), label="euclidean_line"),
        expected=[("metric", {"s": 1.0})],
        continuity="jointly continuous",
        note="absolute difference on the line; every class holds at the least constants")


def _power_square():
    return GalleryItem(
        name="power_square",
        oracle=AnalyticSpace("power", (2.0,), box=(-1000.0, 1000.0), label="power_square"),
        expected=[("b_metric", {"s": 2.0})],
        continuity="jointly continuous",
        note="squared distance; triangle fails but doubles back with index 2")


def _exp_abs():
    return GalleryItem(
        name="exp_abs",
        oracle=AnalyticSpace("exp_abs", box=(-20.0, 20.0), label="exp_abs"),
        expected=[("suprametric", {"s": 1.0, "c": 1.0})],
        continuity="distance discontinuous at coincident points (no converging sequences)",
        note="symmetric exponential distance; witnesses against any fixed b-index "
             "sit on midpoint triples")


def _exp_signed():
    return GalleryItem(
        name="exp_signed",
        oracle=AnalyticSpace("exp_signed", box=(-20.0, 20.0), label="exp_signed"),
        expected=[],
        continuity="not applicable (asymmetric)",
        note="signed exponential kept verbatim; asymmetric, shipped to demonstrate "
             "the symmetry check rather than silently repairing it")


def _supra_expm1():
    # Narrow box: certificate slacks are exact identities, so the working
    # scale stays where rounding is far below the reporting tolerance.
    return GalleryItem(
        name="supra_expm1",
        oracle=AnalyticSpace("expm1", box=(-5.0, 5.0), label="supra_expm1"),
        expected=[("suprametric", {"s": 1.0, "c": 1.0})],
        tmap=AffineMap(0.5),
        theta=SqrtShift(),
        fixed_point=0.0,
        continuity="distance separately continuous",
        note="exp minus one distance; halving the point exactly takes d to "
             "sqrt(1+d)-1, making the contraction certificate tight")


def _halving_euclid():
    return GalleryItem(
        name="halving_euclid",
        oracle=AnalyticSpace("euclidean", box=(-1000.0, 1000.0), label="halving_euclid"),
        expected=[("metric", {"s": 1.0})],
        tmap=AffineMap(0.5),
        theta=Linear(0.5),
        fixed_point=0.0,
        continuity="jointly continuous",
        note="textbook contraction on the line")


def _doubling_euclid():
    return GalleryItem(
        name="doubling_euclid",
        oracle=AnalyticSpace("euclidean", box=(-1000.0, 1000.0), label="doubling_euclid"),
        expected=[("metric", {"s": 1.0})],
        tmap=AffineMap(2.0),
        theta=None,
        fixed_point=None,
        continuity="jointly continuous",
        note="expanding negative control: orbits grow and escape the box")


_BUILDERS = {
    "euclidean_line": _euclidean_line,
    "power_square": _power_square,
    "exp_abs": _exp_abs,
    "exp_signed": _exp_signed,
    "supra_expm1": _supra_expm1,
    "halving_euclid": _halving_euclid,
    "doubling_euclid": _doubling_euclid,
}

GALLERY_NAMES = tuple(sorted(_BUILDERS))


def list_gallery():
    """Catalog of all items with their expected properties."""
    return [load_gallery(name).summary() for name in GALLERY_NAMES]


def load_gallery(name):
    if name not in _BUILDERS:
        raise KeyError(f"unknown gallery item {name!r}; known: {', '.join(GALLERY_NAMES)}")
    return _BUILDERS[name]()


def export_finite(item, n_grid, path):
    """Export a gallery item (or oracle) to the finite-space file format,
    sampled on an n_grid-point grid over its box."""
    oracle = item.oracle if isinstance(item, GalleryItem) else item
    if oracle.kind == "finite":
        save_space(oracle, path)
        return oracle
    if oracle.dim != 1:
        raise ValueError("grid export supports 1-d analytic spaces")
    lo, hi = oracle.box
    grid = np.linspace(lo, hi, int(n_grid))
    finite = finite_from_analytic(oracle, grid, label=f"{oracle.label}@{n_grid}")
    save_space(finite, path)
    return finite


# ---------------------------------------------------------------------------
# random feasible finite spaces

_TIGHTEN_MAX_PASSES = 1000


def _tighten(matrix, rhs_fn):
    """Relax entries downward until d(x,y) <= rhs(d(x,z), d(z,y)) for every
    ordered triple, exactly in float arithmetic."""
    d = matrix.copy()
    for _ in range(_TIGHTEN_MAX_PASSES):
        a = d[:, None, :]        # d(x, z) over (x, y, z)
        b = d.T[None, :, :]      # d(z, y) over (x, y, z)
        candidate = rhs_fn(a, b).min(axis=2)
        new = np.minimum(d, np.minimum(candidate, candidate.T))
        if np.array_equal(new, d):
            return d
        d = new
    raise SupraError("feasibility tightening did not stabilize")


def random_feasible_space(n, kind, params, seed, entry_range=(0.5, 2.0), label=None):
    """Random symmetric zero-diagonal space made feasible for a target class.

    kind/params: "metric" (), "b_metric" (s,), "supra" (s, c),
    "interpolative" (alpha, c). Entries are drawn uniformly from entry_range
    (strictly positive, so the identity of indiscernibles survives the
    relaxation passes) and tightened with the class right-hand side.
    """
    if n < 2:
        raise ValueError("need at least two points")
    lo, hi = entry_range
    if lo <= 0 or hi <= lo:
        raise ValueError("entry_range must satisfy 0 < lo < hi")
    rng = np.random.default_rng([int(seed), 97])
    raw = rng.uniform(lo, hi, size=(n, n))
    mat = np.triu(raw, 1)
    mat = mat + mat.T

    if kind == "metric":
        rhs_fn = lambda a, b: axioms.rhs_b_metric(a, b, 1.0)
    elif kind == "b_metric":
        (s,) = params
        rhs_fn = lambda a, b: axioms.rhs_b_metric(a, b, float(s))
    elif kind == "supra":
        s, c = params
        rhs_fn = lambda a, b: axioms.rhs_b_supra(a, b, float(s), float(c))
    elif kind == "interpolative":
        alpha, c = params
        rhs_fn = lambda a, b: axioms.rhs_interpolative(a, b, float(alpha), float(c))
    else:
        raise ValueError(f"unknown target class {kind!r}")

    tightened = _tighten(mat, rhs_fn)
    name = label or f"random_{kind}_{n}_seed{seed}"
    return FiniteSpace(tightened, label=name)
