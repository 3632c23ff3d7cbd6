"""Distance oracles: finite matrix-backed spaces and analytic formula-backed spaces.

An oracle evaluates a candidate generalized distance over pairs of points.
Finite spaces index into an n-by-n matrix; analytic spaces evaluate one of
the builtin formulas on points of a box in R^d. Evaluation never assumes the
semi-metric axioms hold -- that is what the axiom checkers are for -- but a
non-finite value is always an error.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import EvaluationError, SemimetricFileError, SpaceFormatError

# Relative tolerance used when validating symmetry / zero diagonals of files.
VALIDATE_RTOL = 1e-9


class FiniteSpace:
    """Distance oracle backed by an explicit n-by-n matrix."""

    kind = "finite"

    def __init__(self, matrix, labels=None, label="finite"):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise SpaceFormatError("distance matrix must be square")
        if matrix.shape[0] == 0:
            raise SpaceFormatError("distance matrix must be non-empty")
        if not np.isfinite(matrix).all():
            raise SpaceFormatError("distance matrix contains non-finite entries")
        self.matrix = matrix
        self.n = matrix.shape[0]
        if labels is None:
            labels = [str(i) for i in range(self.n)]
        if len(labels) != self.n:
            raise SpaceFormatError("label count does not match matrix size")
        self.labels = [str(x) for x in labels]
        self.label = label

    def pairwise(self, xs, ys):
        """Elementwise distances for broadcastable integer index arrays."""
        xs = np.asarray(xs, dtype=np.intp)
        ys = np.asarray(ys, dtype=np.intp)
        return self.matrix[xs, ys]

    def all_points(self):
        return np.arange(self.n, dtype=np.intp)

    def point_native(self, p):
        return int(np.asarray(p))

    def point_text(self, p):
        i = self.point_native(p)
        return self.labels[i]

    def describe(self):
        return {"label": self.label, "kind": "finite", "n": self.n}

    def scaled(self, lam, label=None):
        """Same space with every distance multiplied by lam > 0."""
        return FiniteSpace(lam * self.matrix, self.labels,
                           label or f"{self.label}*{lam:g}")


def _norm(xs, ys):
    return np.linalg.norm(np.asarray(xs, float) - np.asarray(ys, float), axis=-1)


def _d_euclidean(xs, ys):
    return _norm(xs, ys)


def _d_power(xs, ys, p):
    return _norm(xs, ys) ** p


def _d_exp_abs(xs, ys):
    r = _norm(xs, ys)
    return np.where(r == 0.0, 0.0, np.exp(r))


def _d_exp_signed(xs, ys):
    # Signed exponent: only meaningful on the line (d = 1). Not symmetric.
    diff = np.asarray(xs, float)[..., 0] - np.asarray(ys, float)[..., 0]
    return np.where(diff == 0.0, 0.0, np.exp(diff))


def _d_expm1(xs, ys):
    return np.expm1(_norm(xs, ys))


# name -> (fn, n_params, default_box)
FORMULAS = {
    "euclidean": (_d_euclidean, 0, (-1000.0, 1000.0)),
    "power": (_d_power, 1, (-1000.0, 1000.0)),
    "exp_abs": (_d_exp_abs, 0, (-20.0, 20.0)),
    "exp_signed": (_d_exp_signed, 0, (-20.0, 20.0)),
    "expm1": (_d_expm1, 0, (-20.0, 20.0)),
}


class AnalyticSpace:
    """Distance oracle backed by a builtin formula on a box in R^d."""

    kind = "analytic"

    def __init__(self, formula, params=(), box=None, dim=1, label=None):
        if formula not in FORMULAS:
            raise ValueError(f"unknown distance formula: {formula!r}")
        fn, n_params, default_box = FORMULAS[formula]
        params = tuple(float(p) for p in params)
        if len(params) != n_params:
            raise ValueError(
                f"formula {formula!r} takes {n_params} parameter(s), got {len(params)}")
        if formula == "exp_signed" and dim != 1:
            raise ValueError("exp_signed is defined on the line only (dim=1)")
        if box is None:
            box = default_box
        lo, hi = float(box[0]), float(box[1])
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError(f"invalid domain box: ({lo}, {hi})")
        self._fn = fn
        self.formula = formula
        self.params = params
        self.box = (lo, hi)
        self.dim = int(dim)
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if label is None:
            label = formula if not params else formula + ":" + ",".join(f"{p:g}" for p in params)
        self.label = label

    def pairwise(self, xs, ys):
        """Elementwise distances for broadcastable (..., d) coordinate arrays."""
        d = self._fn(np.asarray(xs, float), np.asarray(ys, float), *self.params)
        d = np.asarray(d, float)
        if not np.isfinite(d).all():
            bad = np.argwhere(~np.isfinite(np.atleast_1d(d)))[0]
            raise EvaluationError(
                f"non-finite distance under {self.label!r}",
                operands=(np.asarray(xs, float), np.asarray(ys, float), tuple(bad)))
        return d

    def contains(self, pts):
        pts = np.asarray(pts, float)
        lo, hi = self.box
        return np.all((pts >= lo) & (pts <= hi), axis=-1)

    def point_native(self, p):
        p = np.asarray(p, float)
        if self.dim == 1:
            return float(p.reshape(-1)[0])
        return tuple(float(v) for v in p.reshape(-1))

    def point_text(self, p):
        native = self.point_native(p)
        if isinstance(native, tuple):
            return "(" + ", ".join(f"{v:.17g}" for v in native) + ")"
        return f"{native:.17g}"

    def describe(self):
        return {
            "label": self.label,
            "kind": "analytic",
            "formula": self.formula,
            "params": list(self.params),
            "box": [self.box[0], self.box[1]],
            "dim": self.dim,
        }

    def with_box(self, box):
        return AnalyticSpace(self.formula, self.params, box, self.dim, self.label)


def finite_from_analytic(space, points, label=None):
    """Materialize an analytic space on an explicit point set as a FiniteSpace."""
    points = np.asarray(points, float)
    if points.ndim == 1:
        points = points[:, None]
    matrix = space.pairwise(points[:, None, :], points[None, :, :])
    labels = [space.point_text(p) for p in points]
    return FiniteSpace(matrix, labels, label or f"{space.label}@grid{len(points)}")


def validate_matrix(matrix, rtol=VALIDATE_RTOL):
    """Semi-metric validation witnesses for a square matrix.

    Returns a list of (kind, i, j, value, counter_value) tuples; empty when
    the matrix is symmetric with a zero diagonal and non-negative entries.
    """
    matrix = np.asarray(matrix, float)
    witnesses = []
    scale = rtol * (1.0 + np.abs(matrix))
    asym = np.abs(matrix - matrix.T) > np.maximum(scale, scale.T)
    for i, j in np.argwhere(np.triu(asym, 1)):
        witnesses.append(("symmetry", int(i), int(j),
                          float(matrix[i, j]), float(matrix[j, i])))
    diag = np.abs(np.diag(matrix)) > rtol
    for (i,) in np.argwhere(diag):
        witnesses.append(("diagonal", int(i), int(i), float(matrix[i, i]), 0.0))
    neg = matrix < -rtol * (1.0 + np.abs(matrix))
    for i, j in np.argwhere(neg):
        witnesses.append(("negative", int(i), int(j), float(matrix[i, j]), 0.0))
    return witnesses


def load_space(path, validate=True, label=None):
    """Load a finite space from a JSON document with `points` and `distances`.

    Structural problems (bad JSON, missing fields, non-square or non-numeric
    matrix) raise SpaceFormatError. With validate=True, asymmetric matrices,
    nonzero diagonals and negative entries raise SemimetricFileError carrying
    the witnesses; pass validate=False to load such files anyway (the axiom
    checkers will then flag them).
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpaceFormatError(f"cannot read space file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpaceFormatError(f"space file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "points" not in doc or "distances" not in doc:
        raise SpaceFormatError(
            f"space file {path!r} must be an object with 'points' and 'distances'")
    labels = doc["points"]
    if not isinstance(labels, list) or not labels:
        raise SpaceFormatError("'points' must be a non-empty array of labels")
    try:
        matrix = np.asarray(doc["distances"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise SpaceFormatError(f"'distances' is not a numeric matrix: {exc}") from exc
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise SpaceFormatError("'distances' must be a square matrix")
    if matrix.shape[0] != len(labels):
        raise SpaceFormatError("'points' length does not match 'distances' size")
    if not np.isfinite(matrix).all():
        raise SpaceFormatError("'distances' contains non-finite entries")
    if validate:
        witnesses = validate_matrix(matrix)
        if witnesses:
            kinds = sorted({w[0] for w in witnesses})
            raise SemimetricFileError(
                f"space file {path!r} fails semi-metric validation ({', '.join(kinds)})",
                witnesses)
    return FiniteSpace(matrix, labels, label or str(path))


def save_space(space, path):
    """Write a FiniteSpace to the JSON finite-space format."""
    doc = {"points": space.labels, "distances": space.matrix.tolist()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")
