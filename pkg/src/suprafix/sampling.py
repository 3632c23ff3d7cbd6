"""Seeded, reproducible point/pair/triple sampling for axiom checks.

Finite spaces are enumerated exhaustively (all n^3 ordered triples, in
lexicographic order) whenever n is at or below the exhaustive cap; larger
finite spaces and all analytic spaces are sampled. Analytic sampling mixes
uniform draws from the domain box with deterministic stress inputs: box
corners, the center, and midpoint triples (x, (x+y)/2, y), which exercise the
near-tight region of triangle-type inequalities.

Every stream uses its own child generator of the spec seed, so enlarging a
sample keeps the smaller sample as a prefix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSampleError

# Child-stream tags; fixed so that each purpose has an independent,
# prefix-stable substream of the user seed.
_STREAM_POINTS = 1
_STREAM_PAIRS = 2
_STREAM_TRIPLES = 3
_STREAM_MIDPOINTS = 4
_STREAM_FALSIFY = 5

_MAX_STRESS_CORNERS = 8


@dataclass(frozen=True)
class SampleSpec:
    """How much to sample and with which seed.

    n_triples / n_pairs / n_points bound the *uniform* part of each batch;
    deterministic stress inputs come on top. Finite spaces with at most
    exhaustive_cap points ignore the counts and enumerate everything.
    """

    seed: int = 0
    n_points: int = 2048
    n_pairs: int = 4096
    n_triples: int = 4096
    exhaustive_cap: int = 64
    include_stress: bool = True

    def rng(self, stream):
        return np.random.default_rng([int(self.seed), int(stream)])


@dataclass
class TripleBatch:
    """Ordered triples (x, z, y) with their three distances precomputed."""

    xs: np.ndarray
    zs: np.ndarray
    ys: np.ndarray
    lhs: np.ndarray    # d(x, y)
    leg_a: np.ndarray  # d(x, z)
    leg_b: np.ndarray  # d(z, y)
    exhaustive: bool

    def __len__(self):
        return int(self.lhs.shape[0])

    def triple_points(self, i):
        return self.xs[i], self.zs[i], self.ys[i]


@dataclass
class PairBatch:
    xs: np.ndarray
    ys: np.ndarray

    def __len__(self):
        return int(np.asarray(self.xs).shape[0])


def stress_points(box, dim):
    """Corners (capped) and center of the box, as an (m, dim) array."""
    lo, hi = box
    if dim == 1:
        pts = np.array([[lo], [hi], [(lo + hi) / 2.0]])
        return pts
    # First corners in binary-counter order, capped for high dimension.
    n_corners = min(2 ** dim, _MAX_STRESS_CORNERS)
    corners = np.empty((n_corners, dim))
    for i in range(n_corners):
        bits = (i >> np.arange(dim)) & 1
        corners[i] = np.where(bits, hi, lo)
    center = np.full((1, dim), (lo + hi) / 2.0)
    return np.vstack([corners, center])


def _uniform_points(space, rng, count):
    lo, hi = space.box
    return rng.uniform(lo, hi, size=(count, space.dim))


def _uniform_tuples(space, rng, count, arity):
    # One row per tuple, so a longer draw extends a shorter one row-for-row.
    lo, hi = space.box
    return rng.uniform(lo, hi, size=(count, arity, space.dim))


def sample_points(space, spec: SampleSpec):
    """Point sample used by the semi-metric checks."""
    if space.kind == "finite":
        if space.n <= spec.exhaustive_cap:
            return space.all_points()
        rng = spec.rng(_STREAM_POINTS)
        return rng.integers(0, space.n, size=spec.n_points).astype(np.intp)
    parts = []
    if spec.include_stress:
        parts.append(stress_points(space.box, space.dim))
    parts.append(_uniform_points(space, spec.rng(_STREAM_POINTS), spec.n_points))
    return np.vstack(parts)


def sample_pairs(space, spec: SampleSpec):
    """Ordered pairs; stress pairs first so witnesses land on clean inputs."""
    if space.kind == "finite":
        if space.n <= spec.exhaustive_cap:
            i, j = np.meshgrid(space.all_points(), space.all_points(), indexing="ij")
            return PairBatch(i.ravel(), j.ravel())
        rng = spec.rng(_STREAM_PAIRS)
        idx = rng.integers(0, space.n, size=(spec.n_pairs, 2)).astype(np.intp)
        return PairBatch(idx[:, 0], idx[:, 1])
    parts_x, parts_y = [], []
    if spec.include_stress:
        s = stress_points(space.box, space.dim)
        gx, gy = np.meshgrid(np.arange(len(s)), np.arange(len(s)), indexing="ij")
        parts_x.append(s[gx.ravel()])
        parts_y.append(s[gy.ravel()])
    u = _uniform_tuples(space, spec.rng(_STREAM_PAIRS), spec.n_pairs, 2)
    parts_x.append(u[:, 0])
    parts_y.append(u[:, 1])
    return PairBatch(np.vstack(parts_x), np.vstack(parts_y))


def _finite_triples(space, spec):
    n = space.n
    if n <= spec.exhaustive_cap:
        idx = np.arange(n * n * n, dtype=np.intp)
        xs = idx // (n * n)
        zs = (idx // n) % n
        ys = idx % n
        exhaustive = True
    else:
        rng = spec.rng(_STREAM_TRIPLES)
        idx = rng.integers(0, n, size=(spec.n_triples, 3)).astype(np.intp)
        xs, zs, ys = idx[:, 0], idx[:, 1], idx[:, 2]
        exhaustive = False
    return xs, zs, ys, exhaustive


def _analytic_triples(space, spec):
    xs_parts, zs_parts, ys_parts = [], [], []
    if spec.include_stress:
        s = stress_points(space.box, space.dim)
        m = len(s)
        gi, gj, gk = np.meshgrid(np.arange(m), np.arange(m), np.arange(m),
                                 indexing="ij")
        xs_parts.append(s[gi.ravel()])
        zs_parts.append(s[gj.ravel()])
        ys_parts.append(s[gk.ravel()])
        # Midpoint family: z halfway between a random pair.
        k = max(16, spec.n_triples // 4)
        u = _uniform_tuples(space, spec.rng(_STREAM_MIDPOINTS), k, 2)
        mx, my = u[:, 0], u[:, 1]
        xs_parts.append(mx)
        zs_parts.append((mx + my) / 2.0)
        ys_parts.append(my)
    u = _uniform_tuples(space, spec.rng(_STREAM_TRIPLES), spec.n_triples, 3)
    xs_parts.append(u[:, 0])
    zs_parts.append(u[:, 1])
    ys_parts.append(u[:, 2])
    return (np.vstack(xs_parts), np.vstack(zs_parts), np.vstack(ys_parts), False)


def sample_triples(space, spec: SampleSpec):
    """Triple batch with all three distances evaluated."""
    if space.kind == "finite":
        xs, zs, ys, exhaustive = _finite_triples(space, spec)
    else:
        xs, zs, ys, exhaustive = _analytic_triples(space, spec)
    if len(np.atleast_1d(xs)) == 0:
        raise DegenerateSampleError("empty triple sample")
    lhs = space.pairwise(xs, ys)
    leg_a = space.pairwise(xs, zs)
    leg_b = space.pairwise(zs, ys)
    return TripleBatch(xs, zs, ys, np.asarray(lhs, float),
                       np.asarray(leg_a, float), np.asarray(leg_b, float),
                       exhaustive)


def falsify_rng(spec: SampleSpec):
    return spec.rng(_STREAM_FALSIFY)
