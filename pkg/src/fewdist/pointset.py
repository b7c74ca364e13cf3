"""Finite point sets and their distance / inner-product class structure.

A point set carries raw coordinates; the profile operations partition the
n(n-1)/2 pair values (squared distances, or inner products for unit-norm
sets) into classes by single-linkage grouping at a declared tolerance, and
everything downstream consumes those classes.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    AmbiguousGroupingError,
    DimensionMismatchError,
    DuplicatePointError,
    NotAntipodalError,
    NotOnSphereError,
    ParameterError,
    PointFileError,
)

DEFAULT_TOL = 1e-9
DEFAULT_TOL_RANK = 1e-8

NAMED_CONSTRUCTIONS = (
    "cross_polytope",
    "simplex",
    "hypercube",
    "e8_roots",
    "pentagon",
    "icosahedron",
)


@dataclass(frozen=True)
class PointSet:
    """An ordered set of n >= 2 distinct points in R^dimension."""

    dimension: int
    points: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2:
            raise DimensionMismatchError("points must form a 2-d array")
        if pts.shape[0] < 2:
            raise ParameterError("a point set needs at least 2 points")
        if pts.shape[1] != self.dimension:
            raise DimensionMismatchError(
                f"points have {pts.shape[1]} coordinates, dimension says {self.dimension}"
            )
        if not np.all(np.isfinite(pts)):
            raise PointFileError("points must be finite")
        scale = max(1.0, float(np.max(np.abs(pts))))
        diffs = np.max(np.abs(pts[:, None, :] - pts[None, :, :]), axis=2)
        np.fill_diagonal(diffs, np.inf)
        if np.min(diffs) <= 1e-9 * scale:
            i, j = np.unravel_index(int(np.argmin(diffs)), diffs.shape)
            raise DuplicatePointError(f"points {i} and {j} coincide within tolerance")
        if self.labels is not None and len(self.labels) != pts.shape[0]:
            raise DimensionMismatchError("labels must match the number of points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def to_dict(self) -> dict:
        out = {"dimension": self.dimension, "points": [list(map(float, p)) for p in self.points]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


def load_points(source, fmt: str | None = None) -> PointSet:
    """Read a point set from a JSON or CSV file path, bytes, or stream.

    JSON files look like {"dimension": d, "points": [[...], ...]}; CSV files
    hold one point per row with no header. The format is inferred from a path
    suffix when not given.
    """
    text, inferred = _read_source(source)
    fmt = fmt or inferred
    if fmt is None:
        raise PointFileError("cannot infer format; pass fmt='json' or fmt='csv'")
    if fmt == "json":
        return _points_from_json(text)
    if fmt == "csv":
        return _points_from_csv(text)
    raise PointFileError(f"unknown point file format {fmt!r}")


def _read_source(source) -> tuple[str, str | None]:
    if isinstance(source, bytes):
        return source.decode("utf-8"), None
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return data, None
    path = os.fspath(source)
    suffix = os.path.splitext(path)[1].lower()
    inferred = {".json": "json", ".csv": "csv"}.get(suffix)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read(), inferred
    except OSError as exc:
        raise PointFileError(f"cannot read {path}: {exc}") from exc


def _points_from_json(text: str) -> PointSet:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PointFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "points" not in payload:
        raise PointFileError('point JSON must be an object with a "points" array')
    rows = payload["points"]
    if not isinstance(rows, list) or not rows:
        raise PointFileError('"points" must be a non-empty array')
    lengths = {len(r) for r in rows if isinstance(r, list)}
    if len(lengths) != 1 or any(not isinstance(r, list) for r in rows):
        raise DimensionMismatchError("every point must be an array of one shared length")
    dim = payload.get("dimension", lengths.pop() if lengths else 0)
    if not isinstance(dim, int):
        raise PointFileError('"dimension" must be an integer')
    labels = payload.get("labels")
    if labels is not None:
        labels = tuple(str(x) for x in labels)
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise PointFileError(f"non-numeric point coordinate: {exc}") from exc
    return PointSet(dimension=dim, points=arr, labels=labels)


def _points_from_csv(text: str) -> PointSet:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        try:
            rows.append([float(cell) for cell in row])
        except ValueError as exc:
            raise PointFileError(f"line {lineno}: non-numeric value ({exc})") from exc
    if not rows:
        raise PointFileError("CSV file holds no points")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DimensionMismatchError(f"CSV rows have mixed lengths {sorted(widths)}")
    arr = np.asarray(rows, dtype=float)
    return PointSet(dimension=arr.shape[1], points=arr)


def squared_distance_matrix(ps: PointSet) -> np.ndarray:
    g = ps.points @ ps.points.T
    sq = np.diag(g)
    d2 = sq[:, None] + sq[None, :] - 2.0 * g
    d2 = np.maximum(d2, 0.0)
    np.fill_diagonal(d2, 0.0)
    return (d2 + d2.T) / 2.0


def _cluster_sorted(values: np.ndarray, tol: float, relative: bool):
    """Single-linkage clusters of ascending values; adjacent values chain when
    their gap is below tol, and a gap below 10*tol between two clusters is an
    ambiguity error."""

    def gap(a: float, b: float) -> float:
        if relative:
            return (b - a) / max(abs(a), abs(b))
        return (b - a) / max(1.0, abs(a), abs(b))

    boundaries = [0]
    for idx in range(1, len(values)):
        if gap(values[idx - 1], values[idx]) > tol:
            boundaries.append(idx)
    boundaries.append(len(values))
    for pos in range(1, len(boundaries) - 1):
        left = values[boundaries[pos] - 1]
        right = values[boundaries[pos]]
        if gap(left, right) <= 10.0 * tol:
            raise AmbiguousGroupingError(
                f"values {float(left)!r} and {float(right)!r} are separated by less "
                "than 10x tol; no stable class split exists at this tolerance"
            )
    ids = np.empty(len(values), dtype=int)
    for cid in range(len(boundaries) - 1):
        ids[boundaries[cid]:boundaries[cid + 1]] = cid
    return ids, len(boundaries) - 1


def _group_pairs(matrix: np.ndarray, tol: float, relative: bool):
    n = matrix.shape[0]
    iu = np.triu_indices(n, 1)
    vals = matrix[iu]
    order = np.argsort(vals, kind="stable")
    ids_sorted, num = _cluster_sorted(vals[order], tol, relative)
    ids = np.empty(len(vals), dtype=int)
    ids[order] = ids_sorted
    reps, counts, adjacency = [], [], []
    for cid in range(num):
        mask = ids == cid
        reps.append(float(np.mean(vals[mask])))
        counts.append(int(np.count_nonzero(mask)))
        adj = np.zeros((n, n), dtype=np.int8)
        adj[iu[0][mask], iu[1][mask]] = 1
        adj[iu[1][mask], iu[0][mask]] = 1
        adjacency.append(adj)
    return reps, counts, adjacency


@dataclass(frozen=True)
class DistanceProfile:
    """Classes of squared pair distances: an s-distance structure."""

    s: int
    squared_distances: tuple[float, ...]
    pair_counts: tuple[int, ...]
    adjacency: tuple[np.ndarray, ...]
    tol: float

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "squared_distances": list(self.squared_distances),
            "pair_counts": list(self.pair_counts),
        }


def distance_profile(ps: PointSet, tol: float = DEFAULT_TOL) -> DistanceProfile:
    """Group all pair squared distances into classes at relative tolerance tol."""
    reps, counts, adjacency = _group_pairs(squared_distance_matrix(ps), tol, relative=True)
    return DistanceProfile(
        s=len(reps),
        squared_distances=tuple(reps),
        pair_counts=tuple(counts),
        adjacency=tuple(adjacency),
        tol=tol,
    )


@dataclass(frozen=True)
class InnerProductProfile:
    """Classes of pair inner products for a unit-norm point set."""

    s: int
    inner_products: tuple[float, ...]
    pair_counts: tuple[int, ...]
    adjacency: tuple[np.ndarray, ...]
    contains_minus_one: bool
    antipodal: bool
    tol: float

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "inner_products": list(self.inner_products),
            "pair_counts": list(self.pair_counts),
            "contains_minus_one": self.contains_minus_one,
            "antipodal": self.antipodal,
        }


def on_unit_sphere(ps: PointSet, tol: float = DEFAULT_TOL) -> bool:
    norms = np.linalg.norm(ps.points, axis=1)
    return bool(np.max(np.abs(norms - 1.0)) <= max(tol, 1e-12))


def inner_product_profile(ps: PointSet, tol: float = DEFAULT_TOL) -> InnerProductProfile:
    """Group pair inner products of a unit-norm set into classes.

    Inner products straddle 0, so grouping uses |a-b| <= tol * max(1,|a|,|b|)
    rather than a purely relative gap.
    """
    if not on_unit_sphere(ps, tol):
        worst = float(np.max(np.abs(np.linalg.norm(ps.points, axis=1) - 1.0)))
        raise NotOnSphereError(f"points deviate from unit norm by {worst:.3e}")
    gram = ps.points @ ps.points.T
    reps, counts, adjacency = _group_pairs(gram, tol, relative=False)
    antipodal, _ = is_antipodal(ps, tol)
    contains_minus_one = bool(abs(reps[0] + 1.0) <= 10.0 * max(tol, 1e-12))
    if reps[-1] >= 1.0 - 1e-12:
        raise DuplicatePointError("an inner product class sits at 1; duplicate points")
    return InnerProductProfile(
        s=len(reps),
        inner_products=tuple(reps),
        pair_counts=tuple(counts),
        adjacency=tuple(adjacency),
        contains_minus_one=contains_minus_one,
        antipodal=antipodal,
        tol=tol,
    )


def is_antipodal(ps: PointSet, tol: float = DEFAULT_TOL):
    """Whether -x is in the set for every x; returns (flag, pairing array)."""
    pts = ps.points
    scale = max(1.0, float(np.max(np.abs(pts))))
    atol = max(tol, 1e-12) * scale
    sums = np.max(np.abs(pts[:, None, :] + pts[None, :, :]), axis=2)
    partner = np.argmin(sums, axis=1)
    best = sums[np.arange(ps.n), partner]
    if np.any(best > atol):
        return False, None
    if np.any(partner == np.arange(ps.n)) or np.any(partner[partner] != np.arange(ps.n)):
        return False, None
    return True, partner


def half_set(ps: PointSet, tol: float = DEFAULT_TOL) -> PointSet:
    """One representative per antipodal pair: the lexicographically larger point."""
    ok, partner = is_antipodal(ps, tol)
    if not ok:
        raise NotAntipodalError("point set is not antipodal within tolerance")
    keep = [i for i, j in enumerate(partner) if tuple(ps.points[i]) > tuple(ps.points[j])]
    labels = tuple(ps.labels[i] for i in keep) if ps.labels is not None else None
    return PointSet(dimension=ps.dimension, points=ps.points[keep], labels=labels)


@dataclass(frozen=True)
class AntipodalStructure:
    """Half set plus the |beta| inner-product classes it realizes.

    For s odd, beta_abs lists the (s-1)/2 positive values; for s even it
    starts with an exact 0.0 followed by the s/2 - 1 positive values.
    """

    half: PointSet
    s: int
    parity: str
    beta_abs: tuple[float, ...]

    @property
    def class_count(self) -> int:
        return len(self.beta_abs)


def antipodal_structure(ps: PointSet, tol: float = DEFAULT_TOL) -> AntipodalStructure:
    """Validate antipodal class structure and extract the |beta| values."""
    profile = inner_product_profile(ps, tol)
    if not profile.antipodal or not profile.contains_minus_one:
        raise NotAntipodalError("set is not antipodal with -1 among its inner products")
    atol = 10.0 * max(tol, 1e-12)
    rest = [b for b in profile.inner_products if abs(b + 1.0) > atol]
    zeros = [b for b in rest if abs(b) <= atol]
    positives = sorted(b for b in rest if b > atol)
    negatives = sorted(-b for b in rest if b < -atol)
    if len(zeros) > 1:
        raise AmbiguousGroupingError("several inner product classes sit at 0")
    if len(positives) != len(negatives) or any(
        abs(p - q) > atol for p, q in zip(positives, negatives)
    ):
        raise NotAntipodalError("inner product classes are not symmetric under negation")
    s = profile.s
    if zeros:
        if s % 2 != 0:
            raise NotAntipodalError(f"zero class present but s={s} is odd")
        beta_abs = (0.0, *positives)
        parity = "even"
    else:
        if s % 2 != 1:
            raise NotAntipodalError(f"no zero class but s={s} is even")
        beta_abs = tuple(positives)
        parity = "odd"
    return AntipodalStructure(half=half_set(ps, tol), s=s, parity=parity, beta_abs=beta_abs)


def affine_dimension(ps: PointSet, tol_rank: float = DEFAULT_TOL_RANK) -> int:
    """Rank of the centered coordinate matrix: dimension of the affine hull."""
    centered = ps.points - np.mean(ps.points, axis=0)
    return _rank(centered, tol_rank)


def linear_dimension(ps: PointSet, tol_rank: float = DEFAULT_TOL_RANK) -> int:
    """Rank of the coordinate matrix: dimension of the linear span."""
    return _rank(ps.points, tol_rank)


def _rank(matrix: np.ndarray, tol_rank: float) -> int:
    sv = np.linalg.svd(matrix, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > max(tol_rank, 1e-12) * sv[0] * max(matrix.shape)))


def construct_johnson(d: int, s: int) -> PointSet:
    """All binary vectors of length d+1 with exactly s ones.

    The C(d+1, s) points span an s-distance set lying in a d-dimensional
    affine flat; squared distances are 2, 4, ..., 2s.
    """
    if s < 1 or 2 * s > d + 1:
        raise ParameterError(f"johnson family needs 1 <= s <= (d+1)/2, got d={d}, s={s}")
    rows = []
    for support in itertools.combinations(range(d + 1), s):
        row = [0.0] * (d + 1)
        for idx in support:
            row[idx] = 1.0
        rows.append(row)
    return PointSet(dimension=d + 1, points=np.asarray(rows))


def construct_named(name: str, d: int | None = None) -> PointSet:
    """Named reference configurations, unit-norm where the name implies a sphere."""
    if name == "cross_polytope":
        d = _require_d(name, d, minimum=1)
        eye = np.eye(d)
        return PointSet(dimension=d, points=np.vstack([eye, -eye]))
    if name == "simplex":
        d = _require_d(name, d, minimum=1)
        eye = np.eye(d + 1)
        centered = eye - np.full((d + 1, d + 1), 1.0 / (d + 1))
        pts = centered / np.linalg.norm(centered, axis=1, keepdims=True)
        return PointSet(dimension=d + 1, points=pts)
    if name == "hypercube":
        d = _require_d(name, d, minimum=1)
        if d > 16:
            raise ParameterError("hypercube construction capped at d = 16 (2^d points)")
        corners = np.array(list(itertools.product((-1.0, 1.0), repeat=d)))
        return PointSet(dimension=d, points=corners / math.sqrt(d))
    if name == "e8_roots":
        return _e8_roots()
    if name == "pentagon":
        angles = 2.0 * math.pi * np.arange(5) / 5.0
        return PointSet(dimension=2, points=np.column_stack([np.cos(angles), np.sin(angles)]))
    if name == "icosahedron":
        return _icosahedron()
    raise ParameterError(f"unknown construction {name!r}; choose from {NAMED_CONSTRUCTIONS}")


def _require_d(name: str, d: int | None, minimum: int) -> int:
    if d is None:
        raise ParameterError(f"construction {name!r} needs a dimension d")
    if d < minimum:
        raise ParameterError(f"construction {name!r} needs d >= {minimum}, got {d}")
    return d


def _e8_roots() -> PointSet:
    # 112 integer roots (two nonzero entries +-1) plus 128 half-integer roots
    # (+-1/2 everywhere, an even number of minus signs); every root has norm
    # sqrt(2), so dividing by sqrt(2) puts all 240 on the unit sphere.
    rows = []
    for i, j in itertools.combinations(range(8), 2):
        for si, sj in itertools.product((1.0, -1.0), repeat=2):
            row = [0.0] * 8
            row[i], row[j] = si, sj
            rows.append(tuple(row))
    for signs in itertools.product((1.0, -1.0), repeat=8):
        if sum(1 for x in signs if x < 0) % 2 == 0:
            rows.append(tuple(0.5 * x for x in signs))
    rows.sort()
    return PointSet(dimension=8, points=np.asarray(rows) / math.sqrt(2.0))


def _icosahedron() -> PointSet:
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    scale = 1.0 / math.sqrt(1.0 + phi * phi)
    rows = []
    for a, b in itertools.product((1.0, -1.0), repeat=2):
        rows.append((0.0, a * scale, b * phi * scale))
        rows.append((a * scale, b * phi * scale, 0.0))
        rows.append((a * phi * scale, 0.0, b * scale))
    rows.sort()
    return PointSet(dimension=3, points=np.asarray(rows))
