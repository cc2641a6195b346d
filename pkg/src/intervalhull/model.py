"""Domain types, validation and the JSON instance format.

Extended scalars are plain Python floats; ``-inf``/``inf`` stand for the two
symbolic infinities and NaN is rejected everywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .errors import InstanceError

INF = math.inf


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances.

    ``eps_dedup`` is relative: it is multiplied by the coordinate scale of the
    data it is applied to (see :func:`coordinate_scale`). ``eps_geom`` and
    ``eps_feas`` are used as-is against scale-normalised quantities.
    """

    eps_dedup: float = 1e-9
    eps_geom: float = 1e-9
    eps_feas: float = 1e-10

    def __post_init__(self):
        for name in ("eps_dedup", "eps_geom", "eps_feas"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise InstanceError(f"{name} must be a positive finite number, got {value!r}")


DEFAULT_TOL = Tolerances()


def coordinate_scale(points) -> float:
    """Magnitude used to turn relative tolerances into absolute ones."""
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(arr))))


def _scalar(value, what: str) -> float:
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity", "+infinity"):
            return INF
        if text in ("-inf", "-infinity"):
            return -INF
        raise InstanceError(f"{what}: unrecognised string {value!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceError(f"{what}: expected a number, got {value!r}")
    out = float(value)
    if math.isnan(out):
        raise InstanceError(f"{what}: NaN is not allowed")
    return out


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with possibly infinite endpoints."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise InstanceError("interval endpoints must not be NaN")
        if lo > hi:
            raise InstanceError(f"interval has lo > hi: [{lo}, {hi}]")
        if lo == hi and math.isinf(lo):
            raise InstanceError(f"degenerate infinite interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, t: float) -> bool:
        return self.lo <= t <= self.hi

    def __add__(self, other: Interval) -> Interval:
        # lo never holds +inf and hi never holds -inf, so no inf - inf here
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def affine(self, shift: float, scale: float) -> Interval:
        """Image under ``t -> shift + scale * t``; endpoints swap when scale < 0."""
        if scale == 0:
            return Interval(shift, shift)
        lo, hi = shift + scale * self.lo, shift + scale * self.hi
        return Interval(min(lo, hi), max(lo, hi))

    def to_json(self) -> list:
        return [_encode_scalar(self.lo), _encode_scalar(self.hi)]


def _encode_scalar(x: float):
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return x


@dataclass(frozen=True)
class IntervalFamily:
    """Ordered family of closed intervals with derived sums."""

    intervals: tuple[Interval, ...]

    def __post_init__(self):
        items = tuple(iv if isinstance(iv, Interval) else Interval(*iv) for iv in self.intervals)
        if not items:
            raise InstanceError("an interval family needs at least one interval")
        object.__setattr__(self, "intervals", items)

    @classmethod
    def of(cls, pairs: Iterable[Sequence[float]]) -> IntervalFamily:
        return cls(tuple(Interval(float(lo), float(hi)) for lo, hi in pairs))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, k: int) -> Interval:
        return self.intervals[k]

    @cached_property
    def lo(self) -> np.ndarray:
        arr = np.array([iv.lo for iv in self.intervals])
        arr.flags.writeable = False
        return arr

    @cached_property
    def hi(self) -> np.ndarray:
        arr = np.array([iv.hi for iv in self.intervals])
        arr.flags.writeable = False
        return arr

    @cached_property
    def alpha(self) -> float:
        return math.fsum(self.lo)

    @cached_property
    def beta(self) -> float:
        return math.fsum(self.hi)

    @cached_property
    def widths(self) -> np.ndarray:
        arr = self.hi - self.lo
        arr.flags.writeable = False
        return arr

    @property
    def is_finite(self) -> bool:
        return all(iv.is_bounded for iv in self.intervals)

    def scale(self) -> float:
        """Largest finite endpoint magnitude, at least 1."""
        finite = [abs(x) for iv in self.intervals for x in (iv.lo, iv.hi) if math.isfinite(x)]
        return max([1.0, *finite])

    def to_json(self) -> list:
        return [iv.to_json() for iv in self.intervals]


@dataclass(frozen=True, eq=False)
class PointSet:
    """Ordered, pairwise distinct points sharing one dimension."""

    coords: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        try:
            arr = np.array(self.coords, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InstanceError(f"points must form a rectangular numeric array: {exc}") from None
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InstanceError("points must be a non-empty list of equal-length coordinate lists")
        if not np.all(np.isfinite(arr)):
            raise InstanceError("point coordinates must be finite")
        eps = self.tol.eps_dedup * coordinate_scale(arr)
        for j, k in _close_pairs(arr, eps):
            raise InstanceError(f"duplicate points: x_{j + 1} and x_{k + 1} coincide")
        arr.flags.writeable = False
        object.__setattr__(self, "coords", arr)

    @property
    def m(self) -> int:
        return self.coords.shape[0]

    @property
    def d(self) -> int:
        return self.coords.shape[1]

    def __len__(self) -> int:
        return self.m

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.coords.shape == other.coords.shape and bool(np.all(self.coords == other.coords))

    def __hash__(self):
        return hash(self.coords.tobytes())


def _close_pairs(arr: np.ndarray, eps: float):
    if arr.shape[0] < 2:
        return []
    from scipy.spatial import cKDTree

    pairs = cKDTree(arr).query_pairs(eps, p=np.inf)
    return sorted(pairs)


@dataclass(frozen=True, eq=False)
class Instance:
    """A point set paired positionally with an interval family."""

    points: PointSet
    family: IntervalFamily
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.points, PointSet):
            object.__setattr__(self, "points", PointSet(self.points))
        if not isinstance(self.family, IntervalFamily):
            object.__setattr__(self, "family", IntervalFamily(tuple(self.family)))
        if len(self.points) != len(self.family):
            raise InstanceError(
                f"{len(self.points)} points but {len(self.family)} intervals"
            )
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(self.points):
                raise InstanceError("labels must have one entry per point")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def build(cls, points, intervals, labels=None, tol: Tolerances = DEFAULT_TOL) -> Instance:
        return cls(PointSet(points, tol), IntervalFamily.of(intervals), labels)

    @property
    def m(self) -> int:
        return self.points.m

    @property
    def d(self) -> int:
        return self.points.d

    @property
    def coords(self) -> np.ndarray:
        return self.points.coords

    def with_family(self, family: IntervalFamily) -> Instance:
        return Instance(self.points, family, self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.points == other.points
            and self.family == other.family
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.points, self.family, self.labels))

    def to_dict(self) -> dict:
        out = {
            "points": self.coords.tolist(),
            "intervals": self.family.to_json(),
        }
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


def instance_from_dict(doc, tol: Tolerances = DEFAULT_TOL) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a JSON object")
    missing = {"points", "intervals"} - doc.keys()
    if missing:
        raise InstanceError(f"instance document lacks {sorted(missing)}")
    raw_points, raw_intervals = doc["points"], doc["intervals"]
    if not isinstance(raw_points, list) or not all(isinstance(p, list) for p in raw_points):
        raise InstanceError("'points' must be a list of coordinate lists")
    dims = {len(p) for p in raw_points}
    if len(dims) > 1:
        raise InstanceError(f"dimension mismatch among points: {sorted(dims)}")
    points = [[_scalar(c, f"points[{i}]") for c in p] for i, p in enumerate(raw_points)]
    for i, p in enumerate(points):
        if not all(math.isfinite(c) for c in p):
            raise InstanceError(f"points[{i}] has a non-finite coordinate")
    if not isinstance(raw_intervals, list):
        raise InstanceError("'intervals' must be a list of [lo, hi] pairs")
    intervals = []
    for i, pair in enumerate(raw_intervals):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InstanceError(f"intervals[{i}] must be a [lo, hi] pair")
        intervals.append(Interval(_scalar(pair[0], f"intervals[{i}]"), _scalar(pair[1], f"intervals[{i}]")))
    labels = doc.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise InstanceError("'labels' must be a list of strings")
    return Instance(PointSet(points, tol), IntervalFamily(tuple(intervals)), labels)


def parse_instance(text: str, tol: Tolerances = DEFAULT_TOL) -> Instance:
    """Parse and validate an instance JSON document."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from None
    return instance_from_dict(doc, tol)


def _reject_constant(name):
    if name == "NaN":
        raise InstanceError("NaN is not allowed")
    return INF if name == "Infinity" else -INF


def serialize_instance(inst: Instance, indent: int | None = None) -> str:
    # repr-exact floats: json.dumps keeps the shortest round-tripping form
    return json.dumps(inst.to_dict(), indent=indent)


def load_instance(path, tol: Tolerances = DEFAULT_TOL) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), tol)


def _rank(vectors: np.ndarray, eps_geom: float) -> int:
    """Numerical rank of the columns of ``vectors`` via pivoted QR."""
    if vectors.size == 0:
        return 0
    col_scale = max(1.0, float(np.max(np.linalg.norm(vectors, axis=0))))
    r = scipy.linalg.qr(vectors, mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(r))
    return int(np.sum(diag > eps_geom * col_scale))


def affine_dim(points, tol: Tolerances = DEFAULT_TOL) -> int:
    """Dimension of the affine hull of a point set (or an (m, d) array)."""
    arr = points.coords if isinstance(points, PointSet) else np.asarray(points, dtype=float)
    if arr.shape[0] <= 1:
        return 0
    diffs = (arr[1:] - arr[0]).T
    return _rank(diffs, tol.eps_geom)


def is_affinely_independent(points, tol: Tolerances = DEFAULT_TOL) -> bool:
    arr = points.coords if isinstance(points, PointSet) else np.asarray(points, dtype=float)
    return affine_dim(arr, tol) == arr.shape[0] - 1
