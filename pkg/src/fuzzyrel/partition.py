"""Content-independent equivalence classes from interval and grid partitions.

For a threshold alpha, the interval [0, L] is cut into cells whose members
are pairwise proximate to degree >= alpha.  Two modes exist:

* standard  -- cell width m = (1 - alpha) * L; when 1 / (1 - alpha) is not
  an integer the last cell is shorter,
* equalized -- ceil(1 / (1 - alpha)) cells of equal width.

Cells are half-open except the last, which is closed at L.  The square
[0, L]^2 is partitioned by crossing the standard axis partition with
itself.  The classes a finite value set induces are the non-empty
intersections with the cells, numbered from 1 in cell order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .errors import DomainError, UnknownValueError
from .proximity import Point, Value, _as_number

# Relative slack when deciding whether a value sits exactly on a cell
# boundary; boundaries are multiples of a float width, so exact data such
# as x = 40 on a width computed as 40.000000000000006 must not land left.
_EPS = 1e-9

MODES = ("standard", "equalized")


def _unit_interval(alpha, what: str = "alpha") -> float:
    a = _as_number(alpha, what)
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"{what} must lie in [0, 1], got {a}")
    return a


@dataclass(frozen=True)
class Partition1D:
    """Decomposition of [0, length] for one threshold.

    ``singleton`` marks the degenerate alpha = 1 partition in which every
    value forms its own class; it has no numbered cells.
    """

    length: float
    alpha: float
    mode: str
    width: float
    cell_count: int
    singleton: bool = False

    @property
    def intervals(self) -> tuple[tuple[float, float], ...]:
        """Cell bounds as (lo, hi) pairs; all half-open but the last."""
        if self.singleton:
            return ()
        return tuple(
            (k * self.width, min((k + 1) * self.width, self.length))
            for k in range(self.cell_count)
        )


def partition_line(length, alpha, mode: str = "standard") -> Partition1D:
    """Partition [0, length] for the given threshold.

    alpha = 0 collapses everything into the single cell [0, length];
    alpha = 1 yields the singleton partition.
    """
    L = _as_number(length, "length")
    if L <= 0:
        raise DomainError(f"length must be positive, got {L}")
    a = _unit_interval(alpha)
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    if a == 1.0:
        return Partition1D(L, a, mode, 0.0, 0, singleton=True)
    q = 1.0 / (1.0 - a)
    integral = abs(q - round(q)) <= _EPS * max(1.0, q)
    if mode == "standard":
        n = round(q) if integral else math.floor(q)
        count = n if integral else n + 1
        width = (1.0 - a) * L
    else:
        count = round(q) if integral else math.ceil(q)
        width = L / count
    return Partition1D(L, a, mode, width, count)


def class_of(x, p: Partition1D) -> int:
    """1-based index of the cell containing x; x = length maps to the last."""
    v = _as_number(x, "x")
    if not 0.0 <= v <= p.length:
        raise DomainError(f"value {v} outside [0, {p.length}]")
    if p.singleton:
        raise DomainError("a singleton partition has no numbered cells")
    j = int(v / p.width + _EPS)
    return min(j, p.cell_count - 1) + 1


@dataclass(frozen=True)
class Partition2D:
    """Grid over [0, length]^2: the standard axis partition crossed with itself."""

    axis: Partition1D

    @property
    def length(self) -> float:
        return self.axis.length

    @property
    def alpha(self) -> float:
        return self.axis.alpha

    @property
    def cell_count(self) -> int:
        return self.axis.cell_count ** 2

    @property
    def singleton(self) -> bool:
        return self.axis.singleton


def partition_plane(length, alpha) -> Partition2D:
    """Grid partition of the square [0, length]^2."""
    return Partition2D(partition_line(length, alpha, "standard"))


def cell_of(pt: Point, g: Partition2D) -> tuple[int, int]:
    """1-based (column, row) indices of the grid cell containing pt."""
    try:
        x, y = pt
    except (TypeError, ValueError):
        raise DomainError(f"expected an (x, y) point, got {pt!r}") from None
    return (class_of(x, g.axis), class_of(y, g.axis))


def value_sort_key(v: Value):
    """Total order across mixed value types: numbers first, then strings."""
    if isinstance(v, bool):
        return (1, str(v), 0.0)
    if isinstance(v, (int, float)):
        return (0, "", float(v))
    return (1, str(v), 0.0)


@dataclass(frozen=True)
class Grouping:
    """A partition of a finite value set into non-empty classes.

    Classes are canonically ordered by their smallest member and indexed
    from 1; ``index`` maps every value to its class ordinal.
    """

    classes: tuple[frozenset, ...]
    index: Mapping[Value, int]

    __hash__ = None

    @classmethod
    def from_classes(cls, groups) -> "Grouping":
        canonical = sorted(
            (frozenset(g) for g in groups if g),
            key=lambda c: value_sort_key(min(c, key=value_sort_key)),
        )
        index = {v: i for i, c in enumerate(canonical, start=1) for v in c}
        return cls(tuple(canonical), index)

    def class_index(self, v: Value) -> int:
        try:
            return self.index[v]
        except (KeyError, TypeError):
            raise UnknownValueError(f"value {v!r} is in no class") from None

    def as_sets(self) -> frozenset:
        return frozenset(self.classes)


Partitioner = Union[Partition1D, Partition2D]
Resolver = Union[Mapping, Callable, None]


def _make_resolver(resolve: Resolver):
    if resolve is None:
        return lambda v: v
    if callable(resolve):
        return resolve
    mapping = resolve

    def lookup(v):
        try:
            return mapping[v]
        except (KeyError, TypeError):
            raise UnknownValueError(f"value {v!r} cannot be resolved") from None

    return lookup


def classes_over(values, partitioner: Partitioner, resolve: Resolver = None) -> Grouping:
    """Group a finite value set by the cell its (resolved) coordinate falls in.

    ``resolve`` maps raw values to reals (1D) or points (2D); labels of an
    ordinal domain resolve to their rank, city names to their coordinates.
    Only non-empty classes are returned.
    """
    resolver = _make_resolver(resolve)
    buckets: dict = {}
    for v in values:
        if partitioner.singleton:
            key = ("value", v)
        elif isinstance(partitioner, Partition2D):
            key = cell_of(resolver(v), partitioner)
        else:
            key = class_of(resolver(v), partitioner)
        buckets.setdefault(key, set()).add(v)
    return Grouping.from_classes(buckets.values())
