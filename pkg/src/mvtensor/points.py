"""Finite point sets and their cartesian products.

Product point sets flatten labels with a "|" join in row-major order, so
iterated products associate on the nose: (X x Y) x Z and X x (Y x Z) are the
same point set. Tower code exploits this plus base-size index arithmetic.
"""

from dataclasses import dataclass

JOIN = "|"


@dataclass(frozen=True)
class PointSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("a point set needs at least one point")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("point labels must be distinct")

    def __len__(self):
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no point labeled {label!r}") from None


def point_set(labels) -> PointSet:
    return PointSet(tuple(labels))


def product_points(left: PointSet, right: PointSet) -> PointSet:
    """Row-major product: index of (i, j) is i * len(right) + j."""
    return PointSet(tuple(f"{a}{JOIN}{b}" for a in left.labels for b in right.labels))


def power_points(base: PointSet, n: int) -> PointSet:
    if n < 1:
        raise ValueError("power must be >= 1")
    out = base
    for _ in range(n - 1):
        out = product_points(out, base)
    return out
