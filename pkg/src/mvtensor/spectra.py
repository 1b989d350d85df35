"""Spectral form of finite carriers and isomorphism testing.

A finite functional carrier separates points only up to equal value
columns; after identifying equal columns, each remaining point evaluates
the carrier onto a full finite chain, and the joint evaluation is
injective. Isomorphisms between such carriers are exactly the maps induced
by chain-order-preserving bijections of identified points (finite chains
are simple and rigid), which makes the backtracking search below complete,
not heuristic.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm

from . import catalog
from .algebra import FiniteAlgebra
from .functions import PointFunction
from .homs import Hom


def point_classes(algebra: FiniteAlgebra) -> list[list[int]]:
    """Indices of carrier points grouped by equal value columns."""
    by_column = {}
    for p in range(len(algebra.points)):
        col = tuple(f.values[p] for f in algebra.elements)
        by_column.setdefault(col, []).append(p)
    return sorted(by_column.values())


@dataclass(frozen=True)
class SpectralFactor:
    order: int
    point_index: int
    point_label: str
    evaluation: Hom


@dataclass(frozen=True)
class SpectralDecomposition:
    algebra: FiniteAlgebra
    factors: tuple[SpectralFactor, ...]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(f.order for f in self.factors)

    def joint_injective(self) -> bool:
        reps = [f.point_index for f in self.factors]
        seen = {tuple(f.values[p] for p in reps) for f in self.algebra.elements}
        return len(seen) == len(self.algebra)


def _chain_order(values) -> int:
    denom = lcm(*[v.denominator for v in values]) if values else 1
    full = {Fraction(k, denom) for k in range(denom + 1)}
    if set(values) != full:
        raise AssertionError("carrier point values do not form a full chain")
    return denom


def spectral_decomposition(algebra: FiniteAlgebra) -> SpectralDecomposition:
    """Write the carrier as a separating family of chain evaluations.

    One factor per identified point class; the evaluation at the class
    representative is surjective onto the chain of achieved values, and the
    joint map is injective.
    """
    factors = []
    for cls in point_classes(algebra):
        rep = cls[0]
        values = {f.values[rep] for f in algebra.elements}
        order = _chain_order(values)
        chain = catalog.chain(order)
        ev = Hom(
            algebra,
            chain,
            {
                f.values: PointFunction.constant(chain.points, f.values[rep])
                for f in algebra.elements
            },
        )
        factors.append(
            SpectralFactor(
                order=order,
                point_index=rep,
                point_label=algebra.points.labels[rep],
                evaluation=ev,
            )
        )
    return SpectralDecomposition(algebra=algebra, factors=tuple(factors))


def _invariants(algebra: FiniteAlgebra):
    """(order, column multiset) per identified point, plus the rep indices."""
    reps, invs = [], []
    for cls in point_classes(algebra):
        rep = cls[0]
        column = tuple(sorted(f.values[rep] for f in algebra.elements))
        order = _chain_order(set(column))
        reps.append(rep)
        invs.append((order, column))
    return reps, invs


def iso_check(a: FiniteAlgebra, b: FiniteAlgebra) -> Hom | None:
    """Find a signature-preserving bijection, or None.

    Search space: chain-order-respecting bijections between identified
    points, pruned by per-point column multisets; each candidate is checked
    by carrier equality under the induced coordinate permutation.
    """
    if a.signature.kind != b.signature.kind:
        raise ValueError("iso_check requires matching signatures")
    if len(a) != len(b):
        return None
    reps_a, invs_a = _invariants(a)
    reps_b, invs_b = _invariants(b)
    if sorted(invs_a) != sorted(invs_b):
        return None

    groups = {}
    for idx, inv in enumerate(invs_a):
        groups.setdefault(inv, ([], []))[0].append(idx)
    for idx, inv in enumerate(invs_b):
        groups.setdefault(inv, ([], []))[1].append(idx)
    group_list = [groups[k] for k in sorted(groups)]
    if any(len(ga) != len(gb) for ga, gb in group_list):
        return None

    class_of_b_point = {}
    for ci, cls in enumerate(point_classes(b)):
        for q in cls:
            class_of_b_point[q] = ci

    b_carrier = b.carrier_values()

    def candidate(assignment):
        # assignment: b-class index -> a-rep point index
        table = {}
        for f in a.elements:
            values = tuple(
                f.values[assignment[class_of_b_point[q]]] for q in range(len(b.points))
            )
            if values not in b_carrier:
                return None
            table[f.values] = PointFunction(b.points, values)
        if len({g.values for g in table.values()}) != len(table):
            return None
        return Hom(a, b, table)

    def search(gi, assignment):
        if gi == len(group_list):
            return candidate(assignment)
        ga, gb = group_list[gi]
        for perm in permutations(ga):
            trial = dict(assignment)
            for b_idx, a_idx in zip(gb, perm):
                trial[b_idx] = reps_a[a_idx]
            found = search(gi + 1, trial)
            if found is not None:
                return found
        return None

    hom = search(0, {})
    if hom is None:
        return None
    return hom.require_valid()
