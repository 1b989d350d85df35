"""Unit-interval bridge between lattice-ordered groups and MV carriers.

Archimedean unital groups are presented as finite products of cyclic
rational groups (1/n_1)Z x ... x (1/n_r)Z with strong unit (1, ..., 1) —
exactly the groups that arise from finite carriers. gamma truncates to the
unit interval; lambda_ inverts it through the spectral form; the tensor
tower transports level by level, giving the unital ring structure on the
group side.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import DEFAULT_CAP, FiniteAlgebra
from .catalog import product_of_chains
from .errors import NotUnitPreserving, NotWellDefined
from .functions import PointFunction
from .homs import Hom
from .spectra import iso_check, spectral_decomposition
from .tower import Tower, build_tower


@dataclass(frozen=True)
class UnitGroup:
    """The group prod_i (1/n_i)Z with strong unit (1, ..., 1).

    The unit is strong and the group Archimedean by construction, so the
    invariants the bridge needs are automatic in this presentation.
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors or any(n < 1 for n in self.factors):
            raise ValueError("factors must be positive integers")

    @property
    def rank(self) -> int:
        return len(self.factors)

    def contains(self, element) -> bool:
        return len(element) == self.rank and all(
            (Fraction(v) * n).denominator == 1 for v, n in zip(element, self.factors)
        )

    def unit(self) -> tuple:
        return tuple(Fraction(1) for _ in self.factors)


@dataclass(frozen=True)
class UnitGroupHom:
    """An additive lattice map between cyclic-product groups.

    Lattice maps into a product are coordinate-wise: target coordinate j is
    c_j * x_{sigma(j)}. Unit preservation forces every c_j = 1; the data
    keeps the coefficient so that non-examples (a doubling map) are
    expressible and rejected by verify().
    """

    source: UnitGroup
    target: UnitGroup
    coords: tuple  # per target coordinate: (source index, coefficient)

    def verify(self) -> "UnitGroupHom":
        if len(self.coords) != self.target.rank:
            raise NotWellDefined("one coordinate map needed per target factor")
        for j, (i, c) in enumerate(self.coords):
            if not 0 <= i < self.source.rank:
                raise NotWellDefined(f"coordinate {j} references a missing source factor")
            c = Fraction(c)
            if c != 1:
                raise NotUnitPreserving(
                    f"coordinate {j} scales the unit by {c}"
                )
            if (Fraction(1, self.source.factors[i]) * self.target.factors[j]).denominator != 1:
                raise NotWellDefined(
                    f"coordinate {j} does not land in (1/{self.target.factors[j]})Z"
                )
        return self

    def apply(self, element) -> tuple:
        return tuple(Fraction(c) * element[i] for i, c in self.coords)

    def is_injective(self) -> bool:
        return {i for i, _ in self.coords} == set(range(self.source.rank))


def gamma(group: UnitGroup) -> FiniteAlgebra:
    """The unit interval [0, u] with truncated addition, as a carrier on

    one point per factor: the full product of the factor chains."""
    return product_of_chains(group.factors)


def gamma_hom(h: UnitGroupHom) -> Hom:
    """Restriction of a verified group map to the unit intervals."""
    h.verify()
    source = gamma(h.source)
    target = gamma(h.target)
    table = {}
    for f in source.elements:
        image = PointFunction(target.points, tuple(h.apply(f.values)))
        table[f.values] = target.elements[target.index_of(image)]
    return Hom(source, target, table).require_valid()


@dataclass(frozen=True, eq=False)
class GroupPresentation:
    group: UnitGroup
    witness: Hom  # gamma(group) -> the presented carrier


def lambda_(algebra: FiniteAlgebra) -> GroupPresentation:
    """Inverse bridge on finite carriers via the spectral form.

    Returns the cyclic-product group whose unit interval is isomorphic to
    the carrier, with the isomorphism witness verified by iso_check.
    """
    dec = spectral_decomposition(algebra)
    group = UnitGroup(dec.orders)
    witness = iso_check(gamma(group), algebra.mv_reduct())
    if witness is None:
        raise NotWellDefined("spectral factors do not present the carrier")
    return GroupPresentation(group=group, witness=witness)


@dataclass(frozen=True, eq=False)
class FuRingTower:
    """Tensor tower transported to the group side: the truncated unital

    ring extension of a cyclic-product group."""

    base: UnitGroup
    tower: Tower
    level_groups: tuple[UnitGroup, ...]
    level_witnesses: tuple[Hom, ...]      # gamma(level group) -> tower level
    embeddings: tuple[UnitGroupHom, ...]  # level n -> level n+1

    @property
    def factor_sequences(self) -> tuple:
        return tuple(g.factors for g in self.level_groups)


def tensor_fu_ring(group: UnitGroup, max_level: int, cap: int = DEFAULT_CAP) -> FuRingTower:
    """Build the tower of gamma(group) and transport each level back.

    Verifies, per level, that the unit interval of the transported group is
    isomorphic to the tower level, and that the transported level maps are
    unit-preserving group embeddings.
    """
    base_algebra = gamma(group)
    tw = build_tower(base_algebra, max_level, cap)
    level_groups = []
    witnesses = []
    for n in range(1, max_level + 1):
        pres = lambda_(tw.level(n))
        level_groups.append(pres.group)
        witnesses.append(pres.witness)

    embeddings = []
    for n in range(1, max_level):
        low, high = level_groups[n - 1], level_groups[n]
        low_dec = spectral_decomposition(tw.level(n))
        high_dec = spectral_decomposition(tw.level(n + 1))
        emb_idx = tw.embedding_indices(n, n + 1)
        coords = []
        for j, hf in enumerate(high_dec.factors):
            # the evaluation at a fine point, pulled through the padding,
            # is an evaluation at some coarse point
            column = tuple(
                tw.level(n + 1).elements[emb_idx[i]].values[hf.point_index]
                for i in range(len(tw.level(n)))
            )
            src = None
            for k, lf in enumerate(low_dec.factors):
                if column == tuple(f.values[lf.point_index] for f in tw.level(n).elements):
                    src = k
                    break
            if src is None:
                raise NotWellDefined("padding does not restrict to an evaluation")
            coords.append((src, Fraction(1)))
        emb = UnitGroupHom(source=low, target=high, coords=tuple(coords)).verify()
        if not emb.is_injective():
            raise NotWellDefined("transported level map is not injective")
        embeddings.append(emb)

    return FuRingTower(
        base=group,
        tower=tw,
        level_groups=tuple(level_groups),
        level_witnesses=tuple(witnesses),
        embeddings=tuple(embeddings),
    )
