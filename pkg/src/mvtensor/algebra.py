"""Finite functional carriers and their closure generation.

A FiniteAlgebra is a finite set of rational-valued functions on a shared
finite point set, closed under the operations of its signature. This is the
desk-scale instance of the separating-subalgebra-of-C(X) representation:
every equality is an exact rational comparison.

Carriers come in two flavors:

* pointwise carriers, produced by `generate_subalgebra`: operations are
  computed label-by-label and the carrier is the worklist closure of its
  generators (reproducible, with derivations recorded for hom extension);
* table-backed carriers, produced by `interval_algebra`: the operations are
  materialized tables, because the interval operations differ from the
  ambient pointwise ones.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import rationals
from ._kernel import close_generators
from .errors import CapExceeded, DomainMismatch, NotInCarrier, ScalarUnsupported
from .functions import PointFunction, pw_neg, pw_oplus, pw_prod, pw_scale
from .points import PointSet

DEFAULT_CAP = 20000


class Kind(str, Enum):
    MV = "MV"
    PMV = "PMV"
    RIESZ = "RieszQ"
    FMV = "FMV"


@dataclass(frozen=True)
class Signature:
    """Operation set of a carrier.

    RieszQ and FMV carry an explicit finite set of rational scalars; scalar
    action by all of [0,1] has no nontrivial finite models, so the declared
    set is the part of the action a finite carrier is generated under.
    """

    kind: Kind
    scalars: tuple[Fraction, ...] = ()

    def __post_init__(self):
        normalized = tuple(sorted({rationals.unit(a) for a in self.scalars}))
        object.__setattr__(self, "scalars", normalized)
        if normalized and self.kind not in (Kind.RIESZ, Kind.FMV):
            raise ValueError(f"signature {self.kind.value} carries no scalars")

    @property
    def has_product(self) -> bool:
        return self.kind in (Kind.PMV, Kind.FMV)

    @property
    def has_scalars(self) -> bool:
        return self.kind in (Kind.RIESZ, Kind.FMV)

    @classmethod
    def mv(cls):
        return cls(Kind.MV)

    @classmethod
    def pmv(cls):
        return cls(Kind.PMV)

    @classmethod
    def riesz(cls, scalars):
        return cls(Kind.RIESZ, tuple(scalars))

    @classmethod
    def fmv(cls, scalars):
        return cls(Kind.FMV, tuple(scalars))


@dataclass(frozen=True)
class OpTables:
    """Materialized operations over carrier indices.

    `scalars` maps a scalar to a per-element tuple of target indices, with
    None marking instances where the scalar multiple leaves the carrier
    (the action is partial at any finite truncation).
    """

    zero_index: int
    one_index: int
    neg: tuple[int, ...]
    oplus: tuple[tuple[int, ...], ...]
    prod: tuple[tuple[int, ...], ...] | None = None
    scalars: dict | None = None


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    points: PointSet
    elements: tuple[PointFunction, ...]
    generators: tuple[PointFunction, ...]
    signature: Signature
    tables: OpTables | None = None
    derivations: tuple[tuple, ...] | None = None
    closure_complete: bool = True
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for pos, f in enumerate(self.elements):
            if f.domain != self.points:
                raise DomainMismatch("carrier element lives on a different point set")
            self._index[f.values] = pos

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, f):
        return isinstance(f, PointFunction) and f.domain == self.points and f.values in self._index

    def index_of(self, f: PointFunction) -> int:
        try:
            return self._index[f.values]
        except KeyError:
            raise NotInCarrier(f"{f.values} is not in the carrier") from None

    @property
    def zero(self) -> PointFunction:
        if self.tables is not None:
            return self.elements[self.tables.zero_index]
        return self.elements[0]

    @property
    def one(self) -> PointFunction:
        if self.tables is not None:
            return self.elements[self.tables.one_index]
        return self.elements[1]

    # -- operations ------------------------------------------------------

    def oplus(self, f, g):
        if self.tables is not None:
            return self.elements[self.tables.oplus[self.index_of(f)][self.index_of(g)]]
        return pw_oplus(f, g)

    def neg(self, f):
        if self.tables is not None:
            return self.elements[self.tables.neg[self.index_of(f)]]
        return pw_neg(f)

    def odot(self, f, g):
        return self.neg(self.oplus(self.neg(f), self.neg(g)))

    def join(self, f, g):
        return self.oplus(self.odot(f, self.neg(g)), g)

    def meet(self, f, g):
        return self.odot(self.oplus(f, self.neg(g)), g)

    def prod(self, f, g):
        """Pointwise product; table lookup on table-backed carriers."""
        if self.tables is not None:
            if self.tables.prod is None:
                raise ScalarUnsupported("no product table on this carrier")
            return self.elements[self.tables.prod[self.index_of(f)][self.index_of(g)]]
        return pw_prod(f, g)

    def scale(self, alpha, f):
        """Scalar multiple; raises ScalarUnsupported where a table is partial."""
        if self.tables is not None and self.tables.scalars is not None:
            alpha = rationals.unit(alpha)
            try:
                row = self.tables.scalars[alpha]
            except KeyError:
                raise ScalarUnsupported(f"scalar {alpha} not tabulated") from None
            target = row[self.index_of(f)]
            if target is None:
                raise ScalarUnsupported(f"{alpha} * element leaves the carrier")
            return self.elements[target]
        return pw_scale(alpha, f)

    # -- views -----------------------------------------------------------

    def carrier_values(self) -> frozenset:
        return frozenset(f.values for f in self.elements)

    def sorted_elements(self) -> list:
        return sorted(self.elements, key=lambda f: f.values)

    def mv_reduct(self) -> "FiniteAlgebra":
        """Same carrier viewed with the bare MV signature.

        Generators are widened to the full carrier: the carrier need not be
        MV-generated by the original generators once products are forgotten.
        """
        if self.signature.kind is Kind.MV:
            return self
        return FiniteAlgebra(
            points=self.points,
            elements=self.elements,
            generators=self.elements,
            signature=Signature.mv(),
            tables=self.tables,
            closure_complete=True,
        )

    def with_tables(self, tables: OpTables) -> "FiniteAlgebra":
        return FiniteAlgebra(
            points=self.points,
            elements=self.elements,
            generators=self.generators,
            signature=self.signature,
            tables=tables,
            closure_complete=self.closure_complete,
        )


def _to_pairs(f: PointFunction):
    return tuple((v.numerator, v.denominator) for v in f.values)


def generate_subalgebra(
    points: PointSet,
    gens,
    sig: Signature,
    cap: int = DEFAULT_CAP,
) -> FiniteAlgebra:
    """Least carrier containing gens and {0,1}, closed under the signature.

    Deterministic: the carrier order is the kernel's worklist insertion
    order. Raises CapExceeded when the closure outgrows `cap` — with a
    nontrivial product or scalar set this signals a genuinely infinite
    closure (denominator explosion), not a bug.
    """
    seen = set()
    kept = []
    for g in gens:
        if g.domain != points:
            raise DomainMismatch("generator lives on a different point set")
        if g.values not in seen:
            seen.add(g.values)
            kept.append(g)
    scalars = [
        (a.numerator, a.denominator) for a in (sig.scalars if sig.has_scalars else ())
    ]
    # generators are deduplicated up front so ("gen", k) derivations index them
    raw, derivs = close_generators(
        [_to_pairs(g) for g in kept],
        len(points),
        sig.has_product,
        scalars,
        cap,
    )
    elements = tuple(
        PointFunction(points, tuple(Fraction(n, d) for n, d in vec)) for vec in raw
    )
    return FiniteAlgebra(
        points=points,
        elements=elements,
        generators=tuple(kept),
        signature=sig,
        derivations=tuple(derivs),
    )


def mv_closure(points: PointSet, gens, cap: int = DEFAULT_CAP) -> FiniteAlgebra:
    return generate_subalgebra(points, gens, Signature.mv(), cap)


@dataclass(frozen=True)
class StrataResult:
    """Depth-truncated product/scalar closure.

    strata[n-1] is the carrier after n-fold products (and n-1 scalar
    layers); `algebra` is the deepest stratum. closure_complete is True when
    the strata stabilized, i.e. the carrier is genuinely closed.
    """

    algebra: FiniteAlgebra
    strata: tuple[FiniteAlgebra, ...]

    @property
    def complete(self) -> bool:
        return self.algebra.closure_complete


def product_strata(
    base: FiniteAlgebra,
    depth: int,
    cap: int = DEFAULT_CAP,
    sig: Signature | None = None,
) -> StrataResult:
    """Close `base` under products (and declared scalars) stratum by stratum.

    Stratum n is the MV closure of the n-fold pointwise products of base
    elements; the limit over all n is the product closure, which for most
    carriers is infinite — hence the depth truncation. Stabilization is
    detected and recorded.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if sig is None:
        sig = Signature.pmv()
    scalars = sig.scalars if sig.has_scalars else ()
    strata = []
    current = base.elements
    complete = False
    for _ in range(2, depth + 1):
        seeds = list(current)
        seen = {f.values for f in seeds}
        for f in current:
            for a in base.elements:
                p = pw_prod(f, a)
                if p.values not in seen:
                    seen.add(p.values)
                    seeds.append(p)
            for alpha in scalars:
                s = pw_scale(alpha, f)
                if s.values not in seen:
                    seen.add(s.values)
                    seeds.append(s)
        closed = mv_closure(base.points, seeds, cap)
        strata.append(closed)
        if len(closed) == len(current):
            complete = True
            break
        current = closed.elements
    final_elements = current
    algebra = FiniteAlgebra(
        points=base.points,
        elements=final_elements,
        generators=base.generators,
        signature=sig,
        closure_complete=complete,
    )
    stratum_algebras = (base,) + tuple(
        FiniteAlgebra(
            points=base.points,
            elements=s.elements,
            generators=base.generators,
            signature=sig,
            closure_complete=False,
        )
        for s in strata
    )
    return StrataResult(algebra=algebra, strata=stratum_algebras)


def interval_algebra(ambient: FiniteAlgebra, bound: PointFunction) -> FiniteAlgebra:
    """The MV-algebra on [0, bound] with truncated sum and relative negation.

    Operation tables are materialized: the interval is not a subalgebra of
    the ambient carrier under the ambient sum (x (+) y may exceed the bound).
    With bound = 1 the interval is the ambient algebra itself.
    """
    if bound not in ambient:
        raise NotInCarrier("interval bound must be a carrier element")
    if bound.values == ambient.one.values:
        return ambient
    members = [f for f in ambient.elements if f.le(bound)]
    local = {f.values: i for i, f in enumerate(members)}

    def land(f):
        # interval results stay below the bound and inside the ambient carrier
        return local[f.values]

    neg_t = tuple(land(ambient.odot(ambient.neg(f), bound)) for f in members)
    oplus_t = tuple(
        tuple(land(ambient.meet(ambient.oplus(f, g), bound)) for g in members)
        for f in members
    )
    tables = OpTables(
        zero_index=land(ambient.zero),
        one_index=land(bound),
        neg=neg_t,
        oplus=oplus_t,
    )
    return FiniteAlgebra(
        points=ambient.points,
        elements=tuple(members),
        generators=tuple(members),
        signature=Signature.mv(),
        tables=tables,
    )


def has_infinitesimal(algebra: FiniteAlgebra):
    """Return some x != 0 with n.x <= x* for every n, else None.

    n.x is increasing and the carrier is finite, so the multiples stabilize;
    the stable value decides all n at once. Functional carriers never have
    one (any positive value reaches 1 under repeated truncated addition).
    """
    zero = algebra.zero
    for x in algebra.elements:
        if x.values == zero.values:
            continue
        y = x
        while True:
            nxt = algebra.oplus(y, x)
            if nxt.values == y.values:
                break
            y = nxt
        if y.le(algebra.neg(x)):
            return x
    return None


def relabel(algebra: FiniteAlgebra, new_points: PointSet) -> FiniteAlgebra:
    """Positional point renaming (values keep their order)."""
    if len(new_points) != len(algebra.points):
        raise DomainMismatch("relabeling must preserve the number of points")
    return FiniteAlgebra(
        points=new_points,
        elements=tuple(PointFunction(new_points, f.values) for f in algebra.elements),
        generators=tuple(PointFunction(new_points, g.values) for g in algebra.generators),
        signature=algebra.signature,
        tables=algebra.tables,
        derivations=algebra.derivations,
        closure_complete=algebra.closure_complete,
    )
