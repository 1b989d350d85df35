"""Homomorphisms, linear maps and bimorphisms between finite carriers.

Linearity here is the strict, partial-addition notion: a map is linear when
for every defined sum x + y (i.e. x <= y*) the image sum is also defined
(omega(x) <= omega(y)*) and preserved. The bare value equation
omega(x (+) y) = omega(x) (+) omega(y) is strictly weaker — it admits the
constant-1 map — and is not what bilinearity needs downstream.
"""

from dataclasses import dataclass, field

from .algebra import FiniteAlgebra
from .errors import NotWellDefined
from .functions import PointFunction


@dataclass(frozen=True, eq=False)
class Hom:
    """A signature-preserving map given by its full table."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: dict = field(repr=False)  # values-tuple of source -> PointFunction of target

    @classmethod
    def from_pairs(cls, source, target, pairs) -> "Hom":
        return cls(source, target, {f.values: g for f, g in pairs})

    @classmethod
    def identity(cls, algebra) -> "Hom":
        return cls(algebra, algebra, {f.values: f for f in algebra.elements})

    def __call__(self, f: PointFunction) -> PointFunction:
        return self.mapping[f.values]

    def after(self, other: "Hom") -> "Hom":
        """Composite self . other."""
        return Hom(
            other.source,
            self.target,
            {k: self.mapping[v.values] for k, v in other.mapping.items()},
        )

    def is_injective(self) -> bool:
        images = {g.values for g in self.mapping.values()}
        return len(images) == len(self.mapping)

    def is_bijective(self) -> bool:
        return self.is_injective() and len(self.mapping) == len(self.target)

    def violation(self):
        """First operation instance the table fails to preserve, or None."""
        src, tgt = self.source, self.target
        for f in src.elements:
            if f.values not in self.mapping:
                return ("total", f)
            if self.mapping[f.values] not in tgt:
                return ("image", f)
        if self(src.zero).values != tgt.zero.values:
            return ("zero", src.zero)
        if self(src.one).values != tgt.one.values:
            return ("one", src.one)
        for f in src.elements:
            if self(src.neg(f)).values != tgt.neg(self(f)).values:
                return ("neg", f)
            for g in src.elements:
                if self(src.oplus(f, g)).values != tgt.oplus(self(f), self(g)).values:
                    return ("oplus", f, g)
        if self.source.signature.has_product and self.target.signature.has_product:
            for f in src.elements:
                for g in src.elements:
                    p = src.prod(f, g)
                    if p not in src:
                        continue
                    q = tgt.prod(self(f), self(g))
                    if q not in tgt or self(p).values != q.values:
                        return ("prod", f, g)
        shared = set(src.signature.scalars) & set(tgt.signature.scalars)
        for alpha in sorted(shared):
            for f in src.elements:
                v = src.scale(alpha, f)
                if v not in src:
                    continue
                w = tgt.scale(alpha, self(f))
                if w not in tgt or self(v).values != w.values:
                    return ("scal", alpha, f)
        return None

    def require_valid(self) -> "Hom":
        bad = self.violation()
        if bad is not None:
            raise NotWellDefined(f"map violates {bad[0]}", witness=bad)
        return self


@dataclass(frozen=True)
class LinearVerdict:
    ok: bool
    witness: tuple | None = None
    reason: str = ""


def check_linear(mapping, source: FiniteAlgebra, target: FiniteAlgebra) -> LinearVerdict:
    """Strict linearity scan over all defined partial sums of the source."""
    table = {f.values: g for f, g in mapping.items()} if not _values_keyed(mapping) else mapping
    for x in source.elements:
        if x.values not in table:
            return LinearVerdict(False, (x,), "not total")
    for x in source.elements:
        for y in source.elements:
            if not x.le(source.neg(y)):
                continue
            ox, oy = table[x.values], table[y.values]
            if not ox.le(target.neg(oy)):
                return LinearVerdict(False, (x, y), "image sum undefined")
            if target.oplus(ox, oy).values != table[source.oplus(x, y).values].values:
                return LinearVerdict(False, (x, y), "sum not preserved")
    return LinearVerdict(True)


def _values_keyed(mapping):
    return mapping and isinstance(next(iter(mapping)), tuple)


@dataclass(frozen=True, eq=False)
class Bimorphism:
    left: FiniteAlgebra
    right: FiniteAlgebra
    target: FiniteAlgebra
    table: dict = field(repr=False)  # (left values, right values) -> PointFunction

    @classmethod
    def from_function(cls, left, right, target, fn) -> "Bimorphism":
        table = {}
        for a in left.elements:
            for b in right.elements:
                table[(a.values, b.values)] = fn(a, b)
        return cls(left, right, target, table)

    def __call__(self, a: PointFunction, b: PointFunction) -> PointFunction:
        return self.table[(a.values, b.values)]


@dataclass(frozen=True)
class BimorphismVerdict:
    ok: bool
    witness: tuple | None = None
    reason: str = ""


def check_bimorphism(beta: Bimorphism) -> BimorphismVerdict:
    """Every section must be strictly linear and join/meet preserving."""
    left, right, target = beta.left, beta.right, beta.target

    for a in left.elements:
        section = {b.values: beta(a, b) for b in right.elements}
        v = check_linear(section, right, target)
        if not v.ok:
            return BimorphismVerdict(False, (a,) + (v.witness or ()), f"left section: {v.reason}")
    for b in right.elements:
        section = {a.values: beta(a, b) for a in left.elements}
        v = check_linear(section, left, target)
        if not v.ok:
            return BimorphismVerdict(False, (b,) + (v.witness or ()), f"right section: {v.reason}")

    for a in left.elements:
        for x in right.elements:
            for y in right.elements:
                jxy = right.join(x, y)
                if beta(a, jxy).values != target.join(beta(a, x), beta(a, y)).values:
                    return BimorphismVerdict(False, (a, x, y), "left section: join not preserved")
                mxy = right.meet(x, y)
                if beta(a, mxy).values != target.meet(beta(a, x), beta(a, y)).values:
                    return BimorphismVerdict(False, (a, x, y), "left section: meet not preserved")
    for b in right.elements:
        for x in left.elements:
            for y in left.elements:
                jxy = left.join(x, y)
                if beta(jxy, b).values != target.join(beta(x, b), beta(y, b)).values:
                    return BimorphismVerdict(False, (b, x, y), "right section: join not preserved")
                mxy = left.meet(x, y)
                if beta(mxy, b).values != target.meet(beta(x, b), beta(y, b)).values:
                    return BimorphismVerdict(False, (b, x, y), "right section: meet not preserved")
    return BimorphismVerdict(True)


def extend_hom(source: FiniteAlgebra, target: FiniteAlgebra, gen_map) -> Hom:
    """Extend a generator assignment along the source's closure derivations.

    The extension is audited on every operation instance of the full
    carrier; a violated instance raises NotWellDefined with the witness.
    """
    if source.derivations is None:
        raise ValueError("source carrier does not record closure derivations")
    assignment = {g.values: img for g, img in gen_map.items()}
    for g in source.generators:
        if g.values not in assignment:
            raise ValueError(f"generator image missing for {g.values}")
    for img in assignment.values():
        if img not in target:
            raise NotWellDefined("generator image outside the target carrier", witness=("image", img))

    gen_list = list(source.generators)
    images: list[PointFunction | None] = [None] * len(source.elements)
    for i, deriv in enumerate(source.derivations):
        tag = deriv[0]
        if tag == "zero":
            images[i] = target.zero
        elif tag == "one":
            images[i] = target.one
        elif tag == "gen":
            images[i] = assignment[gen_list[deriv[1]].values]
        elif tag == "neg":
            images[i] = target.neg(images[deriv[1]])
        elif tag == "oplus":
            images[i] = target.oplus(images[deriv[1]], images[deriv[2]])
        elif tag == "prod":
            images[i] = target.prod(images[deriv[1]], images[deriv[2]])
        elif tag == "scal":
            alpha = source.signature.scalars[deriv[1]]
            images[i] = target.scale(alpha, images[deriv[2]])
        else:  # pragma: no cover
            raise AssertionError(f"unknown derivation {deriv}")
        if images[i] not in target:
            raise NotWellDefined(
                "derived image escapes the target carrier",
                witness=(tag, source.elements[i]),
            )
    hom = Hom(source, target, {source.elements[i].values: images[i] for i in range(len(images))})
    return hom.require_valid()
