"""Rational-valued functions on finite point sets.

A PointFunction is the desk-scale stand-in for a continuous [0,1]-valued
function: a total map from a finite labeled point set into the rational
unit interval. Values are stored positionally in the point set's label
order, so equality, hashing and lexicographic sorting are exact and cheap.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import rationals
from .errors import DomainMismatch
from .points import PointSet


@dataclass(frozen=True)
class PointFunction:
    domain: PointSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.domain):
            raise ValueError("values must be total on the point set")
        for v in self.values:
            if not isinstance(v, Fraction) or v < 0 or v > 1:
                raise ValueError(f"value {v!r} is not a unit-interval Fraction")

    @classmethod
    def constant(cls, domain: PointSet, value) -> "PointFunction":
        v = rationals.unit(value)
        return cls(domain, (v,) * len(domain))

    @classmethod
    def from_values(cls, domain: PointSet, values) -> "PointFunction":
        return cls(domain, tuple(rationals.unit(v) for v in values))

    @classmethod
    def from_mapping(cls, domain: PointSet, mapping) -> "PointFunction":
        missing = [p for p in domain.labels if p not in mapping]
        if missing:
            raise ValueError(f"values missing for points {missing}")
        return cls(domain, tuple(rationals.unit(mapping[p]) for p in domain.labels))

    def value_at(self, label: str) -> Fraction:
        return self.values[self.domain.index_of(label)]

    def le(self, other: "PointFunction") -> bool:
        """Pointwise order."""
        _same_domain(self, other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def is_boolean(self) -> bool:
        return all(v == 0 or v == 1 for v in self.values)


def _same_domain(f: PointFunction, g: PointFunction):
    if f.domain != g.domain:
        raise DomainMismatch(f"point sets differ: {f.domain.labels} vs {g.domain.labels}")


def pointwise(op: str, f: PointFunction, g: PointFunction | None = None) -> PointFunction:
    """Apply a scalar operation label-by-label; `neg` is unary."""
    if op == "neg":
        if g is not None:
            raise ValueError("neg is unary")
        return PointFunction(f.domain, tuple(rationals.neg(v) for v in f.values))
    if g is None:
        raise ValueError(f"{op} is binary")
    _same_domain(f, g)
    fn = {
        "oplus": rationals.oplus,
        "odot": rationals.odot,
        "join": rationals.join,
        "meet": rationals.meet,
        "prod": rationals.prod,
    }[op]
    return PointFunction(f.domain, tuple(fn(a, b) for a, b in zip(f.values, g.values)))


def pw_oplus(f, g):
    return pointwise("oplus", f, g)


def pw_neg(f):
    return pointwise("neg", f)


def pw_odot(f, g):
    return pointwise("odot", f, g)


def pw_join(f, g):
    return pointwise("join", f, g)


def pw_meet(f, g):
    return pointwise("meet", f, g)


def pw_prod(f, g):
    return pointwise("prod", f, g)


def pw_scale(alpha, f: PointFunction) -> PointFunction:
    a = rationals.unit(alpha)
    return PointFunction(f.domain, tuple(a * v for v in f.values))
