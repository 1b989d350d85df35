"""Exact scalar arithmetic on the rational unit interval.

The scalar universe for every carrier is the set of reduced rationals in
[0,1], represented by `fractions.Fraction`. All operations below are total
on that set and return reduced values.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def unit(value) -> Fraction:
    """Coerce ints, "p/q" strings, (num, den) pairs or Fractions into [0,1].

    Raises ValueError outside the unit interval.
    """
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, int):
        q = Fraction(value)
    elif isinstance(value, str):
        q = Fraction(value)
    elif isinstance(value, (tuple, list)) and len(value) == 2:
        q = Fraction(value[0], value[1])
    else:
        raise ValueError(f"cannot interpret {value!r} as a unit-interval rational")
    if q < 0 or q > 1:
        raise ValueError(f"{q} is outside [0,1]")
    return q


def oplus(x: Fraction, y: Fraction) -> Fraction:
    """Truncated sum min(x+y, 1)."""
    s = x + y
    return s if s <= ONE else ONE


def neg(x: Fraction) -> Fraction:
    """Involution 1 - x."""
    return ONE - x


def odot(x: Fraction, y: Fraction) -> Fraction:
    """Truncated difference-from-one max(x+y-1, 0)."""
    s = x + y - ONE
    return s if s >= ZERO else ZERO


def join(x: Fraction, y: Fraction) -> Fraction:
    return x if x >= y else y


def meet(x: Fraction, y: Fraction) -> Fraction:
    return x if x <= y else y


def prod(x: Fraction, y: Fraction) -> Fraction:
    """Exact rational product."""
    return x * y


_BINARY = {"oplus": oplus, "odot": odot, "join": join, "meet": meet, "prod": prod}
_UNARY = {"neg": neg}

OP_NAMES = tuple(sorted(_BINARY)) + tuple(sorted(_UNARY))


def scalar_op(name: str, x: Fraction, y: Fraction | None = None) -> Fraction:
    """Apply one of the named operations; `neg` is unary, the rest binary."""
    if name in _UNARY:
        if y is not None:
            raise ValueError(f"{name} is unary")
        return _UNARY[name](x)
    if name in _BINARY:
        if y is None:
            raise ValueError(f"{name} is binary")
        return _BINARY[name](x, y)
    raise ValueError(f"unknown operation {name!r}")
