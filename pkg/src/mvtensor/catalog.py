"""Stock carriers: finite chains, Boolean cubes, diagonals, chain products.

These are the building blocks the test corpus and the CLI spec strings
("chain:6", "bool:2", ...) are made of. chain(n) is {0, 1/n, ..., 1}; the
two-element Boolean algebra is chain(1).
"""

from fractions import Fraction

from .algebra import DEFAULT_CAP, FiniteAlgebra, Signature, generate_subalgebra
from .errors import UsageError
from .functions import PointFunction
from .points import PointSet, point_set


def chain(order: int, label: str = "pt") -> FiniteAlgebra:
    """The chain with denominator `order` on a single point."""
    if order < 1:
        raise ValueError("chain order must be >= 1")
    pts = point_set([label])
    step = PointFunction.constant(pts, Fraction(1, order))
    alg = generate_subalgebra(pts, [step], Signature.mv(), cap=order + 2)
    assert len(alg) == order + 1
    return alg


def boolean(label: str = "pt") -> FiniteAlgebra:
    """The two-element Boolean algebra {0, 1}."""
    return chain(1, label)


def full_boolean(num_points: int, prefix: str = "p") -> FiniteAlgebra:
    """All {0,1}-valued functions on num_points points (2^n elements)."""
    pts = point_set([f"{prefix}{i}" for i in range(num_points)])
    gens = [
        PointFunction(pts, tuple(Fraction(int(i == j)) for j in range(num_points)))
        for i in range(num_points)
    ]
    return generate_subalgebra(pts, gens, Signature.mv(), cap=2 ** num_points + 2)


def diagonal_chain(order: int, num_points: int = 2, prefix: str = "p") -> FiniteAlgebra:
    """The chain of constant functions on several points (a proper

    subalgebra of the full product whenever num_points > 1)."""
    pts = point_set([f"{prefix}{i}" for i in range(num_points)])
    step = PointFunction.constant(pts, Fraction(1, order))
    return generate_subalgebra(pts, [step], Signature.mv(), cap=order + 2)


def product_of_chains(orders, prefix: str = "g") -> FiniteAlgebra:
    """The full product of chains, one point per factor."""
    orders = tuple(int(n) for n in orders)
    if not orders or any(n < 1 for n in orders):
        raise ValueError("orders must be positive integers")
    pts = point_set([f"{prefix}{i}" for i in range(len(orders))])
    gens = [
        PointFunction(
            pts,
            tuple(Fraction(1, n) if i == j else Fraction(0) for j, n in enumerate(orders)),
        )
        for i in range(len(orders))
    ]
    size = 1
    for n in orders:
        size *= n + 1
    alg = generate_subalgebra(pts, gens, Signature.mv(), cap=size + 2)
    assert len(alg) == size
    return alg


def boolean_pmv(num_points: int = 1) -> FiniteAlgebra:
    """A genuinely product-closed carrier: the full Boolean cube as PMV."""
    pts = point_set([f"p{i}" for i in range(num_points)])
    gens = [
        PointFunction(pts, tuple(Fraction(int(i == j)) for j in range(num_points)))
        for i in range(num_points)
    ]
    return generate_subalgebra(pts, gens, Signature.pmv(), cap=2 ** num_points + 2)


def from_spec(spec: str, cap: int = DEFAULT_CAP) -> FiniteAlgebra:
    """Parse a CLI carrier spec: chain:N | bool | bool:K | diag:N:K | prod:N1,N2,..."""
    head, _, rest = spec.partition(":")
    try:
        if head == "chain":
            return chain(int(rest))
        if head == "bool":
            return full_boolean(int(rest)) if rest else boolean()
        if head == "diag":
            order, _, npts = rest.partition(":")
            return diagonal_chain(int(order), int(npts) if npts else 2)
        if head == "prod":
            return product_of_chains(int(n) for n in rest.split(","))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad carrier spec {spec!r}: {exc}") from None
    raise UsageError(f"unknown carrier spec {spec!r}")
