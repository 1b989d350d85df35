"""Amalgamation of finite carriers over a shared subalgebra.

Two embeddings of Z into A and B extend to embeddings of A and B into a
common carrier E with a commuting square. The construction is concrete:
E lives on the fiber-product point set, the legs are composition with the
projections, and the required properties (commutation, injectivity) are
verified after the fact rather than cited.

For product/scalar signatures the MV amalgam is closed further, stratum by
stratum up to a declared depth, and the legs are re-audited against the
richer signature on the instances the truncation contains.
"""

from dataclasses import dataclass

from .algebra import DEFAULT_CAP, FiniteAlgebra, Signature, mv_closure, product_strata
from .errors import EmbeddingFailure
from .functions import PointFunction, pw_prod, pw_scale
from .homs import Hom
from .points import PointSet


@dataclass(frozen=True, eq=False)
class Amalgam:
    algebra: FiniteAlgebra
    left_leg: Hom   # A -> E
    right_leg: Hom  # B -> E
    fiber_pairs: tuple  # (x index in A.points, y index in B.points) per E point


def _fiber_points(z, a, b, z_a, z_b):
    pairs = []
    labels = []
    for i, la in enumerate(a.points.labels):
        for j, lb in enumerate(b.points.labels):
            if all(z_a(f).values[i] == z_b(f).values[j] for f in z.elements):
                pairs.append((i, j))
                labels.append(f"{la}&{lb}")
    if not pairs:
        raise EmbeddingFailure("empty fiber product: the embeddings are incompatible")
    return pairs, PointSet(tuple(labels))


def amalgamate_mv(
    z: FiniteAlgebra,
    a: FiniteAlgebra,
    b: FiniteAlgebra,
    z_a: Hom,
    z_b: Hom,
    cap: int = DEFAULT_CAP,
) -> Amalgam:
    """Fiber-product amalgam of MV carriers.

    W = {(x, y) : every image of Z agrees at x and y}, the legs compose
    with the projections, and E is the closure of both images. Injective
    legs are guaranteed for injective z_A, z_B with separating carriers;
    the check guards the implementation (EmbeddingFailure otherwise).
    """
    z_a.require_valid()
    z_b.require_valid()
    if not (z_a.is_injective() and z_b.is_injective()):
        raise EmbeddingFailure("the shared-subalgebra maps must be injective")
    pairs, points = _fiber_points(z, a, b, z_a, z_b)

    if {i for i, _ in pairs} != set(range(len(a.points))) or {
        j for _, j in pairs
    } != set(range(len(b.points))):
        raise EmbeddingFailure("a fiber projection misses a point of a factor")

    def pull_a(f):
        return PointFunction(points, tuple(f.values[i] for i, _ in pairs))

    def pull_b(g):
        return PointFunction(points, tuple(g.values[j] for _, j in pairs))

    gens = [pull_a(f) for f in a.elements] + [pull_b(g) for g in b.elements]
    e = mv_closure(points, gens, cap)
    left = Hom(a, e, {f.values: pull_a(f) for f in a.elements}).require_valid()
    right = Hom(b, e, {g.values: pull_b(g) for g in b.elements}).require_valid()
    if not left.is_injective() or not right.is_injective():
        raise EmbeddingFailure("an amalgam leg failed to be injective")
    for f in z.elements:
        if left(z_a(f)).values != right(z_b(f)).values:
            raise EmbeddingFailure("amalgamation square does not commute")
    return Amalgam(algebra=e, left_leg=left, right_leg=right, fiber_pairs=tuple(pairs))


def amalgamate_pmv(
    z: FiniteAlgebra,
    a: FiniteAlgebra,
    b: FiniteAlgebra,
    z_a: Hom,
    z_b: Hom,
    depth: int,
    cap: int = DEFAULT_CAP,
) -> Amalgam:
    """Amalgam for product (and scalar) signatures.

    Runs the MV amalgam on the reducts, closes the result under products
    and declared scalars to the given depth, and re-audits the legs: they
    must preserve products and scalars on every instance that stays inside
    the truncated closure, and the square must commute.
    """
    sig_kind = a.signature.kind
    scalars = tuple(sorted(set(a.signature.scalars) | set(b.signature.scalars)))
    base = amalgamate_mv(z.mv_reduct(), a.mv_reduct(), b.mv_reduct(),
                         _as_reduct(z_a), _as_reduct(z_b), cap)
    sig = Signature(sig_kind, scalars) if scalars else Signature(sig_kind)
    closed = product_strata(base.algebra, depth, cap, sig=sig).algebra

    left = Hom(a, closed, {k: v for k, v in base.left_leg.mapping.items()}).require_valid()
    right = Hom(b, closed, {k: v for k, v in base.right_leg.mapping.items()}).require_valid()

    for source, leg in ((a, left), (b, right)):
        for f in source.elements:
            for g in source.elements:
                p = source.prod(f, g)
                if p not in source:
                    continue
                q = pw_prod(leg(f), leg(g))
                if q not in closed or leg(p).values != q.values:
                    raise EmbeddingFailure("amalgam leg does not preserve the product")
            for alpha in scalars:
                v = pw_scale(alpha, f)
                if v not in source:
                    continue
                w = pw_scale(alpha, leg(f))
                if w not in closed or leg(v).values != w.values:
                    raise EmbeddingFailure("amalgam leg does not preserve a scalar")
    for f in z.elements:
        if left(z_a(f)).values != right(z_b(f)).values:
            raise EmbeddingFailure("amalgamation square does not commute")
    return Amalgam(algebra=closed, left_leg=left, right_leg=right, fiber_pairs=base.fiber_pairs)


def _as_reduct(h: Hom) -> Hom:
    return Hom(h.source.mv_reduct(), h.target.mv_reduct(), dict(h.mapping))


def inclusion_hom(small: FiniteAlgebra, big: FiniteAlgebra) -> Hom:
    """Value-inclusion hom for carriers on the same point set."""
    table = {}
    for f in small.elements:
        g = PointFunction(big.points, f.values)
        table[f.values] = g
    return Hom(small, big, table).require_valid()
