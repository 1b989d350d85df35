"""Term language over the four signatures and rational-grid semantics.

Terms are evaluated in the standard unit-interval model; grid tabulation
gives refutation-sound equality probes (a "true" verdict means equal on
this grid only). The free-object evidence compares, depth by depth, two
independent routes to the product closure of the grid projections.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from . import rationals
from .algebra import DEFAULT_CAP, FiniteAlgebra, Kind, Signature, mv_closure, product_strata
from .catalog import chain
from .errors import GridTooLarge, ParseError, SignatureViolation
from .functions import PointFunction, pw_prod, pw_scale
from .points import PointSet
from .tensor import tensor

DEFAULT_GRID_BOUND = 20000


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class TZero(Term):
    pass


@dataclass(frozen=True)
class TOne(Term):
    pass


@dataclass(frozen=True)
class TVar(Term):
    index: int  # 1-based


@dataclass(frozen=True)
class TNeg(Term):
    arg: Term


@dataclass(frozen=True)
class TOplus(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class TOdot(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class TProd(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class TScal(Term):
    scalar: Fraction
    arg: Term


def _tokenize(text: str):
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_term(text: str, sig: Signature, arity: int) -> Term:
    """Parse prefix syntax: (oplus t t) (neg t) (odot t t) (prod t t)

    (scal p/q t) (var i) | x<i> | 0 | 1. Product needs a PMV/FMV signature,
    scalars a RieszQ/FMV one; violations raise SignatureViolation."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty term")
    pos = 0

    def need(kind_ok, what):
        if not kind_ok:
            raise SignatureViolation(f"{what} is not available in signature {sig.kind.value}")

    def atom(tok):
        if tok == "0":
            return TZero()
        if tok == "1":
            return TOne()
        if tok.startswith("x") and tok[1:].isdigit():
            i = int(tok[1:])
            if not 1 <= i <= arity:
                raise ParseError(f"variable {tok} exceeds arity {arity}")
            return TVar(i)
        raise ParseError(f"unexpected token {tok!r}")

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of term")
        tok = tokens[pos]
        pos += 1
        if tok != "(":
            return atom(tok)
        if pos >= len(tokens):
            raise ParseError("unexpected end after '('")
        head = tokens[pos]
        pos += 1
        if head == "var":
            idx_tok = tokens[pos]
            pos += 1
            node = atom("x" + idx_tok)
        elif head == "neg":
            node = TNeg(parse())
        elif head == "oplus":
            node = TOplus(parse(), parse())
        elif head == "odot":
            node = TOdot(parse(), parse())
        elif head == "prod":
            need(sig.has_product, "prod")
            node = TProd(parse(), parse())
        elif head == "scal":
            need(sig.has_scalars, "scal")
            try:
                alpha = rationals.unit(tokens[pos])
            except (ValueError, IndexError) as exc:
                raise ParseError(f"bad scalar in scal node: {exc}") from None
            pos += 1
            node = TScal(alpha, parse())
        else:
            raise ParseError(f"unknown connective {head!r}")
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ParseError("missing ')'")
        pos += 1
        return node

    term = parse()
    if pos != len(tokens):
        raise ParseError(f"trailing tokens after term: {tokens[pos:]}")
    return term


def eval_term(term: Term, assignment) -> Fraction:
    """Standard-model evaluation; assignment is a sequence, x1 first."""
    if isinstance(term, TZero):
        return rationals.ZERO
    if isinstance(term, TOne):
        return rationals.ONE
    if isinstance(term, TVar):
        return rationals.unit(assignment[term.index - 1])
    if isinstance(term, TNeg):
        return rationals.neg(eval_term(term.arg, assignment))
    if isinstance(term, TOplus):
        return rationals.oplus(eval_term(term.left, assignment), eval_term(term.right, assignment))
    if isinstance(term, TOdot):
        return rationals.odot(eval_term(term.left, assignment), eval_term(term.right, assignment))
    if isinstance(term, TProd):
        return rationals.prod(eval_term(term.left, assignment), eval_term(term.right, assignment))
    if isinstance(term, TScal):
        return term.scalar * eval_term(term.arg, assignment)
    raise TypeError(f"not a term: {term!r}")


# -- grids ----------------------------------------------------------------------


def grid(arity: int, denominator: int, bound: int = DEFAULT_GRID_BOUND):
    """The point set (L_d)^k with its coordinate assignments."""
    size = (denominator + 1) ** arity
    if size > bound:
        raise GridTooLarge(f"grid has {size} points, bound is {bound}")
    steps = [Fraction(i, denominator) for i in range(denominator + 1)]
    coords = list(iter_product(steps, repeat=arity))
    labels = tuple(",".join(str(c) for c in pt) for pt in coords)
    return PointSet(labels), coords


def term_function_on_grid(
    term: Term, arity: int, denominator: int, bound: int = DEFAULT_GRID_BOUND
) -> PointFunction:
    points, coords = grid(arity, denominator, bound)
    return PointFunction(points, tuple(eval_term(term, pt) for pt in coords))


@dataclass(frozen=True)
class GridVerdict:
    equal: bool
    point: str | None = None
    left: Fraction | None = None
    right: Fraction | None = None


def grid_equal(
    t1: Term, t2: Term, arity: int, denominator: int, bound: int = DEFAULT_GRID_BOUND
) -> GridVerdict:
    """Refutation-sound probe: False carries a witness; True means equal on

    this grid only (a semidecision, never a proof of term equality)."""
    points, coords = grid(arity, denominator, bound)
    for label, pt in zip(points.labels, coords):
        a, b = eval_term(t1, pt), eval_term(t2, pt)
        if a != b:
            return GridVerdict(False, point=label, left=a, right=b)
    return GridVerdict(True)


# -- free-object evidence --------------------------------------------------------


def grid_projections(arity: int, denominator: int, bound: int = DEFAULT_GRID_BOUND):
    points, coords = grid(arity, denominator, bound)
    return [
        PointFunction(points, tuple(pt[i] for pt in coords)) for i in range(arity)
    ]


def projection_algebra(
    arity: int, denominator: int, cap: int = DEFAULT_CAP, bound: int = DEFAULT_GRID_BOUND
) -> FiniteAlgebra:
    projections = grid_projections(arity, denominator, bound)
    return mv_closure(projections[0].domain, projections, cap)


def products_route(base: FiniteAlgebra, depth: int, cap: int) -> list[FiniteAlgebra]:
    """Independent route to the depth-n product closure: close the n-fold

    pointwise products of base elements, with no intermediate strata."""
    out = [base]
    layer = list(base.elements)
    for _ in range(2, depth + 1):
        seen = set()
        nxt = []
        for f in layer:
            for a in base.elements:
                p = pw_prod(f, a)
                if p.values not in seen:
                    seen.add(p.values)
                    nxt.append(p)
        layer = nxt
        out.append(mv_closure(base.points, layer, cap))
    return out


@dataclass(frozen=True)
class FreeEvidence:
    arity: int
    denominator: int
    depth: int
    product_sizes: tuple[int, ...]
    product_equal: tuple[bool, ...]
    product_stabilized: bool
    scalar_sizes: tuple[int, int]
    scalar_equal: bool

    @property
    def ok(self) -> bool:
        return all(self.product_equal) and self.scalar_equal

    def to_payload(self):
        return {
            "arity": self.arity,
            "denominator": self.denominator,
            "depth": self.depth,
            "product_sizes": list(self.product_sizes),
            "product_equal": list(self.product_equal),
            "product_stabilized": self.product_stabilized,
            "scalar_sizes": list(self.scalar_sizes),
            "scalar_equal": self.scalar_equal,
            "ok": self.ok,
        }


def free_pmv_evidence(
    arity: int,
    denominator: int,
    cap: int = DEFAULT_CAP,
    depth: int = 3,
    bound: int = DEFAULT_GRID_BOUND,
) -> FreeEvidence:
    """Grid-scale evidence for the free-object characterizations.

    Product part: the stratified closure of the grid projections (worklist
    route) must agree, depth by depth, with the closure of pure n-fold
    products (tuple route) — the two sides of the free-product claim that
    are finitely computable. Scalar part: the chain extension of the
    projection closure computed through the tensor machinery must agree
    with the direct closure of the scalar multiples on the grid.
    """
    base = projection_algebra(arity, denominator, cap, bound)
    layered = product_strata(base, depth, cap)
    strata = layered.strata
    tuples = products_route(base, depth, cap)
    per_depth = []
    sizes = []
    for n in range(min(len(strata), len(tuples))):
        per_depth.append(strata[n].carrier_values() == tuples[n].carrier_values())
        sizes.append(len(strata[n]))
    stabilized = layered.complete

    scalar_chain = chain(denominator, label="s")
    via_tensor = tensor(scalar_chain, base, cap).algebra
    direct_gens = []
    for alpha in (Fraction(k, denominator) for k in range(denominator + 1)):
        for f in base.elements:
            direct_gens.append(pw_scale(alpha, f))
    direct = mv_closure(base.points, direct_gens, cap)
    scalar_equal = frozenset(f.values for f in via_tensor.elements) == frozenset(
        f.values for f in direct.elements
    )

    return FreeEvidence(
        arity=arity,
        denominator=denominator,
        depth=depth,
        product_sizes=tuple(sizes),
        product_equal=tuple(per_depth),
        product_stabilized=stabilized,
        scalar_sizes=(len(via_tensor), len(direct)),
        scalar_equal=scalar_equal,
    )


def signature_for(kind_name: str, scalar_denominator: int | None = None) -> Signature:
    """Helper for the CLI: build a signature from its JSON name."""
    kind = Kind(kind_name)
    if kind in (Kind.RIESZ, Kind.FMV):
        d = scalar_denominator or 2
        return Signature(kind, tuple(Fraction(k, d) for k in range(d + 1)))
    return Signature(kind)
