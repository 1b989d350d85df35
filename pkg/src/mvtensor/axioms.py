"""Equational audits for finite carriers.

check_axioms exhaustively verifies the signature's axioms over a carrier
and reports each law with a pass/fail flag, the number of instances
checked, the number skipped (partial operations on truncated carriers),
and a witness when an instance fails.

Closure laws (x*y stays in the carrier, alpha*x stays in the carrier) fail
the audit on carriers that claim to be complete and are merely counted as
skipped coverage on depth-truncated ones.
"""

from dataclasses import dataclass

from . import rationals
from .algebra import FiniteAlgebra, Kind
from .errors import NotInCarrier, ScalarUnsupported
from .functions import pw_neg, pw_oplus


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    checked: int
    skipped: int = 0
    witness: tuple | None = None

    def to_payload(self):
        out = {"name": self.name, "ok": self.ok, "checked": self.checked, "skipped": self.skipped}
        if self.witness is not None:
            out["witness"] = [list(map(str, f.values)) for f in self.witness]
        return out


@dataclass(frozen=True)
class AxiomReport:
    signature: str
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_payload(self):
        return {
            "signature": self.signature,
            "ok": self.ok,
            "checks": [c.to_payload() for c in self.checks],
        }


class _Scan:
    def __init__(self, name):
        self.name = name
        self.checked = 0
        self.skipped = 0
        self.witness = None

    def instance(self, ok, *witness):
        if ok is None:
            self.skipped += 1
            return
        self.checked += 1
        if not ok and self.witness is None:
            self.witness = tuple(witness)

    def done(self):
        return AxiomCheck(
            name=self.name,
            ok=self.witness is None,
            checked=self.checked,
            skipped=self.skipped,
            witness=self.witness,
        )


def _mv_checks(a: FiniteAlgebra):
    els = a.elements
    zero, one = a.zero, a.one

    s = _Scan("oplus-comm")
    for x in els:
        for y in els:
            s.instance(a.oplus(x, y).values == a.oplus(y, x).values, x, y)
    yield s.done()

    s = _Scan("oplus-assoc")
    for x in els:
        for y in els:
            xy = a.oplus(x, y)
            for z in els:
                s.instance(a.oplus(xy, z).values == a.oplus(x, a.oplus(y, z)).values, x, y, z)
    yield s.done()

    s = _Scan("oplus-zero")
    for x in els:
        s.instance(a.oplus(x, zero).values == x.values, x)
    yield s.done()

    s = _Scan("neg-involution")
    for x in els:
        s.instance(a.neg(a.neg(x)).values == x.values, x)
    yield s.done()

    s = _Scan("one-absorbing")
    for x in els:
        s.instance(a.oplus(x, one).values == one.values, x)
    yield s.done()

    s = _Scan("characteristic")
    for x in els:
        for y in els:
            lhs = a.oplus(a.neg(a.oplus(a.neg(x), y)), y)
            rhs = a.oplus(a.neg(a.oplus(a.neg(y), x)), x)
            s.instance(lhs.values == rhs.values, x, y)
    yield s.done()


def _try(op, *args):
    try:
        return op(*args)
    except (ScalarUnsupported, NotInCarrier):
        return None


def _product_checks(a: FiniteAlgebra):
    els = a.elements
    one = a.one
    strict = a.closure_complete and a.tables is None

    s = _Scan("prod-closure")
    for x in els:
        for y in els:
            p = _try(a.prod, x, y)
            if p is None:
                s.instance(None)
            elif strict or p in a:
                s.instance(p in a, x, y)
            else:
                s.instance(None)
    yield s.done()

    s = _Scan("prod-comm")
    for x in els:
        for y in els:
            p, q = _try(a.prod, x, y), _try(a.prod, y, x)
            s.instance(None if p is None or q is None else p.values == q.values, x, y)
    yield s.done()

    s = _Scan("prod-assoc")
    for x in els:
        for y in els:
            xy = _try(a.prod, x, y)
            for z in els:
                yz = _try(a.prod, y, z)
                lhs = None if xy is None else _try(a.prod, xy, z)
                rhs = None if yz is None else _try(a.prod, x, yz)
                s.instance(None if lhs is None or rhs is None else lhs.values == rhs.values, x, y, z)
    yield s.done()

    s = _Scan("prod-unit")
    for x in els:
        for p in (_try(a.prod, x, one), _try(a.prod, one, x)):
            s.instance(None if p is None else p.values == x.values, x)
    yield s.done()

    s = _Scan("prod-bilinear")
    for x in els:
        nx = a.neg(x)
        for y in els:
            if not y.le(nx):
                continue
            sxy = a.oplus(x, y)
            for z in els:
                lhs = _try(a.prod, sxy, z)
                xz, yz = _try(a.prod, x, z), _try(a.prod, y, z)
                if lhs is None or xz is None or yz is None:
                    s.instance(None)
                    continue
                # the image partial sum must stay defined and agree
                defined = xz.le(pw_neg(yz))
                s.instance(
                    defined and pw_oplus(xz, yz).values == lhs.values, x, y, z
                )
    yield s.done()


def _scalar_checks(a: FiniteAlgebra, scalars):
    els = a.elements

    s = _Scan("scal-closure")
    strict = a.closure_complete and a.tables is None
    for alpha in scalars:
        for x in els:
            v = _try(a.scale, alpha, x)
            if v is None:
                s.instance(None)
            elif strict or v in a:
                s.instance(v in a, x)
            else:
                s.instance(None)
    yield s.done()

    s = _Scan("scal-one")
    for x in els:
        v = _try(a.scale, rationals.ONE, x)
        s.instance(None if v is None else v.values == x.values, x)
    yield s.done()

    s = _Scan("scal-add-elements")
    for alpha in scalars:
        for x in els:
            nx = a.neg(x)
            for y in els:
                if not y.le(nx):
                    continue
                lhs = _try(a.scale, alpha, a.oplus(x, y))
                ax, ay = _try(a.scale, alpha, x), _try(a.scale, alpha, y)
                if lhs is None or ax is None or ay is None:
                    s.instance(None)
                else:
                    s.instance(a.oplus(ax, ay).values == lhs.values, x, y)
    yield s.done()

    s = _Scan("scal-add-scalars")
    for alpha in scalars:
        for beta in scalars:
            if alpha + beta > 1:
                continue
            gamma = alpha + beta
            for x in els:
                lhs = _try(a.scale, gamma, x)
                ax, bx = _try(a.scale, alpha, x), _try(a.scale, beta, x)
                if lhs is None or ax is None or bx is None:
                    s.instance(None)
                else:
                    s.instance(a.oplus(ax, bx).values == lhs.values, x)
    yield s.done()

    s = _Scan("scal-mul")
    for alpha in scalars:
        for beta in scalars:
            for x in els:
                lhs = _try(a.scale, alpha * beta, x)
                bx = _try(a.scale, beta, x)
                rhs = None if bx is None else _try(a.scale, alpha, bx)
                if lhs is None or rhs is None:
                    s.instance(None)
                else:
                    s.instance(lhs.values == rhs.values, x)
    yield s.done()


def _fmv_checks(a: FiniteAlgebra, scalars):
    els = a.elements
    s = _Scan("scal-prod-compat")
    for alpha in scalars:
        for x in els:
            ax = _try(a.scale, alpha, x)
            for y in els:
                xy = _try(a.prod, x, y)
                ay = _try(a.scale, alpha, y)
                lhs = None if xy is None else _try(a.scale, alpha, xy)
                mid = None if ax is None else _try(a.prod, ax, y)
                rhs = None if ay is None else _try(a.prod, x, ay)
                if lhs is None or mid is None or rhs is None:
                    s.instance(None)
                else:
                    s.instance(lhs.values == mid.values == rhs.values, x, y)
    yield s.done()


def check_axioms(a: FiniteAlgebra, scalars=None) -> AxiomReport:
    """Exhaustive equational audit of `a` against its signature.

    `scalars` overrides the scalar set to audit (defaults to the signature's
    declared scalars, or the tabulated ones on table-backed carriers).
    """
    checks = list(_mv_checks(a))
    kind = a.signature.kind
    has_prod_table = a.tables is not None and a.tables.prod is not None
    if a.signature.has_product or has_prod_table:
        checks.extend(_product_checks(a))
    if scalars is None:
        scalars = a.signature.scalars
        if not scalars and a.tables is not None and a.tables.scalars:
            scalars = tuple(sorted(a.tables.scalars))
    if a.signature.has_scalars or (scalars and a.tables is not None):
        checks.extend(_scalar_checks(a, scalars))
    if kind is Kind.FMV or (has_prod_table and scalars):
        checks.extend(_fmv_checks(a, scalars))
    return AxiomReport(signature=kind.value, checks=tuple(checks))
