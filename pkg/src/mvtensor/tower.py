"""Iterated tensor powers, the truncated direct limit, and its product.

The tower of a carrier A on X is T^1 = A, T^n = T^(n-1) (x) A, living on
X^n with flattened point labels. Level embeddings pad an element with
trailing tensor-units; the graded product juxtaposes variable blocks. The
direct limit is represented by truncation at a declared max level together
with the padding equivalence; products that would overflow the truncation
raise LevelOverflow instead of silently promoting, so every reported result
names its level bound.

The limit's product is commutative only up to the block-swap isomorphism of
the underlying power (that is the content of the symmetry identity); on a
one-point base the swap is the identity and commutativity is literal.
"""

from dataclasses import dataclass, field

from . import catalog
from .algebra import DEFAULT_CAP, FiniteAlgebra
from .axioms import AxiomCheck, AxiomReport
from .errors import (
    EmbeddingFailure,
    LevelOverflow,
    NotInCarrier,
    NotWellDefined,
    ScalarUnsupported,
    SignatureViolation,
)
from .functions import PointFunction, pw_prod, pw_scale
from .homs import Hom
from .spectra import iso_check
from .tensor import tensor


@dataclass(frozen=True)
class TowerElement:
    level: int
    value: PointFunction


@dataclass(frozen=True, eq=False)
class Tower:
    base: FiniteAlgebra
    levels: tuple[FiniteAlgebra, ...]
    pure_pairs: tuple[tuple, ...]  # per level: generator k <- (prev index, base index)
    cap: int
    _emb: dict = field(default_factory=dict, repr=False)

    @property
    def max_level(self) -> int:
        return len(self.levels)

    @property
    def base_size(self) -> int:
        return len(self.base.points)

    def level(self, n: int) -> FiniteAlgebra:
        if not 1 <= n <= self.max_level:
            raise LevelOverflow(n, self.max_level)
        return self.levels[n - 1]

    def unit(self, n: int) -> TowerElement:
        return TowerElement(n, self.level(n).one)

    def element(self, n: int, value: PointFunction) -> TowerElement:
        if value not in self.level(n):
            raise NotInCarrier(f"value is not in level {n}")
        return TowerElement(n, value)

    # -- level embeddings (padding with tensor units) ---------------------

    def padded_value(self, n: int, value: PointFunction, m: int) -> PointFunction:
        """The level-m function agreeing with `value` on the first n blocks."""
        if m < n:
            raise ValueError("can only embed upward")
        if m == n:
            return value
        stride = self.base_size ** (m - n)
        target = self.level(m)
        out = tuple(value.values[i // stride] for i in range(len(target.points)))
        return PointFunction(target.points, out)

    def embed(self, x: TowerElement, m: int) -> TowerElement:
        v = self.padded_value(x.level, x.value, m)
        if v not in self.level(m):
            raise EmbeddingFailure("padded element missing from the higher level")
        return TowerElement(m, v)

    def embedding_indices(self, n: int, m: int) -> tuple[int, ...]:
        key = (n, m)
        if key not in self._emb:
            high = self.level(m)
            self._emb[key] = tuple(
                high.index_of(self.padded_value(n, f, m)) for f in self.level(n).elements
            )
        return self._emb[key]

    def embedding_hom(self, n: int, m: int) -> Hom:
        idx = self.embedding_indices(n, m)
        high = self.level(m)
        return Hom(
            self.level(n),
            high,
            {f.values: high.elements[idx[i]] for i, f in enumerate(self.level(n).elements)},
        )

    # -- graded product ----------------------------------------------------

    def graded_value(self, n: int, a: PointFunction, m: int, b: PointFunction) -> PointFunction:
        """Juxtaposition product: (a.b)(x_1..x_n, y_1..y_m) = a(x)b(y)."""
        if n + m > self.max_level:
            raise LevelOverflow(n + m, self.max_level)
        target = self.level(n + m)
        values = tuple(x * y for x in a.values for y in b.values)
        out = PointFunction(target.points, values)
        if out not in target:
            raise NotInCarrier("graded product escaped the target level")
        return out

    def block_swap(self, n: int, m: int, value: PointFunction) -> PointFunction:
        """Reorder X^n x X^m coordinates to X^m x X^n."""
        sn = self.base_size ** n
        sm = self.base_size ** m
        target = self.level(n + m)
        out = [None] * (sn * sm)
        for i in range(sn):
            for j in range(sm):
                out[j * sn + i] = value.values[i * sm + j]
        return PointFunction(target.points, tuple(out))

    # -- direct-limit structure --------------------------------------------

    def equivalent(self, x: TowerElement, y: TowerElement) -> bool:
        """Padding equivalence; injectivity of the embeddings makes the

        common maximum level sufficient."""
        k = max(x.level, y.level)
        return self.embed(x, k).value.values == self.embed(y, k).value.values

    def product(self, x: TowerElement, y: TowerElement) -> TowerElement:
        needed = x.level + y.level
        if needed > self.max_level:
            raise LevelOverflow(needed, self.max_level)
        return TowerElement(needed, self.graded_value(x.level, x.value, y.level, y.value))

    def scale(self, alpha, x: TowerElement) -> TowerElement:
        """Scalar multiple at the element's own level.

        Partial at any truncation: raises ScalarUnsupported when the
        multiple leaves the level's carrier.
        """
        v = pw_scale(alpha, x.value)
        if v not in self.level(x.level):
            raise ScalarUnsupported(f"{alpha} * element leaves level {x.level}")
        return TowerElement(x.level, v)

    def canonical(self, x: TowerElement) -> TowerElement:
        """Minimum-level representative of the padding class (serialization

        normal form; injectivity of the embeddings makes it unique)."""
        s = self.base_size
        for k in range(1, x.level):
            stride = s ** (x.level - k)
            size_k = s ** k
            section = tuple(x.value.values[i * stride] for i in range(size_k))
            cand = PointFunction(self.level(k).points, section)
            if cand in self.level(k) and self.padded_value(k, cand, x.level).values == x.value.values:
                return TowerElement(k, cand)
        return x


def build_tower(base: FiniteAlgebra, max_level: int, cap: int = DEFAULT_CAP) -> Tower:
    """Compute levels, generator pairings and embeddings, verifying the

    embedding laws (identity, composition, injectivity) as construction
    audits."""
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    levels = [base]
    pure_pairs: list[tuple] = [()]
    for _ in range(2, max_level + 1):
        prev = levels[-1]
        t = tensor(prev, base, cap)
        pairs = []
        seen = set()
        for i, f in enumerate(prev.elements):
            for j, g in enumerate(base.elements):
                v = t.pure(f, g).values
                if v not in seen:
                    seen.add(v)
                    pairs.append((i, j))
        levels.append(t.algebra)
        pure_pairs.append(tuple(pairs))
    tower = Tower(base=base, levels=tuple(levels), pure_pairs=tuple(pure_pairs), cap=cap)

    for n in range(1, max_level + 1):
        for m in range(n, max_level + 1):
            idx = tower.embedding_indices(n, m)
            if len(set(idx)) != len(idx):
                raise EmbeddingFailure(f"level embedding {n}->{m} is not injective")
            if n == m and any(i != k for k, i in enumerate(idx)):
                raise EmbeddingFailure("identity embedding is not the identity")
            for k in range(m, max_level + 1):
                via = tower.embedding_indices(m, k)
                direct = tower.embedding_indices(n, k)
                if tuple(via[i] for i in idx) != direct:
                    raise EmbeddingFailure(f"embedding composition {n}->{m}->{k} incoherent")
    return tower


# -- identity battery -------------------------------------------------------


def check_level_identities(tw: Tower) -> AxiomReport:
    """Exhaustive audit of the embedding/product calculus on the tower.

    The five laws: absorbing a unit block is a level embedding; embeddings
    compose coherently; the product is symmetric up to block swap; the
    product is associative; padding then multiplying equals multiplying
    then padding.
    """
    checks = []
    n_max = tw.max_level

    line = _Line("unit-absorption")
    for n in range(1, n_max):
        for m in range(1, n_max - n + 1):
            one_m = tw.level(m).one
            emb = tw.embedding_indices(n, n + m)
            for i, a in enumerate(tw.level(n).elements):
                got = tw.graded_value(n, a, m, one_m)
                want = tw.level(n + m).elements[emb[i]]
                line.instance(got.values == want.values, a)
    checks.append(line.done())

    line = _Line("embedding-coherence")
    for n in range(1, n_max + 1):
        for m in range(n, n_max + 1):
            lower = tw.embedding_indices(n, m)
            for k in range(m, n_max + 1):
                upper = tw.embedding_indices(m, k)
                direct = tw.embedding_indices(n, k)
                for i, f in enumerate(tw.level(n).elements):
                    line.instance(upper[lower[i]] == direct[i], f)
    checks.append(line.done())

    line = _Line("symmetry")
    for n in range(1, n_max):
        for m in range(1, n_max - n + 1):
            for a in tw.level(n).elements:
                for b in tw.level(m).elements:
                    ab = tw.graded_value(n, a, m, b)
                    ba = tw.graded_value(m, b, n, a)
                    line.instance(ab.values == tw.block_swap(m, n, ba).values, a, b)
    checks.append(line.done())

    line = _Line("associativity")
    for n in range(1, n_max):
        for m in range(1, n_max - n):
            for k in range(1, n_max - n - m + 1):
                for a in tw.level(n).elements:
                    for b in tw.level(m).elements:
                        bc_first = {
                            c.values: tw.graded_value(m, b, k, c)
                            for c in tw.level(k).elements
                        }
                        ab = tw.graded_value(n, a, m, b)
                        for c in tw.level(k).elements:
                            lhs = tw.graded_value(n + m, ab, k, c)
                            rhs = tw.graded_value(n, a, m + k, bc_first[c.values])
                            line.instance(lhs.values == rhs.values, a, b, c)
    checks.append(line.done())

    line = _Line("padding-product-exchange")
    for n in range(1, n_max + 1):
        for m in range(n, n_max + 1):
            for k in range(1, n_max - m + 1):
                emb_low = tw.embedding_indices(n + k, m + k)
                for a in tw.level(n).elements:
                    pa = tw.padded_value(n, a, m)
                    for b in tw.level(k).elements:
                        lhs = tw.graded_value(m, pa, k, b)
                        inner = tw.graded_value(n, a, k, b)
                        want = tw.level(m + k).elements[
                            emb_low[tw.level(n + k).index_of(inner)]
                        ]
                        line.instance(lhs.values == want.values, a, b)
    checks.append(line.done())

    return AxiomReport(signature="tower", checks=tuple(checks))


class _Line:
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


def check_product_laws(tw: Tower) -> AxiomReport:
    """Truncated-limit product audit: representative independence,

    bilinearity, associativity, units, and block-swap commutativity — over
    every argument tuple whose products stay within the truncation."""
    checks = []
    n_max = tw.max_level

    line = _Line("representative-independence")
    for n in range(1, n_max):
        for m in range(1, n_max - n + 1):
            for a in tw.level(n).elements:
                for b in tw.level(m).elements:
                    p = tw.graded_value(n, a, m, b)
                    for n2 in range(n, n_max + 1):
                        pa = tw.padded_value(n, a, n2)
                        for m2 in range(m, n_max - n2 + 1):
                            pb = tw.padded_value(m, b, m2)
                            q = tw.graded_value(n2, pa, m2, pb)
                            want = tw.padded_value(n + m, p, n2 + m2)
                            line.instance(q.values == want.values, a, b)
    checks.append(line.done())

    line = _Line("bilinearity")
    for n in range(1, n_max):
        lvl = tw.level(n)
        for x1 in lvl.elements:
            bound = lvl.neg(x1)
            for x2 in lvl.elements:
                if not x2.le(bound):
                    continue
                s = lvl.oplus(x1, x2)
                for m in range(1, n_max - n + 1):
                    for y in tw.level(m).elements:
                        lhs = tw.graded_value(n, s, m, y)
                        p1 = tw.graded_value(n, x1, m, y)
                        p2 = tw.graded_value(n, x2, m, y)
                        target = tw.level(n + m)
                        defined = p1.le(target.neg(p2))
                        line.instance(
                            defined and target.oplus(p1, p2).values == lhs.values,
                            x1,
                            x2,
                            y,
                        )
    checks.append(line.done())

    line = _Line("associativity")
    for n in range(1, n_max):
        for m in range(1, n_max - n):
            for k in range(1, n_max - n - m + 1):
                for a in tw.level(n).elements:
                    for b in tw.level(m).elements:
                        ab = tw.graded_value(n, a, m, b)
                        for c in tw.level(k).elements:
                            lhs = tw.graded_value(n + m, ab, k, c)
                            rhs = tw.graded_value(n, a, m + k, tw.graded_value(m, b, k, c))
                            line.instance(lhs.values == rhs.values, a, b, c)
    checks.append(line.done())

    line = _Line("unit")
    for n in range(1, n_max):
        for m in range(1, n_max - n + 1):
            for a in tw.level(n).elements:
                x = TowerElement(n, a)
                left = tw.product(x, tw.unit(m))
                right = tw.product(tw.unit(m), x)
                ok = tw.equivalent(left, x) and tw.equivalent(
                    right, TowerElement(n + m, tw.block_swap(n, m, left.value))
                )
                line.instance(ok, a)
    checks.append(line.done())

    line = _Line("swap-commutativity")
    for n in range(1, n_max):
        for m in range(1, n_max - n + 1):
            for a in tw.level(n).elements:
                for b in tw.level(m).elements:
                    xy = tw.graded_value(n, a, m, b)
                    yx = tw.graded_value(m, b, n, a)
                    line.instance(xy.values == tw.block_swap(m, n, yx).values, a, b)
    checks.append(line.done())

    return AxiomReport(signature="tower-product", checks=tuple(checks))


# -- universal-property lifts ------------------------------------------------


@dataclass(frozen=True, eq=False)
class LiftedHom:
    """The multiply-out extension of a hom from the base into a product-

    closed carrier: pure tensors go to the product of their images."""

    tower: Tower
    target: FiniteAlgebra
    level_maps: tuple[dict, ...]

    def __call__(self, x: TowerElement) -> PointFunction:
        return self.level_maps[x.level - 1][x.value.values]

    def level_hom(self, n: int) -> Hom:
        return Hom(self.tower.level(n), self.target, dict(self.level_maps[n - 1]))


def lift_hom(tw: Tower, target: FiniteAlgebra, f: Hom) -> LiftedHom:
    """Extend f : base -> target (an MV-hom into the MV-reduct of a

    product-closed carrier) to the truncated limit, sending a pure tensor
    a_1 (x) ... (x) a_n to f(a_1)...f(a_n). Audited: each level map is an
    MV-hom, level maps are compatible with the padding embeddings, and the
    lift preserves the tower product within the truncation."""
    if not (target.signature.has_product or (target.tables is not None and target.tables.prod)):
        raise SignatureViolation("lift target must carry a product")
    if f.source is not tw.base and f.source.carrier_values() != tw.base.carrier_values():
        raise ValueError("hom source must be the tower base")

    maps = [{x.values: f(x) for x in tw.base.elements}]
    for n in range(2, tw.max_level + 1):
        lvl = tw.level(n)
        prev_map = maps[-1]
        pairs = tw.pure_pairs[n - 1]
        images = [None] * len(lvl.elements)
        assert lvl.derivations is not None
        for i, deriv in enumerate(lvl.derivations):
            tag = deriv[0]
            if tag == "zero":
                images[i] = target.zero
            elif tag == "one":
                images[i] = target.one
            elif tag == "gen":
                pi, bj = pairs[deriv[1]]
                left = prev_map[tw.level(n - 1).elements[pi].values]
                right = maps[0][tw.base.elements[bj].values]
                p = target.prod(left, right)
                if p not in target:
                    raise NotWellDefined(
                        "image product escapes the target carrier",
                        witness=("prod", left, right),
                    )
                images[i] = p
            elif tag == "neg":
                images[i] = target.neg(images[deriv[1]])
            elif tag == "oplus":
                images[i] = target.oplus(images[deriv[1]], images[deriv[2]])
            else:  # pragma: no cover - tensor closures are MV-only
                raise AssertionError(f"unexpected derivation {deriv}")
            if images[i] not in target:
                raise NotWellDefined("derived image escapes the target", witness=(tag, lvl.elements[i]))
        maps.append({lvl.elements[i].values: images[i] for i in range(len(images))})

    lifted = LiftedHom(tower=tw, target=target, level_maps=tuple(maps))

    for n in range(1, tw.max_level + 1):
        bad = lifted.level_hom(n).violation()
        if bad is not None:
            raise NotWellDefined(f"level {n} map violates {bad[0]}", witness=bad)
        for m in range(n + 1, tw.max_level + 1):
            emb = tw.embedding_indices(n, m)
            for i, x in enumerate(tw.level(n).elements):
                if maps[m - 1][tw.level(m).elements[emb[i]].values] != maps[n - 1][x.values]:
                    raise NotWellDefined(
                        "lift incompatible with level embeddings", witness=(x,)
                    )
    for n in range(1, tw.max_level):
        for m in range(1, tw.max_level - n + 1):
            for a in tw.level(n).elements:
                for b in tw.level(m).elements:
                    p = tw.graded_value(n, a, m, b)
                    want = target.prod(maps[n - 1][a.values], maps[m - 1][b.values])
                    if want not in target or maps[n + m - 1][p.values].values != want.values:
                        raise NotWellDefined(
                            "lift does not preserve the tower product",
                            witness=(a, b),
                        )
    return lifted


@dataclass(frozen=True, eq=False)
class TowerHom:
    """Level-wise extension of a base hom to whole towers."""

    source: Tower
    target: Tower
    level_maps: tuple[dict, ...]

    def __call__(self, x: TowerElement) -> TowerElement:
        return TowerElement(x.level, self.level_maps[x.level - 1][x.value.values])

    def level_hom(self, n: int) -> Hom:
        return Hom(self.source.level(n), self.target.level(n), dict(self.level_maps[n - 1]))


def tower_hom(tw_a: Tower, tw_b: Tower, h: Hom) -> TowerHom:
    """Extend h : A -> B to every level, coordinate block by coordinate

    block; audited for hom-ness per level and naturality with the padding
    embeddings."""
    if tw_a.max_level != tw_b.max_level:
        raise ValueError("towers must share their truncation level")

    maps = [{x.values: h(x) for x in tw_a.base.elements}]
    for n in range(2, tw_a.max_level + 1):
        lvl = tw_a.level(n)
        prev_map = maps[-1]
        pairs = tw_a.pure_pairs[n - 1]
        images = [None] * len(lvl.elements)
        assert lvl.derivations is not None
        for i, deriv in enumerate(lvl.derivations):
            tag = deriv[0]
            if tag == "zero":
                images[i] = tw_b.level(n).zero
            elif tag == "one":
                images[i] = tw_b.level(n).one
            elif tag == "gen":
                pi, bj = pairs[deriv[1]]
                left = prev_map[tw_a.level(n - 1).elements[pi].values]
                right = maps[0][tw_a.base.elements[bj].values]
                images[i] = tw_b.graded_value(n - 1, left, 1, right)
            elif tag == "neg":
                images[i] = tw_b.level(n).neg(images[deriv[1]])
            elif tag == "oplus":
                images[i] = tw_b.level(n).oplus(images[deriv[1]], images[deriv[2]])
            else:  # pragma: no cover
                raise AssertionError(f"unexpected derivation {deriv}")
            if images[i] not in tw_b.level(n):
                raise NotWellDefined("image escapes the target level", witness=(lvl.elements[i],))
        maps.append({lvl.elements[i].values: images[i] for i in range(len(images))})

    hom = TowerHom(source=tw_a, target=tw_b, level_maps=tuple(maps))
    for n in range(1, tw_a.max_level + 1):
        bad = hom.level_hom(n).violation()
        if bad is not None:
            raise NotWellDefined(f"level {n} tower map violates {bad[0]}", witness=bad)
        for m in range(n + 1, tw_a.max_level + 1):
            emb_a = tw_a.embedding_indices(n, m)
            emb_b = tw_b.embedding_indices(n, m)
            lvl_bm = tw_b.level(m)
            for i, x in enumerate(tw_a.level(n).elements):
                via_a = maps[m - 1][tw_a.level(m).elements[emb_a[i]].values]
                via_b = lvl_bm.elements[emb_b[tw_b.level(n).index_of(maps[n - 1][x.values])]]
                if via_a.values != via_b.values:
                    raise NotWellDefined("tower map not natural in the embeddings", witness=(x,))
    return hom


# -- fixed point and adjunction shadows ---------------------------------------


@dataclass(frozen=True)
class FixedPointVerdict:
    holds: bool
    levels_checked: int
    witness: tuple | None = None


def check_fixed_point(p: FiniteAlgebra, max_level: int, cap: int = DEFAULT_CAP) -> FixedPointVerdict:
    """Shadow of the collapse of the tower over a product-closed carrier.

    Checks, for each level up to the bound, that (a) multiplying every pure
    tensor out along the diagonal lands in the carrier, and (b) every level
    element is a padding of a base element (the canonical level-1 map is
    onto the truncated limit). Returns a witness element when either fails.
    """
    for x in p.elements:
        for y in p.elements:
            if pw_prod(x, y) not in p:
                raise SignatureViolation("carrier is not closed under its product")

    tw = build_tower(p.mv_reduct(), max_level, cap)
    s = tw.base_size
    for n in range(2, max_level + 1):
        lvl = tw.level(n)
        for t in lvl.elements:
            diag = []
            for j in range(s):
                idx = 0
                for _ in range(n):
                    idx = idx * s + j
                diag.append(t.values[idx])
            if PointFunction(p.points, tuple(diag)) not in p:
                return FixedPointVerdict(False, n, witness=(n, t))
            stride = s ** (n - 1)
            section = tuple(t.values[c * stride] for c in range(s))
            base_elem = PointFunction(p.points, section)
            if base_elem not in p or tw.padded_value(1, PointFunction(tw.base.points, section), n).values != t.values:
                return FixedPointVerdict(False, n, witness=(n, t))
    return FixedPointVerdict(True, max_level)


def scalar_tensor_tower_commutes(
    base: FiniteAlgebra, denominator: int, max_level: int, cap: int = DEFAULT_CAP
) -> Hom | None:
    """Finite shadow of the commuting adjunctions, with matched depths.

    Compares the chain extension of the tower against the tower of the
    chain extension: L_{d^N} (x) T^N(A) vs T^N(L_d (x) A). The chain must
    be extended to the same tensor depth as the tower — with a fixed chain
    the two sides genuinely differ at any finite truncation.
    """
    tw = build_tower(base, max_level, cap)
    lhs = tensor(
        catalog.chain(denominator ** max_level, label="s"), tw.level(max_level), cap
    ).algebra
    extended = tensor(catalog.chain(denominator, label="s"), base, cap).algebra
    rhs = build_tower(extended, max_level, cap).level(max_level)
    return iso_check(lhs, rhs)
