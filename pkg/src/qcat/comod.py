"""Comonoids, two-sided comodules, and the cotensor bicategory they form.

A comodule ``M: C -> D`` is stored through its joint coaction
``M -> C ⊗ M ⊗ D``; the one-sided coactions are derived from it.  Composition of
comodules is the cotensor product, computed as an equalizer, and every map
between cotensors is obtained by factoring through the equalizer inclusions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .checks import Check, equation, first_failure
from .context import EqualizerResult, MonoidalContext, Morphism, Obj
from .errors import (
    CoactionDoesNotRestrict,
    ComparisonNotInvertible,
    EndpointMismatch,
    LawViolation,
    NotInImage,
    ShapeMismatch,
    SideConditionFailed,
)


@dataclass(frozen=True)
class Comonoid:
    carrier: Obj
    delta: Morphism
    epsilon: Morphism
    name: str = field(default="C", compare=False)

    def __post_init__(self):
        ctx = self.delta.ctx
        if self.delta.source != self.carrier or self.delta.target != ctx.tensor(self.carrier, self.carrier):
            raise ShapeMismatch(f"comultiplication of {self.name} has the wrong type")
        if self.epsilon.source != self.carrier or not self.epsilon.target.is_unit:
            raise ShapeMismatch(f"counit of {self.name} has the wrong type")

    @property
    def ctx(self) -> MonoidalContext:
        return self.delta.ctx

    @property
    def identity(self) -> Morphism:
        return self.ctx.identity(self.carrier)

    def delta3(self) -> Morphism:
        """Twofold comultiplication ``C -> C⊗C⊗C``."""
        ctx = self.ctx
        return ctx.compose(ctx.tensor(self.delta, self.identity), self.delta)


def unit_comonoid(ctx: MonoidalContext) -> Comonoid:
    i = ctx.identity(ctx.unit())
    return Comonoid(ctx.unit(), i, i, "I")


def comonoid_checks(c: Comonoid) -> list[Check]:
    ctx, one = c.ctx, c.identity
    return [
        equation(
            f"{c.name} coassociativity",
            ctx.compose(ctx.tensor(c.delta, one), c.delta),
            ctx.compose(ctx.tensor(one, c.delta), c.delta),
        ),
        equation(f"{c.name} left counit", ctx.compose(ctx.tensor(c.epsilon, one), c.delta), one),
        equation(f"{c.name} right counit", ctx.compose(ctx.tensor(one, c.epsilon), c.delta), one),
    ]


def validate_comonoid(c: Comonoid) -> bool:
    return all(ch.passed for ch in comonoid_checks(c))


def comonoid_map_checks(f: Morphism, source: Comonoid, target: Comonoid, name: str = "f") -> list[Check]:
    if f.source != source.carrier or f.target != target.carrier:
        raise ShapeMismatch(f"{name} is not a map {source.name} -> {target.name}")
    ctx = f.ctx
    return [
        equation(f"{name} preserves comultiplication", target.delta @ f, ctx.tensor(f, f) @ source.delta),
        equation(f"{name} preserves counit", target.epsilon @ f, source.epsilon),
    ]


def is_comonoid_map(f: Morphism, source: Comonoid, target: Comonoid) -> bool:
    return all(ch.passed for ch in comonoid_map_checks(f, source, target))


def opposite_comonoid(c: Comonoid) -> Comonoid:
    """Same counit, comultiplication followed by the symmetry."""
    ctx = c.ctx
    return Comonoid(c.carrier, ctx.braiding(c.carrier, c.carrier) @ c.delta, c.epsilon, c.name + "°")


def tensor_comonoids(*cs: Comonoid) -> Comonoid:
    if not cs:
        raise ValueError("need at least one comonoid")
    out = cs[0]
    for d in cs[1:]:
        ctx = out.ctx
        shuffle = ctx.permutation([out.carrier, out.carrier, d.carrier, d.carrier], (1, 3, 2, 4))
        out = Comonoid(
            ctx.tensor(out.carrier, d.carrier),
            shuffle @ ctx.tensor(out.delta, d.delta),
            ctx.tensor(out.epsilon, d.epsilon),
            f"{out.name}⊗{d.name}",
        )
    return out


@dataclass(frozen=True)
class Comodule:
    """A two-sided comodule ``left -> right`` with coaction ``M -> left⊗M⊗right``."""

    left: Comonoid
    right: Comonoid
    carrier: Obj
    coaction: Morphism
    name: str = field(default="M", compare=False)

    def __post_init__(self):
        ctx = self.coaction.ctx
        want = ctx.tensor(self.left.carrier, self.carrier, self.right.carrier)
        if self.coaction.source != self.carrier or self.coaction.target != want:
            raise ShapeMismatch(f"coaction of {self.name} has the wrong type")

    @property
    def ctx(self) -> MonoidalContext:
        return self.coaction.ctx

    @property
    def identity(self) -> Morphism:
        return self.ctx.identity(self.carrier)

    @property
    def delta_l(self) -> Morphism:
        """Left coaction ``M -> left⊗M``."""
        ctx = self.ctx
        return ctx.tensor(self.left.identity, self.identity, self.right.epsilon) @ self.coaction

    @property
    def delta_r(self) -> Morphism:
        """Right coaction ``M -> M⊗right``."""
        ctx = self.ctx
        return ctx.tensor(self.left.epsilon, self.identity, self.right.identity) @ self.coaction


def comodule_from_sides(left: Comonoid, right: Comonoid, delta_l: Morphism, delta_r: Morphism, name="M") -> Comodule:
    """Assemble the joint coaction ``(1⊗δ_r)δ_l`` from one-sided coactions."""
    ctx = delta_l.ctx
    coaction = ctx.tensor(left.identity, delta_r) @ delta_l
    return Comodule(left, right, delta_l.source, coaction, name)


def comodule_checks(m: Comodule) -> list[Check]:
    ctx = m.ctx
    lhs = ctx.tensor(m.left.delta, m.identity, m.right.delta) @ m.coaction
    rhs = ctx.tensor(m.left.identity, m.coaction, m.right.identity) @ m.coaction
    counit = ctx.tensor(m.left.epsilon, m.identity, m.right.epsilon) @ m.coaction
    return [
        equation(f"{m.name} coaction coassociativity", lhs, rhs),
        equation(f"{m.name} coaction counit", counit, m.identity),
    ]


def validate_comodule(m: Comodule) -> bool:
    return all(ch.passed for ch in comodule_checks(m))


@dataclass(frozen=True)
class ComoduleMap:
    source: Comodule
    target: Comodule
    map: Morphism

    def __post_init__(self):
        if self.map.source != self.source.carrier or self.map.target != self.target.carrier:
            raise ShapeMismatch("comodule map has the wrong underlying type")


def comodule_map_checks(phi: ComoduleMap, name: str = "map") -> list[Check]:
    s, t = phi.source, phi.target
    if s.left != t.left or s.right != t.right:
        raise EndpointMismatch("comodule map between comodules over different comonoids")
    ctx = phi.map.ctx
    return [
        equation(
            f"{name} colinearity",
            t.coaction @ phi.map,
            ctx.tensor(s.left.identity, phi.map, s.right.identity) @ s.coaction,
        )
    ]


def validate_comodule_map(phi: ComoduleMap) -> bool:
    return all(ch.passed for ch in comodule_map_checks(phi))


def require(checks: list[Check], error=LawViolation) -> None:
    bad = first_failure(checks)
    if bad is not None:
        raise error(bad.name, bad.witness)


def identity_comodule(c: Comonoid) -> Comodule:
    """``C`` as a comodule ``C -> C`` through its twofold comultiplication."""
    return Comodule(c, c, c.carrier, c.delta3(), c.name)


# -- cotensor ----------------------------------------------------------------------


@dataclass(frozen=True)
class Cotensor:
    """``M ⊗_D N`` with its inclusion into ``M ⊗ N``."""

    first: Comodule
    second: Comodule
    comodule: Comodule
    equalizer: EqualizerResult = field(compare=False)

    @property
    def carrier(self) -> Obj:
        return self.comodule.carrier

    @property
    def inclusion(self) -> Morphism:
        return self.equalizer.inclusion

    def factor(self, h: Morphism) -> Morphism:
        """Factor a map into ``M⊗N`` through the inclusion; raises NotInImage otherwise."""
        return self.comodule.ctx.factor_through_mono(self.inclusion, h)


def cotensor(m: Comodule, n: Comodule, name: str | None = None) -> Cotensor:
    if m.right != n.left:
        raise EndpointMismatch(f"cannot cotensor {m.name} and {n.name}: middle comonoids differ")
    ctx = m.ctx
    name = name or f"({m.name}□{n.name})"
    eq = ctx.equalizer(ctx.tensor(m.delta_r, n.identity), ctx.tensor(m.identity, n.delta_l), name)
    outer = ctx.tensor(m.delta_l, n.delta_r) @ eq.inclusion
    widened = ctx.tensor(m.left.identity, eq.inclusion, n.right.identity)
    try:
        coaction = ctx.factor_through_mono(widened, outer)
    except NotInImage as exc:
        label = eq.object.labels[exc.witness] if isinstance(exc.witness, int) else exc.witness
        raise CoactionDoesNotRestrict(f"coaction on {name}", label) from exc
    comodule = Comodule(m.left, n.right, eq.object, coaction, name)
    return Cotensor(m, n, comodule, eq)


def cotensor_map(source: Cotensor, target: Cotensor, phi: Morphism, psi: Morphism) -> Morphism:
    """``φ ⊗_D ψ`` between two cotensors, by restriction of ``φ⊗ψ``."""
    ctx = phi.ctx
    return target.factor(ctx.tensor(phi, psi) @ source.inclusion)


@dataclass(frozen=True)
class Unitor:
    cotensor: Cotensor
    forward: Morphism
    backward: Morphism


def left_unitor(n: Comodule) -> Unitor:
    """``C ⊗_C N ≅ N``."""
    cot = cotensor(identity_comodule(n.left), n)
    ctx = n.ctx
    forward = ctx.tensor(n.left.epsilon, n.identity) @ cot.inclusion
    return Unitor(cot, forward, cot.factor(n.delta_l))


def right_unitor(m: Comodule) -> Unitor:
    """``M ⊗_D D ≅ M``."""
    cot = cotensor(m, identity_comodule(m.right))
    ctx = m.ctx
    forward = ctx.tensor(m.identity, m.right.epsilon) @ cot.inclusion
    return Unitor(cot, forward, cot.factor(m.delta_r))


@dataclass(frozen=True)
class Associator:
    inner_left: Cotensor  # M ⊗ N
    outer_left: Cotensor  # (M ⊗ N) ⊗ L
    inner_right: Cotensor  # N ⊗ L
    outer_right: Cotensor  # M ⊗ (N ⊗ L)
    forward: Morphism
    backward: Morphism


def associator(m: Comodule, n: Comodule, l: Comodule) -> Associator:
    ctx = m.ctx
    mn = cotensor(m, n)
    mn_l = cotensor(mn.comodule, l)
    nl = cotensor(n, l)
    m_nl = cotensor(m, nl.comodule)
    into_left = ctx.tensor(mn.inclusion, l.identity) @ mn_l.inclusion
    into_right = ctx.tensor(m.identity, nl.inclusion) @ m_nl.inclusion
    try:
        forward = ctx.factor_through_mono(into_right, into_left)
        backward = ctx.factor_through_mono(into_left, into_right)
    except NotInImage as exc:
        raise ComparisonNotInvertible(f"triple cotensors differ: {exc}") from exc
    return Associator(mn, mn_l, nl, m_nl, forward, backward)


def tensor_comodules(m: Comodule, n: Comodule) -> Comodule:
    """``M⊗N : C⊗C' -> D⊗D'``."""
    ctx = m.ctx
    blocks = [m.left.carrier, m.carrier, m.right.carrier, n.left.carrier, n.carrier, n.right.carrier]
    shuffle = ctx.permutation(blocks, (1, 4, 2, 5, 3, 6))
    return Comodule(
        tensor_comonoids(m.left, n.left),
        tensor_comonoids(m.right, n.right),
        ctx.tensor(m.carrier, n.carrier),
        shuffle @ ctx.tensor(m.coaction, n.coaction),
        f"{m.name}⊗{n.name}",
    )


# -- the adjunction induced by a comonoid map -------------------------------------------


@dataclass(frozen=True)
class StarAdjunction:
    """For a comonoid map ``f: C -> D``: ``upper: C -> D`` left adjoint to ``lower: D -> C``."""

    source: Comonoid
    target: Comonoid
    f: Morphism
    upper: Comodule
    lower: Comodule
    unit: ComoduleMap  # C => upper ⊗_D lower
    counit: ComoduleMap  # lower ⊗_C upper => D


def star_adjunction(f: Morphism, source: Comonoid, target: Comonoid) -> StarAdjunction:
    require(comonoid_map_checks(f, source, target))
    ctx = f.ctx
    d3 = source.delta3()
    one = source.identity
    upper = Comodule(source, target, source.carrier, ctx.tensor(one, one, f) @ d3, f"{source.name}^f")
    lower = Comodule(target, source, source.carrier, ctx.tensor(f, one, one) @ d3, f"{source.name}_f")
    up_down = cotensor(upper, lower)
    unit = ComoduleMap(identity_comodule(source), up_down.comodule, up_down.factor(source.delta))
    down_up = cotensor(lower, upper)
    counit_map = f @ ctx.tensor(source.epsilon, one) @ down_up.inclusion
    counit = ComoduleMap(down_up.comodule, identity_comodule(target), counit_map)
    return StarAdjunction(source, target, f, upper, lower, unit, counit)


def triangle_identities(adj: StarAdjunction) -> list[Check]:
    """Both zig-zag composites, compared with identities."""
    ctx = adj.f.ctx
    up, down = adj.upper, adj.lower
    alpha, beta = adj.unit.map, adj.counit.map

    lam = left_unitor(up)
    a = associator(up, down, up)
    alpha_1 = cotensor_map(lam.cotensor, a.outer_left, alpha, up.identity)
    rho = right_unitor(up)
    one_beta = cotensor_map(a.outer_right, rho.cotensor, up.identity, beta)
    zig = ctx.compose(rho.forward, one_beta, a.forward, alpha_1, lam.backward)

    rho2 = right_unitor(down)
    b = associator(down, up, down)
    one_alpha = cotensor_map(rho2.cotensor, b.outer_right, down.identity, alpha)
    lam2 = left_unitor(down)
    beta_1 = cotensor_map(b.outer_left, lam2.cotensor, beta, down.identity)
    zag = ctx.compose(lam2.forward, beta_1, b.backward, one_alpha, rho2.backward)

    return [
        equation("triangle identity on the left adjoint", zig, up.identity),
        equation("triangle identity on the right adjoint", zag, down.identity),
    ]


# -- the bidual monoidale -------------------------------------------------------------


@dataclass(frozen=True)
class Monoidale:
    """Structure on ``C°⊗C``: counit ``e``, product ``p``, unit ``j`` and ``n``."""

    base: Comonoid  # C°⊗C
    opposite: Comonoid  # C°
    e: Comodule  # C⊗C° -> I
    n: Comodule  # I -> C°⊗C
    p: Comodule  # (C°⊗C)⊗(C°⊗C) -> C°⊗C
    j: Comodule  # I -> C°⊗C


def counit_comodule(c: Comonoid) -> Comodule:
    """``e : C⊗C° -> I`` on the carrier of ``C``."""
    ctx, x = c.ctx, c.carrier
    coaction = ctx.permutation([x, x, x], (1, 3, 2)) @ c.delta3()
    return Comodule(tensor_comonoids(c, opposite_comonoid(c)), unit_comonoid(ctx), x, coaction, "e")


def bidual_monoidale(c: Comonoid, validate_product: bool = True) -> Monoidale:
    """Build and validate the comodules that make ``C°⊗C`` a monoidale.

    Validating ``p`` costs a ninefold tensor power of ``C``; pass
    ``validate_product=False`` to skip it for large ``C``.
    """
    ctx = c.ctx
    x = c.carrier
    d3 = c.delta3()
    co = opposite_comonoid(c)
    base = tensor_comonoids(co, c)
    unit = unit_comonoid(ctx)
    e = counit_comodule(c)
    n = Comodule(unit, base, x, ctx.permutation([x, x, x], (2, 1, 3)) @ d3, "n")
    j = Comodule(unit, base, x, ctx.permutation([x, x, x], (2, 1, 3)) @ d3, "j")
    p = tensor_comodules(tensor_comodules(identity_comodule(co), e), identity_comodule(c))
    p = Comodule(tensor_comonoids(base, base), base, p.carrier, p.coaction, "p")
    for m in (e, n, j) + ((p,) if validate_product else ()):
        require(comodule_checks(m))
    return Monoidale(base, co, e, n, p, j)


# -- cofree extension and corestriction --------------------------------------------------


def cofree_target(c: Comonoid, n: Comodule) -> Comodule:
    """``e ⊗ N : C⊗C° -> D`` for a comodule ``N: I -> D``; its carrier is ``C⊗N``."""
    if not n.left.carrier.is_unit:
        raise EndpointMismatch("cofree target needs a comodule out of the unit")
    return tensor_comodules(counit_comodule(c), n)


def cofree_corestrict(c: Comonoid, beta: Morphism, n: Comodule) -> Morphism:
    """``M -> C⊗N`` becomes ``M -> N`` by applying the counit of ``C``."""
    ctx = beta.ctx
    return ctx.tensor(c.epsilon, n.identity) @ beta


def _split_left(c: Comonoid, m: Comodule) -> tuple[Morphism, Morphism]:
    """The two one-slot restrictions of the ``C⊗C°`` coaction of ``M``: keep ``C``, keep ``C°``."""
    ctx = m.ctx
    one = c.identity
    keep_first = ctx.tensor(one, c.epsilon, m.identity) @ m.delta_l
    keep_second = ctx.tensor(c.epsilon, one, m.identity) @ m.delta_l
    return keep_first, keep_second


def cofree_extend(c: Comonoid, m: Comodule, n: Comodule, alpha: Morphism) -> ComoduleMap:
    """Extend ``α: M -> N`` to a comodule map ``M => e⊗N`` when the side condition holds.

    ``M`` must be a comodule ``C⊗C° -> D`` and ``N`` a comodule ``I -> D``.
    Raises :class:`SideConditionFailed` with a witness otherwise, including when
    the extension is not colinear.
    """
    ctx = m.ctx
    target = cofree_target(c, n)
    if m.left != target.left or m.right != target.right:
        raise EndpointMismatch("source comodule does not have the shape C⊗C° -> D")
    keep_first, keep_second = _split_left(c, m)
    lift = ctx.tensor(c.identity, alpha)
    w = ctx.difference(lift @ keep_first, lift @ keep_second)
    if w is not None:
        raise SideConditionFailed("cofree side condition", w)
    beta = ComoduleMap(m, target, lift @ keep_first)
    bad = first_failure(comodule_map_checks(beta, "extension"))
    if bad is not None:
        raise SideConditionFailed("colinearity of the extension", bad.witness)
    return beta


def unit_extend(c: Comonoid, n: Comodule, alpha: Morphism) -> Morphism:
    """Extend ``α: C -> N`` for ``N: C°⊗C -> D`` to ``C -> C⊗N`` when the two
    one-slot readings of ``δ_l α`` agree; raises :class:`SideConditionFailed` otherwise."""
    ctx = n.ctx
    one = c.identity
    keep_opposite = ctx.tensor(one, c.epsilon, n.identity) @ n.delta_l @ alpha
    keep_plain = ctx.tensor(c.epsilon, one, n.identity) @ n.delta_l @ alpha
    w = ctx.difference(keep_opposite, keep_plain)
    if w is not None:
        raise SideConditionFailed("unit side condition", w)
    return keep_plain
