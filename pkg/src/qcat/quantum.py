"""Quantum graphs and quantum categories, with an axiom checker that reports witnesses.

A quantum graph is a comonoid ``A`` of arrows over a comonoid ``C`` of objects,
with source and target comonoid maps ``s: A -> C°`` and ``t: A -> C``.  A quantum
category adds a composition ``ν₂`` from the comodule of composable pairs
``H = A ⊗_C A`` to ``A`` and a unit ``ν₀: C -> A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .checks import (
    FAIL,
    PASS,
    Check,
    attempt,
    blocked,
    equation,
    factor_failure,
    first_failure,
    summarize,
)
from .comod import (
    ComoduleMap,
    Comodule,
    Comonoid,
    Cotensor,
    comodule_from_sides,
    comodule_map_checks,
    comodule_checks,
    comonoid_checks,
    comonoid_map_checks,
    cotensor,
    identity_comodule,
    left_unitor,
    opposite_comonoid,
    right_unitor,
    tensor_comonoids,
)
from .context import MonoidalContext, Morphism
from .errors import (
    Axiom2Violated,
    AxiomsFail,
    CoactionDoesNotRestrict,
    ComparisonNotInvertible,
    InvalidGraph,
    NgrDisagreement,
    NotInImage,
    ShapeMismatch,
)

AXIOMS = (1, 2, 3, 4, 5, 6)

AXIOM_TITLES = {
    1: "composition and unit are comodule maps; associativity and unit laws",
    2: "source and target of composable pairs agree after composing",
    3: "composition preserves comultiplication",
    4: "composition preserves counit",
    5: "unit preserves comultiplication",
    6: "unit preserves counit",
}


@dataclass(frozen=True, eq=False)
class QuantumGraph:
    objects: Comonoid
    arrows: Comonoid
    source: Morphism
    target: Morphism

    def __post_init__(self):
        for name, m in (("source", self.source), ("target", self.target)):
            if m.source != self.arrows.carrier or m.target != self.objects.carrier:
                raise ShapeMismatch(f"{name} map must go from arrows to objects")

    def __eq__(self, other):
        if not isinstance(other, QuantumGraph):
            return NotImplemented
        return (self.objects, self.arrows, self.source, self.target) == (
            other.objects,
            other.arrows,
            other.source,
            other.target,
        )

    __hash__ = None

    @property
    def ctx(self) -> MonoidalContext:
        return self.arrows.ctx

    @cached_property
    def opposite_objects(self) -> Comonoid:
        return opposite_comonoid(self.objects)

    @cached_property
    def bicomodule(self) -> Comodule:
        """``A`` as a comodule ``C -> C`` (unvalidated)."""
        return arrows_as_bicomodule(self, validate=False)

    @cached_property
    def pairs(self) -> "ComposablePairs":
        return composable_pairs(self)


def graph_checks(g: QuantumGraph) -> list[Check]:
    checks = comonoid_checks(g.objects) + comonoid_checks(g.arrows)
    checks += comonoid_map_checks(g.source, g.arrows, g.opposite_objects, "source map s: A -> C°")
    checks += comonoid_map_checks(g.target, g.arrows, g.objects, "target map t: A -> C")
    ctx = g.ctx
    a = g.arrows
    c = g.objects.carrier
    checks.append(
        equation(
            "source/target square",
            ctx.tensor(g.source, g.target) @ a.delta,
            ctx.braiding(c, c) @ ctx.tensor(g.target, g.source) @ a.delta,
        )
    )
    return checks


def require_graph(g: QuantumGraph) -> None:
    bad = first_failure(graph_checks(g))
    if bad is not None:
        raise InvalidGraph(bad.name, bad.witness)


def arrows_as_bicomodule(g: QuantumGraph, validate: bool = True) -> Comodule:
    """``A: C -> C`` with left coaction from ``s`` and right coaction from ``t``.

    Raises InvalidGraph when ``validate`` is set and the graph is invalid.
    """
    if validate:
        require_graph(g)
    ctx = g.ctx
    a, c = g.arrows, g.objects.carrier
    d3 = a.delta3()
    swap = ctx.braiding(a.carrier, c)
    delta_l = swap @ ctx.tensor(a.identity, g.source, a.epsilon) @ d3
    delta_r = ctx.tensor(a.identity, a.epsilon, g.target) @ d3
    return comodule_from_sides(g.objects, g.objects, delta_l, delta_r, "A")


@dataclass(frozen=True)
class ComposablePairs:
    cotensor: Cotensor  # H = A ⊗_C A
    gamma_l: Morphism  # H -> A⊗A⊗H

    @property
    def inclusion(self) -> Morphism:
        return self.cotensor.inclusion

    @property
    def carrier(self):
        return self.cotensor.carrier


def composable_pairs(g: QuantumGraph) -> ComposablePairs:
    """The cotensor ``H`` and its coaction ``γ_l`` by ``A⊗A``."""
    ctx = g.ctx
    bim = g.bicomodule
    h = cotensor(bim, bim, "H")
    a = g.arrows
    shuffle = ctx.permutation([a.carrier] * 4, (1, 3, 2, 4))
    spread = shuffle @ ctx.tensor(a.delta, a.delta) @ h.inclusion
    gamma_l = ctx.factor_through_mono(ctx.tensor(a.identity, a.identity, h.inclusion), spread)
    return ComposablePairs(h, gamma_l)


class QuantumCategory:
    """A quantum graph with composition ``ν₂: H -> A`` and unit ``ν₀: C -> A``.

    Construction does not validate; use :func:`check_axioms`.
    """

    def __init__(self, graph: QuantumGraph, nu2: Morphism, nu0: Morphism, name: str = "Q"):
        if nu0.source != graph.objects.carrier or nu0.target != graph.arrows.carrier:
            raise ShapeMismatch("unit must be a map C -> A")
        if nu2.target != graph.arrows.carrier:
            raise ShapeMismatch("composition must land in A")
        self.graph = graph
        self.nu2 = nu2
        self.nu0 = nu0
        self.name = name

    def __eq__(self, other):
        if not isinstance(other, QuantumCategory):
            return NotImplemented
        return (self.graph, self.nu2, self.nu0) == (other.graph, other.nu2, other.nu0)

    __hash__ = None

    def __repr__(self):
        g = self.graph
        return f"QuantumCategory[{self.ctx.tag}](|C|={g.objects.carrier.size}, |A|={g.arrows.carrier.size})"

    @property
    def ctx(self) -> MonoidalContext:
        return self.graph.ctx

    @property
    def objects(self) -> Comonoid:
        return self.graph.objects

    @property
    def arrows(self) -> Comonoid:
        return self.graph.arrows

    @property
    def source(self) -> Morphism:
        return self.graph.source

    @property
    def target(self) -> Morphism:
        return self.graph.target

    @property
    def pairs(self) -> ComposablePairs:
        return self.graph.pairs

    def with_maps(self, nu2: Morphism | None = None, nu0: Morphism | None = None) -> "QuantumCategory":
        """Same graph (and cached pairs), different composition or unit."""
        return QuantumCategory(self.graph, self.nu2 if nu2 is None else nu2, self.nu0 if nu0 is None else nu0, self.name)


def axiom2_sides(q: QuantumCategory) -> tuple[Morphism, Morphism]:
    ctx = q.ctx
    a, c = q.arrows, q.objects
    pairs = q.pairs
    post = ctx.tensor(c.identity, q.nu2)
    lhs = post @ ctx.tensor(q.target, a.epsilon, ctx.identity(pairs.carrier)) @ pairs.gamma_l
    rhs = post @ ctx.tensor(a.epsilon, q.source, ctx.identity(pairs.carrier)) @ pairs.gamma_l
    return lhs, rhs


def gamma_r_h(q: QuantumCategory) -> Morphism:
    """``γ_r: H -> H⊗A``; needs axiom 2, else raises Axiom2Violated."""
    ctx = q.ctx
    lhs, rhs = axiom2_sides(q)
    w = ctx.difference(lhs, rhs)
    if w is not None:
        raise Axiom2Violated("axiom 2", w)
    a = q.arrows
    pairs = q.pairs
    h = ctx.tensor(a.identity, a.identity, q.nu2) @ pairs.gamma_l
    return ctx.factor_through_mono(ctx.tensor(pairs.inclusion, a.identity), h)


def gamma_r_c(q: QuantumCategory) -> Morphism:
    """``γ_r: C -> C⊗A``, defined when both readings of ``δν₀`` through ``s`` and ``t`` agree."""
    ctx = q.ctx
    a = q.arrows
    base = a.delta @ q.nu0
    via_s = ctx.tensor(q.source, a.identity) @ base
    via_t = ctx.tensor(q.target, a.identity) @ base
    w = ctx.difference(via_s, via_t)
    if w is not None:
        raise NgrDisagreement("unit coaction agreement", w)
    return via_t


def gamma_r_maps(q: QuantumCategory) -> tuple[Morphism, Morphism]:
    return gamma_r_h(q), gamma_r_c(q)


# -- report ------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: int
    checks: tuple

    @property
    def status(self) -> str:
        return summarize(list(self.checks))

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def witness(self):
        bad = first_failure(list(self.checks))
        return bad.witness if bad is not None else None

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "title": AXIOM_TITLES[self.axiom],
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
        }


@dataclass
class AxiomReport:
    prerequisites: list[Check] = field(default_factory=list)
    axioms: dict[int, AxiomVerdict] = field(default_factory=dict)
    consistency: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            all(c.passed for c in self.prerequisites)
            and all(v.passed for v in self.axioms.values())
            and all(c.passed for c in self.consistency)
        )

    def verdict(self, k: int) -> str:
        return self.axioms[k].status

    def failing(self) -> list[Check]:
        out = [c for c in self.prerequisites + self.consistency if not c.passed]
        for v in self.axioms.values():
            out += [c for c in v.checks if not c.passed]
        return out

    def to_text(self) -> str:
        lines = ["prerequisites:"]
        lines += [f"  {c.line()}" for c in self.prerequisites]
        for k, v in sorted(self.axioms.items()):
            lines.append(f"axiom {k} ({AXIOM_TITLES[k]}): {v.status}")
            lines += [f"  {c.line()}" for c in v.checks if c.status != PASS]
        if self.consistency:
            lines.append("consistency:")
            lines += [f"  {c.line()}" for c in self.consistency]
        lines.append("overall: " + ("pass" if self.passed else "fail"))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "prerequisites": [c.to_json() for c in self.prerequisites],
            "axioms": {str(k): v.to_json() for k, v in sorted(self.axioms.items())},
            "consistency": [c.to_json() for c in self.consistency],
        }


# -- individual axioms ------------------------------------------------------------


def _axiom1(q: QuantumCategory) -> list[Check]:
    ctx = q.ctx
    a = q.arrows
    bim = q.graph.bicomodule
    pairs = q.pairs
    h = pairs.cotensor
    checks = comodule_map_checks(ComoduleMap(h.comodule, bim, q.nu2), "composition ν₂")
    checks += comodule_map_checks(ComoduleMap(identity_comodule(q.objects), bim, q.nu0), "unit ν₀")

    def into_h(name, hmap):
        try:
            return h.factor(hmap), None
        except NotInImage as exc:
            return None, factor_failure(name, exc, hmap)

    # associativity through (A⊗A)⊗A and A⊗(A⊗A)
    h_a = cotensor(h.comodule, bim, "HA")
    a_h = cotensor(bim, h.comodule, "AH")
    left_first, bad = into_h("associativity", ctx.tensor(q.nu2, a.identity) @ h_a.inclusion)
    if bad is None:
        right_first, bad = into_h("associativity", ctx.tensor(a.identity, q.nu2) @ a_h.inclusion)
    if bad is None:
        try:
            compare = ctx.factor_through_mono(
                ctx.tensor(a.identity, h.inclusion) @ a_h.inclusion,
                ctx.tensor(h.inclusion, a.identity) @ h_a.inclusion,
            )
        except NotInImage as exc:
            checks.append(blocked("associativity", f"triple cotensors differ: {exc}"))
        else:
            checks.append(equation("associativity", q.nu2 @ left_first, q.nu2 @ right_first @ compare))
    else:
        checks.append(bad)

    lam = left_unitor(bim)
    unit_left, bad = into_h("left unit law", ctx.tensor(q.nu0, a.identity) @ lam.cotensor.inclusion)
    checks.append(bad or equation("left unit law", q.nu2 @ unit_left @ lam.backward, a.identity))
    rho = right_unitor(bim)
    unit_right, bad = into_h("right unit law", ctx.tensor(a.identity, q.nu0) @ rho.cotensor.inclusion)
    checks.append(bad or equation("right unit law", q.nu2 @ unit_right @ rho.backward, a.identity))
    return checks


def _axiom2(q):
    lhs, rhs = axiom2_sides(q)
    return [equation("source/target after composition", lhs, rhs)]


def _axiom3(q):
    ctx = q.ctx
    try:
        grh = gamma_r_h(q)
    except Axiom2Violated:
        return [blocked("composition preserves comultiplication", "needs axiom 2 (γ_r on H undefined)")]
    except NotInImage as exc:
        return [blocked("composition preserves comultiplication", f"γ_r on H does not factor: {exc}")]
    return [equation("δν₂ = (ν₂⊗1)γ_r", q.arrows.delta @ q.nu2, ctx.tensor(q.nu2, q.arrows.identity) @ grh)]


def _axiom4(q):
    ctx = q.ctx
    a = q.arrows
    return [equation("εν₂ = (ε⊗ε)i", a.epsilon @ q.nu2, ctx.tensor(a.epsilon, a.epsilon) @ q.pairs.inclusion)]


def _axiom5(q):
    ctx = q.ctx
    try:
        grc = gamma_r_c(q)
    except NgrDisagreement as exc:
        return [blocked("unit preserves comultiplication", f"γ_r on C undefined: {exc}")]
    return [equation("δν₀ = (ν₀⊗1)γ_r", q.arrows.delta @ q.nu0, ctx.tensor(q.nu0, q.arrows.identity) @ grc)]


def _axiom6(q):
    return [equation("εν₀ = ε", q.arrows.epsilon @ q.nu0, q.objects.epsilon)]


_AXIOM_FUNCS = {1: _axiom1, 2: _axiom2, 3: _axiom3, 4: _axiom4, 5: _axiom5, 6: _axiom6}


def _prerequisites(q: QuantumCategory) -> tuple[list[Check], bool]:
    """Checks the structure the axioms are stated in; the flag says whether H could be built."""
    checks = graph_checks(q.graph)
    checks += comodule_checks(q.graph.bicomodule)
    try:
        q.pairs
    except (NotInImage, CoactionDoesNotRestrict) as exc:
        checks.append(blocked("composable pairs H and γ_l", str(exc)))
        return checks, False
    if q.nu2.source != q.pairs.carrier:
        checks.append(Check("composition source is H", FAIL, reason=f"ν₂ has source {q.nu2.source}, H is {q.pairs.carrier}"))
        return checks, False
    try:
        gamma_r_c(q)
        checks.append(Check("unit coaction agreement", PASS))
    except NgrDisagreement as exc:
        checks.append(Check("unit coaction agreement", FAIL, exc.witness))
    return checks, True


def check_axiom(q: QuantumCategory, k: int) -> AxiomVerdict:
    if k not in _AXIOM_FUNCS:
        raise ValueError(f"axiom must be one of {AXIOMS}")
    _, ok = _prerequisites(q)
    if not ok:
        return AxiomVerdict(k, (blocked(f"axiom {k}", "structure needed to state the axiom is missing"),))
    return AxiomVerdict(k, tuple(attempt(f"axiom {k}", lambda: _AXIOM_FUNCS[k](q))))


def check_axioms(q: QuantumCategory, axioms=AXIOMS) -> AxiomReport:
    prereq, ok = _prerequisites(q)
    report = AxiomReport(prerequisites=prereq)
    for k in axioms:
        if k not in _AXIOM_FUNCS:
            raise ValueError(f"axiom must be one of {AXIOMS}")
        if not ok:
            report.axioms[k] = AxiomVerdict(k, (blocked(f"axiom {k}", "structure needed to state the axiom is missing"),))
        else:
            report.axioms[k] = AxiomVerdict(k, tuple(attempt(f"axiom {k}", lambda k=k: _AXIOM_FUNCS[k](q))))
    if ok and 4 in axioms:
        ctx = q.ctx
        st = ctx.tensor(q.source, q.target)
        report.consistency.append(
            equation("(s⊗t)δν₂ = (s⊗t)i", st @ q.arrows.delta @ q.nu2, st @ q.pairs.inclusion)
        )
    return report


def is_quantum_category(q: QuantumCategory) -> bool:
    return check_axioms(q).passed


# -- tensor product ------------------------------------------------------------------


def tensor_quantum_categories(q1: QuantumCategory, q2: QuantumCategory, validate: bool = True) -> QuantumCategory:
    """Componentwise tensor; composition goes through the comparison ``H₁⊗H₂ ≅ H``."""
    if q1.ctx != q2.ctx:
        raise ShapeMismatch("quantum categories live in different backends")
    ctx = q1.ctx
    graph = QuantumGraph(
        tensor_comonoids(q1.objects, q2.objects),
        tensor_comonoids(q1.arrows, q2.arrows),
        ctx.tensor(q1.source, q2.source),
        ctx.tensor(q1.target, q2.target),
    )
    a1, a2 = q1.arrows.carrier, q2.arrows.carrier
    shuffled = ctx.permutation([a1, a1, a2, a2], (1, 3, 2, 4)) @ ctx.tensor(q1.pairs.inclusion, q2.pairs.inclusion)
    incl = graph.pairs.inclusion
    try:
        # factoring both ways makes the comparison of the two monos invertible
        ctx.factor_through_mono(incl, shuffled)
        backward = ctx.factor_through_mono(shuffled, incl)
    except NotInImage as exc:
        raise ComparisonNotInvertible(f"composable pairs of the product are not the product of composable pairs: {exc}") from exc
    nu2 = ctx.tensor(q1.nu2, q2.nu2) @ backward
    out = QuantumCategory(graph, nu2, ctx.tensor(q1.nu0, q2.nu0), f"{q1.name}⊗{q2.name}")
    if validate:
        report = check_axioms(out)
        if not report.passed:
            raise AxiomsFail(report)
    return out
