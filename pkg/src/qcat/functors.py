"""Quantum functors, their composition, and quantum natural transformations.

A functor ``q -> q'`` is a pair of comonoid maps ``f: C -> C'`` and
``φ: A -> A'`` compatible with sources, targets, units and composition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .checks import PASS, Check, attempt, equation, factor_failure, first_failure
from .comod import comodule_from_sides, comonoid_map_checks, cotensor
from .context import Morphism
from .errors import EndpointMismatch, LawViolation, NotInImage, ShapeMismatch
from .quantum import QuantumCategory


@dataclass(frozen=True, eq=False)
class QuantumFunctor:
    source: QuantumCategory
    target: QuantumCategory
    f: Morphism  # C -> C'
    phi: Morphism  # A -> A'
    name: str = field(default="F", compare=False)

    def __post_init__(self):
        if self.source.ctx != self.target.ctx:
            raise ShapeMismatch("functor between different backends")
        if self.f.source != self.source.objects.carrier or self.f.target != self.target.objects.carrier:
            raise ShapeMismatch("object map has the wrong type")
        if self.phi.source != self.source.arrows.carrier or self.phi.target != self.target.arrows.carrier:
            raise ShapeMismatch("arrow map has the wrong type")

    def __eq__(self, other):
        if not isinstance(other, QuantumFunctor):
            return NotImplemented
        return (self.source, self.target, self.f, self.phi) == (other.source, other.target, other.f, other.phi)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class QuantumNatTransformation:
    source: QuantumFunctor
    target: QuantumFunctor
    tau: Morphism  # A -> A'


@dataclass
class Verdict:
    """Outcome of a functor or natural-transformation validation."""

    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        if self.passed:
            return PASS
        return "fail" if first_failure(self.checks) else "blocked"

    def to_text(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append("overall: " + ("pass" if self.passed else "fail"))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def transported_pairs(q: QuantumCategory, f: Morphism, target_objects):
    """``A ⊗_{C'} A`` where ``A`` coacts on ``C'`` through ``f`` (memoized per category)."""
    cache = q.__dict__.setdefault("_transported", {})
    key = (f, target_objects)
    if key not in cache:
        cache[key] = _transported_pairs(q, f, target_objects)
    return cache[key]


def _transported_pairs(q, f, target_objects):
    ctx = q.ctx
    bim = q.graph.bicomodule
    a = q.arrows
    delta_l = ctx.tensor(f, a.identity) @ bim.delta_l
    delta_r = ctx.tensor(a.identity, f) @ bim.delta_r
    moved = comodule_from_sides(target_objects, target_objects, delta_l, delta_r, "A")
    return cotensor(moved, moved, "H'")


def functor_checks(F: QuantumFunctor) -> list[Check]:
    q, p = F.source, F.target
    ctx = q.ctx
    checks = comonoid_map_checks(F.f, q.objects, p.objects, "object map f")
    checks += comonoid_map_checks(F.phi, q.arrows, p.arrows, "arrow map φ")
    checks.append(equation("sources: s'φ = fs", p.source @ F.phi, F.f @ q.source))
    checks.append(equation("targets: t'φ = ft", p.target @ F.phi, F.f @ q.target))
    checks.append(equation("units: ν₀'f = φν₀", p.nu0 @ F.f, F.phi @ q.nu0))

    def composition():
        moved = transported_pairs(q, F.f, p.objects)
        try:
            iota = moved.factor(q.pairs.inclusion)
        except NotInImage as exc:
            return [factor_failure("composition: comparison ι", exc, q.pairs.inclusion)]
        square = ctx.tensor(F.phi, F.phi) @ moved.inclusion
        try:
            phi_phi = p.pairs.cotensor.factor(square)
        except NotInImage as exc:
            return [factor_failure("composition: φ⊗φ restricts to composable pairs", exc, square)]
        return [equation("composition: ν₂'(φ⊗φ)ι = φν₂", p.nu2 @ phi_phi @ iota, F.phi @ q.nu2)]

    checks += attempt("composition", composition)
    return checks


def validate_functor(F: QuantumFunctor) -> Verdict:
    return Verdict(functor_checks(F))


def unit_recovery_checks(F: QuantumFunctor) -> list[Check]:
    """``s'φν₀ = f`` and ``t'φν₀ = f``, consequences of the functor laws."""
    p = F.target
    base = F.phi @ F.source.nu0
    return [
        equation("s'φν₀ = f", p.source @ base, F.f),
        equation("t'φν₀ = f", p.target @ base, F.f),
    ]


def identity_functor(q: QuantumCategory) -> QuantumFunctor:
    return QuantumFunctor(q, q, q.objects.identity, q.arrows.identity, "id")


def compose_functors(F: QuantumFunctor, G: QuantumFunctor, validate: bool = True) -> QuantumFunctor:
    """``G ∘ F``: first ``F``, then ``G``."""
    if F.target != G.source:
        raise EndpointMismatch(f"cannot compose: target of {F.name} is not the source of {G.name}")
    out = QuantumFunctor(F.source, G.target, G.f @ F.f, G.phi @ F.phi, f"{G.name}∘{F.name}")
    if validate:
        bad = first_failure(functor_checks(out))
        if bad is not None:
            raise LawViolation(f"composite functor: {bad.name}", bad.witness)
    return out


def nat_transformation_checks(n: QuantumNatTransformation) -> list[Check]:
    F, G = n.source, n.target
    if F.source != G.source or F.target != G.target:
        raise EndpointMismatch("natural transformation between functors with different endpoints")
    q, p = F.source, F.target
    ctx = q.ctx
    tau = n.tau
    if tau.source != q.arrows.carrier or tau.target != p.arrows.carrier:
        raise ShapeMismatch("τ must be a map A -> A'")
    checks = comonoid_map_checks(tau, q.arrows, p.arrows, "τ")
    checks.append(equation("sources: s'τ = fs", p.source @ tau, F.f @ q.source))
    checks.append(equation("targets: t'τ = gt", p.target @ tau, G.f @ q.target))
    incl = q.pairs.inclusion
    target_pairs = p.pairs.cotensor

    def side(label, pair_map):
        h = pair_map @ incl
        try:
            u = target_pairs.factor(h)
        except NotInImage as exc:
            return [factor_failure(f"{label} restricts to composable pairs", exc, h)]
        return [equation(f"{label}: ν₂'(·) = τν₂", p.nu2 @ u, tau @ q.nu2)]

    checks += attempt("naturality (φ⊗τ)", lambda: side("naturality (φ⊗τ)", ctx.tensor(F.phi, tau)))
    checks += attempt("naturality (τ⊗φ')", lambda: side("naturality (τ⊗φ')", ctx.tensor(tau, G.phi)))
    return checks


def validate_nat_transformation(n: QuantumNatTransformation) -> Verdict:
    return Verdict(nat_transformation_checks(n))
