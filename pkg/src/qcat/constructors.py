"""Bridges from classical structures to quantum categories and back.

* finite categories, in finite sets or freely linearized;
* bialgebras, read in the opposite of vector spaces over the trivial base;
* Hopf group coalgebras (without antipode), through their direct sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Mapping

from .comod import Comonoid, cotensor, unit_comonoid
from .context import FdVect, FinSet, MonoidalContext, Morphism, Opposite, context_from_tag, underlying
from .errors import AxiomsFail, InvalidCategory, InvalidComponentData, ShapeMismatch
from .linalg import ExactMatrix, kron, permutation_map
from .quantum import AxiomReport, QuantumCategory, QuantumGraph, check_axioms

# -- finite categories --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinCat:
    """A finite category; ``comp[(x, y)]`` is "x then y", defined when ``cod x == dom y``."""

    objects: tuple
    morphisms: tuple
    dom: Mapping
    cod: Mapping
    comp: Mapping
    ids: Mapping
    name: str = field(default="cat", compare=False)

    @classmethod
    def create(cls, objects, morphisms, dom, cod, comp, ids, name="cat") -> "FinCat":
        return cls(tuple(objects), tuple(morphisms), dict(dom), dict(cod), dict(comp), dict(ids), name)

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and dict(self.dom) == dict(other.dom)
            and dict(self.cod) == dict(other.cod)
            and dict(self.comp) == dict(other.comp)
            and dict(self.ids) == dict(other.ids)
        )

    __hash__ = None

    def composable_pairs(self) -> list[tuple]:
        return [(x, y) for x in self.morphisms for y in self.morphisms if self.cod[x] == self.dom[y]]

    def hom(self, a, b) -> list:
        return [m for m in self.morphisms if self.dom[m] == a and self.cod[m] == b]

    def law_violations(self) -> list[str]:
        """Every failed category law, as readable messages (empty when valid)."""
        out = []
        obs, mors = set(self.objects), set(self.morphisms)
        if len(obs) != len(self.objects) or len(mors) != len(self.morphisms):
            out.append("repeated labels")
        for m in self.morphisms:
            if self.dom.get(m) not in obs or self.cod.get(m) not in obs:
                out.append(f"morphism {m!r} has no valid domain/codomain")
        if out:
            return out
        for o in self.objects:
            i = self.ids.get(o)
            if i not in mors or self.dom[i] != o or self.cod[i] != o:
                out.append(f"identity of {o!r} is missing or mistyped")
        pairs = set(self.composable_pairs())
        if set(self.comp) != pairs:
            extra = set(self.comp) - pairs
            missing = pairs - set(self.comp)
            if missing:
                out.append(f"composite missing for {sorted(missing, key=repr)[0]!r}")
            if extra:
                out.append(f"composite given for non-composable {sorted(extra, key=repr)[0]!r}")
            return out
        for (x, y), z in self.comp.items():
            if z not in mors or self.dom[z] != self.dom[x] or self.cod[z] != self.cod[y]:
                out.append(f"composite of {(x, y)!r} has the wrong type")
        if out:
            return out
        for m in self.morphisms:
            if self.comp[(self.ids[self.dom[m]], m)] != m:
                out.append(f"left identity law fails at {m!r}")
            if self.comp[(m, self.ids[self.cod[m]])] != m:
                out.append(f"right identity law fails at {m!r}")
        for (x, y) in pairs:
            for z in self.morphisms:
                if self.dom[z] == self.cod[y]:
                    if self.comp[(self.comp[(x, y)], z)] != self.comp[(x, self.comp[(y, z)])]:
                        out.append(f"associativity fails at {(x, y, z)!r}")
        return out

    def is_valid(self) -> bool:
        return not self.law_violations()


def terminal_category() -> FinCat:
    return FinCat.create(["*"], ["id"], {"id": "*"}, {"id": "*"}, {("id", "id"): "id"}, {"*": "id"}, "1")


def walking_arrow() -> FinCat:
    dom = {"id0": 0, "id1": 1, "a": 0}
    cod = {"id0": 0, "id1": 1, "a": 1}
    comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("id0", "a"): "a", ("a", "id1"): "a"}
    return FinCat.create([0, 1], ["id0", "id1", "a"], dom, cod, comp, {0: "id0", 1: "id1"}, "2")


def monoid_category(elements, mult: Mapping, identity, name="monoid") -> FinCat:
    """One-object category; ``mult[(g, h)]`` is the composite "g then h"."""
    elements = tuple(elements)
    return FinCat.create(
        ["*"],
        elements,
        {g: "*" for g in elements},
        {g: "*" for g in elements},
        {(g, h): mult[(g, h)] for g in elements for h in elements},
        {"*": identity},
        name,
    )


def cyclic_group(n: int) -> tuple[tuple, dict, int]:
    elements = tuple(range(n))
    return elements, {(a, b): (a + b) % n for a in elements for b in elements}, 0


def symmetric_group_3() -> tuple[tuple, dict, tuple]:
    from itertools import permutations

    elements = tuple(permutations(range(3)))
    # "g then h": apply g first
    mult = {(g, h): tuple(h[g[i]] for i in range(3)) for g in elements for h in elements}
    return elements, mult, (0, 1, 2)


def product_category(c1: FinCat, c2: FinCat) -> FinCat:
    objects = list(product(c1.objects, c2.objects))
    morphisms = list(product(c1.morphisms, c2.morphisms))
    comp = {}
    for (x1, x2) in morphisms:
        for (y1, y2) in morphisms:
            if c1.cod[x1] == c1.dom[y1] and c2.cod[x2] == c2.dom[y2]:
                comp[((x1, x2), (y1, y2))] = (c1.comp[(x1, y1)], c2.comp[(x2, y2)])
    return FinCat.create(
        objects,
        morphisms,
        {m: (c1.dom[m[0]], c2.dom[m[1]]) for m in morphisms},
        {m: (c1.cod[m[0]], c2.cod[m[1]]) for m in morphisms},
        comp,
        {o: (c1.ids[o[0]], c2.ids[o[1]]) for o in objects},
        f"{c1.name}x{c2.name}",
    )


@dataclass(frozen=True, eq=False)
class FinFunctor:
    source: FinCat
    target: FinCat
    on_objects: Mapping
    on_morphisms: Mapping

    def law_violations(self) -> list[str]:
        s, t = self.source, self.target
        out = []
        for m in s.morphisms:
            fm = self.on_morphisms.get(m)
            if fm not in t.dom:
                return [f"{m!r} has no image"]
            if t.dom[fm] != self.on_objects[s.dom[m]] or t.cod[fm] != self.on_objects[s.cod[m]]:
                out.append(f"image of {m!r} has the wrong endpoints")
        if out:
            return out
        for o in s.objects:
            if self.on_morphisms[s.ids[o]] != t.ids[self.on_objects[o]]:
                out.append(f"identity of {o!r} not preserved")
        for (x, y), z in s.comp.items():
            if t.comp[(self.on_morphisms[x], self.on_morphisms[y])] != self.on_morphisms[z]:
                out.append(f"composite {(x, y)!r} not preserved")
        return out

    def is_valid(self) -> bool:
        return not self.law_violations()

    def then(self, other: "FinFunctor") -> "FinFunctor":
        return FinFunctor(
            self.source,
            other.target,
            {o: other.on_objects[v] for o, v in self.on_objects.items()},
            {m: other.on_morphisms[v] for m, v in self.on_morphisms.items()},
        )


# -- finite categories as quantum categories ----------------------------------------------


def _backend(backend) -> MonoidalContext:
    if isinstance(backend, MonoidalContext):
        return backend
    return context_from_tag(backend)


def _grouplike_comonoid(ctx, name: str, labels) -> Comonoid:
    x = ctx.object(name, labels)
    delta = ctx.function(x, ctx.tensor(x, x), lambda a: (a, a))
    eps = ctx.function(x, ctx.unit(), lambda a: ())
    return Comonoid(x, delta, eps, name)


def quantum_from_tables(cat: FinCat, backend="finset") -> QuantumCategory:
    """The quantum category carried by a category-shaped table, without validation.

    Composites outside the table, or landing outside the morphism set, are not
    allowed; any other defect (wrong types, broken laws) is left for
    :func:`check_axioms` to find.
    """
    ctx = _backend(backend)
    if not isinstance(ctx, (FinSet, FdVect)):
        raise ShapeMismatch("small categories live in finset or fdvect")
    objects = _grouplike_comonoid(ctx, "Ob", cat.objects)
    arrows = _grouplike_comonoid(ctx, "Mor", cat.morphisms)
    s = ctx.function(arrows.carrier, objects.carrier, lambda m: cat.dom[m])
    t = ctx.function(arrows.carrier, objects.carrier, lambda m: cat.cod[m])
    graph = QuantumGraph(objects, arrows, s, t)
    pairs = graph.pairs
    n = arrows.carrier.size
    labels = cat.morphisms
    # decode each basis element of H through the inclusion, never through its label
    positions = _inclusion_positions(pairs.inclusion)
    entries = []
    for pos in positions:
        x, y = labels[pos // n], labels[pos % n]
        if (x, y) not in cat.comp:
            raise InvalidCategory("composite missing", (x, y))
        entries.append(cat.comp[(x, y)])
    index = {m: k for k, m in enumerate(labels)}
    if isinstance(ctx, FinSet):
        nu2 = ctx.morphism(pairs.carrier, arrows.carrier, [index[z] for z in entries])
    else:
        nu2 = Morphism(ctx, pairs.carrier, arrows.carrier, ExactMatrix.from_function([index[z] for z in entries], n))
    nu0 = ctx.function(objects.carrier, arrows.carrier, lambda o: cat.ids[o])
    return QuantumCategory(graph, nu2, nu0, cat.name)


def _inclusion_positions(incl: Morphism) -> list[int]:
    """For an inclusion of a subset of basis elements, the position of each."""
    if isinstance(incl.ctx, FinSet):
        return list(incl.data)
    m = incl.data
    out = []
    for j in range(m.cols):
        col = [(i, v) for i, v in enumerate(m.column(j)) if v]
        if len(col) != 1 or col[0][1] != 1:
            raise ShapeMismatch("inclusion is not a selection of basis elements")
        out.append(col[0][0])
    return out


def from_small_category(cat: FinCat, backend="finset") -> QuantumCategory:
    """Raises InvalidCategory for invalid input; the result is checked against all axioms."""
    bad = cat.law_violations()
    if bad:
        raise InvalidCategory(bad[0])
    q = quantum_from_tables(cat, backend)
    report = check_axioms(q)
    if not report.passed:  # pragma: no cover - a valid category always passes
        raise AxiomsFail(report)
    return q


def to_small_category(q: QuantumCategory, name: str = "cat") -> FinCat:
    if not isinstance(q.ctx, FinSet):
        raise ShapeMismatch("only quantum categories in finite sets are small categories")
    report = check_axioms(q)
    if not report.passed:
        raise AxiomsFail(report)
    objects = q.objects.carrier.labels
    morphisms = q.arrows.carrier.labels
    n = len(morphisms)
    dom = {m: objects[q.source.data[k]] for k, m in enumerate(morphisms)}
    cod = {m: objects[q.target.data[k]] for k, m in enumerate(morphisms)}
    comp = {}
    for h, pos in enumerate(q.pairs.inclusion.data):
        comp[(morphisms[pos // n], morphisms[pos % n])] = morphisms[q.nu2.data[h]]
    ids = {o: morphisms[q.nu0.data[k]] for k, o in enumerate(objects)}
    cat = FinCat.create(objects, morphisms, dom, cod, comp, ids, name)
    bad = cat.law_violations()
    if bad:  # pragma: no cover - guaranteed by the axioms
        raise InvalidCategory(bad[0])
    return cat


# -- transport between backends --------------------------------------------------------


def transport(q: QuantumCategory, ctx: MonoidalContext, on_morphisms) -> QuantumCategory:
    """Push ``q`` along a strict monoidal functor that preserves the relevant monos.

    ``on_morphisms`` maps each morphism of ``q``'s backend to ``ctx``.  The new
    composition is the image of ``ν₂`` precomposed with the comparison from the
    recomputed ``H`` to the image of the old one.
    """
    g = q.graph

    def comonoid(c: Comonoid) -> Comonoid:
        d = on_morphisms(c.delta)
        return Comonoid(d.source, d, on_morphisms(c.epsilon), c.name)

    graph = QuantumGraph(comonoid(g.objects), comonoid(g.arrows), on_morphisms(g.source), on_morphisms(g.target))
    image_incl = on_morphisms(q.pairs.inclusion)
    compare = ctx.factor_through_mono(image_incl, graph.pairs.inclusion)
    return QuantumCategory(graph, on_morphisms(q.nu2) @ compare, on_morphisms(q.nu0), q.name)


def linearize(q: QuantumCategory) -> QuantumCategory:
    """Free vector spaces on every carrier, 0/1 matrices for every map.

    Accepts invalid input too, so verdicts can be compared across backends.
    """
    if not isinstance(q.ctx, FinSet):
        raise ShapeMismatch("linearize expects a quantum category in finite sets")
    v = FdVect()
    return transport(q, v, v.linearize)


def dualize(q: QuantumCategory) -> QuantumCategory:
    """Linear duality ``FdVect -> Op(FdVect)``: each map is replaced by its transpose."""
    if not isinstance(q.ctx, FdVect):
        raise ShapeMismatch("dualize expects a quantum category in fdvect")
    op = Opposite(q.ctx)

    def on(f: Morphism) -> Morphism:
        u = q.ctx.morphism(f.target, f.source, f.data.T)
        return op.reverse(u)

    return transport(q, op, on)


def structure_matrices(q: QuantumCategory) -> dict[str, ExactMatrix]:
    """Underlying matrices of every structure map, with Opposite layers stripped."""
    maps = {
        "delta_C": q.objects.delta,
        "epsilon_C": q.objects.epsilon,
        "delta_A": q.arrows.delta,
        "epsilon_A": q.arrows.epsilon,
        "s": q.source,
        "t": q.target,
        "inclusion_H": q.pairs.inclusion,
        "nu2": q.nu2,
        "nu0": q.nu0,
    }
    out = {}
    for k, f in maps.items():
        u = underlying(f)
        out[k] = ExactMatrix.from_function(u.data, u.target.size) if isinstance(u.ctx, FinSet) else u.data
    return out


# -- bialgebras ------------------------------------------------------------------------


@dataclass(frozen=True)
class BialgebraData:
    """Structure constants on a basis: ``mult`` is ``n x n²``, ``unit`` ``n x 1``,
    ``comult`` ``n² x n`` and ``counit`` ``1 x n``; tensor indices are left-factor major."""

    labels: tuple
    mult: ExactMatrix
    unit: ExactMatrix
    comult: ExactMatrix
    counit: ExactMatrix
    name: str = field(default="B", compare=False)

    def __post_init__(self):
        n = len(self.labels)
        want = {"mult": (n, n * n), "unit": (n, 1), "comult": (n * n, n), "counit": (1, n)}
        for k, shape in want.items():
            if getattr(self, k).shape != shape:
                raise ShapeMismatch(f"{k} has shape {getattr(self, k).shape}, expected {shape}")

    @property
    def dim(self) -> int:
        return len(self.labels)


def from_bialgebra(b: BialgebraData) -> tuple[QuantumCategory, AxiomReport]:
    """``B`` as a quantum category in ``Op(FdVect)`` over the unit comonoid.

    In the opposite category the multiplication and unit of ``B`` form the arrow
    comonoid, ``s = t`` is the unit, the composition is the comultiplication and
    the identity-assigning map is the counit.  Returns the axiom report rather
    than asserting it.
    """
    base = FdVect()
    op = Opposite(base)
    x = op.object(b.name, b.labels)
    one = op.unit()
    arrows = Comonoid(x, op.morphism(x, op.tensor(x, x), b.mult), op.morphism(x, one, b.unit), b.name)
    graph = QuantumGraph(unit_comonoid(op), arrows, arrows.epsilon, arrows.epsilon)
    # only H itself is needed here; γ_l may not exist for invalid data and is left to the checker
    incl = cotensor(graph.bicomodule, graph.bicomodule, "H").inclusion
    # ν₂: H -> B in the opposite category is B -> H underneath: Δ followed by H's projection
    comult = base.morphism(op.to_base(x), op.to_base(op.tensor(x, x)), b.comult)
    nu2 = op.reverse(incl.data @ comult)
    nu0 = op.morphism(one, x, b.counit)
    q = QuantumCategory(graph, nu2, nu0, b.name)
    return q, check_axioms(q)


def group_algebra(elements, mult: Mapping, identity, name="QG") -> BialgebraData:
    """``Q[G]``: basis the elements, group-like comultiplication."""
    elements = tuple(elements)
    idx = {g: k for k, g in enumerate(elements)}
    n = len(elements)
    m = {(idx[mult[(g, h)]], idx[g] * n + idx[h]): 1 for g in elements for h in elements}
    return BialgebraData(
        elements,
        ExactMatrix.from_dict(n, n * n, m),
        ExactMatrix.from_dict(n, 1, {(idx[identity], 0): 1}),
        ExactMatrix.from_dict(n * n, n, {(k * n + k, k): 1 for k in range(n)}),
        ExactMatrix.from_dict(1, n, {(0, k): 1 for k in range(n)}),
        name,
    )


def dual_group_algebra(elements, mult: Mapping, identity, name="QG*") -> BialgebraData:
    """Functions on ``G``: pointwise product, comultiplication dual to the group law."""
    elements = tuple(elements)
    idx = {g: k for k, g in enumerate(elements)}
    n = len(elements)
    return BialgebraData(
        elements,
        ExactMatrix.from_dict(n, n * n, {(k, k * n + k): 1 for k in range(n)}),
        ExactMatrix.from_dict(n, 1, {(k, 0): 1 for k in range(n)}),
        ExactMatrix.from_dict(
            n * n, n, {(idx[g] * n + idx[h], idx[mult[(g, h)]]): 1 for g in elements for h in elements}
        ),
        ExactMatrix.from_dict(1, n, {(0, idx[identity]): 1}),
        name,
    )


def matrix_coalgebra_candidate(n: int = 2) -> BialgebraData:
    """Matrix units with matrix multiplication and the matrix coalgebra: not a bialgebra."""
    labels = tuple((i, j) for i in range(n) for j in range(n))
    idx = {l: k for k, l in enumerate(labels)}
    d = len(labels)
    mult = {}
    for (i, j) in labels:
        for (k, l) in labels:
            if j == k:
                mult[(idx[(i, l)], idx[(i, j)] * d + idx[(k, l)])] = 1
    comult = {}
    for (i, j) in labels:
        for k in range(n):
            comult[(idx[(i, k)] * d + idx[(k, j)], idx[(i, j)])] = 1
    return BialgebraData(
        labels,
        ExactMatrix.from_dict(d, d * d, mult),
        ExactMatrix.from_dict(d, 1, {(idx[(i, i)], 0): 1 for i in range(n)}),
        ExactMatrix.from_dict(d * d, d, comult),
        ExactMatrix.from_dict(1, d, {(0, idx[(i, i)]): 1 for i in range(n)}),
        f"M{n}",
    )


# -- Hopf group coalgebras ------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraData:
    """A unital algebra on a basis: ``mult`` is ``n x n²`` and ``unit`` ``n x 1``."""

    labels: tuple
    mult: ExactMatrix
    unit: ExactMatrix

    @property
    def dim(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, eq=False)
class HopfGroupCoalgebraData:
    """Algebras ``A_g`` for ``g`` in a finite group with ``Δ_{g,h}: A_{gh} -> A_g⊗A_h``
    (a ``dim A_g·dim A_h x dim A_{gh}`` matrix) and a counit on ``A_e``."""

    elements: tuple
    mult: Mapping
    identity: Hashable
    components: Mapping
    coproducts: Mapping
    counit: ExactMatrix
    name: str = "H"

    def product(self, g, h):
        return self.mult[(g, h)]


def _identity(n):
    return ExactMatrix.identity(n)


def _algebra_violation(a: AlgebraData):
    n = a.dim
    one = _identity(n)
    m = a.mult
    if m.shape != (n, n * n) or a.unit.shape != (n, 1):
        return "shape"
    if m @ kron(m, one) != m @ kron(one, m):
        return "associativity"
    if m @ kron(a.unit, one) != one or m @ kron(one, a.unit) != one:
        return "unit"
    return None


def _tensor_algebra_mult(a: AlgebraData, b: AlgebraData) -> ExactMatrix:
    """Multiplication of ``A⊗B`` as ``(m_A⊗m_B)(1⊗τ⊗1)``."""
    swap = permutation_map((1, 3, 2, 4), [a.dim, b.dim, a.dim, b.dim])
    return kron(a.mult, b.mult) @ swap


def validate_hopf_group_coalgebra(h: HopfGroupCoalgebraData) -> None:
    """Raises InvalidComponentData naming the failing law and component pair."""
    els = h.elements
    for g in els:
        for k in els:
            if h.mult.get((g, k)) not in els:
                raise InvalidComponentData("group multiplication is not total", (g, k))
    for g, k, l in product(els, repeat=3):
        if h.mult[(h.mult[(g, k)], l)] != h.mult[(g, h.mult[(k, l)])]:
            raise InvalidComponentData("group associativity", (g, k, l))
    e = h.identity
    for g in els:
        if h.mult[(e, g)] != g or h.mult[(g, e)] != g:
            raise InvalidComponentData("group identity", g)
        if not any(h.mult[(g, k)] == e for k in els):
            raise InvalidComponentData("group inverse", g)
    comps = h.components
    for g in els:
        if g not in comps:
            raise InvalidComponentData("missing component algebra", g)
        bad = _algebra_violation(comps[g])
        if bad:
            raise InvalidComponentData(f"component algebra {bad}", g)
    for g, k in product(els, repeat=2):
        gk = h.mult[(g, k)]
        d = h.coproducts.get((g, k))
        ag, ak, agk = comps[g], comps[k], comps[gk]
        if d is None or d.shape != (ag.dim * ak.dim, agk.dim):
            raise InvalidComponentData("coproduct missing or misshapen", (g, k))
        if d @ agk.mult != _tensor_algebra_mult(ag, ak) @ kron(d, d):
            raise InvalidComponentData("coproduct is not multiplicative", (g, k))
        if d @ agk.unit != kron(ag.unit, ak.unit):
            raise InvalidComponentData("coproduct is not unital", (g, k))
    for g, k, l in product(els, repeat=3):
        lhs = kron(h.coproducts[(g, k)], _identity(comps[l].dim)) @ h.coproducts[(h.mult[(g, k)], l)]
        rhs = kron(_identity(comps[g].dim), h.coproducts[(k, l)]) @ h.coproducts[(g, h.mult[(k, l)])]
        if lhs != rhs:
            raise InvalidComponentData("coassociativity across components", (g, k, l))
    ae = comps[e]
    if h.counit.shape != (1, ae.dim):
        raise InvalidComponentData("counit misshapen", e)
    if h.counit @ ae.mult != kron(h.counit, h.counit) or h.counit @ ae.unit != ExactMatrix.identity(1):
        raise InvalidComponentData("counit is not an algebra map", e)
    for g in els:
        n = comps[g].dim
        if kron(h.counit, _identity(n)) @ h.coproducts[(e, g)] != _identity(n):
            raise InvalidComponentData("left counit law", (e, g))
        if kron(_identity(n), h.counit) @ h.coproducts[(g, e)] != _identity(n):
            raise InvalidComponentData("right counit law", (g, e))


def total_bialgebra(h: HopfGroupCoalgebraData) -> BialgebraData:
    """The direct sum ``⊕ A_g`` with blockwise product and assembled coproduct."""
    els = h.elements
    offset, labels = {}, []
    for g in els:
        offset[g] = len(labels)
        labels += [(g, lab) for lab in h.components[g].labels]
    n = len(labels)
    mult, unit, comult, counit = {}, {}, {}, {}
    for g in els:
        a, o = h.components[g], offset[g]
        for (i, j), v in a.mult.items():
            p, r = divmod(j, a.dim)
            mult[(o + i, (o + p) * n + o + r)] = v
        for (i, _), v in a.unit.items():
            unit[(o + i, 0)] = v
    for (g, k), d in h.coproducts.items():
        gk = h.mult[(g, k)]
        dk = h.components[k].dim
        for (i, j), v in d.items():
            p, r = divmod(i, dk)
            comult[((offset[g] + p) * n + offset[k] + r, offset[gk] + j)] = v
    for (_, j), v in h.counit.items():
        counit[(0, offset[h.identity] + j)] = v
    return BialgebraData(
        tuple(labels),
        ExactMatrix.from_dict(n, n * n, mult),
        ExactMatrix.from_dict(n, 1, unit),
        ExactMatrix.from_dict(n * n, n, comult),
        ExactMatrix.from_dict(1, n, counit),
        h.name,
    )


def from_hopf_group_coalgebra(h: HopfGroupCoalgebraData) -> tuple[QuantumCategory, AxiomReport, FinCat]:
    """Validate the components, build the total bialgebra and report the group as a category."""
    validate_hopf_group_coalgebra(h)
    q, report = from_bialgebra(total_bialgebra(h))
    underlying_cat = monoid_category(h.elements, h.mult, h.identity, "G")
    return q, report, underlying_cat


def trivial_hopf_group_coalgebra(elements, mult: Mapping, identity, name="H") -> HopfGroupCoalgebraData:
    """Every component the ground field, every coproduct the identity ``Q -> Q⊗Q``."""
    one = ExactMatrix.identity(1)
    field_algebra = AlgebraData(("1",), one, one)
    return HopfGroupCoalgebraData(
        tuple(elements),
        dict(mult),
        identity,
        {g: field_algebra for g in elements},
        {(g, k): one for g in elements for k in elements},
        one,
        name,
    )


# -- ordinary functors and natural transformations --------------------------------------


def functor_from_small(F: FinFunctor, source: QuantumCategory, target: QuantumCategory, name="F"):
    """The pair of maps induced by object and morphism assignments (not validated).

    The assignments need not form a functor; :func:`validate_functor` decides.
    """
    from .functors import QuantumFunctor

    ctx = source.ctx
    f = ctx.function(source.objects.carrier, target.objects.carrier, lambda o: F.on_objects[o])
    phi = ctx.function(source.arrows.carrier, target.arrows.carrier, lambda m: F.on_morphisms[m])
    return QuantumFunctor(source, target, f, phi, name)


def nat_from_components(components: Mapping, F: FinFunctor, G: FinFunctor, qF, qG):
    """``τ(a) = F(a)`` followed by the component at the codomain of ``a``."""
    from .functors import QuantumNatTransformation

    t = F.target
    src = F.source
    ctx = qF.source.ctx
    tau = ctx.function(
        qF.source.arrows.carrier,
        qF.target.arrows.carrier,
        lambda a: t.comp[(F.on_morphisms[a], components[src.cod[a]])],
    )
    return QuantumNatTransformation(qF, qG, tau)


def is_natural(components: Mapping, F: FinFunctor, G: FinFunctor) -> bool:
    t, s = F.target, F.source
    for o in s.objects:
        c = components.get(o)
        if c not in t.dom or t.dom[c] != F.on_objects[o] or t.cod[c] != G.on_objects[o]:
            return False
    return all(
        t.comp[(F.on_morphisms[a], components[s.cod[a]])] == t.comp[(components[s.dom[a]], G.on_morphisms[a])]
        for a in s.morphisms
    )
