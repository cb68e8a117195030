"""Symmetric monoidal backends: finite sets, exact vector spaces, and opposites.

Every structure in the library is written against :class:`MonoidalContext`,
so the same comodule and quantum-category code runs in each backend.
Tensor products are strict: an object is a flat tuple of atomic factors,
so associators and unitors are identities at the data level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from math import prod
from typing import Any, Sequence

from . import linalg
from .errors import BackendMismatch, ComparisonNotInvertible, DoesNotEqualize, LawViolation, NotInImage, ShapeMismatch
from .linalg import ExactMatrix, format_rational


@dataclass(frozen=True)
class Atom:
    """An indecomposable tensor factor with an ordered basis of labels."""

    name: str
    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"atom {self.name!r} has repeated labels")


@dataclass(frozen=True)
class Obj:
    backend: str
    factors: tuple = ()

    @cached_property
    def size(self) -> int:
        return prod(len(a.labels) for a in self.factors)

    @property
    def labels(self) -> tuple:
        return _labels(self.factors)

    def label(self, index: int):
        return self.labels[index]

    def index(self, label) -> int:
        return _label_index(self.factors)[label]

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def __str__(self) -> str:
        if not self.factors:
            return "I"
        return "⊗".join(a.name for a in self.factors)


@lru_cache(maxsize=512)
def _labels(factors: tuple) -> tuple:
    if not factors:
        return ((),)
    if len(factors) == 1:
        return tuple(factors[0].labels)
    return tuple(product(*[a.labels for a in factors]))


@lru_cache(maxsize=512)
def _label_index(factors: tuple) -> dict:
    return {lab: k for k, lab in enumerate(_labels(factors))}


@dataclass(frozen=True)
class Witness:
    """Where two parallel morphisms first disagree."""

    index: int
    label: Any
    lhs: Any
    rhs: Any

    def describe(self) -> str:
        return f"basis element #{self.index} ({_show(self.label)}): {_show(self.lhs)} != {_show(self.rhs)}"

    def to_json(self) -> dict:
        return {"index": self.index, "label": _jsonable(self.label), "lhs": _jsonable(self.lhs), "rhs": _jsonable(self.rhs)}


def _show(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_show(y) for y in x) + ")"
    if isinstance(x, list):
        return "[" + ", ".join(_show(y) for y in x) + "]"
    return str(x)


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


class Morphism:
    __slots__ = ("ctx", "source", "target", "data")

    def __init__(self, ctx: "MonoidalContext", source: Obj, target: Obj, data):
        self.ctx = ctx
        self.source = source
        self.target = target
        self.data = data

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return self.ctx.compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.ctx.tag == other.ctx.tag
            and self.source == other.source
            and self.target == other.target
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.ctx.tag, self.source, self.target, self.data))

    def __repr__(self) -> str:
        return f"Morphism[{self.ctx.tag}]({self.source} -> {self.target})"


@dataclass(frozen=True)
class EqualizerResult:
    object: Obj
    inclusion: Morphism
    pair: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class CoequalizerResult:
    object: Obj
    projection: Morphism
    pair: tuple = field(default=(), compare=False)


class MonoidalContext:
    """A symmetric strict monoidal category with coreflexive (co)equalizers."""

    tag = "abstract"

    def __eq__(self, other):
        return isinstance(other, MonoidalContext) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return self.tag

    # -- objects ---------------------------------------------------------------

    def object(self, name: str, labels: Sequence) -> Obj:
        return Obj(self.tag, (Atom(name, tuple(labels)),))

    def unit(self) -> Obj:
        return Obj(self.tag)

    def _check(self, *items):
        for x in items:
            tag = x.backend if isinstance(x, Obj) else x.ctx.tag
            if tag != self.tag:
                raise BackendMismatch(f"{tag} used in {self.tag}")

    def tensor(self, *items):
        """Tensor objects, or tensor morphisms; the empty tensor is the unit."""
        self._check(*items)
        if not items or isinstance(items[0], Obj):
            if not all(isinstance(x, Obj) for x in items):
                raise TypeError("cannot mix objects and morphisms in a tensor")
            return Obj(self.tag, tuple(a for x in items for a in x.factors))
        if len(items) == 1:
            return items[0]
        source = self.tensor(*[f.source for f in items])
        target = self.tensor(*[f.target for f in items])
        return Morphism(self, source, target, self._tensor_data(items))

    def identity(self, x: Obj) -> Morphism:
        self._check(x)
        return Morphism(self, x, x, self._identity_data(x))

    def compose(self, *fs: Morphism) -> Morphism:
        """``compose(h, g, f)`` is ``h . g . f`` (right to left)."""
        if not fs:
            raise ValueError("nothing to compose")
        self._check(*fs)
        out = fs[-1]
        for g in reversed(fs[:-1]):
            if g.source != out.target:
                raise ShapeMismatch(f"cannot compose {g.source} <- ... with ... -> {out.target}")
            out = Morphism(self, out.source, g.target, self._compose_data(g, out))
        return out

    def permutation(self, blocks: Sequence[Obj], perm: Sequence[int]) -> Morphism:
        """The symmetry ``c_perm``: output slot ``k`` carries input block ``perm[k]``."""
        self._check(*blocks)
        source = self.tensor(*blocks)
        target = self.tensor(*[blocks[p - 1] for p in linalg._check_permutation(perm, len(blocks))])
        return Morphism(self, source, target, self._permutation_data(blocks, perm))

    def braiding(self, x: Obj, y: Obj) -> Morphism:
        return self.permutation([x, y], (2, 1))

    # -- limits ----------------------------------------------------------------

    def equalizer(self, f: Morphism, g: Morphism, name: str = "Eq", retraction: Morphism | None = None) -> EqualizerResult:
        self._parallel(f, g)
        if retraction is not None:
            ident = self.identity(f.source)
            for side in (f, g):
                if self.compose(retraction, side) != ident:
                    raise LawViolation("coreflexivity", self.difference(self.compose(retraction, side), ident))
        return self._equalizer(f, g, name)

    def coreflexive_equalizer(self, f: Morphism, g: Morphism, retraction: Morphism | None = None, name: str = "Eq"):
        """Equalizer of a pair with a common retraction (checked only when one is given)."""
        return self.equalizer(f, g, name, retraction)

    def tensor_comparison(self, x: Obj, eq: EqualizerResult, side: str = "left") -> Morphism:
        """The comparison ``X⊗Eq(f, g) -> Eq(X⊗f, X⊗g)`` (or with ``X`` on the right).

        Raises :class:`ComparisonNotInvertible` unless it is an isomorphism.
        """
        f, g = eq.pair
        ident = self.identity(x)
        if side == "left":
            pair = (self.tensor(ident, f), self.tensor(ident, g))
            moved = self.tensor(ident, eq.inclusion)
        else:
            pair = (self.tensor(f, ident), self.tensor(g, ident))
            moved = self.tensor(eq.inclusion, ident)
        target = self.equalizer(*pair, name=f"Eq({x}⊗)")
        try:
            comparison = self.factor_through_mono(target.inclusion, moved)
            self.factor_through_mono(moved, target.inclusion)
        except NotInImage as exc:
            raise ComparisonNotInvertible(f"tensoring with {x} does not preserve this equalizer: {exc}") from exc
        return comparison

    def coequalizer(self, f: Morphism, g: Morphism, name: str = "Coeq") -> CoequalizerResult:
        self._parallel(f, g)
        return self._coequalizer(f, g, name)

    def factor_through_equalizer(self, eq: EqualizerResult, h: Morphism) -> Morphism:
        f, g = eq.pair
        w = self.difference(self.compose(f, h), self.compose(g, h))
        if w is not None:
            raise DoesNotEqualize(w)
        return self.factor_through_mono(eq.inclusion, h)

    def _parallel(self, f, g):
        self._check(f, g)
        if f.source != g.source or f.target != g.target:
            raise ShapeMismatch("equalizer of non-parallel morphisms")

    # -- comparison ------------------------------------------------------------

    def difference(self, f: Morphism, g: Morphism) -> Witness | None:
        """None when ``f == g``, otherwise the first basis element where they differ."""
        self._parallel(f, g)
        if f.data == g.data:
            return None
        return self._difference(f, g)

    # -- backend hooks ------------------------------------------------------------

    def morphism(self, source: Obj, target: Obj, data) -> Morphism:
        raise NotImplementedError

    def _identity_data(self, x):
        raise NotImplementedError

    def _compose_data(self, g, f):
        raise NotImplementedError

    def _tensor_data(self, fs):
        raise NotImplementedError

    def _permutation_data(self, blocks, perm):
        raise NotImplementedError

    def _equalizer(self, f, g, name):
        raise NotImplementedError

    def _coequalizer(self, f, g, name):
        raise NotImplementedError

    def factor_through_mono(self, m: Morphism, h: Morphism) -> Morphism:
        raise NotImplementedError

    def factor_through_epi(self, e: Morphism, h: Morphism) -> Morphism:
        raise NotImplementedError

    def _difference(self, f, g):
        raise NotImplementedError

    def is_linear(self) -> bool:
        return False


class FinSet(MonoidalContext):
    """Finite sets under cartesian product; morphisms are index tables."""

    tag = "finset"

    def morphism(self, source: Obj, target: Obj, data) -> Morphism:
        self._check(source, target)
        table = tuple(int(x) for x in data)
        if len(table) != source.size:
            raise ShapeMismatch(f"table has {len(table)} entries, source has {source.size} elements")
        n = target.size
        for x in table:
            if not 0 <= x < n:
                raise ShapeMismatch(f"table value {x} outside target of size {n}")
        return Morphism(self, source, target, table)

    def function(self, source: Obj, target: Obj, fn) -> Morphism:
        """Morphism from a Python function on labels."""
        return self.morphism(source, target, [target.index(fn(lab)) for lab in source.labels])

    def _identity_data(self, x):
        return tuple(range(x.size))

    def _compose_data(self, g, f):
        gt = g.data
        return tuple(gt[i] for i in f.data)

    def _tensor_data(self, fs):
        out = fs[0].data
        for f in fs[1:]:
            n = f.target.size
            out = tuple(a * n + b for a in out for b in f.data)
        return out

    def _permutation_data(self, blocks, perm):
        return tuple(linalg.permutation_table(perm, [b.size for b in blocks]))

    def _equalizer(self, f, g, name):
        keep = [i for i, (a, b) in enumerate(zip(f.data, g.data)) if a == b]
        labels = f.source.labels
        obj = Obj(self.tag, (Atom(name, tuple(labels[i] for i in keep)),))
        return EqualizerResult(obj, Morphism(self, obj, f.source, tuple(keep)), (f, g))

    def _coequalizer(self, f, g, name):
        n = f.target.size
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in zip(f.data, g.data):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        roots = sorted({find(x) for x in range(n)})
        pos = {r: k for k, r in enumerate(roots)}
        labels = f.target.labels
        obj = Obj(self.tag, (Atom(name, tuple(labels[r] for r in roots)),))
        proj = Morphism(self, f.target, obj, tuple(pos[find(x)] for x in range(n)))
        return CoequalizerResult(obj, proj, (f, g))

    def factor_through_mono(self, m, h):
        self._check(m, h)
        if m.target != h.target:
            raise ShapeMismatch("factorisation target mismatch")
        inverse = {}
        for i, v in enumerate(m.data):
            if v in inverse:
                raise ValueError("map is not injective")
            inverse[v] = i
        out = []
        for i, v in enumerate(h.data):
            if v not in inverse:
                raise NotInImage(i, "element is not in the image of the injection")
            out.append(inverse[v])
        return Morphism(self, h.source, m.source, tuple(out))

    def factor_through_epi(self, e, h):
        self._check(e, h)
        if e.source != h.source:
            raise ShapeMismatch("factorisation source mismatch")
        out: dict[int, int] = {}
        for i, (q, v) in enumerate(zip(e.data, h.data)):
            if out.setdefault(q, v) != v:
                raise NotInImage(i, "map is not constant on the fibres of the surjection")
        if len(out) != e.target.size:
            raise ValueError("map is not surjective")
        return Morphism(self, e.target, h.target, tuple(out[q] for q in range(e.target.size)))

    def _difference(self, f, g):
        labels = f.target.labels
        for i, (a, b) in enumerate(zip(f.data, g.data)):
            if a != b:
                return Witness(i, f.source.labels[i], labels[a], labels[b])
        return None


class FdVect(MonoidalContext):
    """Finite-dimensional rational vector spaces with based objects."""

    tag = "fdvect"

    def is_linear(self) -> bool:
        return True

    def morphism(self, source: Obj, target: Obj, data) -> Morphism:
        self._check(source, target)
        if not isinstance(data, ExactMatrix):
            data = ExactMatrix(target.size, source.size, data)
        if data.shape != (target.size, source.size):
            raise ShapeMismatch(f"matrix shape {data.shape} does not match {target.size}x{source.size}")
        return Morphism(self, source, target, data)

    def function(self, source: Obj, target: Obj, fn) -> Morphism:
        """Linear extension of a function on basis labels."""
        table = [target.index(fn(lab)) for lab in source.labels]
        return Morphism(self, source, target, ExactMatrix.from_function(table, target.size))

    def linear(self, source: Obj, target: Obj, fn) -> Morphism:
        """Linear map sending each source label to ``fn(label)``, a dict ``{target label: coefficient}``."""
        entries: dict[tuple[int, int], Any] = {}
        for j, lab in enumerate(source.labels):
            for tl, v in fn(lab).items():
                key = (target.index(tl), j)
                entries[key] = entries.get(key, 0) + v
        return Morphism(self, source, target, ExactMatrix.from_dict(target.size, source.size, entries))

    def linearize(self, f: Morphism) -> Morphism:
        """0/1 matrix of a FinSet morphism."""
        src = Obj(self.tag, f.source.factors)
        tgt = Obj(self.tag, f.target.factors)
        return Morphism(self, src, tgt, ExactMatrix.from_function(f.data, tgt.size))

    def scale(self, f: Morphism, c) -> Morphism:
        return Morphism(self, f.source, f.target, f.data.scale(c))

    def add(self, f: Morphism, g: Morphism) -> Morphism:
        self._parallel(f, g)
        return Morphism(self, f.source, f.target, f.data + g.data)

    def _identity_data(self, x):
        return ExactMatrix.identity(x.size)

    def _compose_data(self, g, f):
        return g.data @ f.data

    def _tensor_data(self, fs):
        return linalg.kron_all([f.data for f in fs])

    def _permutation_data(self, blocks, perm):
        return linalg.permutation_map(perm, [b.size for b in blocks])

    def _equalizer(self, f, g, name):
        k = linalg.kernel_basis(f.data - g.data)
        pivots = linalg.pivot_positions(k)
        labels = f.source.labels
        obj = Obj(self.tag, (Atom(name, tuple(labels[p] for p in pivots)),))
        return EqualizerResult(obj, Morphism(self, obj, f.source, k), (f, g))

    def _coequalizer(self, f, g, name):
        q, _ = linalg.cokernel_projection(f.data - g.data)
        pivots = linalg.pivot_positions(q.T)
        labels = f.target.labels
        obj = Obj(self.tag, (Atom(name, tuple(labels[p] for p in pivots)),))
        return CoequalizerResult(obj, Morphism(self, f.target, obj, q), (f, g))

    def factor_through_mono(self, m, h):
        self._check(m, h)
        if m.target != h.target:
            raise ShapeMismatch("factorisation target mismatch")
        return Morphism(self, h.source, m.source, linalg.factor_through_mono(m.data, h.data))

    def factor_through_epi(self, e, h):
        self._check(e, h)
        if e.source != h.source:
            raise ShapeMismatch("factorisation source mismatch")
        return Morphism(self, e.target, h.target, linalg.factor_through_epi(e.data, h.data))

    def _difference(self, f, g):
        j = f.data.first_difference(g.data)
        if j is None:
            return None
        labels = f.target.labels

        def fmt(col):
            return {_show(labels[i]): format_rational(v) for i, v in enumerate(col) if v}

        return Witness(j, f.source.labels[j], fmt(f.data.column(j)), fmt(g.data.column(j)))


class Opposite(MonoidalContext):
    """The opposite of a backend: a morphism ``X -> Y`` stores a base morphism ``Y -> X``.

    Equalizers here are coequalizers of the base, and vice versa.
    """

    def __init__(self, base: MonoidalContext):
        self.base = base
        self.tag = f"op({base.tag})"

    def is_linear(self) -> bool:
        return self.base.is_linear()

    def to_base(self, x: Obj) -> Obj:
        return Obj(self.base.tag, x.factors)

    def from_base(self, x: Obj) -> Obj:
        return Obj(self.tag, x.factors)

    def morphism(self, source: Obj, target: Obj, data) -> Morphism:
        """``data`` is the underlying base morphism ``target -> source`` (or its payload)."""
        self._check(source, target)
        if not isinstance(data, Morphism):
            data = self.base.morphism(self.to_base(target), self.to_base(source), data)
        if data.source != self.to_base(target) or data.target != self.to_base(source):
            raise ShapeMismatch("underlying morphism has the wrong direction or shape")
        return Morphism(self, source, target, data)

    def reverse(self, u: Morphism) -> Morphism:
        """Read a base morphism ``Y -> X`` as a morphism ``X -> Y`` here."""
        return Morphism(self, self.from_base(u.target), self.from_base(u.source), u)

    def _identity_data(self, x):
        return self.base.identity(self.to_base(x))

    def _compose_data(self, g, f):
        return self.base.compose(f.data, g.data)

    def _tensor_data(self, fs):
        return self.base.tensor(*[f.data for f in fs])

    def _permutation_data(self, blocks, perm):
        permuted = [self.to_base(blocks[p - 1]) for p in perm]
        return self.base.permutation(permuted, linalg.inverse_permutation(perm))

    def _equalizer(self, f, g, name):
        co = self.base.coequalizer(f.data, g.data, name)
        obj = self.from_base(co.object)
        return EqualizerResult(obj, Morphism(self, obj, f.source, co.projection), (f, g))

    def _coequalizer(self, f, g, name):
        eq = self.base.equalizer(f.data, g.data, name)
        obj = self.from_base(eq.object)
        return CoequalizerResult(obj, Morphism(self, f.target, obj, eq.inclusion), (f, g))

    def factor_through_mono(self, m, h):
        self._check(m, h)
        if m.target != h.target:
            raise ShapeMismatch("factorisation target mismatch")
        u = self.base.factor_through_epi(m.data, h.data)
        return Morphism(self, h.source, m.source, u)

    def factor_through_epi(self, e, h):
        self._check(e, h)
        if e.source != h.source:
            raise ShapeMismatch("factorisation source mismatch")
        u = self.base.factor_through_mono(e.data, h.data)
        return Morphism(self, e.target, h.target, u)

    def _difference(self, f, g):
        return self.base.difference(f.data, g.data)


def context_from_tag(tag: str) -> MonoidalContext:
    tag = tag.strip().lower()
    if tag == "finset":
        return FinSet()
    if tag == "fdvect":
        return FdVect()
    if tag.startswith("op(") and tag.endswith(")"):
        return Opposite(context_from_tag(tag[3:-1]))
    raise ValueError(f"unknown backend {tag!r}")


def underlying(f: Morphism) -> Morphism:
    """Strip every Opposite layer, returning the base morphism (direction flipped per layer)."""
    while isinstance(f.ctx, Opposite):
        f = f.data
    return f
