"""JSON documents for every structure the command line handles.

Rationals are written as text (``"3/2"``), tuple labels as arrays, and every
carrier lists its basis labels explicitly.  The derived basis of the object of
composable pairs is recomputed on load and reported in metadata on write.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .comod import Comodule, Comonoid
from .constructors import (
    AlgebraData,
    BialgebraData,
    FinCat,
    HopfGroupCoalgebraData,
)
from .context import Atom, FdVect, FinSet, MonoidalContext, Morphism, Obj, Opposite, context_from_tag
from .errors import DocumentError, QCatError
from .functors import QuantumFunctor, QuantumNatTransformation
from .linalg import ExactMatrix, format_rational, to_rational
from .quantum import QuantumCategory, QuantumGraph

KINDS = (
    "comonoid",
    "comodule",
    "quantum-graph",
    "quantum-category",
    "functor",
    "natural",
    "fincat",
    "bialgebra",
    "hopf-group-coalgebra",
)


# -- labels and payloads -------------------------------------------------------------


def label_to_json(x):
    if isinstance(x, tuple):
        return [label_to_json(y) for y in x]
    return x


def label_from_json(x):
    if isinstance(x, list):
        return tuple(label_from_json(y) for y in x)
    return x


def matrix_to_json(m: ExactMatrix) -> list[list[str]]:
    return [[format_rational(v) for v in row] for row in m.to_rows()]


def matrix_from_json(rows, where: str, shape: tuple[int, int] | None = None) -> ExactMatrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentError(where, "matrix must be a list of rows")
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise DocumentError(where, f"ragged matrix (row lengths {sorted(widths)})")
    try:
        entries = [[to_rational(v) for v in r] for r in rows]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(where, f"bad rational entry: {exc}") from exc
    n_rows = len(rows)
    n_cols = widths.pop() if widths else (shape[1] if shape else 0)
    m = ExactMatrix(n_rows, n_cols, entries)
    if shape is not None and m.shape != shape:
        raise DocumentError(where, f"matrix has shape {m.shape}, expected {shape}")
    return m


def obj_to_json(x: Obj) -> list[dict]:
    return [{"name": a.name, "labels": [label_to_json(l) for l in a.labels]} for a in x.factors]


def obj_from_json(ctx: MonoidalContext, atoms, where: str) -> Obj:
    if not isinstance(atoms, list):
        raise DocumentError(where, "carrier must be a list of factors")
    factors = []
    for k, a in enumerate(atoms):
        try:
            factors.append(Atom(str(a["name"]), tuple(label_from_json(l) for l in a["labels"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"{where}[{k}]", f"bad factor: {exc}") from exc
    return Obj(ctx.tag, tuple(factors))


def morphism_payload(f: Morphism) -> dict:
    if isinstance(f.ctx, Opposite):
        return morphism_payload(f.data)
    if isinstance(f.ctx, FinSet):
        return {"table": list(f.data)}
    return {"matrix": matrix_to_json(f.data)}


def morphism_from_json(ctx: MonoidalContext, source: Obj, target: Obj, payload, where: str) -> Morphism:
    """Opposite backends store the underlying base map ``target -> source``."""
    if not isinstance(payload, dict):
        raise DocumentError(where, "morphism must be an object")
    try:
        if isinstance(ctx, Opposite):
            base = morphism_from_json(ctx.base, ctx.to_base(target), ctx.to_base(source), payload, where)
            return ctx.morphism(source, target, base)
        if isinstance(ctx, FinSet):
            if "table" not in payload:
                raise DocumentError(where, "finset morphisms need a 'table'")
            table = payload["table"]
            if not isinstance(table, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in table):
                raise DocumentError(f"{where}.table", "table must be a list of integers")
            return ctx.morphism(source, target, table)
        if "matrix" not in payload:
            raise DocumentError(where, "linear morphisms need a 'matrix'")
        m = matrix_from_json(payload["matrix"], f"{where}.matrix", (target.size, source.size))
        return ctx.morphism(source, target, m)
    except DocumentError:
        raise
    except QCatError as exc:
        raise DocumentError(where, str(exc)) from exc


# -- schema ------------------------------------------------------------------------


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("qcat").joinpath("schema/document.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate_document(doc) -> None:
    """Schema-check a parsed document; errors name the offending field."""
    if not isinstance(doc, dict):
        raise DocumentError("$", "document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    full = schema()
    sub = dict(full["$defs"][kind])
    sub["$defs"] = full["$defs"]
    validator = jsonschema.Draft202012Validator(sub)
    error = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if error is not None:
        path = "/".join(str(p) for p in error.absolute_path) or "$"
        raise DocumentError(path, error.message)


# -- writers -------------------------------------------------------------------------


def comonoid_to_json(c: Comonoid) -> dict:
    return {
        "name": c.name,
        "carrier": obj_to_json(c.carrier),
        "delta": morphism_payload(c.delta),
        "epsilon": morphism_payload(c.epsilon),
    }


def comonoid_document(c: Comonoid) -> dict:
    return {"kind": "comonoid", "backend": c.ctx.tag, **comonoid_to_json(c)}


def comodule_to_json(m: Comodule) -> dict:
    return {
        "kind": "comodule",
        "backend": m.carrier.backend,
        "name": m.name,
        "left": comonoid_to_json(m.left),
        "right": comonoid_to_json(m.right),
        "carrier": obj_to_json(m.carrier),
        "coaction": morphism_payload(m.coaction),
    }


def graph_to_json(g: QuantumGraph, name: str = "G") -> dict:
    return {
        "kind": "quantum-graph",
        "backend": g.ctx.tag,
        "name": name,
        "C": comonoid_to_json(g.objects),
        "A": comonoid_to_json(g.arrows),
        "s": morphism_payload(g.source),
        "t": morphism_payload(g.target),
    }


def quantum_category_to_json(q: QuantumCategory, metadata: dict | None = None) -> dict:
    pairs = q.pairs
    meta = {"H_size": pairs.carrier.size, "H_labels": [label_to_json(l) for l in pairs.carrier.labels]}
    meta.update(metadata or {})
    return {
        "kind": "quantum-category",
        "backend": q.ctx.tag,
        "name": q.name,
        "C": comonoid_to_json(q.objects),
        "A": comonoid_to_json(q.arrows),
        "s": morphism_payload(q.source),
        "t": morphism_payload(q.target),
        "nu2": morphism_payload(q.nu2),
        "nu0": morphism_payload(q.nu0),
        "metadata": meta,
    }


def fincat_to_json(cat: FinCat) -> dict:
    return {
        "kind": "fincat",
        "name": cat.name,
        "objects": [label_to_json(o) for o in cat.objects],
        "morphisms": [label_to_json(m) for m in cat.morphisms],
        "dom": [label_to_json(cat.dom[m]) for m in cat.morphisms],
        "cod": [label_to_json(cat.cod[m]) for m in cat.morphisms],
        "ids": [label_to_json(cat.ids[o]) for o in cat.objects],
        "comp": [[label_to_json(x), label_to_json(y), label_to_json(z)] for (x, y), z in cat.comp.items()],
    }


def bialgebra_to_json(b: BialgebraData) -> dict:
    return {
        "kind": "bialgebra",
        "name": b.name,
        "labels": [label_to_json(l) for l in b.labels],
        "mult": matrix_to_json(b.mult),
        "unit": matrix_to_json(b.unit),
        "comult": matrix_to_json(b.comult),
        "counit": matrix_to_json(b.counit),
    }


def hopf_group_coalgebra_to_json(h: HopfGroupCoalgebraData) -> dict:
    els = h.elements
    return {
        "kind": "hopf-group-coalgebra",
        "name": h.name,
        "group": {
            "elements": [label_to_json(g) for g in els],
            "identity": label_to_json(h.identity),
            "table": [[label_to_json(h.mult[(g, k)]) for k in els] for g in els],
        },
        "components": [
            {
                "element": label_to_json(g),
                "labels": [label_to_json(l) for l in h.components[g].labels],
                "mult": matrix_to_json(h.components[g].mult),
                "unit": matrix_to_json(h.components[g].unit),
            }
            for g in els
        ],
        "coproducts": [
            {"pair": [label_to_json(g), label_to_json(k)], "matrix": matrix_to_json(h.coproducts[(g, k)])}
            for g in els
            for k in els
        ],
        "counit": matrix_to_json(h.counit),
    }


def functor_to_json(F: QuantumFunctor, source_ref, target_ref) -> dict:
    return {
        "kind": "functor",
        "backend": F.source.ctx.tag,
        "name": F.name,
        "source": source_ref,
        "target": target_ref,
        "f": morphism_payload(F.f),
        "phi": morphism_payload(F.phi),
    }


def natural_to_json(n: QuantumNatTransformation, source_ref, target_ref, name: str = "τ") -> dict:
    return {
        "kind": "natural",
        "backend": n.tau.ctx.tag,
        "name": name,
        "F": source_ref,
        "G": target_ref,
        "tau": morphism_payload(n.tau),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- readers -------------------------------------------------------------------------


def _ctx(doc, default=None) -> MonoidalContext:
    tag = doc.get("backend", default)
    try:
        ctx = context_from_tag(tag)
    except (ValueError, AttributeError) as exc:
        raise DocumentError("backend", str(exc)) from exc
    if isinstance(ctx, Opposite) and not isinstance(ctx.base, FdVect):
        raise DocumentError("backend", "only op(fdvect) is supported as an opposite backend")
    return ctx


def comonoid_from_json(ctx, body, where: str) -> Comonoid:
    carrier = obj_from_json(ctx, body["carrier"], f"{where}.carrier")
    delta = morphism_from_json(ctx, carrier, ctx.tensor(carrier, carrier), body["delta"], f"{where}.delta")
    eps = morphism_from_json(ctx, carrier, ctx.unit(), body["epsilon"], f"{where}.epsilon")
    return Comonoid(carrier, delta, eps, body.get("name", where))


def graph_from_json(ctx, doc) -> QuantumGraph:
    c = comonoid_from_json(ctx, doc["C"], "C")
    a = comonoid_from_json(ctx, doc["A"], "A")
    s = morphism_from_json(ctx, a.carrier, c.carrier, doc["s"], "s")
    t = morphism_from_json(ctx, a.carrier, c.carrier, doc["t"], "t")
    return QuantumGraph(c, a, s, t)


def quantum_category_from_json(doc) -> QuantumCategory:
    ctx = _ctx(doc)
    g = graph_from_json(ctx, doc)
    try:
        h = g.pairs.carrier
    except QCatError as exc:
        raise DocumentError("A", f"composable pairs cannot be formed: {exc}") from exc
    nu2 = morphism_from_json(ctx, h, g.arrows.carrier, doc["nu2"], "nu2")
    nu0 = morphism_from_json(ctx, g.objects.carrier, g.arrows.carrier, doc["nu0"], "nu0")
    return QuantumCategory(g, nu2, nu0, doc.get("name", "Q"))


def comodule_from_json(doc) -> Comodule:
    ctx = _ctx(doc)
    left = comonoid_from_json(ctx, doc["left"], "left")
    right = comonoid_from_json(ctx, doc["right"], "right")
    carrier = obj_from_json(ctx, doc["carrier"], "carrier")
    coaction = morphism_from_json(
        ctx, carrier, ctx.tensor(left.carrier, carrier, right.carrier), doc["coaction"], "coaction"
    )
    return Comodule(left, right, carrier, coaction, doc.get("name", "M"))


def fincat_from_json(doc) -> FinCat:
    objects = [label_from_json(o) for o in doc["objects"]]
    morphisms = [label_from_json(m) for m in doc["morphisms"]]
    for key, n in (("dom", len(morphisms)), ("cod", len(morphisms)), ("ids", len(objects))):
        if len(doc[key]) != n:
            raise DocumentError(key, f"expected {n} entries, found {len(doc[key])}")
    dom = dict(zip(morphisms, (label_from_json(x) for x in doc["dom"])))
    cod = dict(zip(morphisms, (label_from_json(x) for x in doc["cod"])))
    ids = dict(zip(objects, (label_from_json(x) for x in doc["ids"])))
    comp = {}
    for k, (x, y, z) in enumerate(doc["comp"]):
        key = (label_from_json(x), label_from_json(y))
        if key in comp:
            raise DocumentError(f"comp/{k}", "composite given twice")
        comp[key] = label_from_json(z)
    return FinCat.create(objects, morphisms, dom, cod, comp, ids, doc.get("name", "cat"))


def bialgebra_from_json(doc) -> BialgebraData:
    labels = tuple(label_from_json(l) for l in doc["labels"])
    n = len(labels)
    return BialgebraData(
        labels,
        matrix_from_json(doc["mult"], "mult", (n, n * n)),
        matrix_from_json(doc["unit"], "unit", (n, 1)),
        matrix_from_json(doc["comult"], "comult", (n * n, n)),
        matrix_from_json(doc["counit"], "counit", (1, n)),
        doc.get("name", "B"),
    )


def hopf_group_coalgebra_from_json(doc) -> HopfGroupCoalgebraData:
    grp = doc["group"]
    els = tuple(label_from_json(g) for g in grp["elements"])
    table = grp["table"]
    if len(table) != len(els) or any(len(r) != len(els) for r in table):
        raise DocumentError("group/table", "multiplication table must be square over the elements")
    mult = {(g, k): label_from_json(table[i][j]) for i, g in enumerate(els) for j, k in enumerate(els)}
    components = {}
    for k, comp in enumerate(doc["components"]):
        g = label_from_json(comp["element"])
        labels = tuple(label_from_json(l) for l in comp["labels"])
        n = len(labels)
        components[g] = AlgebraData(
            labels,
            matrix_from_json(comp["mult"], f"components/{k}/mult", (n, n * n)),
            matrix_from_json(comp["unit"], f"components/{k}/unit", (n, 1)),
        )
    coproducts = {}
    for k, cp in enumerate(doc["coproducts"]):
        g, h = (label_from_json(x) for x in cp["pair"])
        coproducts[(g, h)] = matrix_from_json(cp["matrix"], f"coproducts/{k}/matrix")
    return HopfGroupCoalgebraData(
        els,
        mult,
        label_from_json(grp["identity"]),
        components,
        coproducts,
        matrix_from_json(doc["counit"], "counit"),
        doc.get("name", "H"),
    )


class Loader:
    """Reads documents, resolving references relative to the referring file."""

    def __init__(self):
        self._cache: dict[Path, Any] = {}

    def read(self, path: Path) -> dict:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DocumentError(str(path), f"cannot read: {exc.strerror}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(str(path), f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
        validate_document(doc)
        return doc

    def resolve(self, ref, base: Path, where: str):
        """A reference is a path (relative to ``base``) or an inline document."""
        if isinstance(ref, dict):
            try:
                validate_document(ref)
            except DocumentError as exc:
                raise DocumentError(f"{where}/{exc.field}", str(exc)) from exc
            return self.build(ref, base)
        target = (base / ref).resolve()
        if target not in self._cache:
            self._cache[target] = self.build(self.read(target), target.parent)
        return self._cache[target]

    def load(self, path) -> tuple[dict, Any]:
        path = Path(path)
        doc = self.read(path)
        return doc, self.build(doc, path.resolve().parent)

    def build(self, doc: dict, base: Path):
        kind = doc["kind"]
        try:
            if kind == "comonoid":
                return comonoid_from_json(_ctx(doc), doc, "$")
            if kind == "comodule":
                return comodule_from_json(doc)
            if kind == "quantum-graph":
                return graph_from_json(_ctx(doc), doc)
            if kind == "quantum-category":
                return quantum_category_from_json(doc)
            if kind == "fincat":
                return fincat_from_json(doc)
            if kind == "bialgebra":
                return bialgebra_from_json(doc)
            if kind == "hopf-group-coalgebra":
                return hopf_group_coalgebra_from_json(doc)
            if kind == "functor":
                q = self._expect(self.resolve(doc["source"], base, "source"), QuantumCategory, "source")
                p = self._expect(self.resolve(doc["target"], base, "target"), QuantumCategory, "target")
                f = morphism_from_json(q.ctx, q.objects.carrier, p.objects.carrier, doc["f"], "f")
                phi = morphism_from_json(q.ctx, q.arrows.carrier, p.arrows.carrier, doc["phi"], "phi")
                return QuantumFunctor(q, p, f, phi, doc.get("name", "F"))
            if kind == "natural":
                F = self._expect(self.resolve(doc["F"], base, "F"), QuantumFunctor, "F")
                G = self._expect(self.resolve(doc["G"], base, "G"), QuantumFunctor, "G")
                tau = morphism_from_json(
                    F.source.ctx, F.source.arrows.carrier, F.target.arrows.carrier, doc["tau"], "tau"
                )
                return QuantumNatTransformation(F, G, tau)
        except DocumentError:
            raise
        except (QCatError, KeyError, ValueError, TypeError) as exc:
            raise DocumentError(kind, f"{type(exc).__name__}: {exc}") from exc
        raise DocumentError("kind", f"unsupported kind {kind!r}")  # pragma: no cover

    @staticmethod
    def _expect(value, cls, where):
        if not isinstance(value, cls):
            raise DocumentError(where, f"reference must resolve to a {cls.__name__}")
        return value
