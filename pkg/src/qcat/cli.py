"""Command line front end: ``qcat check``, ``qcat construct`` and ``qcat compose``.

Exit status is 0 when every requested check passes, 1 when a check fails or a
construction is refused, and 2 when an input cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import serialize
from .constructors import (
    FinCat,
    from_bialgebra,
    from_hopf_group_coalgebra,
    from_small_category,
    linearize,
)
from .context import FinSet
from .errors import DocumentError, EndpointMismatch, LawViolation, QCatError
from .functors import (
    QuantumFunctor,
    compose_functors,
    validate_functor,
    validate_nat_transformation,
)
from .quantum import AXIOMS, QuantumCategory, check_axioms, tensor_quantum_categories

log = logging.getLogger("qcat")

LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


class _Failure(Exception):
    """A refused operation: exit 1 with ``payload`` on stdout."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("message", ""))
        self.payload = payload


def error_payload(exc: Exception) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, LawViolation):
        out["law"] = exc.law
        w = exc.witness
        if w is not None:
            out["witness"] = w.to_json() if hasattr(w, "to_json") else str(w)
    return out


# -- reports -----------------------------------------------------------------------


def _check_document(doc: dict, value, axiom: int | None):
    """Return ``(passed, text_report, json_report)`` for a loaded document."""
    kind = doc["kind"]
    if axiom is not None and kind != "quantum-category":
        raise DocumentError("--axiom", "only quantum-category documents have axioms")
    if kind == "quantum-category":
        report = check_axioms(value, AXIOMS if axiom is None else (axiom,))
        return report.passed, report.to_text(), report.to_json()
    if kind == "functor":
        v = validate_functor(value)
        return v.passed, v.to_text(), v.to_json()
    if kind == "natural":
        v = validate_nat_transformation(value)
        return v.passed, v.to_text(), v.to_json()
    checks = _structure_checks(kind, value)
    passed = all(c.passed for c in checks)
    text = "\n".join([c.line() for c in checks] + ["overall: " + ("pass" if passed else "fail")])
    return passed, text, {"passed": passed, "checks": [c.to_json() for c in checks]}


def _structure_checks(kind: str, value):
    from .checks import FAIL, Check
    from .comod import comodule_checks, comonoid_checks
    from .quantum import graph_checks

    if kind == "comonoid":
        return comonoid_checks(value)
    if kind == "comodule":
        return comonoid_checks(value.left) + comonoid_checks(value.right) + comodule_checks(value)
    if kind == "quantum-graph":
        return graph_checks(value)
    if kind == "fincat":
        problems = value.law_violations()
        if not problems:
            return [Check("category laws", "pass")]
        return [Check("category laws", FAIL, reason=p) for p in problems]
    if kind == "bialgebra":
        _, report = from_bialgebra(value)
        return report.failing() or [Check("bialgebra as quantum category", "pass")]
    if kind == "hopf-group-coalgebra":
        try:
            from_hopf_group_coalgebra(value)
        except LawViolation as exc:
            return [Check(f"hopf group coalgebra: {exc.law}", FAIL, reason=str(exc))]
        return [Check("hopf group coalgebra laws", "pass")]
    raise DocumentError("kind", f"cannot check {kind!r}")  # pragma: no cover


def cmd_check(args) -> int:
    doc, value = serialize.Loader().load(args.file)
    log.info("loaded %s document from %s", doc["kind"], args.file)
    passed, text, data = _check_document(doc, value, args.axiom)
    if args.report == "json":
        sys.stdout.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0 if passed else 1


# -- construct ------------------------------------------------------------------------


def _verdicts(report) -> dict:
    return {str(k): v.status for k, v in sorted(report.axioms.items())}


def _load_kind(loader, path, kind):
    doc, value = loader.load(path)
    if doc["kind"] != kind:
        raise DocumentError("kind", f"{path}: expected a {kind} document, found {doc['kind']}")
    return value


def cmd_construct(args) -> int:
    loader = serialize.Loader()
    sub = args.subcommand
    inputs = args.paths[:-1]
    out = Path(args.paths[-1])
    wanted = (1, 2) if sub == "tensor" else (1,)
    if len(inputs) not in wanted:
        raise DocumentError("arguments", f"{sub} takes {' or '.join(map(str, wanted))} input file(s) and an output path")
    try:
        if sub == "from-cat":
            cat: FinCat = _load_kind(loader, inputs[0], "fincat")
            q = from_small_category(cat, args.backend)
            report = check_axioms(q)
        elif sub == "from-bialgebra":
            q, report = from_bialgebra(_load_kind(loader, inputs[0], "bialgebra"))
        elif sub == "from-hopf-gc":
            q, report, _ = from_hopf_group_coalgebra(_load_kind(loader, inputs[0], "hopf-group-coalgebra"))
        elif sub == "linearize":
            src: QuantumCategory = _load_kind(loader, inputs[0], "quantum-category")
            if not isinstance(src.ctx, FinSet):
                raise DocumentError("backend", "linearize needs a finset quantum category")
            q = linearize(src)
            report = check_axioms(q)
        else:
            first = _load_kind(loader, inputs[0], "quantum-category")
            second = _load_kind(loader, inputs[-1], "quantum-category")
            q = tensor_quantum_categories(first, second)
            report = check_axioms(q)
    except DocumentError:
        raise
    except QCatError as exc:
        raise _Failure(error_payload(exc)) from exc
    doc = serialize.quantum_category_to_json(q, {"constructed_by": sub, "verdicts": _verdicts(report)})
    out.write_text(serialize.dumps(doc), encoding="utf-8")
    log.info("wrote %s", out)
    sys.stdout.write(report.to_text() + "\n")
    return 0 if report.passed else 1


# -- compose -----------------------------------------------------------------------------


def _rebase(ref, doc_dir: Path, out_dir: Path):
    """Rewrite a path reference so it resolves from the output document."""
    if isinstance(ref, dict):
        return ref
    return Path(os.path.relpath((doc_dir / ref).resolve(), out_dir.resolve())).as_posix()


def cmd_compose(args) -> int:
    loader = serialize.Loader()
    f_doc, F = loader.load(args.first)
    g_doc, G = loader.load(args.second)
    for path, doc in ((args.first, f_doc), (args.second, g_doc)):
        if doc["kind"] != "functor":
            raise DocumentError("kind", f"{path}: expected a functor document, found {doc['kind']}")
    assert isinstance(F, QuantumFunctor) and isinstance(G, QuantumFunctor)
    if F.target != G.source:
        raise _Failure(
            {
                "error": "EndpointMismatch",
                "message": f"target of {F.name} ({F.target.name}) is not the source of {G.name} ({G.source.name})",
                "first": {"name": F.name, "target": F.target.name},
                "second": {"name": G.name, "source": G.source.name},
            }
        )
    try:
        H = compose_functors(F, G, validate=False)
    except EndpointMismatch as exc:  # pragma: no cover - guarded above
        raise _Failure(error_payload(exc)) from exc
    verdict = validate_functor(H)
    sys.stdout.write(verdict.to_text() + "\n")
    if not verdict.passed:
        return 1
    out = Path(args.output)
    name = args.name or f"{G.name}∘{F.name}"
    doc = serialize.functor_to_json(
        QuantumFunctor(H.source, H.target, H.f, H.phi, name),
        _rebase(f_doc["source"], Path(args.first).parent, out.parent),
        _rebase(g_doc["target"], Path(args.second).parent, out.parent),
    )
    out.write_text(serialize.dumps(doc), encoding="utf-8")
    log.info("wrote %s", out)
    return 0


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcat", description="Exact checks for quantum categories.")
    parser.add_argument("--verbose", action="store_true", help="print a timing footer on stderr")
    subs = parser.add_subparsers(dest="command", required=True)

    check = subs.add_parser("check", help="validate a document")
    check.add_argument("file")
    check.add_argument("--axiom", type=int, choices=AXIOMS, help="check a single axiom")
    check.add_argument("--report", choices=("text", "json"), default="text")
    check.set_defaults(run=cmd_check)

    construct = subs.add_parser("construct", help="build a quantum category document")
    construct.add_argument(
        "subcommand", choices=("from-cat", "from-bialgebra", "from-hopf-gc", "linearize", "tensor")
    )
    construct.add_argument("paths", nargs="+", metavar="PATH", help="input file(s) followed by the output path")
    construct.add_argument("--backend", choices=("finset", "fdvect"), default="finset", help="backend for from-cat")
    construct.set_defaults(run=cmd_construct)

    compose = subs.add_parser("compose", help="compose two functors (first, then second)")
    compose.add_argument("first")
    compose.add_argument("second")
    compose.add_argument("output")
    compose.add_argument("--name", help="name of the composite")
    compose.set_defaults(run=cmd_compose)
    return parser


def _configure_logging() -> None:
    level = LOG_LEVELS.get(os.environ.get("QCAT_LOG", "error").strip().lower(), logging.ERROR)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    log.setLevel(level)


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        status = args.run(args)
    except DocumentError as exc:
        sys.stderr.write(f"error: {exc}\n")
        status = 2
    except _Failure as exc:
        sys.stdout.write(json.dumps(exc.payload, indent=2, ensure_ascii=False) + "\n")
        status = 1
    if args.verbose:
        sys.stderr.write(f"elapsed: {time.perf_counter() - started:.3f}s\n")
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
