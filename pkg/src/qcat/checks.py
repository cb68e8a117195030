"""Verdict records shared by the law checkers and the axiom reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .context import Morphism, Witness
from .errors import NotInImage, QCatError

PASS = "pass"
FAIL = "fail"
BLOCKED = "blocked"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    witness: Witness | None = None
    reason: str = ""
    lhs: Morphism | None = field(default=None, compare=False, repr=False)
    rhs: Morphism | None = field(default=None, compare=False, repr=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def line(self) -> str:
        text = f"{self.name}: {self.status}"
        if self.witness is not None:
            text += f" -- {self.witness.describe()}"
        elif self.reason:
            text += f" -- {self.reason}"
        return text

    def to_json(self, full: bool = True) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason:
            out["reason"] = self.reason
        if full and self.status == FAIL and self.lhs is not None and self.rhs is not None:
            from .serialize import morphism_payload

            out["lhs"] = morphism_payload(self.lhs)
            out["rhs"] = morphism_payload(self.rhs)
        return out


def equation(name: str, lhs: Morphism, rhs: Morphism) -> Check:
    """Compare two parallel morphisms; a failure carries the first differing basis element."""
    try:
        w = lhs.ctx.difference(lhs, rhs)
    except QCatError as exc:
        return Check(name, FAIL, reason=str(exc))
    if w is None:
        return Check(name, PASS)
    return Check(name, FAIL, w, lhs=lhs, rhs=rhs)


def blocked(name: str, reason: str) -> Check:
    return Check(name, BLOCKED, reason=reason)


def factor_failure(name: str, exc: NotInImage, h: Morphism) -> Check:
    """A failed factorisation, reported against the map that did not factor."""
    idx = exc.witness
    label = h.source.labels[idx] if isinstance(idx, int) and idx < h.source.size else idx
    return Check(name, FAIL, Witness(idx, label, "does not factor", "required factorisation"), reason=str(exc))


def attempt(name: str, thunk: Callable[[], list[Check]]) -> list[Check]:
    """Run ``thunk``; construction errors become a blocked verdict instead of escaping."""
    try:
        return thunk()
    except QCatError as exc:
        return [blocked(name, str(exc))]


def summarize(checks: list[Check]) -> str:
    if any(c.status == FAIL for c in checks):
        return FAIL
    if any(c.status == BLOCKED for c in checks):
        return BLOCKED
    return PASS


def first_failure(checks: list[Check]) -> Check | None:
    for c in checks:
        if c.status == FAIL:
            return c
    return None
