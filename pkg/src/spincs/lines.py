"""Symbolic Z/2-graded lines and the sign calculus of action elements.

An element of L_1 (x) ... (x) L_n is modelled as an ordered list of graded
lines plus a unit-circle phase (or ``None`` when the phase is unknown).
Moving odd lines past each other costs a Koszul sign; contracting
L (x) L* uses the supertrace b (x) a^-1 -> (-1)^|L| a^-1(b), while
L* (x) L contracts without a sign.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .phase import Phase


class LineError(ValueError):
    pass


@dataclass(frozen=True)
class GradedLine:
    label: str
    parity: int = 0
    dual: bool = False

    def __post_init__(self):
        object.__setattr__(self, "parity", int(self.parity) % 2)

    def dualize(self) -> "GradedLine":
        return replace(self, dual=not self.dual)

    def __str__(self):
        return f"{self.label}{'*' if self.dual else ''}[{self.parity}]"


@dataclass(frozen=True)
class LineExpr:
    factors: tuple[GradedLine, ...] = ()
    phase: Optional[Phase] = Phase()

    @classmethod
    def unit(cls) -> "LineExpr":
        return cls((), Phase())

    @classmethod
    def of(cls, *factors: GradedLine, phase=Phase()) -> "LineExpr":
        if phase is not None:
            phase = Phase.parse(phase)
        return cls(tuple(factors), phase)

    @property
    def parity(self) -> int:
        return sum(f.parity for f in self.factors) % 2

    def with_phase(self, factor: Phase) -> "LineExpr":
        if self.phase is None:
            return self
        return replace(self, phase=self.phase * factor)

    def __str__(self):
        body = " (x) ".join(str(f) for f in self.factors) or "C"
        ph = "?" if self.phase is None else self.phase.render()
        return f"{ph} in {body}"


def tensor(a: LineExpr, b: LineExpr) -> LineExpr:
    phase = None if a.phase is None or b.phase is None else a.phase * b.phase
    return LineExpr(a.factors + b.factors, phase)


def supertrace(e: LineExpr) -> LineExpr:
    """Contract the last two factors, which must be L, L* or L*, L."""
    if len(e.factors) < 2:
        raise LineError("supertrace needs at least two factors")
    x, y = e.factors[-2:]
    if x.label != y.label or x.parity != y.parity or x.dual == y.dual:
        raise LineError(f"last two factors {x} and {y} are not a line and its dual")
    out = LineExpr(e.factors[:-2], e.phase)
    if not x.dual:
        # L (x) L*: the supertrace sign
        out = out.with_phase(Phase.sign(x.parity))
    return out


def permute(e: LineExpr, perm: Sequence[int]) -> LineExpr:
    """Reorder factors so that new position k holds old factor perm[k]."""
    n = len(e.factors)
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise LineError(f"{perm} is not a permutation of {n} factors")
    swaps = 0
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j] and e.factors[perm[i]].parity and e.factors[perm[j]].parity:
                swaps += 1
    return LineExpr(tuple(e.factors[k] for k in perm), e.phase).with_phase(Phase.sign(swaps))


def orientation_sign(k: int) -> Phase:
    """(-1)^(k choose 2) for k boundary components with odd mod-2 index."""
    if k < 0:
        raise LineError("k must be non-negative")
    return Phase.sign(k * (k - 1) // 2)


def glue(e: LineExpr) -> LineExpr:
    """Glue along a cut whose two sides contribute the trailing L, L* pair."""
    if len(e.factors) < 2:
        raise LineError("nothing to glue: expression has fewer than two factors")
    x, y = e.factors[-2:]
    if x.label != y.label or x.dual or not y.dual:
        raise LineError(f"unmatched gluing tail {x}, {y}: expected L followed by L*")
    return supertrace(e)


def _det_label(label: str) -> str:
    if label.startswith("Pfaff"):
        return "Det" + label[len("Pfaff"):]
    return label


def pfaff_square(e: LineExpr) -> LineExpr:
    """Square an element: Pfaffian factors become determinant factors and the
    phase doubles.  Parities are carried through as given."""
    factors = tuple(replace(f, label=_det_label(f.label)) for f in e.factors)
    phase = None if e.phase is None else e.phase ** 2
    return LineExpr(factors, phase)


# -- documents ----------------------------------------------------------------

_DOC_FIELDS = {"factors", "phase", "operations"}


def _factor_from_doc(d) -> GradedLine:
    if not isinstance(d, dict) or not set(d) <= {"label", "parity", "dual"} or "label" not in d:
        raise LineError(f"bad factor entry {d!r}")
    parity = d.get("parity", 0)
    if parity not in (0, 1):
        raise LineError("parity must be 0 or 1")
    return GradedLine(str(d["label"]), parity, bool(d.get("dual", False)))


def _phase_from_doc(value):
    if value is None:
        return None
    try:
        return Phase.parse(value)
    except (ValueError, ZeroDivisionError):
        raise LineError(f"bad phase {value!r}") from None


def factor_to_doc(f: GradedLine) -> dict:
    return {"label": f.label, "parity": f.parity, "dual": f.dual}


def expr_to_doc(e: LineExpr) -> dict:
    return {
        "factors": [factor_to_doc(f) for f in e.factors],
        "phase": None if e.phase is None else str(e.phase.angle),
        "phase_rendered": "unknown" if e.phase is None else e.phase.render(),
        "parity": e.parity,
    }


def run_document(doc: dict) -> LineExpr:
    """Evaluate a glue-expression document.

    ``{"factors": [...], "phase": "1/4" | null, "operations": [...]}``; each
    operation is ``{"op": "supertrace" | "glue" | "pfaff_square"}``,
    ``{"op": "permute", "perm": [...]}``, ``{"op": "orient", "k": n}`` or
    ``{"op": "tensor", "factors": [...], "phase": ...}``.
    """
    if not isinstance(doc, dict) or not set(doc) <= _DOC_FIELDS or "factors" not in doc:
        raise LineError(f"glue document needs 'factors' and optionally {sorted(_DOC_FIELDS - {'factors'})}")
    e = LineExpr(tuple(_factor_from_doc(f) for f in doc["factors"]), _phase_from_doc(doc.get("phase", "0")))
    for op in doc.get("operations", []):
        if not isinstance(op, dict) or "op" not in op:
            raise LineError(f"bad operation {op!r}")
        name = op["op"]
        if name in ("supertrace", "glue", "pfaff_square"):
            if set(op) != {"op"}:
                raise LineError(f"{name} takes no arguments")
            e = {"supertrace": supertrace, "glue": glue, "pfaff_square": pfaff_square}[name](e)
        elif name == "permute":
            e = permute(e, op.get("perm", []))
        elif name == "orient":
            e = e.with_phase(orientation_sign(int(op.get("k", 0))))
        elif name == "tensor":
            other = LineExpr(
                tuple(_factor_from_doc(f) for f in op.get("factors", [])),
                _phase_from_doc(op.get("phase", "0")),
            )
            e = tensor(e, other)
        else:
            raise LineError(f"unknown operation {name!r}")
    return e

