"""Spin structures and the spin-structure dependence q of the action.

q(E, l) is the ratio of action phases under the shift sigma -> sigma + l.
For w1(E) = 0 it equals (-1)^<w2(E) l, [X]> and does not depend on sigma.
In general it is a Z/4 quadratic refinement of
B_E(l1, l2) = (-1)^<w1(E) l1 l2, [X]>, whose values on the L - 1 part are
not fixed by the topology; callers supply them as ``linear_part``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .cohomology import CohClass, CohomologyRing
from .ko import KOClass
from .phase import Phase


class UnderdeterminedError(ValueError):
    pass


class RefinementError(ValueError):
    pass


class SpinError(ValueError):
    pass


BASE_SPIN_NAMES = {
    "t3": "all-bounding",
    "t2": "all-bounding",
    "s1xs2": "bounding",
}


@dataclass(frozen=True)
class SpinStructure:
    """A spin structure, recorded as its offset from a named base point."""

    ring: CohomologyRing
    offset: CohClass
    base: str = "base"

    def __post_init__(self):
        if self.offset.degree != 1 or self.offset.ring != self.ring:
            raise SpinError("spin structure offset must be a degree-1 class on the same manifold")

    @classmethod
    def base_of(cls, ring: CohomologyRing) -> "SpinStructure":
        return cls(ring, ring.zero(1), BASE_SPIN_NAMES.get(ring.name, "base"))

    def __str__(self):
        if self.offset.is_zero():
            return self.base
        return f"{self.base} + {self.offset}"


def spin_shift(sigma: SpinStructure, l: CohClass) -> SpinStructure:
    return SpinStructure(sigma.ring, sigma.offset + l, sigma.base)


def _check(E: KOClass, l: CohClass, sigma: SpinStructure | None):
    if l.degree != 1:
        raise SpinError("l must be a degree-1 class")
    if l.ring != E.ring:
        raise SpinError("l and E live on different manifolds")
    if sigma is not None and sigma.ring != E.ring:
        raise SpinError("spin structure lives on a different manifold")


def q(E: KOClass, l: CohClass, sigma: SpinStructure | None = None) -> Phase:
    _check(E, l, sigma)
    if not E.w1.is_zero():
        raise UnderdeterminedError("q is only determined for w1(E) = 0; use q_general with a linear part")
    return Phase.sign(E.ring.evaluate(E.w2 * l))


def bform(E: KOClass, l1: CohClass, l2: CohClass) -> Phase:
    _check(E, l1, None)
    _check(E, l2, None)
    return Phase.sign(E.ring.evaluate(E.w1 * l1 * l2))


LinearPart = Union[Sequence[int], Mapping[CohClass, int]]


def refinement_values(E: KOClass, linear_part: LinearPart) -> dict[CohClass, int]:
    """The Z/4 quadratic refinement of B_E on H^1 for the L - 1 part of E.

    ``linear_part`` is either its values on the H^1 basis or a full table
    over H^1 (which is then checked).
    """
    ring = E.ring
    basis = ring.basis_list(1)

    def beta(x, y):
        return ring.evaluate(E.w1 * x * y)

    if isinstance(linear_part, Mapping):
        table = {}
        for v in ring.classes(1):
            if v not in linear_part:
                raise RefinementError(f"linear part is missing a value for {v}")
            table[v] = int(linear_part[v]) % 4
        if table[ring.zero(1)] != 0:
            raise RefinementError("a quadratic refinement vanishes at 0")
        for x in table:
            for y in table:
                if table[x + y] != (table[x] + table[y] + 2 * beta(x, y)) % 4:
                    raise RefinementError(f"values at {x}, {y} do not refine the bilinear form")
    else:
        values = [int(v) % 4 for v in linear_part]
        if len(values) != len(basis):
            raise RefinementError(f"linear part needs {len(basis)} basis values, got {len(values)}")
        for k, e in enumerate(basis):
            if values[k] % 2 != beta(e, e):
                raise RefinementError(
                    f"value {values[k]} on {e} is inconsistent with B_E(e, e) = {beta(e, e)} (mod 2)"
                )
        table = {}
        for v in ring.classes(1):
            on = [k for k, c in enumerate(v.coords) if c]
            total = sum(values[k] for k in on)
            for i, a in enumerate(on):
                for b in on[i + 1:]:
                    total += 2 * beta(basis[a], basis[b])
            table[v] = total % 4
    if E.w1.is_zero() and any(table.values()):
        raise RefinementError("w1(E) = 0: the L - 1 part is trivial, so its linear part must vanish")
    return table


def q_general(E: KOClass, l: CohClass, sigma: SpinStructure | None, linear_part: LinearPart) -> Phase:
    """q for arbitrary E = (L - 1) + F, with F = (0, w2(E))."""
    _check(E, l, sigma)
    table = refinement_values(E, linear_part)
    return Phase.z4(table[l] + 2 * E.ring.evaluate(E.w2 * l))


def q_table(E: KOClass, sigma: SpinStructure | None = None, linear_part: LinearPart | None = None):
    """Rows (l, q(E, l)) over all of H^1."""
    rows = []
    for l in E.ring.classes(1):
        if linear_part is None:
            rows.append((l, q(E, l, sigma)))
        else:
            rows.append((l, q_general(E, l, sigma, linear_part)))
    return rows
