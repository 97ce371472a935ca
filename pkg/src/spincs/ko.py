"""Rank-zero real K-theory of a closed 3-manifold as H^1 x| H^2.

A class is the pair (w1, w2) with the twisted product

    (a1, b1) . (a2, b2) = (a1 + a2, a1 a2 + b1 + b2).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .cohomology import CohClass, CohomologyRing, DegreeError, RingError


class KOError(ValueError):
    pass


@dataclass(frozen=True)
class KOClass:
    ring: CohomologyRing
    w1: CohClass
    w2: CohClass

    def __post_init__(self):
        if self.ring.dimension != 3:
            raise KOError("KO classes are only modelled on closed 3-manifolds")
        if self.w1.ring != self.ring or self.w2.ring != self.ring:
            raise KOError("w1 and w2 must live in the class's ring")
        if self.w1.degree != 1 or self.w2.degree != 2:
            raise KOError("w1 must have degree 1 and w2 degree 2")

    @classmethod
    def zero(cls, ring: CohomologyRing) -> "KOClass":
        return cls(ring, ring.zero(1), ring.zero(2))

    @classmethod
    def parse(cls, ring: CohomologyRing, text: str) -> "KOClass":
        """``"w1;w2"``, e.g. ``"l1+l2;l1^l2"`` or ``"0;0"``."""
        try:
            a, b = text.split(";")
        except ValueError:
            raise KOError(f"expected 'w1;w2', got {text!r}") from None
        return cls(ring, ring.parse_class(a, 1), ring.parse_class(b, 2))

    def __add__(self, other: "KOClass") -> "KOClass":
        return add(self, other)

    def __neg__(self) -> "KOClass":
        return neg(self)

    def __sub__(self, other: "KOClass") -> "KOClass":
        return add(self, neg(other))

    def __mul__(self, n: int) -> "KOClass":
        out = KOClass.zero(self.ring)
        x = self if n >= 0 else neg(self)
        for _ in range(abs(n)):
            out = add(out, x)
        return out

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.w1.is_zero() and self.w2.is_zero()

    def __str__(self):
        return f"({self.w1}; {self.w2})"


def add(x: KOClass, y: KOClass) -> KOClass:
    if x.ring != y.ring:
        raise KOError("classes live on different manifolds")
    return KOClass(x.ring, x.w1 + y.w1, x.w1 * y.w1 + x.w2 + y.w2)


def neg(x: KOClass) -> KOClass:
    return KOClass(x.ring, x.w1, x.w2 + x.w1 * x.w1)


def _check_sw(pair, ring=None):
    w1, w2 = pair
    if w1.degree != 1 or w2.degree != 2:
        raise DegreeError("Stiefel-Whitney data must be (degree 1, degree 2)")
    if w1.ring != w2.ring or (ring is not None and w1.ring != ring):
        raise RingError("Stiefel-Whitney classes live on different manifolds")
    return w1, w2


def from_bundle_pair(E, F) -> KOClass:
    """Class of E - F from the Stiefel-Whitney data ``(w1, w2)`` of each bundle."""
    e1, e2 = _check_sw(E)
    f1, f2 = _check_sw(F, e1.ring)
    return KOClass(e1.ring, e1 + f1, e2 + f2 + e1 * f1 + f1 * f1)


def line_minus_trivial(line: CohClass) -> KOClass:
    """The class L - 1 of a real line bundle with w1(L) = ``line``."""
    ring = line.ring
    return from_bundle_pair((line, ring.zero(2)), (ring.zero(1), ring.zero(2)))


def tensor_line(x: KOClass, line: CohClass) -> KOClass:
    """x tensored with a real line bundle.

    Writes x = (L - 1) + F with w1(L) = w1(x), w1(F) = 0.  F is unchanged
    by the twist, and (L - 1) (x) l0 = (L l0 - 1) - (l0 - 1).
    """
    if line.degree != 1 or line.ring != x.ring:
        raise KOError("tensor_line needs a degree-1 class on the same manifold")
    if x.w1.is_zero():
        return x
    ring = x.ring
    z2 = ring.zero(2)
    line_part = line_minus_trivial(x.w1)
    rest = add(neg(line_part), x)
    assert rest.w1.is_zero()
    twisted = from_bundle_pair((x.w1 + line, z2), (line, z2))
    return add(twisted, rest)


def elements(ring: CohomologyRing) -> Iterator[KOClass]:
    for a in ring.classes(1):
        for b in ring.classes(2):
            yield KOClass(ring, a, b)


def order(x: KOClass) -> int:
    y, n = x, 1
    while not y.is_zero():
        y, n = add(y, x), n + 1
    return n


def group_table(ring: CohomologyRing) -> tuple[list[KOClass], list[list[int]]]:
    """Elements in enumeration order and the index table of ``add``."""
    elems = list(elements(ring))
    index = {e: k for k, e in enumerate(elems)}
    return elems, [[index[add(a, b)] for b in elems] for a in elems]


def tensor_line_decomposition_independent(ring: CohomologyRing, max_lines: int = 3) -> bool:
    """Check tensor_line against every splitting of w1 into up to ``max_lines``
    line classes: x = sum (L_k - 1) + R with w1(R) = 0.

    Each splitting is twisted term by term and compared with tensor_line.
    """
    h1 = list(ring.classes(1))
    z2 = ring.zero(2)
    splittings: dict[CohClass, list[tuple[tuple[CohClass, ...], KOClass]]] = {}
    for k in range(1, max_lines + 1):
        for lines in itertools.product(h1, repeat=k):
            acc = KOClass.zero(ring)
            for l in lines:
                acc = add(acc, line_minus_trivial(l))
            splittings.setdefault(acc.w1, []).append((lines, neg(acc)))
    for x in elements(ring):
        for l0 in h1:
            expected = tensor_line(x, l0)
            for lines, minus_acc in splittings.get(x.w1, ()):
                twisted = add(minus_acc, x)
                for l in lines:
                    twisted = add(twisted, from_bundle_pair((l + l0, z2), (l0, z2)))
                if twisted != expected:
                    return False
    return True
