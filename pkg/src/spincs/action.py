"""Closed-form pieces of the spin-Chern-Simons action tau^{1/2}.

Absolute values of tau^{1/2} on a closed 3-manifold are analytic and are
never assigned here; only spin-structure ratios, product-manifold
holonomy signs and the Z/2 cobordism detector are.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cohomology import CohClass, CohomologyRing, restrict_to_subtorus, torus3
from .ko import KOClass
from .levels import LevelClass
from .phase import Phase
from .quadratic import SpinStructure, UnderdeterminedError, q

BOUNDING = "bounding"
NONBOUNDING = "nonbounding"


class ActionError(ValueError):
    pass


@dataclass(frozen=True)
class ClosedAction:
    manifold: CohomologyRing
    E: KOClass
    sigma: SpinStructure
    value: Optional[Phase] = None  # unknown unless fixed by a closed formula

    def shifted(self, l: CohClass) -> "ClosedAction":
        """The action after sigma -> sigma + l; its value follows from q."""
        from .quadratic import spin_shift

        value = None if self.value is None else self.value * spin_ratio(self.E, l, self.sigma)
        return ClosedAction(self.manifold, self.E, spin_shift(self.sigma, l), value)


def spin_ratio(E: KOClass, l: CohClass, sigma: SpinStructure | None = None) -> Phase:
    """tau^{1/2}(D_{l (x) rho A}) / tau^{1/2}(D_{rho A})."""
    if not E.w1.is_zero():
        raise UnderdeterminedError("spin ratio needs w1(E) = 0; use quadratic.q_general")
    return q(E, l, sigma)


def product_tau(surface_w2: int, circle_spin: str) -> Phase:
    """tau^{1/2} on T^2 x S^1 for a flat rank-zero twist pulled back from T^2.

    Bounding circle: the structure bounds D^2 x T^2, so the value is 1.
    Non-bounding circle: the loop holonomy (-1)^{ind2}, with
    ind2(D_{T^2,E'}) = <w2(E'), [T^2]>.
    """
    if circle_spin not in (BOUNDING, NONBOUNDING):
        raise ActionError(f"circle spin structure must be {BOUNDING!r} or {NONBOUNDING!r}")
    if surface_w2 not in (0, 1):
        raise ActionError("surface_w2 is a Z/2 value")
    if circle_spin == BOUNDING:
        return Phase.one()
    return Phase.sign(surface_w2)


def q_via_gluing(E: KOClass, l: CohClass) -> Phase:
    """q on T^3 rebuilt from product_tau, one circle direction at a time.

    For l = l_k, cut T^3 along the k-th circle: q(E, l_k) is the ratio of
    tau^{1/2} on T^2 x S^1_nb and on T^2 x S^1_b, where E' is E restricted
    to the complementary 2-torus.  General l follows by linearity.
    """
    ring = E.ring
    if ring != torus3():
        raise ActionError("q_via_gluing is only available on the 3-torus")
    if not E.w1.is_zero():
        raise UnderdeterminedError("gluing reconstruction needs w1(E) = 0")
    result = Phase.one()
    for k, bit in enumerate(l.coords, start=1):
        if not bit:
            continue
        w2_restricted = restrict_to_subtorus(E.w2, k)
        ind2 = w2_restricted.ring.evaluate(w2_restricted)
        result = result * (product_tau(ind2, NONBOUNDING) / product_tau(ind2, BOUNDING))
    return result


def cobordism_detector(X: CohomologyRing, E: KOClass, l: CohClass) -> int:
    """<w2(E) l, [X]>: 1 iff (X, E, l) is nonzero in the Z/2 bordism group."""
    if X.dimension != 3:
        raise ActionError("the detector is defined on closed 3-manifolds")
    if E.ring != X or l.ring != X:
        raise ActionError("E and l must live on X")
    if not E.w1.is_zero():
        raise ActionError("the detector needs an oriented class (w1(E) = 0)")
    if l.degree != 1:
        raise ActionError("l must be a degree-1 class")
    return X.evaluate(E.w2 * l)


def spin_independence_check(level: LevelClass, ring: CohomologyRing | None = None) -> bool:
    """True iff actions at this level do not see the spin structure.

    This holds exactly when w2 of the level vanishes: then every bundle
    rho P has w2 = 0 (and w1 = 0), so every spin ratio is q(0, l) = 1.  The
    latter is re-checked on ``ring`` (default the 3-torus).
    """
    independent = level.w2 == 0
    if independent:
        ring = ring or torus3()
        zero = KOClass.zero(ring)
        sigma = SpinStructure.base_of(ring)
        if any(not spin_ratio(zero, l, sigma).is_one for l in ring.classes(1)):
            raise ActionError("spin ratio of the trivial class is not 1")
    return independent
