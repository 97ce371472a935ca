import itertools

import pytest

from spincs.action import (
    BOUNDING,
    NONBOUNDING,
    ActionError,
    ClosedAction,
    cobordism_detector,
    product_tau,
    q_via_gluing,
    spin_independence_check,
    spin_ratio,
)
from spincs.cohomology import s1_x_s2, torus3
from spincs.ko import KOClass, add, elements
from spincs.levels import LevelClass, SO3, SU2
from spincs.phase import Phase
from spincs.quadratic import SpinStructure, UnderdeterminedError, q

T3 = torus3()
S1S2 = s1_x_s2()


def oriented(ring):
    return [x for x in elements(ring) if x.w1.is_zero()]


def test_product_tau():
    for w2 in (0, 1):
        assert product_tau(w2, BOUNDING).is_one
    assert product_tau(0, NONBOUNDING).is_one
    assert product_tau(1, NONBOUNDING).as_sign() == -1
    with pytest.raises(ActionError):
        product_tau(1, "periodic")
    with pytest.raises(ActionError):
        product_tau(2, BOUNDING)


def test_gluing_reconstruction_matches_q():
    for E in oriented(T3):
        for l in T3.classes(1):
            assert q_via_gluing(E, l) == q(E, l)


def test_gluing_refuses_other_inputs():
    with pytest.raises(ActionError):
        q_via_gluing(KOClass.zero(S1S2), S1S2.basis(1, 0))
    with pytest.raises(UnderdeterminedError):
        q_via_gluing(KOClass.parse(T3, "l1;0"), T3.basis(1, 0))


def test_spin_ratio():
    E = KOClass.parse(T3, "0;l1^l2")
    assert spin_ratio(E, T3.parse_class("l3")).as_sign() == -1
    with pytest.raises(UnderdeterminedError):
        spin_ratio(KOClass.parse(T3, "l2;0"), T3.parse_class("l3"))


def test_closed_action_shift_tracks_ratio():
    E = KOClass.parse(T3, "0;l1^l2")
    sigma = SpinStructure.base_of(T3)
    unknown = ClosedAction(T3, E, sigma)
    assert unknown.shifted(T3.parse_class("l3")).value is None
    known = ClosedAction(T3, E, sigma, Phase.one())
    shifted = known.shifted(T3.parse_class("l3"))
    assert shifted.value.as_sign() == -1
    assert shifted.shifted(T3.parse_class("l3")).value.is_one


def test_detector_on_s1xs2():
    E = KOClass.parse(S1S2, "0;u")
    assert cobordism_detector(S1S2, E, S1S2.parse_class("l1")) == 1


@pytest.mark.parametrize("X", [T3, S1S2], ids=["t3", "s1xs2"])
def test_detector_trivial_inputs_and_bilinearity(X):
    Es = oriented(X)
    H1 = list(X.classes(1))
    for E in Es:
        assert cobordism_detector(X, E, X.zero(1)) == 0
    for l in H1:
        assert cobordism_detector(X, KOClass.zero(X), l) == 0
    for E, F in itertools.product(Es, repeat=2):
        for a, b in itertools.product(H1, repeat=2):
            d = cobordism_detector(X, E, a)
            assert cobordism_detector(X, add(E, F), a) == (d + cobordism_detector(X, F, a)) % 2
            assert cobordism_detector(X, E, a + b) == (d + cobordism_detector(X, E, b)) % 2


def test_detector_errors():
    with pytest.raises(ActionError):
        cobordism_detector(S1S2, KOClass.parse(S1S2, "l1;0"), S1S2.parse_class("l1"))
    with pytest.raises(ActionError):
        cobordism_detector(T3, KOClass.zero(S1S2), S1S2.parse_class("l1"))


def test_spin_independence():
    assert spin_independence_check(LevelClass.from_coeff(SU2, 1))
    assert not spin_independence_check(LevelClass.from_coeff(SO3, 1))
    assert spin_independence_check(LevelClass.from_coeff(SO3, 2), S1S2)


def test_spin_ratio_trivial_inputs_and_linearity():
    for E in oriented(T3):
        assert spin_ratio(E, T3.zero(1)).is_one
        for a, b in itertools.product(T3.classes(1), repeat=2):
            assert spin_ratio(E, a + b) == spin_ratio(E, a) * spin_ratio(E, b)
    for l in T3.classes(1):
        assert spin_ratio(KOClass.zero(T3), l).is_one


def test_detector_on_torus():
    E = KOClass.parse(T3, "0;l1^l2")
    assert cobordism_detector(T3, E, T3.parse_class("l3")) == 1
    assert cobordism_detector(T3, E, T3.parse_class("l1")) == 0
