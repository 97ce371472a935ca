import itertools

import pytest

from spincs.cohomology import RingError, s1_x_s2, surface, torus3
from spincs.ko import (
    KOClass,
    KOError,
    add,
    elements,
    from_bundle_pair,
    group_table,
    neg,
    order,
    tensor_line,
    tensor_line_decomposition_independent,
)

T3 = torus3()
S1S2 = s1_x_s2()


# Oracle: truncated total Stiefel-Whitney classes 1 + w1 + w2 of virtual
# sums of real line bundles, multiplied in the ring directly.
def sw_mul(a, b):
    a1, a2 = a
    b1, b2 = b
    return a1 + b1, a2 + b2 + a1 * b1


def sw_inv(a):
    a1, a2 = a
    return a1, a2 + a1 * a1


def sw_of_virtual(plus, minus):
    ring = (plus + minus)[0].ring
    total = (ring.zero(1), ring.zero(2))
    for l in plus:
        total = sw_mul(total, (l, ring.zero(2)))
    for l in minus:
        total = sw_mul(total, sw_inv((l, ring.zero(2))))
    return total


def virtual_sums(ring, size=2):
    """(plus lines, minus lines) with equal counts, hence rank zero."""
    h1 = list(ring.classes(1))
    for k in range(1, size + 1):
        for plus in itertools.combinations_with_replacement(h1, k):
            for minus in itertools.combinations_with_replacement(h1, k):
                yield plus, minus


def C(text, degree=None, ring=T3):
    return ring.parse_class(text, degree)


def K(text, ring=T3):
    return KOClass.parse(ring, text)


def test_add_examples():
    assert K("l1;0") + K("l2;0") == K("l1+l2;l1^l2")
    x = K("l1;l2^l3")
    assert K("0;0") + x == x
    assert x + KOClass(T3, x.w1, x.w2 + x.w1 * x.w1) == KOClass.zero(T3)


def test_neg_examples():
    assert neg(K("0;l1^l3")) == K("0;l1^l3")
    assert neg(K("l1;0")) == K("l1;0")
    for x in elements(T3):
        assert (x + neg(x)).is_zero()


def test_from_bundle_pair_examples():
    z1, z2 = T3.zero(1), T3.zero(2)
    b = C("l1^l2")
    for e in [(C("l1"), b), (z1, z2), (C("l2+l3"), C("l1^l3"))]:
        assert from_bundle_pair(e, e).is_zero()
    assert from_bundle_pair((z1, b), (z1, z2)) == KOClass(T3, z1, b)
    assert from_bundle_pair((C("l1"), z2), (C("l2"), z2)) == K("l1+l2;l1^l2")


def test_from_bundle_pair_matches_total_sw_quotient():
    for e in itertools.product(T3.classes(1), T3.classes(2)):
        for f in itertools.product([C("0", 1), C("l1"), C("l2+l3")], [C("0", 2), C("l1^l2")]):
            w1, w2 = sw_mul(e, sw_inv(f))
            assert from_bundle_pair(e, f) == KOClass(T3, w1, w2)


def test_from_bundle_pair_homomorphism():
    sw = list(itertools.product(T3.classes(1), [C("0", 2), C("l1^l3"), C("l1^l2+l2^l3")]))
    for e, f, g in itertools.product(sw[::3], repeat=3):
        assert from_bundle_pair(e, f) + from_bundle_pair(f, g) == from_bundle_pair(e, g)


@pytest.mark.parametrize("ring", [T3, S1S2], ids=["t3", "s1xs2"])
def test_group_axioms_exhaustive(ring):
    elems, table = group_table(ring)
    n = len(elems)
    assert n == 2 ** (ring.betti[1] + ring.betti[2])
    e = elems.index(KOClass.zero(ring))
    for a in range(n):
        assert table[e][a] == table[a][e] == a
        assert any(table[a][b] == e for b in range(n))
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                assert table[ab][c] == table[a][table[b][c]]


@pytest.mark.parametrize("ring", [T3, S1S2], ids=["t3", "s1xs2"])
def test_order_divides_four(ring):
    for x in elements(ring):
        assert (4 * x).is_zero()
        assert order(x) in (1, 2, 4)
        assert 2 * x == KOClass(ring, ring.zero(1), x.w1 * x.w1)


def test_t3_is_abelian_of_exponent_two_and_four():
    # on T^3 all squares of degree-1 classes vanish, so 2x = 0
    assert all(order(x) <= 2 for x in elements(T3))


def test_tensor_line_examples():
    x = K("l1;0")
    assert tensor_line(x, T3.zero(1)) == x
    w1_zero = K("0;l2^l3")
    assert tensor_line(w1_zero, C("l1")) == w1_zero
    # oracle: (L1 - 1) (x) L2 = (L1L2 - 1) - (L2 - 1) = L1L2 - L2
    w1, w2 = sw_of_virtual((C("l1+l2"),), (C("l2"),))
    assert tensor_line(x, C("l2")) == KOClass(T3, w1, w2)
    assert tensor_line(x, C("l2")) == K("l1;l1^l2")


@pytest.mark.parametrize("ring", [T3, S1S2], ids=["t3", "s1xs2"])
def test_tensor_line_matches_sw_oracle(ring):
    for plus, minus in virtual_sums(ring):
        x = KOClass(ring, *sw_of_virtual(plus, minus))
        for l0 in ring.classes(1):
            twisted = sw_of_virtual(tuple(l + l0 for l in plus), tuple(m + l0 for m in minus))
            assert tensor_line(x, l0) == KOClass(ring, *twisted)


def test_virtual_sums_cover_t3():
    reached = {KOClass(T3, *sw_of_virtual(p, m)) for p, m in virtual_sums(T3)}
    assert reached == set(elements(T3))


def test_tensor_line_involution_on_w1_zero():
    for x in elements(T3):
        if x.w1.is_zero():
            for l in T3.classes(1):
                assert tensor_line(tensor_line(x, l), l) == x


def test_tensor_line_decomposition_independent():
    assert tensor_line_decomposition_independent(S1S2)
    assert tensor_line_decomposition_independent(T3)


def test_errors():
    with pytest.raises(KOError):
        add(KOClass.zero(T3), KOClass.zero(S1S2))
    with pytest.raises(KOError):
        KOClass(T3, T3.zero(2), T3.zero(2))
    with pytest.raises(KOError):
        KOClass.parse(T3, "l1")
    with pytest.raises(RingError):
        from_bundle_pair((C("l1"), T3.zero(2)), (S1S2.zero(1), S1S2.zero(2)))
    with pytest.raises(KOError):
        KOClass.zero(surface(2))
