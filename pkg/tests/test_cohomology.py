import itertools
import json
from importlib import resources

import pytest
from hypothesis import given, strategies as st

from spincs.cohomology import (
    AssociativityError,
    CommutativityError,
    ConnectivityError,
    DegreeError,
    DualityError,
    RingSchemaError,
    dump_ring,
    gf2_rank,
    load_ring,
    restrict_to_subtorus,
    s1_x_s2,
    surface,
    torus,
    torus2,
    torus3,
)

CATALOG = [torus3(), s1_x_s2(), torus2(), surface(0), surface(1), surface(2), surface(3)]


def exterior_oracle(n):
    """Z/2 cohomology of the n-torus as the exterior algebra on l1..ln:
    monomials are subsets, a product is the union of disjoint subsets."""
    monomials = {}
    for k in range(n + 1):
        for subset in itertools.combinations(range(1, n + 1), k):
            monomials[subset] = "^".join(f"l{i}" for i in subset) or "1"

    def mul(s, t):
        if set(s) & set(t):
            return None
        return tuple(sorted(s + t))

    return monomials, mul


@pytest.mark.parametrize("n", [2, 3])
def test_torus_matches_exterior_algebra(n):
    ring = torus(n)
    monomials, mul = exterior_oracle(n)
    for s, t in itertools.product(monomials, repeat=2):
        if not s or not t or len(s) + len(t) > n:
            continue
        a = ring.parse_class(monomials[s], len(s))
        b = ring.parse_class(monomials[t], len(t))
        expected = mul(s, t)
        if expected is None:
            assert (a * b).is_zero()
        else:
            assert a * b == ring.parse_class(monomials[expected], len(expected))


def test_torus3_cup_examples(t3):
    l1, l2, l3 = t3.basis_list(1)
    assert (l1 * l1).is_zero()
    assert l1 * l2 == t3.parse_class("l1^l2")
    # l1^l2 is the H^2 element dual to l3
    assert t3.evaluate(l1 * l2 * l3) == 1
    assert t3.evaluate(l1 * l2 * l1) == 0
    assert (t3.zero(1) * l2).is_zero()
    assert t3.evaluate(t3.zero(3)) == 0


@pytest.mark.parametrize(
    "ring, betti",
    [(torus3(), (1, 3, 3, 1)), (s1_x_s2(), (1, 1, 1, 1)), (surface(2), (1, 4, 1)), (torus2(), (1, 2, 1))],
)
def test_catalog_betti(ring, betti):
    assert ring.betti == betti


@pytest.mark.parametrize("ring", CATALOG, ids=lambda r: r.name)
def test_catalog_associative_and_commutative(ring):
    d = ring.dimension
    basis = [(p, b) for p in range(d + 1) for b in ring.basis_list(p)]
    for (p, a), (q, b) in itertools.product(basis, repeat=2):
        if p + q <= d:
            assert a * b == b * a
        for r, c in basis:
            if p + q + r <= d:
                assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("ring", CATALOG, ids=lambda r: r.name)
def test_catalog_duality_invertible(ring):
    for p in range(ring.dimension + 1):
        m = ring.duality_matrix(p)
        assert gf2_rank(m) == ring.betti[p] == ring.betti[ring.dimension - p]


@pytest.mark.parametrize("ring", CATALOG, ids=lambda r: r.name)
def test_evaluate_is_linear(ring):
    tops = list(ring.classes(ring.dimension))
    for a, b in itertools.product(tops, repeat=2):
        assert ring.evaluate(a + b) == (ring.evaluate(a) + ring.evaluate(b)) % 2


def test_cup_degree_overflow(t3):
    with pytest.raises(DegreeError):
        t3.cup(t3.basis(2, 0), t3.basis(2, 1))
    with pytest.raises(DegreeError):
        t3.evaluate(t3.basis(2, 0))


def test_gf2_rank():
    assert gf2_rank([[1, 1], [1, 1]]) == 1
    assert gf2_rank([[1, 0], [0, 1]]) == 2
    assert gf2_rank([[0, 0]]) == 0
    assert gf2_rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2


def test_parse_and_format(t3):
    c = t3.parse_class("l1+l3")
    assert str(c) == "l1+l3"
    assert t3.parse_class("l1^l2 + l2^l3", 2).coords == (1, 0, 1)
    with pytest.raises(DegreeError):
        t3.parse_class("l1", 2)


def test_shipped_documents_round_trip():
    for name, builder in (("t3", torus3), ("s1xs2", s1_x_s2)):
        text = resources.files("spincs").joinpath(f"data/{name}.json").read_text()
        ring = load_ring(text)
        assert ring == builder()
        assert dump_ring(ring) == text


def _t3_doc():
    return json.loads(dump_ring(torus3()))


def test_load_rejects_unknown_field():
    doc = _t3_doc()
    doc["extra"] = 1
    with pytest.raises(RingSchemaError):
        load_ring(doc)


def test_load_rejects_missing_field():
    doc = _t3_doc()
    del doc["cup"]
    with pytest.raises(RingSchemaError):
        load_ring(doc)


def test_load_rejects_degenerate_duality():
    doc = _t3_doc()
    # drop every product landing on the top class: pairing H^1 x H^2 dies
    doc["cup"] = [e for e in doc["cup"] if e["deg_i"] + e["deg_j"] < 3]
    with pytest.raises(DualityError):
        load_ring(doc)


def test_load_rejects_nonassociative():
    # l1 . (l1^l2) = top but (l1 . l1) . l2 = 0
    doc = _t3_doc()
    doc["cup"] += [
        {"deg_i": 1, "deg_j": 2, "i": 0, "j": 0, "result_coords": [1]},
        {"deg_i": 2, "deg_j": 1, "i": 0, "j": 0, "result_coords": [1]},
    ]
    with pytest.raises(AssociativityError):
        load_ring(doc)


def test_load_rejects_noncommutative():
    doc = _t3_doc()
    doc["cup"] = [e for e in doc["cup"] if not (e["deg_i"] == 1 and e["i"] == 1 and e["j"] == 0)]
    with pytest.raises(CommutativityError):
        load_ring(doc)


def test_load_rejects_disconnected():
    doc = {
        "dimension": 2,
        "betti": [2, 0, 1],
        "labels": [["1", "1b"], [], ["pt"]],
        "cup": [],
        "fundamental_coords": [1],
    }
    with pytest.raises(ConnectivityError):
        load_ring(doc)


def test_load_rejects_bad_json():
    with pytest.raises(RingSchemaError):
        load_ring("{not json")


def test_restriction_to_subtorus(t3):
    w = t3.parse_class("l1^l2 + l2^l3")
    assert str(restrict_to_subtorus(w, 3)) == "l1^l2"
    assert str(restrict_to_subtorus(w, 1)) == "l1^l2"  # l2^l3 renamed on the remaining torus
    assert restrict_to_subtorus(w, 2).is_zero()


@given(st.lists(st.integers(0, 1), min_size=3, max_size=3), st.lists(st.integers(0, 1), min_size=3, max_size=3))
def test_cup_bilinear(u, v):
    t3 = torus3()
    from spincs.cohomology import CohClass

    a, b = CohClass(t3, 1, tuple(u)), CohClass(t3, 1, tuple(v))
    for c in t3.classes(1):
        assert (a + b) * c == a * c + b * c
