import itertools
from fractions import Fraction

import pytest

from spincs.lines import (
    GradedLine,
    LineError,
    LineExpr,
    expr_to_doc,
    glue,
    orientation_sign,
    permute,
    pfaff_square,
    run_document,
    supertrace,
    tensor,
)
from spincs.phase import Phase

EIGHTH_ROOTS = [Phase(Fraction(k, 8)) for k in range(8)]


def line(label, parity, dual=False):
    return GradedLine(label, parity, dual)


@pytest.mark.parametrize("parity, sign", [(0, 1), (1, -1)])
def test_supertrace_parity_table(parity, sign):
    L = line("L", parity)
    assert supertrace(LineExpr.of(L, L.dualize())).phase.as_sign() == sign
    # the other order contracts without a sign
    assert supertrace(LineExpr.of(L.dualize(), L)).phase.is_one


def test_supertrace_errors():
    with pytest.raises(LineError):
        supertrace(LineExpr.of(line("L", 0)))
    with pytest.raises(LineError):
        supertrace(LineExpr.of(line("L", 0), line("M", 0, True)))
    with pytest.raises(LineError):
        supertrace(LineExpr.of(line("L", 0), line("L", 1, True)))
    with pytest.raises(LineError):
        supertrace(LineExpr.of(line("L", 0), line("L", 0)))


def test_orientation_sign_sequence():
    assert [orientation_sign(k).as_sign() for k in range(6)] == [1, 1, -1, -1, 1, 1]
    for k in range(20):
        assert orientation_sign(k).as_sign() == (-1) ** (k * (k - 1) // 2)
    with pytest.raises(LineError):
        orientation_sign(-1)


@pytest.mark.parametrize("phase", EIGHTH_ROOTS)
def test_even_unit_pair_glues_neutrally(phase):
    L = line("L", 0)
    out = glue(LineExpr.of(L, L.dualize(), phase=phase))
    assert out.factors == () and out.phase == phase


def test_glue_requires_matching_tail():
    L = line("L", 1)
    with pytest.raises(LineError, match="unmatched"):
        glue(LineExpr.of(L.dualize(), L))
    with pytest.raises(LineError):
        glue(LineExpr.of(L))


def _double_cut_routes(a, b, phase):
    A, B, X = line("A", a), line("B", b), line("X", 1)
    e = LineExpr.of(X, A, B, A.dualize(), B.dualize(), phase=phase)
    # route 1: bring A* next to A, glue B then A
    r1 = glue(glue(permute(e, [0, 1, 3, 2, 4])))
    # route 2: bring B, B* first, glue A then B
    r2 = glue(glue(permute(e, [0, 2, 4, 1, 3])))
    return r1, r2


@pytest.mark.parametrize("a, b", list(itertools.product((0, 1), repeat=2)))
@pytest.mark.parametrize("phase", EIGHTH_ROOTS)
def test_double_cut_order_independent(a, b, phase):
    r1, r2 = _double_cut_routes(a, b, phase)
    assert r1 == r2
    assert r1.factors == (line("X", 1),)
    # hand count: one odd crossing A*/B, then the two supertrace signs
    assert r1.phase == phase * Phase.sign(a * b + a + b)


def test_permute_koszul_signs():
    odd1, odd2, even = line("P", 1), line("Q", 1), line("R", 0)
    assert permute(LineExpr.of(odd1, odd2), [1, 0]).phase.as_sign() == -1
    assert permute(LineExpr.of(odd1, even), [1, 0]).phase.is_one
    # cyclic shift of three odd lines is two transpositions
    e = LineExpr.of(odd1, odd2, line("S", 1))
    assert permute(e, [1, 2, 0]).phase.is_one
    assert permute(e, [2, 1, 0]).phase.as_sign() == -1
    with pytest.raises(LineError):
        permute(e, [0, 0, 1])


def test_permute_composition():
    e = LineExpr.of(line("A", 1), line("B", 1), line("C", 0), line("D", 1), phase="1/8")
    for p in itertools.permutations(range(4)):
        once = permute(e, p)
        back = permute(once, [p.index(k) for k in range(4)])
        assert back == e


def test_pfaff_square():
    e = LineExpr.of(line("Pfaff_Y", 1), line("L", 0), phase="1/8")
    sq = pfaff_square(e)
    assert [f.label for f in sq.factors] == ["Det_Y", "L"]
    assert sq.phase == Phase(Fraction(1, 4))
    assert pfaff_square(LineExpr.of(line("Pfaff", 0), phase=None)).phase is None


def test_unknown_phase_propagates():
    L = line("L", 1)
    e = LineExpr.of(L, L.dualize(), phase=None)
    assert glue(e).phase is None
    assert tensor(e, LineExpr.unit()).phase is None
    assert str(glue(e)) == "? in C"


def test_tensor_and_parity():
    e = tensor(LineExpr.of(line("A", 1), phase="i"), LineExpr.of(line("B", 1), phase="i"))
    assert e.parity == 0
    assert e.phase.as_sign() == -1


def test_document_runner():
    doc = {
        "factors": [{"label": "A", "parity": 1}, {"label": "A", "parity": 1, "dual": True}],
        "phase": "1/8",
        "operations": [
            {"op": "orient", "k": 2},
            {"op": "tensor", "factors": [{"label": "B", "parity": 1}], "phase": "i"},
            {"op": "permute", "perm": [2, 0, 1]},
            {"op": "glue"},
        ],
    }
    out = run_document(doc)
    # 1/8 + orientation -1 + i + glue of odd pair -1, no Koszul sign for B past the odd pair
    assert out.phase == Phase(Fraction(1, 8) + Fraction(1, 4))
    assert expr_to_doc(out) == {
        "factors": [{"label": "B", "parity": 1, "dual": False}],
        "phase": "3/8",
        "phase_rendered": "exp(2pi*i*3/8)",
        "parity": 1,
    }


@pytest.mark.parametrize(
    "doc",
    [
        {"phase": "0"},
        {"factors": [], "extra": 1},
        {"factors": [{"label": "A", "parity": 2}]},
        {"factors": [{"parity": 0}]},
        {"factors": [], "phase": "x"},
        {"factors": [], "operations": [{"op": "spin"}]},
        {"factors": [], "operations": [{"op": "glue", "k": 1}]},
        {"factors": [], "operations": ["glue"]},
    ],
)
def test_document_errors(doc):
    with pytest.raises(LineError):
        run_document(doc)
