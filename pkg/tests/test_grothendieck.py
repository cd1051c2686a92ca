import pytest
from hypothesis import given, settings, strategies as st

from tlcat.cellmod import CapDiagram, cell_dim, cell_labels, enumerate_caps
from tlcat.coeffring import GENERIC
from tlcat.diagrams import PlanarDiagram
from tlcat.errors import InvariantViolation
from tlcat.grothendieck import (
    FiltrationIndexOrder,
    G0Vector,
    TripleIndex,
    WalledCapDiagram,
    all_classes,
    check_associativity,
    check_coassociativity,
    check_filtration_closure,
    check_layer_isomorphism,
    check_monotonicity,
    check_unit_counit,
    composition_series,
    coproduct,
    counit,
    enumerate_walled,
    mackey_check,
    product,
    restriction_dimension_check,
    sigma_add_through,
    split_walled,
    struct_const,
    struct_const_closed,
    struct_const_hom,
    struct_const_printed,
    struct_const_walled,
    unit,
    walled_action,
)

W11 = WalledCapDiagram(6, 5, CapDiagram.from_caps(11, [(3, 8), (4, 5), (6, 7), (10, 11)]))


def _labels(m, n):
    for p in cell_labels(m):
        for q in cell_labels(n):
            for r in cell_labels(m + n):
                yield p, q, r


def test_series_for_four_three_two():
    layers = composition_series(4, 3, 2)
    assert [(l.triple.as_tuple(), l.layer_dim) for l in layers] == [
        ((0, 2, 0), 2),
        ((0, 1, 1), 6),
        ((1, 1, 0), 3),
        ((1, 0, 1), 2),
        ((2, 0, 0), 1),
    ]
    assert sum(l.layer_dim for l in layers) == cell_dim(7, 2) == 14


def test_walled_triple_of_eleven_point_diagram():
    assert W11.triple == TripleIndex(2, 1, 1)
    assert W11 in {w for w, _ in enumerate_walled(6, 5, 4)}
    assert "┊" in W11.render()


def test_untruncated_walled_concatenation():
    a = PlanarDiagram.from_arcs(
        6, 6,
        [(("T", 1), ("T", 2)), (("T", 4), ("T", 5)), (("T", 3), ("B", 1)), (("T", 6), ("B", 6)), (("B", 2), ("B", 3)), (("B", 4), ("B", 5))],
    )
    b = PlanarDiagram.from_arcs(
        5, 5,
        [(("T", 1), ("T", 2)), (("T", 3), ("B", 1)), (("T", 4), ("B", 4)), (("T", 5), ("B", 5)), (("B", 2), ("B", 3))],
    )
    ((w, c),) = walled_action(a, b, W11, truncate=False).items()
    assert c == GENERIC.delta
    assert w.caps.caps == ((1, 2), (4, 5), (6, 9), (7, 8), (10, 11))
    # five caps on 11 points: fewer defects, so the module action is zero
    assert walled_action(a, b, W11) == {}


def test_adding_through_strings():
    u = CapDiagram.from_caps(7, [(3, 4), (6, 7)])
    v = CapDiagram.from_caps(4, [(3, 4)])
    w = sigma_add_through(u, v, 2)
    assert w.caps.caps == ((2, 9), (3, 4), (5, 8), (6, 7), (10, 11))
    assert w.triple == TripleIndex(2, 2, 1)
    assert split_walled(w) == (u, v, 2)
    assert sigma_add_through(u, v, 0).caps.caps == ((3, 4), (6, 7), (10, 11))
    with pytest.raises(ValueError, match="cannot add through strings"):
        sigma_add_through(u, v, 3)


def test_sigma_injective_and_onto():
    m, n, r = 4, 3, 2
    images = set()
    for layer in composition_series(m, n, r):
        t = layer.triple
        for u in enumerate_caps(m, t.l_m):
            for v in enumerate_caps(n, t.l_n):
                images.add(sigma_add_through(u, v, t.s))
    assert images == {w for w, _ in enumerate_walled(m, n, r)}


def test_filtration_order():
    ts = [TripleIndex(1, 0, 1), TripleIndex(0, 1, 1), TripleIndex(0, 2, 0), TripleIndex(2, 0, 0), TripleIndex(1, 1, 0)]
    assert [t.as_tuple() for t in FiltrationIndexOrder.sort(ts)] == [(0, 2, 0), (0, 1, 1), (1, 1, 0), (1, 0, 1), (2, 0, 0)]
    assert FiltrationIndexOrder.le(TripleIndex(0, 2, 0), TripleIndex(0, 1, 1))


@pytest.mark.parametrize("m,n,r", [(4, 3, 2), (3, 3, 1), (2, 4, 2), (5, 2, 1)])
def test_walled_action_checks(m, n, r):
    assert check_monotonicity(m, n, r) is None
    assert check_filtration_closure(m, n, r) is None
    assert check_layer_isomorphism(m, n, r) is None


def test_structure_constant_examples():
    assert struct_const(4, 3, 1, 1, 2, method="all") == 1
    assert struct_const(4, 3, 2, 0, 1, method="all") == 0
    assert struct_const(4, 3, 0, 0, 3, method="all") == 1
    assert struct_const(1, 3, 0, 1, 1, method="all") == 1
    assert struct_const_printed(1, 3, 0, 1, 1) == 0


def test_all_method_detects_disagreement(monkeypatch):
    import tlcat.grothendieck as g

    monkeypatch.setitem(g.METHODS, "closed", g.struct_const_printed)
    with pytest.raises(InvariantViolation):
        g.struct_const(1, 3, 0, 1, 1, method="all")


@pytest.mark.parametrize("total", range(0, 8))
def test_three_methods_agree(total):
    for m in range(total + 1):
        n = total - m
        for p, q, r in _labels(m, n):
            a = struct_const_closed(m, n, p, q, r)
            assert a == struct_const_walled(m, n, p, q, r) == struct_const_hom(m, n, p, q, r)


def test_printed_formula_disagrees_somewhere():
    bad = [
        (m, t - m, p, q, r)
        for t in range(6)
        for m in range(t + 1)
        for p, q, r in _labels(m, t - m)
        if struct_const_printed(m, t - m, p, q, r) != struct_const_closed(m, t - m, p, q, r)
    ]
    assert (1, 3, 0, 1, 1) in bad


@pytest.mark.parametrize("total", range(13))
def test_restriction_dimension_identity(total):
    for m in range(total + 1):
        for r in cell_labels(total):
            got, want = restriction_dimension_check(m, total - m, r)
            assert got == want


def test_product_example():
    x = product(G0Vector.cell(4, 1), G0Vector.cell(3, 1))
    assert x == G0Vector.of({(7, 2): 1, (7, 3): 1})
    assert x.to_json() == {"terms": [{"grade": 7, "label": 2, "mult": 1}, {"grade": 7, "label": 3, "mult": 1}]}


def test_algebra_and_coalgebra_laws():
    assert check_associativity(4) is None
    assert check_coassociativity(4) is None
    assert check_unit_counit(4) is None
    assert counit(unit()) == 1


classes = st.sampled_from(all_classes(4))


@given(classes, classes, classes)
@settings(max_examples=40, deadline=None)
def test_product_commutative_and_graded(x, y, z):
    assert product(x, y) == product(y, x)
    xy = product(x, y)
    assert xy.grades() == {next(iter(x.grades())) + next(iter(y.grades()))}
    assert product(x + z, y) == product(x, y) + product(z, y)


def test_coproduct_dimensions():
    t = coproduct(G0Vector.cell(4, 1))
    for k in range(5):
        comp = t.component((k, 4 - k))
        total = sum(c * cell_dim(*a) * cell_dim(*b) for (a, b), c in comp.terms)
        assert total == cell_dim(4, 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_mackey_failure_interior(n):
    for p in range(1, n // 2 + 1):
        if 2 * (p + 1) > n:
            continue
        res = mackey_check(n, p)
        assert res.pattern("left") == (1, 2, 1)
        assert res.pattern("right") == (1, 3, 1)
        assert res.difference.as_dict() == {((n, p), (1, 0)): 1}


def test_mackey_boundary_and_trivial_cases():
    assert mackey_check(4, 0).equal
    assert mackey_check(4, 2).pattern("left") == (0, 1, 1)
    assert mackey_check(4, 2).pattern("right") == (0, 2, 1)
    assert mackey_check(5, 2).pattern("right") == (0, 3, 1)
    low = mackey_check(4, 1, k=1)
    assert (low.pattern("left"), low.pattern("right")) == ((1, 2, 1), (1, 3, 1))
    assert low.difference.as_dict() == {((1, 0), (4, 1)): 1}
