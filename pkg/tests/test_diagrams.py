import json

import pytest
from hypothesis import given, settings, strategies as st

from oracles import noncrossing_matchings
from tlcat.diagrams import (
    DiagramError,
    PlanarDiagram,
    catalan,
    compose,
    enumerate_diagrams,
    generators,
    identity,
    involution,
    juxtapose,
    mul,
    render_ascii,
)


def _cyclic_position(d, p):
    # bottom i -> position i-1; top j -> sits after all bottoms, in reverse order
    return p if p < d.bot else d.bot + (d.bot + d.top - 1 - p)


@pytest.mark.parametrize("bot,top", [(b, t) for b in range(5) for t in range(5) if (b + t) % 2 == 0])
def test_enumeration_matches_matching_oracle(bot, top):
    got = enumerate_diagrams(bot, top)
    want = noncrossing_matchings(bot + top)
    assert len(got) == len(want) == catalan((bot + top) // 2)
    seen = set()
    for d in got:
        m = sorted(tuple(sorted((_cyclic_position(d, p), _cyclic_position(d, q)))) for p, q in enumerate(d.match) if p < q)
        seen.add(tuple(m))
    assert seen == {tuple(m) for m in want}


def test_odd_total_is_empty():
    assert enumerate_diagrams(1, 2) == []
    assert enumerate_diagrams(0, 2) and len(enumerate_diagrams(0, 2)) == 1
    assert len(enumerate_diagrams(2, 4)) == 5


def test_catalan_recurrence():
    c = [1]
    for n in range(1, 12):
        c.append(sum(c[i] * c[n - 1 - i] for i in range(n)))
    assert [catalan(n) for n in range(12)] == c


def test_invalid_diagrams_rejected():
    with pytest.raises(DiagramError):
        PlanarDiagram.from_arcs(2, 2, [(("B", 1), ("T", 2)), (("B", 2), ("T", 1))])
    with pytest.raises(DiagramError):
        PlanarDiagram.from_arcs(2, 0, [(("B", 1), ("B", 1))])


def test_three_strand_product_with_one_loop():
    a = PlanarDiagram.from_arcs(3, 3, [(("T", 1), ("T", 2)), (("T", 3), ("B", 1)), (("B", 2), ("B", 3))])
    b = PlanarDiagram.from_arcs(3, 3, [(("T", 2), ("T", 3)), (("T", 1), ("B", 1)), (("B", 2), ("B", 3))])
    res = mul(a, b)
    assert res.power == 1
    assert res.diagram == a


def test_generator_relations():
    n = 4
    e = generators(n)
    one = identity(n)
    for i, ei in enumerate(e):
        sq = mul(ei, ei)
        assert (sq.power, sq.diagram) == (1, ei)
        if i + 1 < len(e):
            x = mul(ei, e[i + 1])
            y = mul(x.diagram, ei)
            assert (x.power + y.power, y.diagram) == (0, ei)
        for j in range(i + 2, len(e)):
            assert mul(ei, e[j]).diagram == mul(e[j], ei).diagram
    assert mul(one, e[0]).diagram == e[0]


diagram4 = st.sampled_from(enumerate_diagrams(4, 4))


@given(diagram4, diagram4, diagram4)
@settings(max_examples=80)
def test_associativity(a, b, c):
    ab = mul(a, b)
    bc = mul(b, c)
    left = mul(ab.diagram, c)
    right = mul(a, bc.diagram)
    assert left.diagram == right.diagram
    assert left.power + ab.power == right.power + bc.power


@given(diagram4, diagram4)
def test_involution_is_anti_homomorphism(a, b):
    assert involution(involution(a)) == a
    lhs = involution(mul(a, b).diagram)
    rhs = mul(involution(b), involution(a)).diagram
    assert lhs == rhs


def test_compose_arity():
    f = enumerate_diagrams(2, 4)[0]
    g = enumerate_diagrams(4, 0)[0]
    h = compose(f, g)
    assert (h.diagram.bot, h.diagram.top) == (2, 0)
    with pytest.raises(DiagramError):
        compose(g, f)


def test_juxtapose_interchange():
    a, b = enumerate_diagrams(2, 2)
    c, d = enumerate_diagrams(3, 3)[:2]
    left = mul(juxtapose(a, c), juxtapose(b, d))
    ab, cd = mul(a, b), mul(c, d)
    assert left.diagram == juxtapose(ab.diagram, cd.diagram)
    assert left.power == ab.power + cd.power


@pytest.mark.parametrize("bot,top", [(0, 2), (3, 3), (2, 4)])
def test_json_round_trip(bot, top):
    for d in enumerate_diagrams(bot, top):
        text = json.dumps(d.to_json())
        assert PlanarDiagram.from_json(json.loads(text)) == d
        assert render_ascii(d)


def test_cup_render():
    assert render_ascii(enumerate_diagrams(0, 2)[0]) == "└─┘"
