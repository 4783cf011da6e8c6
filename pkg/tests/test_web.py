import pytest

from qholo.errors import (
    FlowError,
    NonPlanarError,
    NonTrivalentError,
    SinkSourceError,
    StuckWebError,
)
from qholo.ladder import Ladder, evaluate
from qholo.poly import ONE, Q, RationalFn, circle_value, quantum_integer
from qholo.web import Edge, Web, WebCombination, reduce_web_step, validate_web, web_expansion


def test_theta_is_valid_and_planar(theta_web):
    assert validate_web(theta_web) is theta_web
    assert len(theta_web.faces()) == 3
    assert theta_web.bounded_face_count() == 2
    assert len(theta_web.coloring_basis()) == 2


def test_coloring_basis_vectors_satisfy_flow(theta_web):
    for vec in theta_web.coloring_basis():
        net = [0] * len(theta_web.vertices)
        for idx, e in enumerate(theta_web.edges):
            net[theta_web.vertex_of(e.head)] += vec[idx]
            net[theta_web.vertex_of(e.tail)] -= vec[idx]
        assert net == [0, 0]


def test_theta_evaluation(theta_web):
    expected = RationalFn(quantum_integer(2)) * circle_value(2)
    assert evaluate(theta_web) == expected
    assert web_expansion(theta_web) == {(2,): quantum_integer(2)}


def test_digon_step_leaves_a_loop(theta_web):
    step = reduce_web_step(theta_web)
    ((coef, rest),) = list(step)
    assert coef == quantum_integer(2)
    assert rest.loops == (2,)
    assert not rest.vertices


def test_circle_file_document():
    web = Web.from_dict({"vertices": [], "edges": [], "loops": [{"color": 1, "count": 1}]})
    assert evaluate(web) == circle_value(1)
    assert evaluate(web, 3) == quantum_integer(3)
    empty = Web.from_dict({"vertices": [], "edges": []})
    assert empty.is_empty()
    assert evaluate(empty) == RationalFn(ONE)


def test_canonical_code_ignores_dart_labels(theta_web):
    relabeled = Web(
        [[10, 12, 15], [11, 14, 13]],
        [Edge(14, 15, 2), Edge(10, 11, 1), Edge(12, 13, 1)],
    )
    assert relabeled.canonical_code() == theta_web.canonical_code()
    assert relabeled == theta_web


def test_file_format_round_trip(theta_web):
    assert Web.from_dict(theta_web.to_dict()) == theta_web
    data = theta_web.to_dict()
    assert sorted(e["color"] for e in data["edges"]) == [1, 1, 2]


def test_non_trivalent_vertex():
    web = Web([[0, 2, 1, 3]], [Edge(0, 1, 1), Edge(2, 3, 1)])
    with pytest.raises(NonTrivalentError) as info:
        validate_web(web)
    assert info.value.code == "non-trivalent"


def test_source_vertex():
    web = Web([[0, 2, 4], [1, 3, 5]], [Edge(0, 1, 1), Edge(2, 3, 1), Edge(4, 5, 2)])
    with pytest.raises(SinkSourceError):
        validate_web(web)


def test_flow_violation():
    web = Web([[0, 2, 5], [1, 4, 3]], [Edge(0, 1, 1), Edge(2, 3, 1), Edge(4, 5, 1)])
    with pytest.raises(FlowError):
        validate_web(web)


def test_non_planar_rotation():
    web = Web([[0, 2, 5], [1, 3, 4]], [Edge(0, 1, 1), Edge(2, 3, 1), Edge(4, 5, 2)])
    with pytest.raises(NonPlanarError):
        validate_web(web)


def test_square_web_value_matches_ladder():
    ladder = Ladder((2, 2), ((0, "E", 1), (0, "F", 1)))
    web = ladder.to_web()
    assert len(web.vertices) == 4
    with pytest.raises(StuckWebError) as info:
        web_expansion(web)
    assert info.value.canonical == web.canonical_code()
    assert evaluate(web) == evaluate(ladder)
    assert evaluate(web, 3) == quantum_integer(2) * quantum_integer(3)
    assert evaluate(web, 2).is_zero()


def test_mirror_web_shares_code_and_value():
    web = Ladder((1, 2), ((0, "E", 1), (0, "F", 1))).to_web()
    mirror = web.mirror()
    assert validate_web(mirror) is mirror
    assert mirror.canonical_code() == web.canonical_code()
    assert mirror == web
    assert evaluate(mirror, 3) == evaluate(web, 3)


def test_combination_merges_and_drops(theta_web):
    combination = WebCombination()
    combination.add(RationalFn(Q), theta_web)
    combination.add(RationalFn(-Q), theta_web)
    assert len(combination) == 0
    combination.add(RationalFn(ONE), theta_web)
    combination.add(RationalFn(ONE), Web.from_dict(theta_web.to_dict()))
    ((coef, _),) = list(combination)
    assert coef == RationalFn(2)
    assert list(combination.scaled(RationalFn(Q)))[0][0] == RationalFn(2 * Q)
