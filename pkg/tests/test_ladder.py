import pytest

from qholo.corpus import random_ladder
from qholo.errors import FlowError, StepLimitError, StuckWebError, WebError
from qholo.ladder import Ladder, Reducer, evaluate, is_admissible, reduce_step, weight_after
from qholo.moy import state_sum
from qholo.poly import ONE, Q, ZERO, RationalFn, a_to_q_power, circle_value, q_binomial, quantum_integer


def test_ladder_must_close():
    with pytest.raises(FlowError):
        Ladder((1, 1), ((0, "E", 1),))
    with pytest.raises(WebError):
        Ladder((1, 1), ((1, "E", 1), (1, "F", 1)))
    with pytest.raises(WebError):
        Ladder((1, 1), ((0, "X", 1),))


def test_zero_rungs_are_dropped():
    assert Ladder((1, 1), ((0, "E", 0),)).rungs == ()


def test_weights_and_admissibility():
    word = ((0, "F", 1), (0, "E", 1))
    assert weight_after((1, 0), word[:1]) == (0, 1)
    assert is_admissible((1, 0), word)
    assert not is_admissible((0, 1), word)


def test_theta(theta_ladder, reducer):
    expected = RationalFn(quantum_integer(2)) * circle_value(2)
    assert evaluate(theta_ladder, reducer=reducer) == expected
    assert reducer.expand(theta_ladder) == {(2,): quantum_integer(2)}


def test_rung_pair_on_one_strand_is_a_circle(reducer):
    ladder = Ladder((1, 0), ((0, "F", 1), (0, "E", 1)))
    assert evaluate(ladder, reducer=reducer) == circle_value(1)


def test_untouched_strands_are_circles(reducer):
    assert evaluate(Ladder((1, 2)), reducer=reducer) == circle_value(1) * circle_value(2)
    assert evaluate(Ladder((0, 0)), reducer=reducer) == RationalFn(ONE)


def test_values_at_n(theta_ladder, reducer):
    assert evaluate(theta_ladder, 2, reducer) == Q + Q ** -1
    assert evaluate(theta_ladder, 1, reducer) == ZERO
    assert evaluate(theta_ladder, 3, reducer) == quantum_integer(2) * quantum_integer(3)


def test_web_route_agrees_with_ladder_route(theta_ladder, reducer):
    web = theta_ladder.to_web()
    assert len(web.vertices) == 2
    assert evaluate(web) == evaluate(theta_ladder, reducer=reducer)


def test_reduce_step_merges_digons():
    ladder = Ladder((2, 0), ((0, "F", 1), (0, "F", 1), (0, "E", 2)))
    ((coef, target),) = list(reduce_step(ladder))
    assert coef == RationalFn(q_binomial(2, 1))
    assert target.rungs == ((0, "F", 2), (0, "E", 2))


def test_reduce_step_removes_circles():
    step = reduce_step(Ladder((1, 2)))
    ((coef, rest),) = list(step)
    assert coef == circle_value(1)
    assert rest.colors == (2,)
    assert evaluate(step) == circle_value(1) * circle_value(2)


def test_reduce_step_switch_keeps_the_value(reducer):
    ladder = Ladder((1, 1), ((0, "F", 1), (0, "E", 1)))
    step = reduce_step(ladder)
    assert evaluate(step, reducer=reducer) == evaluate(ladder, reducer=reducer)


def test_reduce_step_on_nothing():
    with pytest.raises(StuckWebError):
        reduce_step(Ladder(()))


def test_step_limit(theta_ladder):
    with pytest.raises(StepLimitError) as info:
        Reducer(step_limit=1).expand(theta_ladder)
    assert info.value.trace


def test_step_limit_from_environment(monkeypatch):
    monkeypatch.setenv("QHOLO_STEP_LIMIT", "7")
    assert Reducer().step_limit == 7


def test_random_orders_agree(rng, reducer):
    for t in range(15):
        ladder = random_ladder(rng)
        reference = evaluate(ladder, reducer=reducer)
        assert evaluate(ladder, reducer=Reducer(seed=t)) == reference


def test_symbolic_and_sl_n_values_agree(rng, reducer):
    for _ in range(10):
        ladder = random_ladder(rng)
        symbolic = evaluate(ladder, reducer=reducer)
        web = ladder.to_web() if is_admissible(ladder.colors, ladder.rungs) else None
        for n in (2, 3):
            at_n = evaluate(ladder, n, reducer)
            assert symbolic.substitute(a_to_q_power(n)) == RationalFn(at_n)
            assert all(c >= 0 for _, c in at_n.items())
            if web is not None:
                assert state_sum(web, n) == at_n


def test_rotation_is_invisible(reducer):
    word = ((0, "E", 1), (1, "E", 1), (1, "F", 1), (0, "F", 1))
    ladder = Ladder((1, 1, 1), word)
    rotated = Ladder(weight_after((1, 1, 1), word[:1]), word[1:] + word[:1])
    assert evaluate(rotated, reducer=reducer) == evaluate(ladder, reducer=reducer)
