import pytest

from qholo.corpus import random_ladder
from qholo.ladder import Ladder, evaluate, is_admissible
from qholo.moy import dual_width, state_sum, states, web_value
from qholo.poly import (
    ONE,
    LaurentPoly,
    RationalFn,
    circle_value,
    circle_value_at,
    interpolate_in_a,
    quantum_integer,
)
from qholo.web import Web

SQUARE = Ladder((2, 2), ((0, "E", 1), (0, "F", 1)))
THIN_SQUARE = Ladder((1, 2), ((0, "E", 1), (0, "F", 1)))


@pytest.mark.parametrize("n", range(1, 6))
def test_theta_state_sum(theta_web, n):
    assert state_sum(theta_web, n) == quantum_integer(2) * circle_value_at(2, n)


def test_theta_states_at_two(theta_web):
    # the color-2 edge takes both labels, the thin edges one each
    assert len(list(states(theta_web, 2))) == 2
    assert state_sum(theta_web, 2) == quantum_integer(2)


def test_theta_interpolates_from_state_sums(theta_web):
    assert dual_width(theta_web) == 2
    samples = [(m, state_sum(theta_web, m)) for m in range(1, 8)]
    assert interpolate_in_a(samples, 2) == RationalFn(quantum_integer(2)) * circle_value(2)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_free_circles_interpolate(k):
    web = Web([], [], [k])
    samples = [(m, state_sum(web, m)) for m in range(1, 2 * k + 4)]
    assert interpolate_in_a(samples, k) == circle_value(k)


def test_color_above_n_has_no_states():
    assert state_sum(SQUARE.to_web(), 2).is_zero()
    assert list(states(SQUARE.to_web(), 2)) == []


def test_square_values_at_three():
    assert state_sum(SQUARE.to_web(), 3) == quantum_integer(2) * quantum_integer(3)
    assert state_sum(THIN_SQUARE.to_web(), 3) == quantum_integer(3) * (ONE + quantum_integer(3))
    assert state_sum(THIN_SQUARE.to_web(), 2) == quantum_integer(2)


def test_square_dual_width():
    assert dual_width(SQUARE.to_web()) == 4


@pytest.mark.parametrize("ladder", [SQUARE, THIN_SQUARE], ids=["2,2", "1,2"])
def test_symbolic_web_value_matches_ladder(ladder):
    web = ladder.to_web()
    assert web_value(web) == evaluate(ladder)
    for n in (2, 3, 4):
        assert web_value(web, n) == evaluate(ladder, n)


def test_mirror_has_the_same_state_sum():
    web = THIN_SQUARE.to_web()
    for n in (2, 3):
        assert state_sum(web.mirror(), n) == state_sum(web, n)


def test_empty_web_is_one():
    assert state_sum(Web([], []), 4) == ONE
    assert web_value(Web([], [])) == RationalFn(ONE)


def test_random_ladders_agree_with_state_sums(rng):
    checked = 0
    for _ in range(8):
        ladder = random_ladder(rng, max_color=2)
        if not is_admissible(ladder.colors, ladder.rungs):
            continue
        web = ladder.to_web()
        for n in (2, 3):
            assert state_sum(web, n) == evaluate(ladder, n), ladder.describe()
        checked += 1
    assert checked > 0


def test_state_sum_is_a_laurent_polynomial(theta_web):
    assert isinstance(state_sum(theta_web, 3), LaurentPoly)
