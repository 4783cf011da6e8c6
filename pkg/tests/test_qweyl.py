import pytest

from qholo.corpus import random_operator, random_sequence
from qholo.errors import SequenceRangeError
from qholo.poly import A, M, ONE, Q, LaurentPoly
from qholo.qweyl import (
    OreOperator,
    SequenceView,
    content_free,
    op_apply,
    op_multiply,
    op_specialize,
    right_divides,
    right_gcd,
)

L = OreOperator.L()


def test_commutation_rule():
    assert L * OreOperator.scalar(M) == OreOperator([0, Q * M])
    assert OreOperator.scalar(M) * L == OreOperator([0, M])
    assert (L ** 2).order == 2
    assert (L * OreOperator.scalar(M)).leading_coefficient() == Q * M


def test_zero_operator_and_trimming():
    zero = OreOperator([0, 0])
    assert zero.is_zero()
    assert zero.order == -1
    assert op_multiply(zero, L).is_zero()


def test_algebra_membership_is_checked():
    with pytest.raises(ValueError):
        OreOperator([A], "W")
    with pytest.raises(ValueError):
        OreOperator([Q], "ZML")


def test_apply_geometric_sequence():
    f = SequenceView.from_function(lambda n: A ** n, 5)
    assert op_apply(L - A, f).is_zero()
    assert len(op_apply(L - A, f)) == 5


def test_apply_reads_m_as_q_power():
    # f_n = q^(n(n-1)/2) satisfies f_{n+1} = M f_n
    f = SequenceView.from_function(lambda n: Q ** (n * (n - 1) // 2), 6)
    assert op_apply(L - OreOperator.scalar(M), f).is_zero()


def test_apply_needs_enough_terms():
    with pytest.raises(SequenceRangeError):
        op_apply(L ** 3, SequenceView.of([1, 1]))


def test_action_is_compatible_with_product(rng):
    for _ in range(10):
        P, R = random_operator(rng), random_operator(rng)
        f = random_sequence(rng, 6)
        lhs = op_apply(P * R, f)
        rhs = op_apply(P, op_apply(R, f))
        assert all((x - y).is_zero() for x, y in zip(lhs.values, rhs.values))


def test_associativity(rng):
    for _ in range(10):
        P, R, S = (random_operator(rng) for _ in range(3))
        assert (P * R) * S == P * (R * S)


def test_content_free():
    P = OreOperator([2 * A * Q, 4 * A * Q * M])
    assert content_free(P) == OreOperator([ONE, 2 * M])
    assert content_free(OreOperator([-ONE, -M])) == OreOperator([ONE, M])
    common = A + Q
    P = OreOperator([common * M, common * (Q + 1)])
    assert content_free(P) == OreOperator([M, Q + 1])


def test_content_free_is_idempotent(rng):
    for _ in range(10):
        once = content_free(random_operator(rng))
        assert content_free(once) == once


def test_specialization_diagram():
    P = OreOperator([A * Q * M, A - M])
    P2 = op_specialize(P, {"a": Q ** 2})
    assert P2.algebra == "W"
    assert P2 == OreOperator([Q ** 3 * M, Q ** 2 - M], "W")
    assert op_specialize(P2, {"q": 1}) == op_specialize(P, {"a": 1, "q": 1})
    assert op_specialize(P2, {"q": 1}) == OreOperator([M, 1 - M], "ZML")
    with pytest.raises(ValueError):
        op_specialize(P2, {"a": Q})


def test_right_division():
    Qop = L - OreOperator.scalar(M)
    P = (L + 1) * Qop
    assert right_divides(Qop, P)
    assert not right_divides(L - OreOperator.scalar(Q * M), P)


def test_right_gcd():
    first = L - OreOperator.scalar(Q * M)
    second = L - OreOperator.scalar(M)
    assert right_gcd(first, second).order == 0
    common = L - OreOperator.scalar(A)
    P = (L + OreOperator.scalar(M)) * common
    R = (L ** 2 + 1) * common
    assert right_gcd(P, R) == content_free(common)


def test_serialization():
    P = OreOperator([A * Q * M - 1, LaurentPoly.monomial(M=2)])
    assert OreOperator.from_dict(P.to_dict()) == P
