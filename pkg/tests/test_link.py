import pytest

from qholo.corpus import known_braid
from qholo.errors import BraidParseError, ColorSpecError
from qholo.link import (
    ColorSpec,
    ColoredBraid,
    colored_homfly,
    component_writhes,
    crossing_terms,
    framing_factor,
    framing_record,
    parse_braid,
    renormalize,
    resolve_crossings,
)
from qholo.poly import A, ONE, Q, RationalFn, a_to_q_power, circle_value, q_binomial
from qholo.skein import Z

UNKNOT = circle_value(1)


def trefoil_value() -> RationalFn:
    return UNKNOT * RationalFn(2 * A - A ** -1 + A * Z * Z)


def test_parse_named_fields():
    b = parse_braid("s=3; w=[1,-2,1,-2]; colors=[1,1,1]")
    assert b.strands == 3
    assert b.word == (1, -2, 1, -2)
    assert b.colors == (1, 1, 1)


def test_parse_positional_and_json():
    assert parse_braid("2;[1,1,1];[1,1]") == parse_braid("s=2; w=[1,1,1]; colors=[1,1]")
    assert parse_braid('{"strands": 2, "word": [1, 1, 1]}').colors == (1, 1)
    assert parse_braid("s=1; w=[]").word == ()


def test_parse_errors_carry_codes_and_positions():
    with pytest.raises(BraidParseError) as info:
        parse_braid("s=2; w=[1,3]")
    assert info.value.code == "generator-range"
    assert info.value.position == 1

    with pytest.raises(BraidParseError) as info:
        parse_braid("s=2; w=[1,1,1]; colors=[1,2]")
    assert info.value.code == "color-mismatch"

    with pytest.raises(BraidParseError) as info:
        parse_braid("s=2; w=[1,x]")
    assert info.value.code == "malformed"
    assert info.value.position == 7

    with pytest.raises(BraidParseError):
        parse_braid("w=[1]")


def test_two_component_closure_accepts_two_colors():
    b = parse_braid("s=2; w=[1,1]; colors=[1,2]")
    assert len(b.components) == 2
    assert b.component_colors == [1, 2]


def test_components_and_writhes(trefoil):
    assert len(trefoil.components) == 1
    assert len(known_braid("hopf").components) == 2
    assert len(known_braid("borromean").components) == 3
    assert len(known_braid("4_1").components) == 1
    assert component_writhes(trefoil) == [3]
    assert component_writhes(known_braid("hopf")) == [0, 0]
    assert component_writhes(known_braid("4_1")) == [0]


def test_color_spec_parsing():
    assert ColorSpec.parse("1^2,1^3") == ColorSpec.columns(2, 3)
    assert ColorSpec.parse("(2),(1)") == ColorSpec.rows(2, 1)
    assert ColorSpec.parse("1") == ColorSpec.columns(1)
    assert str(ColorSpec.columns(2)) == "1^2"
    with pytest.raises(ColorSpecError):
        ColorSpec.parse("1^2,(2)")
    with pytest.raises(ColorSpecError):
        ColorSpec.parse("(2,1)")


def test_component_count_must_match(trefoil):
    with pytest.raises(ColorSpecError):
        colored_homfly(trefoil, ColorSpec.columns(1, 1))


def test_crossing_terms_for_color_one():
    assert crossing_terms(0, 1, 1, True) == [((), Q), (((0, "F", 1), (0, "E", 1)), -ONE)]
    assert crossing_terms(0, 1, 1, False) == [((), Q ** -1), (((0, "F", 1), (0, "E", 1)), -ONE)]


def test_crossing_terms_for_unequal_colors():
    terms = crossing_terms(0, 2, 1, True)
    assert [rungs for rungs, _ in terms] == [((0, "F", 1),), ((0, "E", 1), (0, "F", 2))]


def test_unknot_and_curl_axioms():
    assert colored_homfly(known_braid("unknot")) == UNKNOT
    assert colored_homfly(known_braid("unknot-curl")) == UNKNOT * RationalFn(A)
    assert colored_homfly(known_braid("unknot-negative-curl")) == UNKNOT * RationalFn(A ** -1)
    assert framing_factor(1) == RationalFn(A)


def test_trefoil(trefoil):
    assert colored_homfly(trefoil) == trefoil_value()
    assert renormalize(colored_homfly(trefoil), trefoil) == trefoil_value() / RationalFn(A ** 3)


def test_value_at_n_matches_symbolic(trefoil):
    symbolic = colored_homfly(trefoil)
    for n in (1, 2, 3):
        assert RationalFn(colored_homfly(trefoil, n=n)) == symbolic.substitute(a_to_q_power(n))


def test_reidemeister_two_for_colors_up_to_two():
    for i in (1, 2):
        for j in (1, 2):
            straight = circle_value(i) * circle_value(j)
            assert colored_homfly(ColoredBraid(2, (1, -1), (i, j))) == straight
            assert colored_homfly(ColoredBraid(2, (-1, 1), (i, j))) == straight


def test_braid_relation_with_colors():
    left = colored_homfly(ColoredBraid(3, (1, 2, 1), (2, 1, 2)))
    right = colored_homfly(ColoredBraid(3, (2, 1, 2), (2, 1, 2)))
    assert left == right


def test_rows_are_mirrored_columns():
    unknot = known_braid("unknot")
    assert colored_homfly(unknot, ColorSpec.rows(2)) == circle_value(2).mirror_q()
    assert colored_homfly(unknot, ColorSpec.rows(1)) == colored_homfly(unknot, ColorSpec.columns(1))
    # color 1 forces X(a, q) = -X(a, q^-1)
    assert trefoil_value() == -trefoil_value().mirror_q()


def test_zero_color_is_invisible(trefoil):
    assert colored_homfly(trefoil, ColorSpec.columns(0)) == RationalFn(ONE)
    hopf = known_braid("hopf")
    assert colored_homfly(hopf, ColorSpec.columns(0, 2)) == circle_value(2)


def test_colored_framing_factor_is_a_unit():
    factor = framing_factor(2)
    assert factor.is_polynomial()
    assert factor.to_laurent().is_monomial()
    record = framing_record(known_braid("3_1"), ColorSpec.columns(2))
    assert record["component_writhes"] == [3]


def test_resolution_merges_identical_webs(trefoil):
    merged = resolve_crossings(trefoil)
    unmerged = resolve_crossings(trefoil, merge=False)
    assert len(merged) <= len(unmerged)
    assert sum(1 for _ in unmerged) == len(unmerged)


def test_color_two_unknot_at_n():
    assert colored_homfly(known_braid("unknot"), ColorSpec.columns(2), n=3) == q_binomial(3, 2)
