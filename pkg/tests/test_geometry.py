from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import P, distinct_points, int_points, small_rationals
from core.geometry import (
    ISOMETRIES,
    AxisAlignedSimilarity,
    format_rational,
    horizontal_symmetry_axis,
    lex_compare,
    match_axis_aligned_similarity,
    parse_rational,
    strictly_between,
)


class TestRationalText:
    def test_parse_forms(self):
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational("-5") == Fraction(-5)
        assert parse_rational(7) == Fraction(7)

    @pytest.mark.parametrize("bad", [1.5, "1.5", "1e3", True, "1/0", "abc", None])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_format(self):
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-3, 4)) == "-3/4"

    @given(small_rationals)
    def test_format_parse(self, q):
        assert parse_rational(format_rational(q)) == q


def _between_oracle(a, b, c):
    if a == c:
        return False
    if c.x != a.x:
        s = (b.x - a.x) / (c.x - a.x)
    else:
        s = (b.y - a.y) / (c.y - a.y)
    on_line = P(a.x + s * (c.x - a.x), a.y + s * (c.y - a.y)) == b
    return on_line and 0 < s < 1


class TestStrictlyBetween:
    def test_examples(self):
        assert strictly_between(P(0, 0), P(1, 0), P(2, 0))
        assert not strictly_between(P(0, 0), P(2, 0), P(1, 0))
        assert not strictly_between(P(0, 0), P(1, 1), P(2, 0))
        assert not strictly_between(P(0, 0), P(0, 0), P(2, 0))
        assert not strictly_between(P(1, 1), P(1, 1), P(1, 1))

    @given(int_points, int_points, int_points)
    def test_matches_parametric_oracle(self, a, b, c):
        assert strictly_between(a, b, c) == _between_oracle(a, b, c)

    @given(int_points, int_points, int_points)
    def test_symmetric_in_endpoints(self, a, b, c):
        assert strictly_between(a, b, c) == strictly_between(c, b, a)


def test_lex_compare():
    assert lex_compare(P(0, 5), P(1, 0)) == -1
    assert lex_compare(P(1, 0), P(1, -1)) == 1
    assert lex_compare(P(2, 2), P(2, 2)) == 0


class TestHorizontalSymmetryAxis:
    def test_robot_free_axis(self):
        assert horizontal_symmetry_axis([P(0, 1), P(0, -1), P(2, 2), P(2, -2)]) == (0, False)

    def test_axis_through_point(self):
        assert horizontal_symmetry_axis([P(0, 0), P(0, 2), P(1, 1)]) == (1, True)

    def test_asymmetric(self):
        assert horizontal_symmetry_axis([P(0, 0), P(1, 1), P(2, 3)]) is None

    def test_single_point_lies_on_its_axis(self):
        assert horizontal_symmetry_axis([P(3, 4)]) == (4, True)


similarities = st.builds(
    AxisAlignedSimilarity,
    st.integers(0, len(ISOMETRIES) - 1),
    st.builds(Fraction, st.integers(1, 9), st.integers(1, 4)),
    st.builds(lambda x, y: P(x, y), small_rationals, small_rationals),
)


class TestSimilarity:
    def test_scaled_and_translated(self):
        A = [P(0, 0), P(1, 0), P(0, 2)]
        B = [P(5, 5), P(8, 5), P(5, 11)]
        sim = match_axis_aligned_similarity(A, B)
        assert sim is not None
        assert sorted(sim.apply(p) for p in A) == sorted(B)
        assert sim.scale == 3

    def test_rotated_quarter_turn(self):
        A = [P(0, 0), P(2, 0), P(2, 1)]
        B = [P(0, 0), P(0, 2), P(-1, 2)]
        assert match_axis_aligned_similarity(A, B) is not None

    def test_not_similar(self):
        assert match_axis_aligned_similarity([P(0, 0), P(1, 0), P(0, 1)],
                                             [P(0, 0), P(2, 0), P(0, 1)]) is None

    def test_size_mismatch(self):
        assert match_axis_aligned_similarity([P(0, 0)], [P(0, 0), P(1, 1)]) is None

    def test_rejects_non_positive_scale(self):
        with pytest.raises(ValueError):
            AxisAlignedSimilarity(0, Fraction(0), P(0, 0))

    @given(distinct_points(1, 7), similarities)
    def test_recovers_any_similarity(self, A, T):
        B = [T.apply(p) for p in A]
        found = match_axis_aligned_similarity(A, B)
        assert found is not None
        assert {found.apply(p) for p in A} == set(B)

    @given(similarities, int_points)
    def test_inverse(self, T, p):
        assert T.inverse().apply(T.apply(p)) == p
