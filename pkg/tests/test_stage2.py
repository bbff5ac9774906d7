from fractions import Fraction

from hypothesis import given

from conftest import P, distinct_points, line_pattern, make_view
from core.model import Light, Pattern
from apf import NULL_ACTION, AgreedFrame, agreed_frame, partial_formation, psi_targets, stage2_step

L, D, OFF = Light.LEADER, Light.DONE, Light.OFF


class TestPsi:
    def test_shared_column_spreads(self):
        psi, eps = psi_targets(Pattern((P(0, 0), P(0, 2), P(3, 1))))
        assert psi == (0, Fraction(3, 2), 3)
        assert eps == 3

    def test_single_column(self):
        psi, eps = psi_targets(Pattern((P(0, 0), P(0, 1), P(0, 2))))
        assert psi == (0, Fraction(1, 4), Fraction(1, 2))
        assert eps == 1

    @given(distinct_points(1, 10))
    def test_strictly_increasing_within_half_gap(self, points):
        pattern = Pattern(tuple(sorted({P(abs(p.x), abs(p.y)) for p in points})))
        psi, eps = psi_targets(pattern)
        assert all(a < b for a, b in zip(psi, psi[1:]))
        for value, p in zip(psi, pattern.points):
            assert p.x <= value <= p.x + eps / 2

    @given(distinct_points(1, 10))
    def test_matches_per_column_recount(self, points):
        pattern = Pattern(tuple(sorted({P(abs(p.x), abs(p.y)) for p in points})))
        psi, eps = psi_targets(pattern)
        xs = [p.x for p in pattern.points]
        gaps = [abs(a - b) for a in xs for b in xs if a != b]
        assert eps == (min(gaps) if gaps else 1)
        for value, p in zip(psi, pattern.points):
            column = sorted(q.y for q in pattern.points if q.x == p.x)
            m, k = len(column), column.index(p.y) + 1
            expected = p.x if m == 1 else p.x + Fraction(k - 1, 2 * (m - 1)) * eps
            assert value == expected
            # 只有同一竖线上最上方的点偏移满半个间距
            assert (value - p.x == eps / 2) == (m > 1 and k == m)


class TestAgreedFrame:
    def test_from_leader(self):
        frame = AgreedFrame.from_leader(P(0, 0), P(0, 2))
        assert frame.unit == 2
        assert frame.origin == P(2, 2)
        assert frame.to_agreed(P(0, 0)) == P(-1, -1)
        assert frame.to_agreed(P(0, 2)) == P(-1, 0)

    def test_downward(self):
        frame = AgreedFrame.from_leader(P(0, 0), P(0, -1))
        assert frame.up == -1
        assert frame.to_local(P(2, 0)) == P(3, -1)

    def test_from_view_needs_upper(self):
        assert agreed_frame(make_view([((-2, -1), L)])) is None
        frame = agreed_frame(make_view([((-2, -1), L), (-2, 1)]))
        assert frame.unit == 2


class TestSweep:
    def test_first_joins_column(self):
        action = stage2_step(make_view([((-1, -1), L)], n=3))
        assert action.destination == P(-1, 0)
        assert action.rule == "join_column"

    def test_next_goes_to_staging_line(self):
        action = stage2_step(make_view([((-1, -1), L), (-1, 1)], n=3))
        assert action.destination == P(5, -1)
        assert action.rule == "stage_line"

    def test_waits_for_lower_robot(self):
        assert stage2_step(make_view([((-1, -2), L), (1, -1)], n=3)) is NULL_ACTION

    def test_adopts_done(self):
        action = stage2_step(make_view([((-1, -1), L), ((-1, 1), D)], n=3))
        assert action.new_color is D
        assert action.destination is None


class TestStaging:
    def test_forms_first_target(self):
        action = stage2_step(make_view([((-3, 0), L), (-3, 1)], n=3))
        assert action.destination == P(0, 1)
        assert action.new_color is D
        assert action.rule == "form_target"

    def test_waits_for_previous_target(self):
        pattern = line_pattern(4)
        # 自身在 Ψ(3)=3 处，P[2] 尚未形成
        view = make_view([((-4, 0), L), (-4, 1)], pattern=pattern)
        assert stage2_step(view) is NULL_ACTION

    def test_partial_formation(self):
        pattern = Pattern(tuple(P(i, 0) for i in range(6)))
        view = make_view([((-6, 0), L), (-6, 1), ((-1, 1), D)], pattern=pattern)
        assert partial_formation(view, 5)
        assert not partial_formation(view, 4)
        assert partial_formation(view, 2)


class TestUpper:
    def test_pair_done(self):
        action = stage2_step(make_view([((0, -3), L)], n=2))
        assert action.new_color is D
        assert action.rule == "pair_done"

    def test_moves_to_second_target(self):
        action = stage2_step(make_view([((0, -2), L)], n=3))
        assert action.destination == P(4, 0)
        assert action.rule == "upper_target"

    def test_waits_while_off_robot_remains(self):
        assert stage2_step(make_view([((0, -2), L), (3, 0)], n=3)) is NULL_ACTION


class TestLeader:
    def test_lone(self):
        assert stage2_step(make_view([], own=L, n=1)).new_color is D

    def test_pair(self):
        pattern = Pattern((P(0, 0), P(2, 1)))
        action = stage2_step(make_view([((0, 3), D)], own=L, pattern=pattern))
        assert action.destination == P(-6, 0)
        assert action.new_color is D
        assert action.rule == "pair_leader"

    def test_last_target(self):
        action = stage2_step(make_view([((2, 1), D), ((3, 1), D)], own=L, n=3))
        assert action.destination == P(1, 1)
        assert action.new_color is D
        assert action.rule == "leader_target"

    def test_waits_for_off(self):
        assert stage2_step(make_view([((2, 1), D), (3, 1)], own=L, n=3)) is NULL_ACTION


def test_other_lights_idle():
    assert stage2_step(make_view([((-1, -1), L)], own=Light.CANDIDATE, n=3)) is NULL_ACTION
