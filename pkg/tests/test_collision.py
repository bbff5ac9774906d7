from fractions import Fraction

from hypothesis import given, strategies as st

from conftest import P, int_points
from sim import collision_check


def test_crossing_paths():
    motions = [(P(0, 0), P(2, 0), Fraction(0), Fraction(2)),
               (P(1, 1), P(1, -1), Fraction(0), Fraction(2))]
    assert collision_check(motions) == (1, (0, 1))


def test_crossing_at_different_times():
    motions = [(P(0, 0), P(2, 0), Fraction(0), Fraction(2)),
               (P(1, 3), P(1, -1), Fraction(0), Fraction(2))]
    assert collision_check(motions) is None


def test_moving_into_stationary():
    motions = [(P(0, 0), P(4, 0), Fraction(0), Fraction(4)),
               (P(3, 0), P(3, 0), Fraction(0), Fraction(4))]
    assert collision_check(motions) == (3, (0, 1))


def test_parallel_same_velocity():
    motions = [(P(0, 0), P(1, 0), Fraction(0), Fraction(1)),
               (P(0, 1), P(1, 1), Fraction(0), Fraction(1))]
    assert collision_check(motions) is None


def test_parked_robot_on_path():
    parked = (P(3, 0), P(3, 0), Fraction(0), Fraction(0))
    mover = (P(0, 0), P(4, 0), Fraction(5), Fraction(9))
    assert collision_check([mover, parked]) == (8, (0, 1))
    off_path = (P(3, 1), P(3, 1), Fraction(0), Fraction(0))
    assert collision_check([mover, off_path]) is None


def test_two_parked_robots():
    a = (P(1, 1), P(1, 1), Fraction(2), Fraction(2))
    assert collision_check([a, (P(1, 1), P(1, 1), Fraction(4), Fraction(4))]) == (4, (0, 1))
    assert collision_check([a, (P(1, 2), P(1, 2), Fraction(4), Fraction(4))]) is None


def test_earliest_pair_wins():
    motions = [(P(0, 0), P(4, 0), Fraction(0), Fraction(4)),
               (P(3, 0), P(3, 0), Fraction(0), Fraction(4)),
               (P(1, 0), P(1, 0), Fraction(0), Fraction(4))]
    assert collision_check(motions) == (1, (0, 2))


def test_meeting_at_endpoint():
    motions = [(P(0, 0), P(1, 0), Fraction(0), Fraction(1)),
               (P(2, 0), P(1, 0), Fraction(0), Fraction(1))]
    assert collision_check(motions) == (1, (0, 1))


def test_rational_meeting_time():
    motions = [(P(0, 0), P(3, 0), Fraction(0), Fraction(1)),
               (P(1, 0), P(1, 0), Fraction(0), Fraction(1))]
    assert collision_check(motions) == (Fraction(1, 3), (0, 1))


@given(int_points, int_points, int_points, st.integers(1, 5))
def test_no_collision_between_distinct_stationary(a, b, c, span):
    t1 = Fraction(span)
    motions = [(p, p, Fraction(0), t1) for p in {a, b, c}]
    assert collision_check(motions) is None


@given(int_points, int_points, st.integers(1, 4))
def test_detects_planted_meeting(start, meet, k):
    # 第二个机器人在 meet 静止，第一个在 t=k/4 时经过 meet
    if start == meet:
        return
    t_meet = Fraction(k, 4)
    stretch = 1 / t_meet
    end = P(start.x + (meet.x - start.x) * stretch, start.y + (meet.y - start.y) * stretch)
    motions = [(start, end, Fraction(0), Fraction(1)), (meet, meet, Fraction(0), Fraction(1))]
    assert collision_check(motions) == (t_meet, (0, 1))
