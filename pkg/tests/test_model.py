from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import P, distinct_points, int_points, make_world, small_rationals
from core.geometry import strictly_between
from core.model import (
    Activity,
    Light,
    LocalFrame,
    Motion,
    Pattern,
    RobotState,
    SimulationFault,
    WorldConfig,
    take_snapshot,
    to_global,
    to_local,
    visible_set,
    world_digest,
)


def brute_force_visible(world, observer, t):
    positions = world.positions_at(t)
    me = positions[observer]
    out = set()
    for j, q in enumerate(positions):
        if j == observer:
            continue
        if not any(strictly_between(me, positions[k], q) for k in range(len(positions)) if k not in (observer, j)):
            out.add((q, world.robots[j].light))
    return out


class TestFrames:
    def test_identity(self):
        assert to_local(LocalFrame(1, Fraction(1)), P(0, 0), P(3, 4)) == P(3, 4)

    def test_y_flip(self):
        assert to_local(LocalFrame(-1, Fraction(1)), P(0, 0), P(0, 1)) == P(0, -1)

    def test_scaled_origin(self):
        assert to_local(LocalFrame(1, Fraction(2)), P(1, 1), P(5, 3)) == P(2, 1)

    @given(st.sampled_from([1, -1]), st.builds(Fraction, st.integers(1, 9), st.integers(1, 5)),
           int_points, st.builds(lambda x, y: P(x, y), small_rationals, small_rationals))
    def test_round_trip(self, y_sign, unit, origin, p):
        frame = LocalFrame(y_sign, unit)
        assert to_global(frame, origin, to_local(frame, origin, p)) == p

    @pytest.mark.parametrize("y_sign,unit", [(0, 1), (2, 1), (1, 0), (1, -1)])
    def test_invalid_frame(self, y_sign, unit):
        with pytest.raises(ValueError):
            LocalFrame(y_sign, Fraction(unit))


class TestVisibility:
    def test_collinear_blocked(self):
        world = make_world([(0, 0), (1, 0), (2, 0)])
        assert visible_set(world, 0) == [(P(1, 0), Light.OFF)]

    def test_two_directions(self):
        world = make_world([(0, 0), (1, 0), (2, 0), (0, 1)])
        assert {p for p, _ in visible_set(world, 0)} == {P(1, 0), P(0, 1)}

    def test_coincident_is_fault(self):
        world = make_world([(0, 0), (2, 0)])
        world.robots[1].activity = Activity.MOVING
        world.robots[1].motion = Motion(P(2, 0), P(-2, 0), Fraction(0), Fraction(2))
        with pytest.raises(SimulationFault):
            visible_set(world, 0, Fraction(1))

    @given(distinct_points(2, 12))
    def test_matches_brute_force(self, points):
        world = make_world(points)
        for i in range(len(points)):
            assert set(visible_set(world, i)) == brute_force_visible(world, i, world.time)

    @given(distinct_points(3, 10), st.integers(0, 9), int_points, st.integers(1, 3))
    def test_matches_brute_force_mid_move(self, points, mover, dest, step):
        mover %= len(points)
        world = make_world(points)
        robot = world.robots[mover]
        robot.activity = Activity.MOVING
        robot.motion = Motion(robot.pos, dest, Fraction(0), Fraction(4))
        t = Fraction(step)
        positions = world.positions_at(t)
        if len(set(positions)) != len(positions):
            return
        for i in range(len(points)):
            assert set(visible_set(world, i, t)) == brute_force_visible(world, i, t)

    @given(distinct_points(2, 10))
    def test_symmetric(self, points):
        world = make_world(points)
        seen = [{p for p, _ in visible_set(world, i)} for i in range(len(points))]
        for i, p in enumerate(points):
            for j, q in enumerate(points):
                if i != j:
                    assert (q in seen[i]) == (p in seen[j])


class TestSnapshot:
    def test_single_robot(self):
        world = make_world([(3, 3)])
        view = take_snapshot(world, 0)
        assert view.visible == ()
        assert view.n == 1

    def test_flipped_frames_mirror(self):
        world = make_world([{"pos": (0, 0), "y_sign": 1}, {"pos": (2, 1), "y_sign": -1}])
        assert take_snapshot(world, 0).visible[0][0] == P(2, 1)
        assert take_snapshot(world, 1).visible[0][0] == P(-2, 1)

    def test_mid_move_interpolated(self):
        world = make_world([(0, 0), (0, 5)])
        mover = world.robots[0]
        mover.activity = Activity.MOVING
        mover.motion = Motion(P(0, 0), P(4, 0), Fraction(0), Fraction(2))
        view = take_snapshot(world, 1, Fraction(1))
        assert view.visible == ((P(2, -5), Light.OFF),)

    def test_units_divide(self):
        world = make_world([{"pos": (0, 0), "unit": 2}, (4, 2)])
        assert take_snapshot(world, 0).visible[0][0] == P(2, 1)

    @given(distinct_points(2, 8), st.randoms(use_true_random=False))
    def test_anonymous_under_relabeling(self, points, rnd):
        world = make_world(points)
        order = list(range(len(points)))
        rnd.shuffle(order)
        relabeled = make_world([points[k] for k in order])
        for new_id, old_id in enumerate(order):
            assert take_snapshot(relabeled, new_id) == take_snapshot(world, old_id)
        assert world_digest(relabeled) == world_digest(world)

    @given(distinct_points(1, 10))
    def test_never_sees_self_or_more_than_n_minus_1(self, points):
        world = make_world(points)
        for i, p in enumerate(points):
            view = take_snapshot(world, i)
            assert len(view.visible) <= len(points) - 1
            assert P(0, 0) not in [q for q, _ in view.visible]


class TestWorld:
    def test_pattern_validation(self):
        with pytest.raises(ValueError):
            Pattern((P(1, 0), P(0, 0)))
        with pytest.raises(ValueError):
            Pattern((P(0, 0), P(0, 0)))
        with pytest.raises(ValueError):
            Pattern((P(0, -1), P(0, 0)))

    def test_count_mismatch(self):
        robot = RobotState(0, P(0, 0), Light.OFF, LocalFrame(1, Fraction(1)))
        with pytest.raises(ValueError):
            WorldConfig([robot], make_world([(0, 0), (1, 0)]).mode, Pattern((P(0, 0), P(1, 0))))

    def test_digest_tracks_lights(self):
        world = make_world([(0, 0), (1, 0)])
        before = world_digest(world)
        world.robots[0].light = Light.LEADER
        assert world_digest(world) != before

    def test_stability(self):
        world = make_world([(0, 0)])
        robot = world.robots[0]
        assert robot.is_stable
        robot.activity = Activity.LOOKING
        assert robot.is_stable
        robot.activity = Activity.SNAPSHOT_TAKEN
        assert not robot.is_stable
