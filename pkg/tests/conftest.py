import json
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from core.geometry import RPoint
from core.model import Light, LocalFrame, LocalView, Mode, Pattern, RobotState, WorldConfig


def P(x, y):
    return RPoint.of(Fraction(x), Fraction(y))


def line_pattern(n):
    return Pattern(tuple(P(i, 0) for i in range(n)))


def make_view(entries, own=Light.OFF, n=None, pattern=None):
    """entries: [((x, y), light) 或 (x, y)]，坐标为调用者局部坐标。"""
    visible = []
    for e in entries:
        if len(e) == 2 and isinstance(e[1], Light):
            visible.append((P(*e[0]), e[1]))
        else:
            visible.append((P(*e), Light.OFF))
    n = n if n is not None else (len(pattern) if pattern is not None else len(visible) + 1)
    pattern = pattern or line_pattern(n)
    return LocalView(tuple(sorted(visible)), own, n, pattern)


def make_world(specs, pattern=None, mode=Mode.ONE_AXIS):
    """specs: [(x, y) 或 {"pos": (x, y), "y_sign": ±1, "unit": q, "light": Light}]"""
    robots = []
    for i, spec in enumerate(specs):
        if isinstance(spec, dict):
            pos = P(*spec["pos"])
            frame = LocalFrame(spec.get("y_sign", 1), Fraction(spec.get("unit", 1)))
            light = spec.get("light", Light.OFF)
        else:
            pos, frame, light = P(*spec), LocalFrame(1, Fraction(1)), Light.OFF
        robots.append(RobotState(i, pos, light, frame))
    return WorldConfig(robots, mode, pattern or line_pattern(len(robots)))


def scenario_text(points, pattern, mode="one-axis", y_signs=None, units=None):
    robots = []
    for i, (x, y) in enumerate(points):
        robots.append({
            "x": str(x), "y": str(y),
            "y_sign": (y_signs[i] if y_signs else 1),
            "unit": str(units[i]) if units else "1",
        })
    return json.dumps({"mode": mode, "robots": robots,
                       "pattern": [[str(x), str(y)] for x, y in pattern]}, indent=2)


# 手工推演过的三机器人单轴场景：fsync 下 59 个事件后形成
STAIR_POINTS = [(0, 0), (1, 1), (2, 3)]
STAIR_PATTERN = [(0, 0), (1, 0), (2, 0)]


@pytest.fixture
def stair_world():
    return make_world(STAIR_POINTS, Pattern(tuple(P(*p) for p in STAIR_PATTERN)))


@pytest.fixture
def stacked_pair_world():
    return make_world([(0, 0), (0, 1)], Pattern((P(0, 0), P(1, 0))), mode=Mode.TWO_AXIS)


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("APF_MAX_PHASE_DELAY", raising=False)
    return tmp_path


small_ints = st.integers(min_value=-6, max_value=6)
small_rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 4))
int_points = st.builds(lambda x, y: P(x, y), small_ints, small_ints)


def distinct_points(min_size=1, max_size=8, elements=int_points):
    return st.lists(elements, min_size=min_size, max_size=max_size, unique=True)
