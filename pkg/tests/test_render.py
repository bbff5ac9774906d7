import os
import re
from fractions import Fraction

import pytest

from conftest import P, make_world
from core.model import Light
from render import decimal_str, pattern_markers, render_trace
from report import save_trace_jsonl
from sim import SchedulerKind, SchedulerPolicy, Simulator, Trace, run


@pytest.fixture
def stair_trace(tmp_path, stair_world):
    trace, outcome = run(stair_world, SchedulerPolicy(SchedulerKind.FSYNC))
    return save_trace_jsonl(trace, outcome, str(tmp_path / "stair.jsonl"))


def test_decimal_str():
    assert decimal_str(Fraction(1, 3)) == "0." + "3" * 20
    assert decimal_str(100) == "100"
    assert decimal_str(Fraction(-1, 2)) == "-0.5"
    assert decimal_str(0) == "0"


class TestRenderTrace:
    def test_sampling(self, tmp_path, stair_trace):
        frames = render_trace(stair_trace, str(tmp_path / "frames"), 10)
        assert [os.path.basename(p) for p in frames] == [
            "frame_000009.svg", "frame_000019.svg", "frame_000029.svg", "frame_000039.svg", "frame_000049.svg"]

    def test_every_event(self, tmp_path, stair_trace):
        frames = render_trace(stair_trace, str(tmp_path / "frames"), 1)
        assert len(frames) == 59

    def test_frame_content(self, tmp_path, stair_trace):
        frames = render_trace(stair_trace, str(tmp_path / "frames"), 59, observer=0)
        svg = open(frames[0], encoding="utf-8").read()
        assert svg.startswith("<svg")
        assert svg.count('r="7"') == 3
        assert svg.count(Light.DONE.value) >= 3
        assert "<line" in svg
        # 坐标全部是十进制文本，不出现分数
        for value in re.findall(r'c[xy]="([^"]+)"', svg):
            assert "/" not in value

    def test_empty_trace(self, tmp_path, stair_world, caplog):
        trace = Trace(metadata=Simulator(stair_world, SchedulerPolicy(SchedulerKind.FSYNC)).trace.metadata)
        path = save_trace_jsonl(trace, None, str(tmp_path / "empty.jsonl"))
        assert render_trace(path, str(tmp_path / "frames"), 1) == []
        assert not (tmp_path / "frames").exists()
        assert "不含事件" in caplog.text

    def test_invalid_every(self, tmp_path, stair_trace):
        with pytest.raises(ValueError):
            render_trace(stair_trace, str(tmp_path / "frames"), 0)


class TestPatternMarkers:
    def test_agreed_frame(self):
        world = make_world([{"pos": (0, 0), "light": Light.LEADER}, (0, 1), (5, 5)])
        assert pattern_markers(world) == [P(1, 1), P(2, 1), P(3, 1)]

    def test_formed(self):
        world = make_world([{"pos": (5, y), "light": Light.DONE} for y in (0, 2, 4)])
        assert sorted(pattern_markers(world)) == [P(5, 0), P(5, 2), P(5, 4)]

    def test_unknown(self, stair_world):
        assert pattern_markers(stair_world) is None
