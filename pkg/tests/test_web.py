import importlib.util
import json
import os
from pathlib import Path

import pytest

from conftest import STAIR_PATTERN, STAIR_POINTS, scenario_text

APP_PATH = Path(__file__).resolve().parent.parent / "web" / "app.py"


@pytest.fixture
def web(monkeypatch):
    cwd = os.getcwd()
    spec = importlib.util.spec_from_file_location("apf_web_app", APP_PATH)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    os.chdir(cwd)
    started = []
    monkeypatch.setattr(module, "_run_job", lambda job_id, params: started.append((job_id, params)))
    monkeypatch.setattr(module, "_jobs", {})
    module.app.config["TESTING"] = True
    module.started = started
    return module


@pytest.fixture
def client(web):
    return web.app.test_client()


def stair_payload(**extra):
    payload = {"scenario": json.loads(scenario_text(STAIR_POINTS, STAIR_PATTERN)), "scheduler": "fsync"}
    payload.update(extra)
    return payload


class TestParseRunRequest:
    def test_valid(self, web):
        params, err = web._parse_run_request(stair_payload(seed=4, every=5))
        assert err is None
        assert params["scheduler"] == "fsync"
        assert params["seed"] == 4
        assert params["every"] == 5

    @pytest.mark.parametrize("extra", [
        {"scenario": "not a dict"},
        {"scheduler": "chaos"},
        {"scheduler": "async"},
        {"seed": "7"},
        {"seed": True},
        {"max_events": 0},
        {"every": -1},
    ])
    def test_rejected(self, web, extra):
        params, err = web._parse_run_request(stair_payload(**extra))
        assert params is None
        assert err


def test_build_command(web, tmp_path):
    params, _ = web._parse_run_request(stair_payload(scheduler="async", seed=2, max_events=100, every=10))
    cmd = web._build_command(tmp_path, params)
    assert cmd[1:4] == ["main.py", "run", str(tmp_path / "scenario.json")]
    joined = " ".join(cmd)
    assert "--scheduler async" in joined
    assert "--seed 2" in joined
    assert "--max-events 100" in joined
    assert f"--render {tmp_path / 'frames'} --every 10" in joined


class TestRoutes:
    def test_index(self, client):
        assert client.get("/").status_code == 200

    def test_run_and_status(self, client, web):
        res = client.post("/api/run", json=stair_payload())
        assert res.status_code == 200
        job_id = res.get_json()["job_id"]
        status = client.get(f"/api/status?job_id={job_id}").get_json()
        assert status["status"] == "running"
        assert "_proc" not in status
        assert [j for j, _ in web.started] == [job_id]

    def test_run_rejects_bad_payload(self, client):
        res = client.post("/api/run", json=stair_payload(scheduler="ssync"))
        assert res.status_code == 400
        assert res.get_json()["ok"] is False

    def test_concurrency_limit(self, client, web):
        for _ in range(web.MAX_CONCURRENT):
            assert client.post("/api/run", json=stair_payload()).status_code == 200
        assert client.post("/api/run", json=stair_payload()).status_code == 503

    def test_status_errors(self, client):
        assert client.get("/api/status").status_code == 400
        assert client.get("/api/status?job_id=missing").status_code == 404

    def test_cancel_without_process(self, client):
        job_id = client.post("/api/run", json=stair_payload()).get_json()["job_id"]
        assert client.post(f"/api/cancel?job_id={job_id}").status_code == 400
        assert client.post("/api/cancel?job_id=missing").status_code == 404

    def test_download_guards(self, client):
        assert client.get("/api/download/a..b").status_code == 400
        assert client.get("/api/download/no-such-file.svg").status_code == 404

    def test_config_check(self, client, monkeypatch):
        monkeypatch.delenv("APF_MAX_PHASE_DELAY", raising=False)
        data = client.get("/api/config-check").get_json()
        assert "ok" in data


def test_status_includes_job_progress(client, web, tmp_path, monkeypatch):
    monkeypatch.setattr(web, "OUTPUT_DIR", tmp_path)
    job_id = client.post("/api/run", json=stair_payload()).get_json()["job_id"]
    assert "progress" not in client.get(f"/api/status?job_id={job_id}").get_json()
    (tmp_path / job_id).mkdir()
    (tmp_path / job_id / ".progress.json").write_text(
        json.dumps({"status": "running", "events": 500, "current_stage_label": "仿真 0/1，已处理 500 个事件"}),
        encoding="utf-8")
    status = client.get(f"/api/status?job_id={job_id}").get_json()
    assert status["progress"]["events"] == 500
