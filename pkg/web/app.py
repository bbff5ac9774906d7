#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
任意图案形成 - Web 任务后端
提交场景即在子进程中运行 main.py run，可查询状态、中止与下载轨迹/SVG 帧。
支持多任务并行（最多 MAX_CONCURRENT 个），每个任务的输出位于 output/<job_id>/。
"""
import json
import os
import subprocess
import sys
import threading
import uuid
from pathlib import Path

from flask import Flask, jsonify, render_template, request, send_file

PROJECT_ROOT = Path(__file__).resolve().parent.parent
OUTPUT_DIR = PROJECT_ROOT / "output"

# 确保工作目录为项目根
try:
    os.chdir(PROJECT_ROOT)
except Exception:
    pass

if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core.utils import list_output_files, load_config  # noqa: E402

app = Flask(__name__, root_path=str(Path(__file__).resolve().parent), template_folder="templates", static_folder="static")
app.config["MAX_CONTENT_LENGTH"] = 5 * 1024 * 1024  # 5MB

MAX_CONCURRENT = 3
SCHEDULERS = ("fsync", "ssync", "async", "mirrored")
_jobs = {}  # job_id -> { status, message, log_tail, output_files, exit_code, _proc?, cancelled? }
_jobs_lock = threading.Lock()
_log_max_lines = 200
_log_tail_size = 80

EXIT_MESSAGES = {
    0: "图案已形成",
    1: "场景或参数错误，请查看运行日志",
    2: "初始配置不可解（关于不含机器人的水平线对称）",
    3: "仿真中发生碰撞",
    4: "事件预算耗尽或静止但未形成",
}


def _set_job(job_id, **fields):
    with _jobs_lock:
        if job_id in _jobs:
            _jobs[job_id].update(fields)


def _build_command(job_dir, params):
    cmd = [sys.executable, "main.py", "run", str(job_dir / "scenario.json"),
           "--scheduler", params["scheduler"],
           "--trace", str(job_dir / "trace.jsonl")]
    if params.get("seed") is not None:
        cmd.extend(["--seed", str(params["seed"])])
    if params.get("max_events"):
        cmd.extend(["--max-events", str(params["max_events"])])
    if params.get("every"):
        cmd.extend(["--render", str(job_dir / "frames"), "--every", str(params["every"])])
    return cmd


def _run_job(job_id, params):
    job_dir = OUTPUT_DIR / job_id
    try:
        job_dir.mkdir(parents=True, exist_ok=True)
        with open(job_dir / "scenario.json", "w", encoding="utf-8") as f:
            json.dump(params["scenario"], f, ensure_ascii=False, indent=2)
    except Exception as e:
        _set_job(job_id, status="error", message=str(e))
        return

    env = os.environ.copy()
    env["PYTHONUNBUFFERED"] = "1"
    env["PYTHONIOENCODING"] = "utf-8"
    env["APF_JOB_ID"] = job_id
    log_lines = []
    try:
        proc = subprocess.Popen(
            _build_command(job_dir, params),
            cwd=str(PROJECT_ROOT),
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
            text=True,
            encoding="utf-8",
            errors="replace",
            env=env,
        )
        _set_job(job_id, _proc=proc)
        for line in proc.stdout:
            log_lines.append(line.rstrip())
            if len(log_lines) > _log_max_lines:
                log_lines.pop(0)
            _set_job(job_id, log_tail=log_lines[-_log_tail_size:])
        proc.wait()
    except Exception as e:
        _set_job(job_id, _proc=None, status="error", message=str(e), log_tail=log_lines[-_log_tail_size:])
        return

    with _jobs_lock:
        j = _jobs.get(job_id)
        if not j:
            return
        j["_proc"] = None
        j["log_tail"] = log_lines[-_log_tail_size:]
        if j.pop("cancelled", None):
            j["status"] = "idle"
            j["message"] = "已取消运行"
            return
    code = proc.returncode
    files = [{"name": name, "path": f"{job_id}/{rel}"} for name, rel in list_output_files(job_dir)]
    _set_job(
        job_id,
        status="done" if code in EXIT_MESSAGES and code != 1 else "error",
        exit_code=code,
        message=EXIT_MESSAGES.get(code, f"运行失败，退出码 {code}"),
        output_files=files,
    )


def _parse_run_request(data):
    """校验提交参数，返回 (params, 错误信息)。"""
    scenario = data.get("scenario")
    if not isinstance(scenario, dict):
        return None, "scenario 必须是 JSON 对象"
    scheduler = data.get("scheduler", "async")
    if scheduler not in SCHEDULERS:
        return None, f"不支持的调度方式：{scheduler}"
    seed = data.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        return None, "seed 必须是整数"
    if scheduler in ("ssync", "async") and seed is None:
        return None, f"{scheduler} 调度需要 seed"
    max_events = data.get("max_events")
    if max_events is not None and (not isinstance(max_events, int) or max_events < 1):
        return None, "max_events 必须是正整数"
    every = data.get("every")
    if every is not None and (not isinstance(every, int) or every < 1):
        return None, "every 必须是正整数"
    return {"scenario": scenario, "scheduler": scheduler, "seed": seed,
            "max_events": max_events, "every": every}, None


@app.route("/")
def index():
    return render_template("index.html")


def _read_progress(job_id):
    """读取指定 job 的进度信息"""
    try:
        progress_file = OUTPUT_DIR / job_id / ".progress.json"
        if progress_file.exists():
            with open(progress_file, "r", encoding="utf-8") as f:
                return json.load(f)
    except Exception:
        pass
    return None


@app.route("/api/status")
def api_status():
    job_id = request.args.get("job_id")
    if not job_id:
        return jsonify({"ok": False, "message": "缺少 job_id"}), 400
    with _jobs_lock:
        if job_id not in _jobs:
            return jsonify({"ok": False, "message": "任务不存在或已过期"}), 404
        j = _jobs[job_id].copy()
    for key in ("_proc", "cancelled"):
        j.pop(key, None)
    progress = _read_progress(job_id)
    if progress:
        j["progress"] = progress
    return jsonify(j)


@app.route("/api/run", methods=["POST"])
def api_run():
    with _jobs_lock:
        running_count = sum(1 for j in _jobs.values() if j.get("status") == "running")
    if running_count >= MAX_CONCURRENT:
        return jsonify({"ok": False, "message": f"当前并发已满（最多 {MAX_CONCURRENT} 个任务），请稍后再试"}), 503
    params, err = _parse_run_request(request.get_json(silent=True) or {})
    if err:
        return jsonify({"ok": False, "message": err}), 400
    job_id = uuid.uuid4().hex[:12]
    with _jobs_lock:
        _jobs[job_id] = {
            "status": "running",
            "message": f"正在仿真（{params['scheduler']}）…",
            "log_tail": [],
            "output_files": [],
            "exit_code": None,
        }
    thread = threading.Thread(target=_run_job, args=(job_id, params))
    thread.daemon = True
    thread.start()
    return jsonify({"ok": True, "job_id": job_id, "message": "已开始仿真"})


@app.route("/api/cancel", methods=["POST"])
def api_cancel():
    """中止指定 job 的仿真"""
    job_id = request.args.get("job_id") or (request.get_json(silent=True) or {}).get("job_id")
    if not job_id:
        return jsonify({"ok": False, "message": "缺少 job_id"}), 400
    with _jobs_lock:
        if job_id not in _jobs:
            return jsonify({"ok": False, "message": "任务不存在或已结束"}), 404
        j = _jobs[job_id]
        proc = j.get("_proc")
        if proc is None:
            return jsonify({"ok": False, "message": "当前任务未在运行"}), 400
        try:
            proc.terminate()
        except Exception:
            pass
        j["cancelled"] = True
    return jsonify({"ok": True, "message": "已中止运行"})


@app.route("/api/config-check")
def api_config_check():
    try:
        config = load_config(str(PROJECT_ROOT / "config.json"))
    except Exception as e:
        return jsonify({"ok": False, "message": str(e)})
    return jsonify({"ok": True, "message": "", "max_phase_delay": str(config["max_phase_delay"]),
                    "max_events": config["max_events"]})


@app.route("/api/download/<path:filename>")
def api_download(filename):
    if ".." in filename or filename.startswith("/") or "\\" in filename:
        return "Invalid path", 400
    path = (OUTPUT_DIR / filename).resolve()
    try:
        path.relative_to(OUTPUT_DIR.resolve())
    except ValueError:
        return "Invalid path", 400
    if not path.exists() or not path.is_file():
        return "Not found", 404
    return send_file(
        str(path),
        as_attachment=True,
        download_name=path.name,
        mimetype="application/octet-stream",
    )


if __name__ == "__main__":
    os.chdir(PROJECT_ROOT)
    OUTPUT_DIR.mkdir(exist_ok=True)
    port = int(os.environ.get("PORT", 5000))
    app.run(host="0.0.0.0", port=port, debug=False, threaded=True)
