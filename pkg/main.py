#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
发光机器人任意图案形成 - 主程序
子命令：run（单次仿真）、batch（多 seed 批量）、verify（配置分类与可解性）、render（轨迹转 SVG 帧）

退出码：0 图案形成；1 解析/校验/运行错误；2 输入不可解；3 碰撞；4 预算耗尽或静止未形成
"""
import argparse
import json
import logging
import os
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor, as_completed

from core import (
    OUTPUT_BASE,
    ScenarioError,
    find_latest_trace,
    format_rational,
    load_config,
    load_scenario,
    parse_scenario,
    safe_print,
)
from core.progress import start_total, write_progress, write_progress_done, write_progress_error
from core.scenario import scenario_to_dict
from core.utils import get_output_subdir
from render import render_trace
from report import (
    TraceFileError,
    batch_row,
    format_outcome_summary,
    save_batch_csv,
    save_trace_jsonl,
)
from sim import OutcomeStatus, PolicyError, SchedulerKind, SchedulerPolicy, Simulator, mirrored_fsync_policy
from verify import UnstableWorldError, check_solvable, classify

EXIT_FORMED = 0
EXIT_ERROR = 1
EXIT_UNSOLVABLE = 2
EXIT_COLLISION = 3
EXIT_NOT_FORMED = 4

PROGRESS_EVERY = 500

EXIT_CODES = {
    OutcomeStatus.FORMED: EXIT_FORMED,
    OutcomeStatus.COLLISION: EXIT_COLLISION,
    OutcomeStatus.EVENT_BUDGET_EXHAUSTED: EXIT_NOT_FORMED,
    OutcomeStatus.QUIESCENT_NOT_FORMED: EXIT_NOT_FORMED,
}


def exit_code_for(outcome):
    return EXIT_CODES[outcome.status]


def load_world(args):
    """读取场景（及可选的独立图案），--mode 给出时覆盖场景中的模式并重新校验。"""
    world = load_scenario(args.scenario, args.pattern)
    if args.mode and args.mode != world.mode.value:
        data = scenario_to_dict(world)
        data["mode"] = args.mode
        world = parse_scenario(json.dumps(data))
    return world


def build_policy(args, world, config, seed=None):
    kind = SchedulerKind(args.scheduler)
    delay = config["max_phase_delay"]
    if kind is SchedulerKind.MIRRORED:
        return mirrored_fsync_policy(world, delay)
    return SchedulerPolicy(kind, seed=seed, max_phase_delay=delay, fairness_window=config["fairness_window"])


def gate_solvable(args, world):
    """镜像调度用于演示不可解输入下的对称不变量，不做可解性拦截。"""
    if args.scheduler == SchedulerKind.MIRRORED.value:
        return None
    result = check_solvable(world)
    if not result.solvable:
        safe_print(f"✗ 初始配置关于不含机器人的水平线 y = {format_rational(result.axis_y)} 对称，单轴一致下不可解")
        return EXIT_UNSOLVABLE
    return None


def final_class(outcome):
    try:
        return classify(outcome.final_world)
    except UnstableWorldError:
        return None


def simulate(world, policy, max_events, on_event=None):
    sim = Simulator(world, policy, max_events=max_events, on_event=on_event)
    return sim.run()


def resolve_max_events(args, config):
    return args.max_events if args.max_events is not None else config["max_events"]


def cmd_run(args, config):
    world = load_world(args)
    code = gate_solvable(args, world)
    if code is not None:
        return code
    policy = build_policy(args, world, config, args.seed)
    max_events = resolve_max_events(args, config)

    safe_print(f"机器人数：{len(world.robots)}，模式：{world.mode.value}，调度：{policy.kind.value}，seed：{policy.seed}")
    seen = [0]

    def on_event(event, _world):
        seen[0] += 1
        if seen[0] % PROGRESS_EVERY == 0:
            write_progress(0, 1, events=seen[0])

    start_total(1)
    try:
        trace, outcome = simulate(world, policy, max_events, on_event)
    except Exception as e:
        write_progress_error([], str(e))
        raise
    write_progress_done([{"seed": policy.seed, "status": outcome.status.value, "events": outcome.event_count}])

    trace_path = args.trace or os.path.join(get_output_subdir("runs"), f"run_{policy.kind.value}_seed{policy.seed}.jsonl")
    save_trace_jsonl(trace, outcome, trace_path)
    for line in format_outcome_summary(outcome, final_class(outcome)):
        safe_print(line)
    safe_print(f"轨迹文件：{trace_path}")

    if args.render:
        frames = render_trace(trace_path, args.render, args.every, args.observer, size=config["svg_size"])
        safe_print(f"已输出 {len(frames)} 帧 SVG 至：{args.render}")
    return exit_code_for(outcome)


def cmd_batch(args, config):
    if args.batch < 1:
        raise ValueError("--batch 必须 >= 1")
    world = load_world(args)
    code = gate_solvable(args, world)
    if code is not None:
        return code
    base = args.seed if args.seed is not None else 0
    seeds = list(range(base, base + args.batch))
    max_events = resolve_max_events(args, config)
    policies = {seed: build_policy(args, world, config, seed) for seed in seeds}

    safe_print(f"批量运行 {len(seeds)} 次（seed {seeds[0]}..{seeds[-1]}），并发 {config['batch_workers']}")
    start_total(len(seeds))
    rows = {}
    outcomes = {}
    completed = []
    try:
        with ThreadPoolExecutor(max_workers=config["batch_workers"]) as executor:
            futures = {executor.submit(simulate, world, policies[seed], max_events): seed for seed in seeds}
            for future in as_completed(futures):
                seed = futures[future]
                trace, outcome = future.result()
                rows[seed] = batch_row(seed, world, trace, outcome)
                outcomes[seed] = outcome
                completed.append({"seed": seed, "status": outcome.status.value, "events": outcome.event_count})
                mark = "✓" if outcome.status is OutcomeStatus.FORMED else "✗"
                safe_print(f"  {mark} seed {seed}: {outcome.status.value}，事件 {outcome.event_count}")
                write_progress(len(completed), len(seeds), completed)
    except Exception as e:
        write_progress_error(completed, str(e))
        raise

    write_progress_done(sorted(completed, key=lambda r: r["seed"]))
    csv_path = args.csv or os.path.join(get_output_subdir("batch"), f"batch_{args.scheduler}_seed{base}_n{len(seeds)}.csv")
    save_batch_csv([rows[s] for s in seeds], csv_path)
    formed = sum(1 for s in seeds if outcomes[s].status is OutcomeStatus.FORMED)
    safe_print(f"形成 {formed}/{len(seeds)}")
    for seed in seeds:
        if outcomes[seed].status is not OutcomeStatus.FORMED:
            return exit_code_for(outcomes[seed])
    return EXIT_FORMED


def cmd_verify(args, config):
    world = load_world(args)
    result = check_solvable(world)
    record = {"class": classify(world).value, "solvable": result.solvable}
    if result.axis_y is not None:
        record["axis_y"] = format_rational(result.axis_y)
    safe_print(json.dumps(record, ensure_ascii=False))
    return EXIT_FORMED


def cmd_render(args, config):
    trace_path = args.trace_path or find_latest_trace()
    if trace_path is None:
        safe_print(f"错误：{OUTPUT_BASE} 下没有轨迹文件，请指定路径")
        return EXIT_ERROR
    out_dir = args.out or get_output_subdir("frames")
    frames = render_trace(str(trace_path), out_dir, args.every, args.observer, size=config["svg_size"])
    if not frames:
        safe_print(f"[警告] 轨迹 {trace_path} 为空，未输出任何帧")
    else:
        safe_print(f"已输出 {len(frames)} 帧 SVG 至：{out_dir}")
    return EXIT_FORMED


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要正整数：{text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"需要正整数：{text!r}")
    return value


def _add_scenario_args(p):
    p.add_argument("scenario", help="场景 JSON 文件路径")
    p.add_argument("--pattern", default=None, help="独立的图案 JSON 文件（覆盖场景内的 pattern）")
    p.add_argument("--mode", choices=["one-axis", "two-axis"], default=None, help="覆盖场景中的方向一致模式")


def _add_sim_args(p):
    p.add_argument("--scheduler", choices=[k.value for k in SchedulerKind], default="async",
                   help="调度方式，默认 async（需要 --seed）")
    p.add_argument("--seed", type=int, default=None, help="随机种子；batch 时为起始 seed")
    p.add_argument("--max-events", type=_positive_int, default=None, help="事件预算，默认取 config.json 或 100000")


def build_parser():
    parser = argparse.ArgumentParser(description="发光机器人任意图案形成：精确有理仿真与判定")
    parser.add_argument("--verbose", "-v", action="store_true", help="输出逐事件调试日志")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="运行单次仿真并写出轨迹")
    _add_scenario_args(p_run)
    _add_sim_args(p_run)
    p_run.add_argument("--trace", default=None, help="轨迹输出路径（JSONL）")
    p_run.add_argument("--render", default=None, metavar="DIR", help="同时输出 SVG 帧到该目录")
    p_run.add_argument("--every", type=int, default=1, help="每 N 个事件输出一帧")
    p_run.add_argument("--observer", type=int, default=None, help="绘制该机器人的可见连线")

    p_batch = sub.add_parser("batch", help="以连续 seed 批量运行并输出 CSV")
    _add_scenario_args(p_batch)
    _add_sim_args(p_batch)
    p_batch.add_argument("--batch", type=int, required=True, help="运行次数")
    p_batch.add_argument("--csv", default=None, help="CSV 输出路径")

    p_verify = sub.add_parser("verify", help="输出配置类别与可解性（JSON）")
    _add_scenario_args(p_verify)

    p_render = sub.add_parser("render", help="把轨迹文件渲染为 SVG 帧")
    p_render.add_argument("trace_path", nargs="?", default=None, help="轨迹文件（默认 output 下最新的 *.jsonl）")
    p_render.add_argument("--out", default=None, help="输出目录")
    p_render.add_argument("--every", type=int, default=1, help="每 N 个事件输出一帧")
    p_render.add_argument("--observer", type=int, default=None, help="绘制该机器人的可见连线")
    return parser


COMMANDS = {
    "run": cmd_run,
    "batch": cmd_batch,
    "verify": cmd_verify,
    "render": cmd_render,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    safe_print("=" * 60)
    safe_print(f"任意图案形成 - {args.command}")
    safe_print("=" * 60)
    try:
        config = load_config()
    except Exception as e:
        safe_print(f"配置错误：{e}")
        return EXIT_ERROR

    try:
        return COMMANDS[args.command](args, config)
    except ScenarioError as e:
        safe_print(f"✗ 场景错误：{e}")
        return EXIT_ERROR
    except TraceFileError as e:
        safe_print(f"✗ 轨迹文件错误：{e}")
        return EXIT_ERROR
    except (PolicyError, ValueError) as e:
        safe_print(f"✗ 参数错误：{e}")
        return EXIT_ERROR
    except OSError as e:
        safe_print(f"✗ 文件错误：{e}")
        return EXIT_ERROR
    except Exception as e:
        safe_print(f"\n运行出错：{e}")
        safe_print(traceback.format_exc())
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
