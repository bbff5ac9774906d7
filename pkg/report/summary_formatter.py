"""
结果摘要格式化模块
"""
from core.geometry import format_rational
from sim.trace import OutcomeStatus

STATUS_LABELS = {
    OutcomeStatus.FORMED: "图案形成 ✓",
    OutcomeStatus.QUIESCENT_NOT_FORMED: "静止但未形成 ✗",
    OutcomeStatus.EVENT_BUDGET_EXHAUSTED: "事件预算耗尽 ✗",
    OutcomeStatus.COLLISION: "发生碰撞 ✗",
}


def format_outcome_summary(outcome, classification=None):
    """把运行结果整理成若干行控制台文本。"""
    lines = [
        "=" * 60,
        f"结果：{STATUS_LABELS[outcome.status]}（{outcome.status.value}）",
        f"事件数：{outcome.event_count}",
    ]
    if outcome.status is OutcomeStatus.COLLISION:
        i, j = outcome.collision_pair
        lines.append(f"碰撞：机器人 {i} 与 {j}，t = {format_rational(outcome.collision_time)}")
    if classification is not None:
        lines.append(f"最终配置类别：{getattr(classification, 'value', classification)}")
    lights = {}
    for r in outcome.final_world.robots:
        lights[r.light.value] = lights.get(r.light.value, 0) + 1
    lines.append("灯光分布：" + "，".join(f"{k} × {v}" for k, v in sorted(lights.items())))
    lines.append("=" * 60)
    return lines
