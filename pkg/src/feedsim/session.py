"""A session binds one controller to a simulated clock and a sensor source,
logs every telemetry frame, and runs scripted scenarios deterministically.

Both the CLI scenario driver and the HTTP service run on top of this; the
service adds transport, nothing else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .commands import Command, describe
from .controller import (
    ControllerState,
    FeedingController,
    Menu,
    TelemetryFrame,
)
from .hwsim import SENSOR_MAX_MM, SensorReading, SensorTrace, sensor_at
from .model import RobotModel
from .parser import Lexicon, NoMatch, parse

TELEMETRY_HEADER = "t,state,q1,q2,q3,q4,q5,x,y,z,distance_mm,present,command"


@dataclass
class SessionConfig:
    model_path: str | Path
    menu_path: str | Path
    trace_path: str | Path | None = None  # None = manual sensor mode
    clock: str = "fast"                   # "fast" | "realtime"
    seed: int = 0
    dt: float = 0.02

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.clock not in ("fast", "realtime"):
            raise ValueError(f"unknown clock mode {self.clock!r}")
        for p in (self.model_path, self.menu_path, self.trace_path):
            if p is not None and not Path(p).is_file():
                raise FileNotFoundError(f"config file not found: {p}")


class Session:
    """Owns the controller and the simulated clock. Not thread-safe by
    itself; the service serializes access around it."""

    def __init__(self, cfg: SessionConfig):
        self.cfg = cfg
        self.model = RobotModel.from_json(cfg.model_path)
        self.menu = Menu.from_json(cfg.menu_path)
        self.controller = FeedingController(self.model, self.menu, seed=cfg.seed)
        self.lexicon = Lexicon.from_menu(self.menu)
        self.trace = (
            SensorTrace.from_csv(cfg.trace_path) if cfg.trace_path else None
        )
        self.dt = cfg.dt
        self.tick = 0
        self.frames: list[TelemetryFrame] = []
        self.events: list[dict] = []

    @property
    def now(self) -> float:
        return self.tick * self.dt

    def _sensor(self, t: float) -> SensorReading:
        thr = self.menu.timing.presence_threshold_mm
        if self.trace is not None:
            return sensor_at(self.trace, t, threshold=thr)
        return SensorReading(t=t, distance=SENSOR_MAX_MM, present=False)

    def step(self) -> TelemetryFrame:
        self.tick += 1
        frame = self.controller.step(self.now, self._sensor(self.now))
        self.frames.append(frame)
        return frame

    def run_until(self, t_end: float) -> None:
        while self.now + self.dt <= t_end + 1e-9:
            self.step()

    def submit(self, cmd: Command) -> tuple[bool, str]:
        accepted, reason = self.controller.submit(cmd, t_submit=self.now)
        self.events.append(
            {"t": self.now, "command": describe(cmd), "accepted": accepted, "reason": reason}
        )
        return accepted, reason

    def submit_transcript(self, text: str) -> dict:
        """Parse then submit; returns heard/matched/accepted for the UI."""
        result = parse(text, self.lexicon)
        out = {"heard": text, "t": self.now}
        if isinstance(result, NoMatch):
            out.update(
                matched=None,
                accepted=False,
                reason=result.reason,
                best_candidate=result.best_candidate,
                distance=result.distance,
            )
        else:
            accepted, reason = self.submit(result)
            out.update(matched=describe(result), accepted=accepted, reason=reason)
        self.events.append({"t": self.now, "transcript": text, **out})
        return out

    # -- export --------------------------------------------------------------

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as f:
            f.write(self.csv_text())

    def csv_text(self) -> str:
        lines = [TELEMETRY_HEADER]
        for fr in self.frames:
            lines.append(frame_csv_row(fr))
        return "\n".join(lines) + "\n"


def frame_csv_row(fr: TelemetryFrame) -> str:
    cols = [f"{fr.t:.6f}", fr.state.value]
    cols += [f"{v:.6f}" for v in fr.q]
    cols += [f"{v:.6f}" for v in fr.ee]
    cols += [f"{fr.sensor.distance:.6f}", "1" if fr.sensor.present else "0"]
    cols.append(describe(fr.active_command))
    return ",".join(cols)


def frame_to_dict(fr: TelemetryFrame) -> dict:
    return {
        "t": fr.t,
        "state": fr.state.value,
        "q": [float(v) for v in fr.q],
        "ee": {"x": float(fr.ee[0]), "y": float(fr.ee[1]), "z": float(fr.ee[2])},
        "sensor": {
            "t": fr.sensor.t,
            "distance_mm": fr.sensor.distance,
            "present": fr.sensor.present,
        },
        "command": describe(fr.active_command),
    }


# -- scripted scenarios -------------------------------------------------------


@dataclass
class ScenarioResult:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    assert_failures: list[str] = field(default_factory=list)
    final_state: str = ""
    serves_completed: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.assert_failures


def run_scenario(scenario_path: str | Path, cfg: SessionConfig) -> tuple[Session, ScenarioResult]:
    """Run a timed event script (transcript / sensor / assert events) on the
    fast clock. Safety invariants are checked on every emitted frame."""
    with open(scenario_path) as f:
        doc = yaml.safe_load(f)
    duration = float(doc.get("duration", 60.0))
    events = sorted(doc.get("events", []), key=lambda e: float(e["t"]))

    session = Session(cfg)
    # Scenario sensor events override any trace: they form a manual drive.
    distance = SENSOR_MAX_MM
    session.trace = None
    result = ScenarioResult()

    thr = session.menu.timing.presence_threshold_mm
    lo, hi = session.model.limits_lo, session.model.limits_hi
    prev_frame: TelemetryFrame | None = None
    ev_idx = 0

    def apply_event(ev: dict) -> None:
        nonlocal distance
        kind = ev["kind"]
        if kind == "transcript":
            session.submit_transcript(str(ev["payload"]))
        elif kind == "sensor":
            distance = float(ev["payload"])
        elif kind == "assert":
            _check_assert(ev["payload"], session, result)
        else:
            raise ValueError(f"unknown scenario event kind {kind!r}")

    n_ticks = int(round(duration / session.dt))
    for _ in range(n_ticks):
        t_next = (session.tick + 1) * session.dt
        while ev_idx < len(events) and float(events[ev_idx]["t"]) <= t_next + 1e-9:
            apply_event(events[ev_idx])
            ev_idx += 1
        session.tick += 1
        reading = SensorReading(session.now, distance, distance < thr)
        frame = session.controller.step(session.now, reading)
        session.frames.append(frame)

        if not ((frame.q >= lo - 1e-9).all() and (frame.q <= hi + 1e-9).all()):
            result.violations.append(f"t={frame.t:.2f}: joint limits violated")
        if (
            prev_frame is not None
            and prev_frame.state is ControllerState.PRESENTING
            and prev_frame.sensor.present
            and frame.state is ControllerState.PRESENTING
            and not (frame.q == prev_frame.q).all()
        ):
            result.violations.append(f"t={frame.t:.2f}: moved during presence hold")
        prev_frame = frame

    for ev in events[ev_idx:]:
        if ev["kind"] == "assert":
            _check_assert(ev["payload"], session, result)

    result.final_state = session.controller.state.value
    result.serves_completed = session.controller.serves_completed
    if session.controller.state is ControllerState.PRESENTING:
        result.warnings.append("session ended while still presenting")
    return session, result


def _check_assert(payload: dict, session: Session, result: ScenarioResult) -> None:
    if "state" in payload:
        want = payload["state"]
        got = session.controller.state.value
        if got != want:
            result.assert_failures.append(
                f"t={session.now:.2f}: expected state {want}, got {got}"
            )
    if "min_serves" in payload:
        want = int(payload["min_serves"])
        got = session.controller.serves_completed
        if got < want:
            result.assert_failures.append(
                f"t={session.now:.2f}: expected >= {want} completed serves, got {got}"
            )


def write_events_json(session: Session, path: str | Path) -> None:
    with open(path, "w") as f:
        json.dump(session.events, f, indent=2)
