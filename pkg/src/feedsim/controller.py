"""Feeding controller: a tick-driven state machine sequencing
scoop -> transit -> present -> return moves, with the presence hold rule
and stop/emergency semantics. All timing runs on a simulated clock.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .commands import Command, EmergencyStop, PresenceOverride, Serve, Stop
from .hwsim import DEFAULT_PRESENCE_THRESHOLD_MM, SensorReading
from .kinematics import fk_position_only
from .model import RobotModel, as_joint_vector
from .trajectory import Segment, plan_segment


class ControllerError(RuntimeError):
    pass


class ControllerState(Enum):
    IDLE = "Idle"
    MOVING_TO_SCOOP = "MovingToScoop"
    SCOOPING = "Scooping"
    MOVING_TO_MOUTH = "MovingToMouth"
    PRESENTING = "Presenting"
    RETURNING = "Returning"
    HALTED = "Halted"


MOVING_STATES = {
    ControllerState.MOVING_TO_SCOOP,
    ControllerState.MOVING_TO_MOUTH,
    ControllerState.RETURNING,
}

BUSY_STATES = {
    ControllerState.MOVING_TO_SCOOP,
    ControllerState.SCOOPING,
    ControllerState.MOVING_TO_MOUTH,
    ControllerState.PRESENTING,
    ControllerState.RETURNING,
}


@dataclass(frozen=True)
class FoodSlot:
    name: str
    synonyms: list[str]
    scoop_q: np.ndarray
    approach_q: np.ndarray


@dataclass
class TimingConfig:
    presence_threshold_mm: float = DEFAULT_PRESENCE_THRESHOLD_MM
    clear_debounce: float = 1.5   # seconds of continuous absence before returning
    min_present_time: float = 2.0
    scoop_dwell: float = 1.0
    delay_min: float = 0.93       # command processing latency window, seconds
    delay_max: float = 1.13
    dt: float = 0.02
    speed_scale: float = 1.0


@dataclass
class Menu:
    slots: dict[str, FoodSlot]
    mouth_q: np.ndarray
    idle_q: np.ndarray
    timing: TimingConfig = field(default_factory=TimingConfig)
    workspace_box: dict[str, list[float]] | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> "Menu":
        slots: dict[str, FoodSlot] = {}
        for s in doc["slots"]:
            name = s["name"]
            if name in slots:
                raise ControllerError(f"duplicate slot name: {name!r}")
            slots[name] = FoodSlot(
                name=name,
                synonyms=list(s.get("synonyms", [])),
                scoop_q=as_joint_vector(s["scoop_q"]),
                approach_q=as_joint_vector(s["approach_q"]),
            )
        timing = TimingConfig(**doc.get("timing", {}))
        return cls(
            slots=slots,
            mouth_q=as_joint_vector(doc["mouth_q"]),
            idle_q=as_joint_vector(doc["idle_q"]),
            timing=timing,
            workspace_box=doc.get("workspace_box"),
        )

    @classmethod
    def from_json(cls, path: str | Path) -> "Menu":
        with open(path) as f:
            return cls.from_dict(json.load(f))

    def validate(self, model: RobotModel) -> None:
        """Limit and reachability checks for every configured pose."""
        for q, what in [(self.mouth_q, "mouth_q"), (self.idle_q, "idle_q")]:
            if not model.within_limits(q):
                raise ControllerError(f"{what} outside joint limits")
        for slot in self.slots.values():
            for q, what in [(slot.scoop_q, "scoop_q"), (slot.approach_q, "approach_q")]:
                if not model.within_limits(q):
                    raise ControllerError(f"{slot.name}.{what} outside joint limits")
            if self.workspace_box is not None:
                ee = fk_position_only(model, slot.scoop_q)
                for axis, val in zip("xyz", ee):
                    lo, hi = self.workspace_box[axis]
                    if not lo <= val <= hi:
                        raise ControllerError(
                            f"{slot.name}.scoop_q end effector {axis}={val:.3f} "
                            f"outside workspace box [{lo}, {hi}]"
                        )


@dataclass(frozen=True)
class TelemetryFrame:
    t: float
    state: ControllerState
    q: np.ndarray
    ee: np.ndarray
    sensor: SensorReading
    active_command: Command | None


class _Chain:
    """A run of segments executed back to back from a fixed start time."""

    def __init__(self, segments: list[Segment], start: float):
        self.segments = segments
        self.start = start
        self.total = sum(s.duration for s in segments)

    def q_at(self, now: float) -> np.ndarray:
        elapsed = now - self.start
        for seg in self.segments:
            if elapsed <= seg.duration:
                return seg.q_at(elapsed)
            elapsed -= seg.duration
        return self.segments[-1].q_end.copy()

    def done(self, now: float) -> bool:
        return now - self.start >= self.total

    @property
    def end_time(self) -> float:
        return self.start + self.total


class FeedingController:
    """Single logical state machine. step() and submit() must be called
    from one writer; emitted frames are immutable values."""

    def __init__(self, model: RobotModel, menu: Menu, seed: int = 0):
        menu.validate(model)
        self.model = model
        self.menu = menu
        self.timing = menu.timing
        self.rng = random.Random(seed)
        self.state = ControllerState.IDLE
        self.q = menu.idle_q.copy()
        self.last_t: float | None = None
        self.presence_override: bool | None = None
        self.serves_completed = 0
        self._pending_serve: tuple[float, Serve] | None = None
        self._stop_requested = False
        self._estop_requested = False
        self._active: Serve | None = None
        self._chain: _Chain | None = None
        self._scoop_until = 0.0
        self._present_start = 0.0
        self._absent_since: float | None = None
        self._episode_presented = False

    # -- command intake ----------------------------------------------------

    def submit(self, cmd: Command, t_submit: float | None = None) -> tuple[bool, str]:
        """Queue a command for the next tick; never moves the arm directly.
        Returns (accepted, reason)."""
        if t_submit is None:
            t_submit = self.last_t if self.last_t is not None else 0.0
        if isinstance(cmd, Serve):
            if cmd.slot not in self.menu.slots:
                return False, f"unknown slot {cmd.slot!r}"
            if self.state is not ControllerState.IDLE or self._pending_serve:
                return False, "busy"
            delay = self.rng.uniform(self.timing.delay_min, self.timing.delay_max)
            self._pending_serve = (t_submit + delay, cmd)
            return True, "queued"
        if isinstance(cmd, Stop):
            self._stop_requested = True
            return True, "queued"
        if isinstance(cmd, EmergencyStop):
            self._estop_requested = True
            return True, "queued"
        if isinstance(cmd, PresenceOverride):
            self.presence_override = cmd.present
            return True, "applied"
        return False, f"unknown command {cmd!r}"

    def reset(self) -> None:
        if self.state not in (ControllerState.HALTED, ControllerState.IDLE):
            raise ControllerError("reset rejected while moving")
        self.state = ControllerState.IDLE
        self.q = self.menu.idle_q.copy()
        self._pending_serve = None
        self._stop_requested = False
        self._estop_requested = False
        self._active = None
        self._chain = None

    # -- tick --------------------------------------------------------------

    def step(self, now: float, sensor: SensorReading) -> TelemetryFrame:
        if self.last_t is not None and now <= self.last_t:
            raise ControllerError(f"time regression: {now} <= {self.last_t}")
        if self.last_t is None and now < 0:
            raise ControllerError(f"negative start time: {now}")

        present = sensor.present
        if self.presence_override is not None:
            present = self.presence_override
            sensor = SensorReading(sensor.t, sensor.distance, present)

        if self._estop_requested:
            self._halt()
        elif self._stop_requested:
            self._stop_requested = False
            self._pending_serve = None
            if self.state in BUSY_STATES and self.state is not ControllerState.RETURNING:
                self._begin_return(now)
        elif (
            self._pending_serve
            and self.state is ControllerState.IDLE
            and now >= self._pending_serve[0]
        ):
            ready, cmd = self._pending_serve
            self._pending_serve = None
            self._active = cmd
            slot = self.menu.slots[cmd.slot]
            self._episode_presented = False
            self._start_chain(
                ControllerState.MOVING_TO_SCOOP,
                [self.q, slot.approach_q, slot.scoop_q],
                ready,
            )

        self._advance(now, present)

        self.q.setflags(write=False)
        frame = TelemetryFrame(
            t=now,
            state=self.state,
            q=self.q,
            ee=fk_position_only(self.model, self.q),
            sensor=sensor,
            active_command=self._active,
        )
        self.last_t = now
        return frame

    # -- internals ----------------------------------------------------------

    def _halt(self) -> None:
        self.state = ControllerState.HALTED
        self._estop_requested = False
        self._stop_requested = False
        self._pending_serve = None
        self._active = None
        self._chain = None

    def _start_chain(self, state: ControllerState, waypoints: list, start: float) -> None:
        segs = [
            plan_segment(self.model, a, b, self.timing.speed_scale)
            for a, b in zip(waypoints, waypoints[1:])
        ]
        self._chain = _Chain(segs, start)
        self.state = state

    def _begin_return(self, now: float) -> None:
        self._start_chain(ControllerState.RETURNING, [self.q.copy(), self.menu.idle_q], now)

    def _advance(self, now: float, present: bool) -> None:
        st = self.state
        if st in (ControllerState.IDLE, ControllerState.HALTED):
            return

        if st is ControllerState.MOVING_TO_SCOOP:
            self.q = self._chain.q_at(now)
            if self._chain.done(now):
                slot = self.menu.slots[self._active.slot]
                self.q = slot.scoop_q.copy()
                self._scoop_until = self._chain.end_time + self.timing.scoop_dwell
                self._chain = None
                self.state = ControllerState.SCOOPING
        elif st is ControllerState.SCOOPING:
            slot = self.menu.slots[self._active.slot]
            self.q = slot.scoop_q.copy()
            if now >= self._scoop_until:
                self._start_chain(
                    ControllerState.MOVING_TO_MOUTH,
                    [slot.scoop_q, slot.approach_q, self.menu.mouth_q],
                    self._scoop_until,
                )
                self.q = self._chain.q_at(now)
        elif st is ControllerState.MOVING_TO_MOUTH:
            self.q = self._chain.q_at(now)
            if self._chain.done(now):
                self.q = self.menu.mouth_q.copy()
                self._present_start = self._chain.end_time
                self._absent_since = None
                self._episode_presented = True
                self._chain = None
                self.state = ControllerState.PRESENTING
        elif st is ControllerState.PRESENTING:
            self.q = self.menu.mouth_q.copy()
            if present:
                self._absent_since = None
            elif self._absent_since is None:
                self._absent_since = now
            if (
                now - self._present_start >= self.timing.min_present_time
                and self._absent_since is not None
                and now - self._absent_since >= self.timing.clear_debounce
            ):
                self._begin_return(now)
        elif st is ControllerState.RETURNING:
            self.q = self._chain.q_at(now)
            if self._chain.done(now):
                self.q = self.menu.idle_q.copy()
                self._chain = None
                if self._active is not None and self._episode_presented:
                    self.serves_completed += 1
                self._active = None
                self.state = ControllerState.IDLE
