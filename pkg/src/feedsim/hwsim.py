"""Emulated periphery: the infrared distance sensor (scripted traces or
manual driving) and the serial text link that carries transcripts.

The physical pin wiring of both devices is documented in docs/wiring.md;
there is no GPIO here, only behavior.
"""

from __future__ import annotations

import csv
import heapq
from bisect import bisect_right
from dataclasses import dataclass, field
from pathlib import Path

SENSOR_MAX_MM = 10_000.0  # "nothing in range" sentinel
DEFAULT_PRESENCE_THRESHOLD_MM = 150.0
MAX_FRAME_BYTES = 256


class HwSimError(ValueError):
    pass


@dataclass(frozen=True)
class SensorReading:
    t: float
    distance: float  # millimeters
    present: bool


@dataclass
class SensorTrace:
    """Scripted distance-vs-time events; immutable after load."""

    events: list[tuple[float, float]]

    def __post_init__(self):
        last_t = None
        for t, dist in self.events:
            if dist < 0:
                raise HwSimError(f"negative distance at t={t}: {dist}")
            if last_t is not None and t <= last_t:
                raise HwSimError(f"event times must strictly increase (t={t})")
            last_t = t
        self._times = [t for t, _ in self.events]

    @property
    def end_time(self) -> float:
        return self.events[-1][0] if self.events else 0.0

    @classmethod
    def from_csv(cls, path: str | Path) -> "SensorTrace":
        with open(path, newline="") as f:
            reader = csv.reader(f)
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != ["t", "distance_mm"]:
                raise HwSimError(f"{path}: expected header 't,distance_mm'")
            events = [(float(row[0]), float(row[1])) for row in reader if row]
        return cls(events)


def sensor_at(
    trace: SensorTrace,
    t: float,
    threshold: float = DEFAULT_PRESENCE_THRESHOLD_MM,
    max_distance: float = SENSOR_MAX_MM,
) -> SensorReading:
    """Zero-order hold of the most recent event at or before t; before the
    first event the sensor reports the out-of-range sentinel."""
    if t < 0:
        raise HwSimError(f"sensor time must be >= 0, got {t}")
    idx = bisect_right(trace._times, t) - 1
    distance = trace.events[idx][1] if idx >= 0 else max_distance
    return SensorReading(t=t, distance=distance, present=distance < threshold)


@dataclass(order=True)
class _Pending:
    ready_at: float
    seq: int
    frame: str = field(compare=False)


class SerialLine:
    """One direction of the emulated serial text channel: newline-framed
    UTF-8 with fixed per-frame latency and strict FIFO delivery."""

    def __init__(self, latency: float = 0.0):
        if latency < 0:
            raise HwSimError(f"latency must be >= 0, got {latency}")
        self.latency = latency
        self._heap: list[_Pending] = []
        self._seq = 0

    def send(self, frame: str, t_now: float) -> float:
        """Queue a frame; returns the time it becomes readable."""
        if "\n" in frame:
            raise HwSimError("frame contains an embedded newline")
        if len(frame.encode("utf-8")) > MAX_FRAME_BYTES:
            raise HwSimError(f"frame exceeds {MAX_FRAME_BYTES} bytes")
        ready = t_now + self.latency
        heapq.heappush(self._heap, _Pending(ready, self._seq, frame))
        self._seq += 1
        return ready

    def poll(self, t_now: float) -> list[str]:
        """Frames that have arrived by t_now, in send order, each exactly once."""
        out = []
        while self._heap and self._heap[0].ready_at <= t_now:
            out.append(heapq.heappop(self._heap).frame)
        return out
