"""Command vocabulary shared by the parser, controller, and service."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Serve:
    slot: str


@dataclass(frozen=True)
class Stop:
    pass


@dataclass(frozen=True)
class EmergencyStop:
    pass


@dataclass(frozen=True)
class PresenceOverride:
    present: bool


Command = Union[Serve, Stop, EmergencyStop, PresenceOverride]


def describe(cmd: Command | None) -> str:
    """Stable one-token rendering used in telemetry CSV and JSON."""
    if cmd is None:
        return ""
    if isinstance(cmd, Serve):
        return f"serve:{cmd.slot}"
    if isinstance(cmd, Stop):
        return "stop"
    if isinstance(cmd, EmergencyStop):
        return "emergency_stop"
    if isinstance(cmd, PresenceOverride):
        return f"presence:{'on' if cmd.present else 'off'}"
    raise TypeError(f"unknown command: {cmd!r}")
