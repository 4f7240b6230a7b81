"""
Run Event Contracts
===================
Typed events passed from construction and FER sweeps to whoever watches
the run (the CLI progress bars, tests):

    ProgressEvent  fraction done of one stage (a sweep point, construction)
    PointEvent     one sweep point finished, with its final counts
    StateEvent     run lifecycle transition
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Callable, Optional, Union


class EventType(str, Enum):
    PROGRESS = "progress"
    POINT = "point"
    STATE = "state"


class RunState(str, Enum):
    IDLE = "idle"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class ProgressEvent:
    event_type: EventType
    timestamp: str
    stage: str
    progress: float
    message: str


@dataclass(frozen=True)
class PointEvent:
    """
    A finished Eb/N0 point.

    Attributes:
        stage: Stage label used by the point's progress events
        ebn0_db: Eb/N0 of the point
        frames: Frames simulated
        errors: Frame errors, decode failures included
        failures: Frames whose decode raised a failure
    """
    event_type: EventType
    timestamp: str
    stage: str
    ebn0_db: float
    frames: int
    errors: int
    failures: int

    @property
    def fer(self) -> float:
        return self.errors / self.frames if self.frames else 0.0


@dataclass(frozen=True)
class StateEvent:
    event_type: EventType
    timestamp: str
    state: RunState
    run_id: str
    message: str = ""


RunEvent = Union[ProgressEvent, PointEvent, StateEvent]
EventCallback = Optional[Callable[[RunEvent], None]]


def make_progress_event(stage: str, progress: float, message: str = "") -> ProgressEvent:
    """Create a progress event with progress clamped to [0, 1]."""
    return ProgressEvent(
        event_type=EventType.PROGRESS,
        timestamp=_now_iso(),
        stage=stage,
        progress=max(0.0, min(1.0, progress)),
        message=message,
    )


def make_point_event(stage: str, ebn0_db: float, frames: int, errors: int, failures: int = 0) -> PointEvent:
    return PointEvent(
        event_type=EventType.POINT,
        timestamp=_now_iso(),
        stage=stage,
        ebn0_db=float(ebn0_db),
        frames=int(frames),
        errors=int(errors),
        failures=int(failures),
    )


def make_state_event(state: RunState, run_id: str, message: str = "") -> StateEvent:
    return StateEvent(
        event_type=EventType.STATE,
        timestamp=_now_iso(),
        state=state,
        run_id=run_id,
        message=message,
    )


def emit(callback: EventCallback, event: RunEvent) -> None:
    """Deliver an event if a callback is registered."""
    if callback is not None:
        callback(event)
