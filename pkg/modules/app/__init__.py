"""
Application Module
==================
Run configuration, controller and event contracts behind the CLI.

Key Components:
    - RunController (modules.app.controller): Executes subcommands from a RunConfig
    - RunConfig: Layered run configuration (defaults, file, flags)

The controller is imported from its submodule; the simulation layer
imports the event contracts from here.
"""

from .config import RunConfig, load_config_file, resolve_run_config
from .events import (
    EventType,
    PointEvent,
    ProgressEvent,
    RunEvent,
    RunState,
    StateEvent,
)

__all__ = [
    "RunConfig",
    "load_config_file",
    "resolve_run_config",
    "EventType",
    "PointEvent",
    "ProgressEvent",
    "RunEvent",
    "RunState",
    "StateEvent",
]
