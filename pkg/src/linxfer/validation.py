"""Input coercion and checks shared by the drivers and estimators."""
from __future__ import annotations

import json
from pathlib import Path

from .problems import IsingInstance, load_instance
from .schedules import LinearParams, Schedule
from .simulator import CONVENTIONS


def check_instance(X) -> IsingInstance:
    """Accept an instance, its dict form, or a path to its JSON file."""
    if isinstance(X, IsingInstance):
        return X
    if isinstance(X, dict):
        return IsingInstance.from_dict(X)
    if isinstance(X, (str, Path)):
        return load_instance(X)
    raise TypeError(f"expected an IsingInstance, dict or path, got {type(X).__name__}")


def check_p(p, name: str = "p") -> int:
    if isinstance(p, bool) or int(p) != p or p < 1:
        raise ValueError(f"{name} must be a positive integer, got {p!r}")
    return int(p)


def check_convention(convention: str) -> str:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    return convention


def check_schedule(obj) -> Schedule:
    """Accept a Schedule, a ``{"gammas", "betas"}`` dict, a report dict, or a JSON path."""
    if isinstance(obj, Schedule):
        return obj
    if isinstance(obj, (str, Path)):
        obj = json.loads(Path(obj).read_text(encoding="utf-8"))
    if isinstance(obj, dict):
        if "schedule" in obj:
            obj = obj["schedule"]
        return Schedule.from_dict(obj)
    raise TypeError(f"cannot interpret {type(obj).__name__} as a schedule")


def check_linear_params(obj) -> LinearParams:
    if isinstance(obj, LinearParams):
        return obj
    if isinstance(obj, (str, Path)):
        obj = json.loads(Path(obj).read_text(encoding="utf-8"))
    if isinstance(obj, dict):
        return LinearParams.from_dict(obj)
    return LinearParams.from_array(obj)
