"""Temporal planning with PAD emotion effects."""

from ._core import (
    ParseError,
    PlanSyntaxError,
    Task,
    classify,
    expected_delta,
    generate,
    load,
    plan,
    simulate,
    validate,
)

__all__ = [
    "ParseError",
    "PlanSyntaxError",
    "Task",
    "classify",
    "expected_delta",
    "generate",
    "load",
    "plan",
    "simulate",
    "validate",
]
