"""Exact verification engine for multiplicative functions preserving sums of three squares."""

from fractions import Fraction

from ._core import (
    __version__,
    check,
    class_tag,
    classify,
    hurwitz_exceptions,
    isqrt,
    representations,
    run,
    search,
    verify,
    verify_hurwitz,
)

__all__ = [
    "__version__",
    "check",
    "class_tag",
    "classify",
    "hurwitz_exceptions",
    "isqrt",
    "representations",
    "run",
    "search",
    "values",
    "verify",
    "verify_hurwitz",
]


def values(result):
    """Value table of a verify() result with Fraction values."""
    return {n: Fraction(v) for n, v in result["values"].items()}
