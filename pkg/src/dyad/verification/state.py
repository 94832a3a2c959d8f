import sys
from functools import lru_cache
from typing import (
    Annotated,
    Any,
    Literal,
    cast,
    get_type_hints,
)

if sys.version_info >= (3, 11):
    from typing import NotRequired, TypedDict
else:
    from typing_extensions import NotRequired, TypedDict

__all__ = [
    "CheckRecord",
    "VerificationReport",
    "apply_update",
    "merge_checks",
    "report_passed",
]


class CheckRecord(TypedDict):
    """Outcome of one acceptance check.

    Attributes:
        name: Identifier of the check, also the name of its description file
        status: passed, failed, or error when the check raised
        measured: Worst deviation observed
        tolerance: Largest deviation that still passes
        description: One-line summary shown in the report
        detail: Optional extra context (error message, peak location, ...)
    """

    name: str
    status: Literal["passed", "failed", "error"]
    measured: float
    tolerance: float
    description: str
    detail: NotRequired[str]


def merge_checks(
    left: dict[str, CheckRecord] | None, right: dict[str, CheckRecord] | None
) -> dict[str, CheckRecord]:
    """Merge two check dictionaries, with right side taking precedence.

    Args:
        left: Checks recorded so far
        right: New or re-run checks

    Returns:
        Merged dictionary with right values overriding left values
    """
    if left is None:
        return dict(right or {})
    elif right is None:
        return dict(left)
    else:
        return {**left, **right}


class VerificationReport(TypedDict):
    """Acceptance suite result.

    - level: quick or full
    - checks: Check records keyed by name, combined with ``merge_checks``
    - elapsed: Wall-clock seconds
    """

    level: Literal["quick", "full"]
    checks: Annotated[dict[str, CheckRecord], merge_checks]
    elapsed: NotRequired[float]


def report_passed(report: VerificationReport) -> bool:
    checks = report["checks"]
    return bool(checks) and all(
        record["status"] == "passed" for record in checks.values()
    )


@lru_cache(maxsize=1)
def _report_hints() -> dict[str, Any]:
    return get_type_hints(VerificationReport, include_extras=True)


def apply_update(
    report: VerificationReport, update: dict[str, Any]
) -> VerificationReport:
    """Fold ``update`` into ``report``.

    Fields annotated with a reducer are combined through it; the rest are
    overwritten.
    """
    hints = _report_hints()
    merged: dict[str, Any] = dict(report)
    for key, value in update.items():
        reducer = next(
            (
                meta
                for meta in getattr(hints.get(key), "__metadata__", ())
                if callable(meta)
            ),
            None,
        )
        merged[key] = value if reducer is None else reducer(merged.get(key), value)
    return cast(VerificationReport, merged)
