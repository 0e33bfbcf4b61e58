"""Verification records shared by the invariant modules and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import INF


def jsonable(value):
    """Integers stay integers; the infinity flag becomes ``"infinite"``; no floats are produced."""
    if value is INF:
        return "infinite"
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    if isinstance(value, float):
        raise TypeError("floating point values are not allowed in reports")
    return str(value)


@dataclass
class Verdict:
    """One checked identity: passes iff both sides are exactly equal."""

    name: str
    lhs: object
    rhs: object
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "status": self.status,
            "details": jsonable(self.details),
        }

    def render(self) -> str:
        if self.passed:
            return f"PASS {self.lhs} = {self.rhs}"
        return f"FAIL {self.lhs} ≠ {self.rhs}"
