"""Machine-readable verdict objects emitted by every checker."""
import json
from dataclasses import dataclass, field
from fractions import Fraction

PASS = "pass"
FAIL = "fail"


def fmt_rational(x):
    """Exact string form of a rational: ``"3"``, ``"-3/2"``; None stays None."""
    if x is None:
        return None
    return str(Fraction(x))


def parse_rational(s):
    return None if s is None else Fraction(s)


def to_jsonable(obj):
    """Recursively replace Fractions by exact strings and tuples by lists."""
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


@dataclass
class Report:
    """Verdict of one check.

    ``witness`` is an offending (or extremal) term and ``valid_level`` the
    level up to which the verdict is guaranteed.  ``details`` carries
    check-specific extras.
    """

    check: str
    target: str
    verdict: str
    witness: dict = None
    valid_level: Fraction = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.verdict == PASS

    def __bool__(self):
        return self.passed

    def to_dict(self):
        out = {
            "check": self.check,
            "target": self.target,
            "verdict": self.verdict,
            "witness": to_jsonable(self.witness),
            "valid_level": fmt_rational(self.valid_level),
        }
        if self.details:
            out["details"] = to_jsonable(self.details)
        return out

    @classmethod
    def from_dict(cls, data):
        return cls(
            check=data["check"],
            target=data["target"],
            verdict=data["verdict"],
            witness=data.get("witness"),
            valid_level=parse_rational(data.get("valid_level")),
            details=data.get("details", {}),
        )

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def combine(check, target, reports, valid_level=None, details=None):
    """Aggregate report: passes iff every sub-report passes."""
    reports = list(reports)
    failed = [r for r in reports if not r.passed]
    return Report(
        check=check,
        target=target,
        verdict=FAIL if failed else PASS,
        witness=failed[0].witness if failed else None,
        valid_level=valid_level,
        details=dict(details or {}, subchecks=[r.to_dict() for r in reports]),
    )
