"""Verification reports: ordered lists of named checks with exact witnesses."""

import json
from dataclasses import dataclass, field


@dataclass
class Check:
    check_id: str
    anchor: str
    passed: bool
    witness: dict = field(default_factory=dict)

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
            "witness": {k: str(v) for k, v in self.witness.items()},
        }


class VerificationReport:
    """Outcome of a suite. status is pass iff every check passed."""

    def __init__(self, suite, notes=None):
        self.suite = suite
        self.checks = []
        self.notes = list(notes or [])
        self.timing = None

    def add(self, check_id, anchor, passed, **witness):
        self.checks.append(Check(check_id, anchor, bool(passed), witness))
        return bool(passed)

    def expect_zero(self, check_id, anchor, residual, **inputs):
        """Record a check that passes iff residual is zero; the residual is the witness."""
        ok = residual.is_zero() if hasattr(residual, "is_zero") else not residual
        if ok:
            return self.add(check_id, anchor, True)
        return self.add(check_id, anchor, False, residual=residual, **inputs)

    def expect_equal(self, check_id, anchor, lhs, rhs, **inputs):
        if lhs == rhs:
            return self.add(check_id, anchor, True)
        return self.add(check_id, anchor, False, lhs=lhs, rhs=rhs, **inputs)

    def note(self, text):
        self.notes.append(text)

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.check_id, c.anchor, c.passed, c.witness))
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.passed

    def summary(self):
        """Collapse repeated check ids into counts, keeping first failure witnesses."""
        order = []
        agg = {}
        for c in self.checks:
            if c.check_id not in agg:
                order.append(c.check_id)
                agg[c.check_id] = {"anchor": c.anchor, "runs": 0, "failed": 0, "witness": None}
            a = agg[c.check_id]
            a["runs"] += 1
            if not c.passed:
                a["failed"] += 1
                if a["witness"] is None:
                    a["witness"] = c.witness
        return [(cid, agg[cid]) for cid in order]

    def to_dict(self):
        out = {
            "suite": self.suite,
            "status": self.status,
            "checks": [
                {
                    "check_id": cid,
                    "anchor": a["anchor"],
                    "status": "fail" if a["failed"] else "pass",
                    "runs": a["runs"],
                    "failed": a["failed"],
                    "witness": {k: str(v) for k, v in (a["witness"] or {}).items()},
                }
                for cid, a in self.summary()
            ],
            "notes": self.notes,
        }
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 3)
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_text(self):
        lines = [f"suite: {self.suite}", f"status: {self.status}"]
        for cid, a in self.summary():
            status = "fail" if a["failed"] else "pass"
            lines.append(f"check: {cid} status={status} runs={a['runs']} failed={a['failed']} anchor={a['anchor']}")
            for k, v in (a["witness"] or {}).items():
                lines.append(f"  witness.{k}: {v}")
        for n in self.notes:
            lines.append(f"note: {n}")
        if self.timing is not None:
            lines.append(f"timing_seconds: {self.timing:.3f}")
        return "\n".join(lines)

    def __repr__(self):
        return f"VerificationReport({self.suite!r}, {self.status}, {len(self.checks)} checks)"
