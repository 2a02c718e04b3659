"""Machine-readable pass/fail records produced by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    identity: str
    mu: tuple = ()
    status: str = "pass"
    S: tuple | None = None
    witness: object = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        out = {"identity": self.identity, "mu": list(self.mu), "status": self.status}
        if self.S is not None:
            out["S"] = list(self.S)
        out["witness"] = _jsonable(self.witness)
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def check(identity, mu, ok, S=None, witness=None, **details):
    return Report(
        identity=identity,
        mu=tuple(mu),
        status="pass" if ok else "fail",
        S=tuple(S) if S is not None else None,
        witness=None if ok else witness,
        details=details,
    )


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)
