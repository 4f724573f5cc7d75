"""Realization bundles and catalog records as JSON text."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .actions import hat_text, orbit_key
from .matrices import Matrix
from .params import ParameterArray, QRacahTuple
from .realize import LeonardRealization
from .scalars import ParseError

EPOCH = "1970-01-01T00:00:00Z"


def bundle_to_json(r: LeonardRealization, idempotents: bool = False) -> dict:
    t = r.tuple
    out = {
        "tuple": t.to_json(),
        "parameter_array": r.params.to_json(t.field),
        "A": r.A.to_json(),
        "A_star": r.A_star.to_json(),
        "A_eps": r.A_eps.to_json(),
        "M": r.M.to_json(),
    }
    if idempotents:
        out["idempotents"] = {
            "E": [X.to_json() for X in r.E],
            "E_star": [X.to_json() for X in r.E_star],
            "E_eps": [X.to_json() for X in (r.E_eps or ())],
        }
    return out


def bundle_from_json(obj):
    """Returns (tuple, parameter array, A, A*, A^eps, M) from a bundle object."""
    if not isinstance(obj, dict):
        raise ParseError("bundle must be an object")
    try:
        t = QRacahTuple.from_json(obj["tuple"])
        fld = t.field
        p = ParameterArray.from_json(obj["parameter_array"], fld)
        mats = [Matrix.from_json(obj[k], fld) for k in ("A", "A_star", "A_eps", "M")]
    except KeyError as exc:
        raise ParseError(f"bundle missing {exc.args[0]!r}") from None
    n = t.d + 1
    if any(X.dim != n for X in mats):
        raise ParseError(f"bundle matrices must be {n}x{n}")
    return (t, p, *mats)


@dataclass(frozen=True)
class CatalogRecord:
    tuple: dict
    hat: str
    orbit_key: str
    verified: bool
    timestamp: str
    count: int | None = None

    @classmethod
    def for_tuple(cls, t: QRacahTuple, verified: bool, timestamp: str, count=None):
        return cls(t.to_json(), hat_text(t), orbit_key(t), verified, timestamp, count)

    def to_json(self):
        out = {"tuple": self.tuple, "hat": self.hat, "orbit_key": self.orbit_key,
               "verified": self.verified, "timestamp": self.timestamp}
        if self.count is not None:
            out["count"] = self.count
        return out

    def line(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, separators=(",", ":"))


def append_lines(path, lines):
    """Append whole lines, flushing and syncing after each so no record is left half-written."""
    with open(path, "a", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())
