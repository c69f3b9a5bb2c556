"""Curve fixtures with known offset degrees and the runner that checks them."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .errors import OffsetDegreeError, ValidationError
from .formulas import degree_report, validate_implicit
from .parser import RESERVED, parse_parametrization, parse_polynomial, scan_names
from .polyring import substitute

DEGREE_FIELDS = ("delta1", "delta2", "delta_d")
SCHEMA_VERSION = 1


class FixtureError(ValidationError):
    pass


def default_fixture_path() -> Path:
    return Path(str(resources.files("offsetdeg") / "data" / "offset_table.json"))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    implicit_src: str
    expected: dict
    param_src: Optional[tuple[str, str, str]] = None
    substitutions: dict = field(default_factory=dict)
    source_ambiguity: bool = False
    note: str = ""

    @classmethod
    def from_json(cls, obj) -> "CorpusEntry":
        if not isinstance(obj, dict):
            raise FixtureError(f"fixture entry must be an object, got {type(obj).__name__}")
        for key in ("name", "implicit_src", "expected"):
            if key not in obj:
                raise FixtureError(f"fixture entry is missing {key!r}")
        expected = obj["expected"]
        if not isinstance(expected, dict) or any(
            not isinstance(expected.get(f), int) for f in ("delta1", "delta2")
        ):
            raise FixtureError(f"{obj['name']}: expected must give integer delta1 and delta2")
        param = obj.get("param_src")
        if param is not None:
            try:
                param = (param["x"], param["y"], param["w"])
            except (KeyError, TypeError):
                raise FixtureError(f"{obj['name']}: param_src needs x, y and w") from None
        subs = obj.get("substitutions") or {}
        try:
            subs = {k: Fraction(str(v)) for k, v in subs.items()}
        except (ValueError, ZeroDivisionError, AttributeError):
            raise FixtureError(f"{obj['name']}: substitutions must map names to rationals") from None
        return cls(
            name=str(obj["name"]),
            implicit_src=str(obj["implicit_src"]),
            expected=dict(expected),
            param_src=param,
            substitutions=subs,
            source_ambiguity=bool(obj.get("source_ambiguity", False)),
            note=str(obj.get("note", "")),
        )


def load_fixture(path=None) -> list[CorpusEntry]:
    path = Path(path) if path is not None else default_fixture_path()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FixtureError(f"cannot read fixture {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise FixtureError(f"fixture {path} is not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise FixtureError("fixture must be a JSON array of entries")
    return [CorpusEntry.from_json(obj) for obj in data]


def instantiate(poly, substitutions: dict, symbolic: bool = False):
    """Apply parameter values unless ``symbolic`` keeps them as ring variables."""
    if symbolic or not substitutions:
        return poly
    present = {k: v for k, v in substitutions.items() if k in poly.ring.names}
    return substitute(poly, present) if present else poly


def _unbound(text: str, substitutions: dict) -> list[str]:
    return [n for n in scan_names(text) if n not in RESERVED and n not in substitutions]


def run_entry(entry: CorpusEntry, symbolic: bool = False, method: str = "prs",
              timings: bool = True) -> dict:
    """Compute every degree for ``entry`` and compare with the expected values.

    Returns a JSON-ready record; engine errors are captured in the record
    instead of propagating, so one bad entry never aborts a run.
    """
    start = time.perf_counter()
    record = {
        "schema": SCHEMA_VERSION,
        "name": entry.name,
        "delta1": None,
        "delta2": None,
        "delta_d": None,
        "method": "implicit",
        "diagnostics": {},
        "expected": {f: entry.expected.get(f) for f in DEGREE_FIELDS},
        "compared": {},
        "parametric": None,
        "status": "ERROR",
        "pass": False,
        "error": None,
    }
    try:
        if not symbolic:
            missing = _unbound(entry.implicit_src, entry.substitutions)
            if missing:
                raise FixtureError(f"no value for parameter(s) {', '.join(missing)}")
        f = instantiate(parse_polynomial(entry.implicit_src), entry.substitutions, symbolic)
        report = degree_report(validate_implicit(f), method=method)
        record.update(delta1=report.delta1, delta2=report.delta2, delta_d=report.delta_d)
        record["diagnostics"] = dict(report.diagnostics)
        if entry.param_src is not None:
            p = parse_parametrization(*entry.param_src)
            if not symbolic:
                p = type(p)(*(instantiate(q, entry.substitutions) for q in (p.X, p.Y, p.W)))
            prep = degree_report(p)
            record["parametric"] = {
                "delta1": prep.delta1,
                "delta2": prep.delta2,
                "agree": (prep.delta1, prep.delta2) == (report.delta1, report.delta2),
            }
    except OffsetDegreeError as exc:
        record["error"] = f"{type(exc).__name__}: {exc}"
        record["diagnostics"]["ms"] = None
    else:
        compared = {}
        for fld in DEGREE_FIELDS:
            exp = entry.expected.get(fld)
            if exp is not None:
                compared[fld] = record[fld] == exp
        record["compared"] = compared
        ok = all(compared.values())
        if record["parametric"] is not None and not record["parametric"]["agree"]:
            ok = False
        if ok:
            record["status"] = "PASS"
        else:
            record["status"] = "WARN" if entry.source_ambiguity else "FAIL"
        record["pass"] = ok
    if timings:
        record["diagnostics"]["ms"] = round(1000 * (time.perf_counter() - start), 3)
    else:
        record["diagnostics"]["ms"] = None
    return record


def summarize(records: list[dict]) -> dict:
    counts = {"PASS": 0, "WARN": 0, "FAIL": 0, "ERROR": 0}
    for r in records:
        counts[r["status"]] += 1
    return {"entries": len(records), **{k.lower(): v for k, v in counts.items()},
            "ok": counts["FAIL"] == 0 and counts["ERROR"] == 0}
