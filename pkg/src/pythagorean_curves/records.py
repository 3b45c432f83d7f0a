"""CSV and JSON encodings for triples, rationals and points.

Rationals go into CSV as ``num/den`` (or a bare integer) and into JSON as a
two-element list of decimal strings ``["num", "den"]`` so no precision is ever
lost to JSON numbers.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable

from .curves import CurvePoint
from .triples import Mode, PythagoreanTriple, TripleParams

TRIPLE_FIELDS = ["i", "j", "a", "b", "c", "mode"]


def rational_to_json(q: Fraction) -> list[str]:
    return [str(q.numerator), str(q.denominator)]


def rational_from_json(v: list[str]) -> Fraction:
    num, den = v
    return Fraction(int(num), int(den))


def point_to_json(P: CurvePoint) -> dict | None:
    if P.is_infinity:
        return None
    return {"x": rational_to_json(P.x), "y": rational_to_json(P.y)}


def point_from_json(d: dict | None) -> CurvePoint:
    if d is None:
        return CurvePoint()
    return CurvePoint(rational_from_json(d["x"]), rational_from_json(d["y"]))


def _triple_row(t: PythagoreanTriple) -> dict:
    return {
        "i": t.params.i if t.params else "",
        "j": t.params.j if t.params else "",
        "a": t.a,
        "b": t.b,
        "c": t.c,
        "mode": t.mode.value if t.mode else "",
    }


def _triple_from_row(row: dict) -> PythagoreanTriple:
    params = TripleParams(int(row["i"]), int(row["j"])) if row.get("i") not in ("", None) else None
    mode = Mode(row["mode"]) if row.get("mode") else None
    return PythagoreanTriple(int(row["a"]), int(row["b"]), int(row["c"]), params, mode)


def triples_to_csv(triples: Iterable[PythagoreanTriple]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TRIPLE_FIELDS, lineterminator="\n")
    w.writeheader()
    for t in triples:
        w.writerow(_triple_row(t))
    return buf.getvalue()


def triples_from_csv(text: str) -> list[PythagoreanTriple]:
    return [_triple_from_row(r) for r in csv.DictReader(io.StringIO(text))]


def triples_to_jsonl(triples: Iterable[PythagoreanTriple]) -> str:
    return "".join(json.dumps(_triple_row(t)) + "\n" for t in triples)


def triples_from_jsonl(text: str) -> list[PythagoreanTriple]:
    return [_triple_from_row(json.loads(line)) for line in text.splitlines() if line.strip()]


def read_points_csv(path) -> list[CurvePoint]:
    """Points from a CSV file with an ``x,y`` header; values as ``num/den`` or integers."""
    with open(path, newline="", encoding="utf-8") as fh:
        return [CurvePoint(Fraction(r["x"]), Fraction(r["y"])) for r in csv.DictReader(fh)]
