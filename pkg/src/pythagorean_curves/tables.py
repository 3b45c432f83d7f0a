"""Published tables bundled as CSV, and the checks that replay them.

Each table lives in ``data/tableN.csv``. Rows whose printed form contained a
typo are stored corrected, with ``corrected=1`` and the printed text kept in
the ``original`` column.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .curves import CurvePoint, curve_from_triple, is_on_curve
from .descent import independence_rank
from .rank import RankConfig, rank_interval
from .triples import gen_triples_even, triple_from_params

TABLE_IDS = ("T1", "T2", "T3", "T4", "T5", "T6")


class TableDataError(RuntimeError):
    pass


def default_data_dir() -> Path:
    return Path(str(resources.files("pythagorean_curves") / "data"))


@dataclass
class TableRow:
    table_id: str
    fields: dict[str, str]
    corrected: bool = False
    original: str = ""

    def int(self, key: str) -> int:
        return int(self.fields[key])


def load_table(table_id: str, data_dir: Path | None = None) -> list[TableRow]:
    if table_id not in TABLE_IDS:
        raise ValueError(f"unknown table {table_id!r}; expected one of {TABLE_IDS}")
    path = Path(data_dir or default_data_dir()) / f"table{table_id[1]}.csv"
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            raw = list(csv.DictReader(fh))
    except OSError as exc:
        raise TableDataError(f"cannot read {path}: {exc}") from exc
    rows = []
    for r in raw:
        if None in r or any(v is None for v in r.values()):
            raise TableDataError(f"malformed row in {path}: {r}")
        rows.append(TableRow(table_id, r, r.get("corrected", "0") == "1", r.get("original", "")))
    if not rows:
        raise TableDataError(f"{path} has no rows")
    return rows


def table4_points(data_dir: Path | None = None) -> dict[int, list[CurvePoint]]:
    out: dict[int, list[CurvePoint]] = {}
    for row in load_table("T4", data_dir):
        P = CurvePoint(Fraction(row.fields["x"]), Fraction(row.fields["y"]))
        out.setdefault(row.int("row"), []).append(P)
    return out


@dataclass
class CheckResult:
    table_id: str
    row: str
    check: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.table_id} {self.row} {self.check}" + (f": {self.detail}" if self.detail else "")


@dataclass
class VerificationReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, *args, **kwargs) -> None:
        self.results.append(CheckResult(*args, **kwargs))


def _row_label(row: TableRow) -> str:
    return f"({row.fields['i']},{row.fields['j']})"


def _verify_t1(report: VerificationReport, data_dir) -> None:
    rows = load_table("T1", data_dir)
    generated = gen_triples_even(10)
    report.add("T1", "all", "row count", len(rows) == len(generated), f"{len(generated)} generated, {len(rows)} published")
    for row, t in zip(rows, generated):
        published = tuple(row.int(k) for k in ("i", "j", "a", "b", "c"))
        mine = (t.params.i, t.params.j, t.a, t.b, t.c)
        note = " (corrected row)" if row.corrected else ""
        report.add("T1", _row_label(row), "regenerate", published == mine, f"{mine}{note}")


def _verify_coefficients(report: VerificationReport, table_id: str, row: TableRow):
    t = triple_from_params(row.int("i"), row.int("j"))
    curve = curve_from_triple(t)
    ok = (t.a, t.b, t.c) == tuple(row.int(k) for k in "abc") and (curve.A, curve.B) == (row.int("A"), row.int("B"))
    note = " (corrected row)" if row.corrected else ""
    report.add(table_id, _row_label(row), "coefficients", ok, f"A={curve.A} B={curve.B}{note}")
    return curve


def _verify_ranked(report, table_id, data_dir, config, with_ranks, extra=None):
    for row in load_table(table_id, data_dir):
        curve = _verify_coefficients(report, table_id, row)
        if not with_ranks:
            continue
        points = (extra or {}).get(row.int("row"), []) if "row" in row.fields else []
        ri = rank_interval(curve, config, points)
        if table_id == "T2":
            lo, hi = row.int("rank_lower"), row.int("rank_upper")
            ok = ri.lower <= hi and lo <= ri.upper
            report.add(table_id, _row_label(row), "rank consistency", ok,
                       f"computed [{ri.lower}, {ri.upper}] vs published [{lo}, {hi}]")
        else:
            r = row.int("rank")
            ok = ri.lower <= r <= ri.upper
            report.add(table_id, _row_label(row), "rank consistency", ok,
                       f"computed [{ri.lower}, {ri.upper}] vs published {r}")


def _verify_t4(report: VerificationReport, data_dir) -> None:
    t3 = {row.int("row"): row for row in load_table("T3", data_dir)}
    for n, points in sorted(table4_points(data_dir).items()):
        row = t3[n]
        curve = curve_from_triple(triple_from_params(row.int("i"), row.int("j")))
        on = [is_on_curve(curve, P) for P in points]
        report.add("T4", f"row {n}", "points on curve", all(on), f"{sum(on)}/{len(on)}")
        if all(on):
            k = independence_rank(curve, points)
            report.add("T4", f"row {n}", "independence", k == 5, f"independence rank {k}")


def verify_tables(
    tables: tuple[str, ...] = TABLE_IDS,
    data_dir: Path | None = None,
    config: RankConfig = RankConfig(),
    with_ranks: bool = True,
) -> VerificationReport:
    report = VerificationReport()
    for tid in tables:
        if tid == "T1":
            _verify_t1(report, data_dir)
        elif tid == "T4":
            _verify_t4(report, data_dir)
        elif tid == "T3":
            _verify_ranked(report, tid, data_dir, config, with_ranks, table4_points(data_dir))
        elif tid in TABLE_IDS:
            _verify_ranked(report, tid, data_dir, config, with_ranks)
        else:
            raise ValueError(f"unknown table {tid!r}")
    return report
