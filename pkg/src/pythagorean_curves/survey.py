"""Batch survey over all triples of a parameter range, written as JSON lines.

Records are produced in canonical (i, j) order whatever the worker count, so
the mathematical content of the output depends only on the range and config.
The output file doubles as the checkpoint: on resume, complete records are
kept (after checking their config fingerprint), a torn final line is dropped,
and work continues with the next pair.
"""

from __future__ import annotations

import json
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .curves import curve_from_triple
from .descent import infinite_order_witness
from .rank import RankConfig, rank_interval
from .records import point_to_json
from .torsion import torsion_subgroup
from .triples import PythagoreanTriple, gen_triples_even, triple_from_params

log = logging.getLogger(__name__)

TIMING_KEY = "timings_ms"


class CheckpointMismatch(RuntimeError):
    pass


def survey_record(i: int, j: int, config: RankConfig, timings: bool = True) -> dict:
    t0 = time.perf_counter()
    triple = triple_from_params(i, j)
    curve = curve_from_triple(triple)
    tors = torsion_subgroup(curve)
    t1 = time.perf_counter()
    witness, _ = infinite_order_witness(curve)
    interval = rank_interval(curve, config)
    t2 = time.perf_counter()
    rec = {
        "i": i,
        "j": j,
        "triple": [triple.a, triple.b, triple.c],
        "A": str(curve.A),
        "B": str(curve.B),
        "torsion": tors.group_structure,
        "torsion_evidence": [list(e) for e in tors.order_bound_evidence],
        "witness": point_to_json(witness),
        "rank_lower": interval.lower,
        "rank_upper": interval.upper,
        "selmer_dim": interval.selmer_dim,
        "lower_witnesses": [point_to_json(P) for P in interval.lower_witnesses],
        "notes": interval.method_notes,
        "config": config.fingerprint(),
    }
    if timings:
        rec[TIMING_KEY] = {"torsion": round((t1 - t0) * 1000, 3), "rank": round((t2 - t1) * 1000, 3)}
    return rec


def _job(args):
    return survey_record(*args)


def _load_checkpoint(path: Path, fingerprint: str) -> set[tuple[int, int]]:
    done: set[tuple[int, int]] = set()
    if not path.exists():
        return done
    good_bytes = 0
    with open(path, "rb") as fh:
        for raw in fh:
            if not raw.endswith(b"\n"):
                break
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError:
                break
            if rec.get("config") != fingerprint:
                raise CheckpointMismatch(
                    f"{path} was written with config {rec.get('config')}, current config is {fingerprint}"
                )
            done.add((rec["i"], rec["j"]))
            good_bytes += len(raw)
    if good_bytes != path.stat().st_size:
        log.info("dropping torn tail of %s after %d bytes", path, good_bytes)
        with open(path, "r+b") as fh:
            fh.truncate(good_bytes)
    return done


@dataclass
class SurveySummary:
    processed: int
    skipped: int
    lower_histogram: dict[int, int]
    upper_histogram: dict[int, int]


def _pending(triples: list[PythagoreanTriple], done) -> Iterator[tuple[int, int]]:
    for t in triples:
        key = (t.params.i, t.params.j)
        if key not in done:
            yield key


def run_survey(
    max_ij: int,
    out_path: str | os.PathLike,
    config: RankConfig = RankConfig(),
    resume: bool = False,
    jobs: int = 1,
    timings: bool = True,
    limit: int | None = None,
) -> SurveySummary:
    """Survey every triple with 1 <= j < i < max_ij; ``limit`` stops after that many new records."""
    path = Path(out_path)
    fingerprint = config.fingerprint()
    done = _load_checkpoint(path, fingerprint) if resume else set()
    if not resume and path.exists():
        path.unlink()
    work = list(_pending(gen_triples_even(max_ij), done))
    if limit is not None:
        work = work[:limit]
    args = [(i, j, config, timings) for i, j in work]
    processed = 0
    with open(path, "a", encoding="utf-8") as out:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = pool.map(_job, args, chunksize=4)
                for rec in results:
                    out.write(json.dumps(rec, sort_keys=True) + "\n")
                    out.flush()
                    processed += 1
        else:
            for a in args:
                out.write(json.dumps(_job(a), sort_keys=True) + "\n")
                out.flush()
                processed += 1
    lower, upper = Counter(), Counter()
    for rec in read_survey(path):
        lower[rec["rank_lower"]] += 1
        upper[rec["rank_upper"]] += 1
    return SurveySummary(processed, len(done), dict(sorted(lower.items())), dict(sorted(upper.items())))


def read_survey(path: str | os.PathLike) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def strip_timings(records: list[dict]) -> list[dict]:
    return [{k: v for k, v in r.items() if k != TIMING_KEY} for r in records]
