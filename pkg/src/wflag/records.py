"""Persistent, machine-readable search output.

The canonical on-disk format is line-delimited JSON: one record per line,
append-only, streaming-friendly for long sweeps.  Two record kinds exist:

* ``candidate``   -- one found candidate together with its sweep key;
* ``sweep_done``  -- marks an embedding (one sweep key) as fully scanned.

A *sweep key* identifies one unit of search work: ``(format, mu, u, k, n)``.
Resume works at sweep-key granularity: keys with a ``sweep_done`` record are
skipped on restart, so re-running with a cache never emits duplicate keys.
Candidate records of a key that was interrupted before its ``sweep_done``
line may be re-appended by the rescan; readers deduplicate by candidate
identity, so the file stays correct either way.

Exact rationals serialize as ``{"num": "<int>", "den": "<int>"}`` with the
integers rendered as decimal strings, so degrees like 18/91 survive
round-trips without any precision loss.  CSV and aligned-text renderings are
derived views over the same candidate set.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Iterator, Sequence

from .orbifold import QuotientSingularity
from .ratfun import UniPolynomial
from .search import Candidate, SweepResult, merge_candidates

SCHEMA_VERSION = 1

SweepKey = tuple[str, tuple[int, ...], int, int, int]


# ---------------------------------------------------------------------------
# JSON encoding of the exact types


def fraction_to_json(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def fraction_from_json(obj: object) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, int):
        return Fraction(obj)
    raise ValueError(f"cannot read a rational from {obj!r}")


def _singularity_to_json(sing: QuotientSingularity) -> dict:
    return {"r": sing.r, "type": list(sing.weights)}


def _singularity_from_json(obj: dict) -> QuotientSingularity:
    return QuotientSingularity(int(obj["r"]), tuple(int(a) for a in obj["type"]))


def candidate_to_json(cand: Candidate) -> dict:
    """Serialize one candidate losslessly (exact rationals as strings)."""
    return {
        "format": cand.format_name,
        "mu": list(cand.mu),
        "u": cand.u,
        "weights": list(cand.x_weights),
        "k": cand.k,
        "n": cand.n,
        "degree": fraction_to_json(cand.degree),
        "basket": [
            {**_singularity_to_json(sing), "multiplicity": m}
            for sing, m in cand.basket
        ],
        "kernels": [
            [_singularity_to_json(sing) for sing in group]
            for group in cand.kernels
        ],
        "smooth": cand.smooth,
        "numerator": [fraction_to_json(c) for c in cand.numerator.coeffs],
    }


def candidate_from_json(obj: dict) -> Candidate:
    return Candidate(
        format_name=str(obj["format"]),
        mu=tuple(int(a) for a in obj["mu"]),
        u=int(obj["u"]),
        x_weights=tuple(int(w) for w in obj["weights"]),
        k=int(obj["k"]),
        n=int(obj["n"]),
        degree=fraction_from_json(obj["degree"]),
        basket=tuple(
            (_singularity_from_json(it), int(it["multiplicity"]))
            for it in obj["basket"]
        ),
        kernels=tuple(
            tuple(_singularity_from_json(it) for it in group)
            for group in obj["kernels"]
        ),
        smooth=bool(obj["smooth"]),
        numerator=UniPolynomial([fraction_from_json(c) for c in obj["numerator"]]),
    )


def sweep_key_of(result: SweepResult) -> SweepKey:
    return (result.format_name, result.mu, result.u, result.k, result.n)


def _sweep_key_to_json(key: SweepKey) -> dict:
    fmt, mu, u, k, n = key
    return {"format": fmt, "mu": list(mu), "u": u, "k": k, "n": n}


def _sweep_key_from_json(obj: dict) -> SweepKey:
    return (
        str(obj["format"]),
        tuple(int(a) for a in obj["mu"]),
        int(obj["u"]),
        int(obj["k"]),
        int(obj["n"]),
    )


# ---------------------------------------------------------------------------
# record stream


class ResultWriter:
    """Append-only writer of search records; one JSON object per line.

    All output of a sweep funnels through one instance, which keeps the file
    well-formed even when results are produced by a worker pool.
    """

    def __init__(self, stream: IO[str]) -> None:
        self._stream = stream

    def _write(self, obj: dict) -> None:
        self._stream.write(json.dumps(obj, separators=(",", ":")) + "\n")
        self._stream.flush()

    def write_candidate(self, result: SweepResult, cand: Candidate) -> None:
        self._write(
            {
                "schema_version": SCHEMA_VERSION,
                "record": "candidate",
                "sweep_key": _sweep_key_to_json(sweep_key_of(result)),
                "timing_ms": result.elapsed_ms,
                "candidate": candidate_to_json(cand),
            }
        )

    def write_sweep_done(self, result: SweepResult) -> None:
        self._write(
            {
                "schema_version": SCHEMA_VERSION,
                "record": "sweep_done",
                "sweep_key": _sweep_key_to_json(sweep_key_of(result)),
                "timing_ms": result.elapsed_ms,
                "tuples_scanned": result.tuples_scanned,
                "candidates": len(result.candidates),
            }
        )

    def write_result(self, result: SweepResult) -> None:
        for cand in result.candidates:
            self.write_candidate(result, cand)
        self.write_sweep_done(result)


def read_records(stream: IO[str]) -> Iterator[dict]:
    """Yield the raw record objects of a line-delimited JSON stream."""
    for line_no, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed record on line {line_no}: {exc}") from exc
        version = obj.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(
                f"unsupported schema_version {version!r} on line {line_no}"
            )
        yield obj


@dataclass
class RecordCache:
    """Parsed content of a record file: completed keys and their candidates."""

    completed: set[SweepKey] = field(default_factory=set)
    candidates: list[Candidate] = field(default_factory=list)

    @classmethod
    def from_stream(cls, stream: IO[str]) -> RecordCache:
        completed: set[SweepKey] = set()
        staged: dict[SweepKey, list[Candidate]] = {}
        ordered: list[Candidate] = []
        for obj in read_records(stream):
            key = _sweep_key_from_json(obj["sweep_key"])
            kind = obj.get("record")
            if kind == "candidate":
                staged.setdefault(key, []).append(
                    candidate_from_json(obj["candidate"])
                )
            elif kind == "sweep_done":
                if key not in completed:
                    completed.add(key)
                    ordered.extend(staged.pop(key, []))
            else:
                raise ValueError(f"unknown record kind {kind!r}")
        # candidates of keys that never reached sweep_done are dropped: the
        # rescan of those keys regenerates them
        return cls(completed=completed, candidates=ordered)


def load_cache(path: str) -> RecordCache:
    with open(path, "r", encoding="utf-8") as fh:
        return RecordCache.from_stream(fh)


# ---------------------------------------------------------------------------
# derived renderings (identical candidate sets in every format)

CSV_COLUMNS = (
    "format",
    "mu",
    "u",
    "weights",
    "k",
    "n",
    "degree",
    "basket",
    "kernel",
    "smooth",
)


def emit_json(candidates: Sequence[Candidate], stream: IO[str]) -> None:
    for cand in candidates:
        stream.write(json.dumps(candidate_to_json(cand), separators=(",", ":")))
        stream.write("\n")


def emit_csv(candidates: Sequence[Candidate], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for cand in candidates:
        writer.writerow(
            [
                cand.format_name,
                " ".join(str(a) for a in cand.mu),
                cand.u,
                " ".join(str(w) for w in cand.x_weights),
                cand.k,
                cand.n,
                str(cand.degree),
                cand.basket_str(),
                "Y" if cand.kernels else "N",
                "yes" if cand.smooth else "no",
            ]
        )


def compact_weights(weights: Sequence[int]) -> str:
    """Render a sorted weight multiset as ``1,2^4,3^4,4^2,5``."""
    parts: list[str] = []
    i = 0
    ws = list(weights)
    while i < len(ws):
        j = i
        while j < len(ws) and ws[j] == ws[i]:
            j += 1
        count = j - i
        parts.append(str(ws[i]) if count == 1 else f"{ws[i]}^{count}")
        i = j
    return ",".join(parts)


def emit_text(candidates: Sequence[Candidate], stream: IO[str]) -> None:
    headers = ("mu", "u", "ambient", "degree", "basket", "BK")
    rows = [
        (
            "(" + ",".join(str(a) for a in cand.mu) + ")",
            str(cand.u),
            "P[" + compact_weights(cand.x_weights) + "]",
            str(cand.degree),
            cand.basket_str(),
            "Y" if cand.kernels else "N",
        )
        for cand in candidates
    ]
    widths = [
        max(len(headers[c]), *(len(r[c]) for r in rows)) if rows else len(headers[c])
        for c in range(len(headers))
    ]
    def line(cells: Sequence[str]) -> str:
        return "  ".join(cell.ljust(widths[c]) for c, cell in enumerate(cells)).rstrip()

    stream.write(line(headers) + "\n")
    stream.write(line(tuple("-" * w for w in widths)) + "\n")
    for r in rows:
        stream.write(line(r) + "\n")


EMITTERS = {"json": emit_json, "csv": emit_csv, "text": emit_text}


def render(candidates: Sequence[Candidate], kind: str) -> str:
    buf = io.StringIO()
    EMITTERS[kind](candidates, buf)
    return buf.getvalue()


def merge_with_cache(
    cached: Iterable[Candidate], fresh: Iterable[Candidate]
) -> list[Candidate]:
    """Deduplicated, deterministically ordered union of cache and new results."""
    return merge_candidates(list(cached) + list(fresh))
