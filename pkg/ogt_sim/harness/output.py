"""
Result files: per-iteration CSV and the JSON metadata sidecar.
"""

import json
import logging
from pathlib import Path
from typing import List, Union

from ..exceptions import ParseError, StorageError
from ..utils.storage import format_float
from .runner import IterationRecord, RunResult

logger = logging.getLogger(__name__)

CSV_HEADER = "k,vectors_sent,grad_evals,loss_gap,consensus_X,consensus_Q"
INT_COLUMNS = 3


def format_records(records: List[IterationRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([
            str(r.k),
            str(r.vectors_sent),
            str(r.grad_evals),
            format_float(r.loss_gap),
            format_float(r.consensus_X),
            format_float(r.consensus_Q),
        ]))
    return "\n".join(lines) + "\n"


def emit_csv(result: Union[RunResult, List[IterationRecord]], path: Union[str, Path]) -> Path:
    """Write the records of a run, one row per record."""
    records = result.records if isinstance(result, RunResult) else result
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            f.write(format_records(records))
    except OSError as e:
        raise StorageError(f"Cannot write CSV {target}: {e}", path=str(target)) from e
    logger.info(f"Wrote {len(records)} records to {target}")
    return target


def read_csv(path: Union[str, Path]) -> List[IterationRecord]:
    """Parse a CSV written by emit_csv.

    Raises:
        ParseError: Wrong header, column count or value, with its line number
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except FileNotFoundError as e:
        raise StorageError(f"CSV not found: {path}", path=str(path)) from e

    if not lines or lines[0].strip() != CSV_HEADER:
        raise ParseError(f"Expected header {CSV_HEADER!r}", path=str(path), line_number=1)

    records: List[IterationRecord] = []
    for line_number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != 6:
            raise ParseError(f"Expected 6 columns, found {len(cells)}", path=str(path), line_number=line_number)
        try:
            ints = [int(cell) for cell in cells[:INT_COLUMNS]]
            floats = [float(cell) for cell in cells[INT_COLUMNS:]]
        except ValueError:
            raise ParseError(f"Malformed value in {line!r}", path=str(path), line_number=line_number)
        records.append(IterationRecord(
            k=ints[0],
            vectors_sent=ints[1],
            grad_evals=ints[2],
            loss_gap=floats[0],
            consensus_X=floats[1],
            consensus_Q=floats[2],
        ))
    return records


def metadata_path(csv_path: Union[str, Path]) -> Path:
    """Sidecar next to the CSV: `<csv>.meta.json`."""
    csv_path = Path(csv_path)
    return csv_path.with_name(csv_path.name + ".meta.json")


def emit_metadata(result: RunResult, path: Union[str, Path]) -> Path:
    """Write the run metadata, termination and config echo as sorted JSON."""
    payload = dict(result.metadata)
    payload["termination"] = result.termination
    payload["x_star_residual"] = result.x_star_residual
    payload["grad_evals_total"] = result.final_record.grad_evals
    payload["config"] = result.config
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise StorageError(f"Cannot write metadata {target}: {e}", path=str(target)) from e
    logger.info(f"Wrote run metadata to {target}")
    return target
