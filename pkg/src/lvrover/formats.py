"""Line-keyed file formats: hypotheses input and result output.

Hypotheses (JSONL): one object per line,
    {"line_id": "...", "hypotheses": ["...", ...]}
Plain-text alternative: blank-line-separated blocks, one hypothesis per
line; block index becomes the line_id. Results are JSONL with a leading
manifest record.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

from .voting import CombinationResult


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def read_hypotheses_jsonl(path: str | Path) -> list[tuple[str, list[str]]]:
    """Parse and validate a hypotheses JSONL file."""
    out = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as e:
                raise ValueError(f"{path}:{lineno}: invalid JSON: {e}") from e
            if isinstance(obj, dict) and set(obj) == {"manifest"}:
                continue  # header record from a previous run
            if not isinstance(obj, dict) or "line_id" not in obj or "hypotheses" not in obj:
                raise ValueError(
                    f"{path}:{lineno}: expected object with line_id and hypotheses"
                )
            line_id = str(obj["line_id"])
            hyps = obj["hypotheses"]
            if not isinstance(hyps, list) or not all(isinstance(h, str) for h in hyps):
                raise ValueError(f"{path}:{lineno}: hypotheses must be a list of strings")
            if not hyps:
                raise ValueError(f"line {line_id!r}: empty hypotheses array")
            out.append((line_id, hyps))
    return out


def read_hypotheses_text(path: str | Path) -> list[tuple[str, list[str]]]:
    """Blank-line-separated blocks, one hypothesis per line."""
    blocks: list[tuple[str, list[str]]] = []
    current: list[str] = []
    text = Path(path).read_text(encoding="utf-8")
    for raw in text.splitlines():
        line = raw.rstrip("\r")
        if line.strip():
            current.append(line)
        elif current:
            blocks.append((str(len(blocks)), current))
            current = []
    if current:
        blocks.append((str(len(blocks)), current))
    return blocks


def read_hypotheses(path: str | Path) -> list[tuple[str, list[str]]]:
    """Dispatch on extension: .jsonl/.json is JSONL, anything else text."""
    suffix = Path(path).suffix.lower()
    if suffix in (".jsonl", ".json", ".ndjson"):
        return read_hypotheses_jsonl(path)
    return read_hypotheses_text(path)


def read_lines(path: str | Path) -> list[str]:
    """One text line per entry; keeps empty lines."""
    return Path(path).read_text(encoding="utf-8").splitlines()


def result_record(line_id: str, result: CombinationResult) -> str:
    return _dumps(
        {
            "line_id": line_id,
            "text": result.text,
            "nb_words": result.nb_words,
            "verified_count": result.verified_count,
            "direction": result.direction,
            "fallback_events": result.fallback_events,
        }
    )


def hypotheses_record(line_id: str, hypotheses: Sequence[str]) -> str:
    return _dumps({"line_id": line_id, "hypotheses": list(hypotheses)})


def write_jsonl(path: str | Path, records: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for rec in records:
            f.write(rec)
            f.write("\n")
