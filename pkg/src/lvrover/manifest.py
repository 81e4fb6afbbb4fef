"""Run manifests: enough resolved state to reproduce any command's output.

A manifest captures the command, every resolved parameter (seeds
included), input file digests and the tool version. Two runs with equal
manifests must produce equal outputs, so nothing time- or host-dependent
belongs here.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from . import __version__


def file_digest(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: Mapping[str, object] = field(default_factory=dict)
    input_digests: Mapping[str, str] = field(default_factory=dict)
    version: str = __version__

    @classmethod
    def create(
        cls,
        command: str,
        parameters: Mapping[str, object],
        input_paths: Mapping[str, str | Path] | None = None,
    ) -> "RunManifest":
        digests = {
            name: file_digest(p) for name, p in sorted((input_paths or {}).items())
        }
        return cls(command=command, parameters=dict(parameters), input_digests=digests)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "version": self.version,
            "parameters": dict(self.parameters),
            "input_digests": dict(self.input_digests),
        }

    def to_json(self) -> str:
        return json.dumps(
            {"manifest": self.to_dict()},
            ensure_ascii=False,
            sort_keys=True,
            separators=(",", ":"),
        )
