"""Point-set file format: one "x,y" integer pair per line, UTF-8, LF.

Lines starting with "#" are optional metadata of the form "# key=value".
Points are written in lex-sorted order so identical sets serialize to
identical bytes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Optional, Tuple

import numpy as np

from .errors import DomainError
from .geometry import PointSet


def write_point_set(path, points, metadata: Optional[Mapping[str, object]] = None) -> None:
    arr = points.as_array() if isinstance(points, PointSet) else np.asarray(points)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if metadata:
            for key, value in metadata.items():
                fh.write(f"# {key}={value}\n")
        for x, y in arr:
            fh.write(f"{int(x)},{int(y)}\n")


def read_point_set(path) -> Tuple[PointSet, dict]:
    """Returns (point set, metadata dict)."""
    meta: dict = {}
    xs = []
    ys = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            try:
                sx, sy = line.split(",")
                xs.append(int(sx))
                ys.append(int(sy))
            except ValueError:
                raise DomainError(f"{path}:{lineno}: expected 'x,y' integers, got {line!r}")
    arr = np.column_stack([xs, ys]).astype(np.int64) if xs else np.empty((0, 2), np.int64)
    return PointSet.from_array(arr), meta


def write_real_points(path, points) -> None:
    """Real-valued companion format used for rescaled plot output."""
    arr = np.asarray(points, dtype=float)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for x, y in arr:
            fh.write(f"{x!r},{y!r}\n")


def ensure_dir(path) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
