"""JSON, CSV, SVG, PPM and DOT artifacts, rendered first and then written together."""

import logging
import os
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from schottkit.utils.io import atomic_write_bytes, dumps_json

logger = logging.getLogger(__name__)


def records_frame(columns: Mapping[str, Sequence[Any] | np.ndarray]) -> pd.DataFrame:
    """DataFrame with columns in the given order."""
    return pd.DataFrame({name: np.asarray(values) for name, values in columns.items()})


def render_csv(columns: Mapping[str, Sequence[Any] | np.ndarray], precision: int = 6) -> str:
    """Tabular text with a fixed float format."""
    frame = records_frame(columns)
    return frame.to_csv(index=False, float_format=f"%.{precision}g", lineterminator="\n")


def write_csv(path: Path, columns: Mapping[str, Sequence[Any] | np.ndarray], precision: int = 6) -> Path:
    return atomic_write_bytes(path, render_csv(columns, precision).encode("utf-8"))


def encode_artifact(fmt: str, content: Any, csv_precision: int = 6) -> bytes:
    """Bytes of one artifact: JSON payloads, CSV columns, PPM bytes or SVG/DOT text."""
    if fmt == "json":
        return dumps_json(content).encode("utf-8")
    if fmt == "csv":
        return render_csv(content, csv_precision).encode("utf-8")
    if fmt == "ppm":
        return bytes(content)
    return str(content).encode("utf-8")


def write_artifacts(files: Mapping[Path, bytes]) -> list[Path]:
    """Write every file atomically, or none of them.

    If a write fails, files this call already replaced are removed before
    the error propagates.
    """
    written: list[Path] = []
    try:
        for path, data in files.items():
            written.append(atomic_write_bytes(path, data))
    except BaseException:
        for path in written:
            try:
                os.remove(path)
            except OSError:
                logger.warning(f"Could not remove {path} after a failed run")
        raise
    return written


__all__ = ["encode_artifact", "records_frame", "render_csv", "write_artifacts", "write_csv"]
