import json
import logging
import subprocess
from pathlib import Path
from typing import Any

import pandas as pd

from dsc import __version__
from dsc.schema import RunManifest
from dsc.zeros import ZeroSet

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


def write_table(frame: pd.DataFrame, path: Path, header: str) -> Path:
    """CSV with a one-line ``#`` header; fixed float format so equal inputs give equal bytes."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(f"# {header}\n")
        frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_json(data: dict[str, Any], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(data, indent=2, sort_keys=True, default=str)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def write_zero_set(zero_set: ZeroSet, path: Path, header: str) -> tuple[Path, Path]:
    """Zero rows as CSV next to a JSON file holding the winding certificate."""
    table = write_table(zero_set.to_frame(), path, header)
    return table, write_json(zero_set.header(), path.with_suffix(".json"))


def write_manifest(manifest: RunManifest, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def describe_version() -> str:
    """Package version, suffixed with ``git describe`` output when run from a checkout."""
    try:
        described = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).parent,
            capture_output=True,
            text=True,
            check=False,
            timeout=5,
        )
    except (OSError, subprocess.SubprocessError):
        return __version__
    tag = described.stdout.strip()
    return f"{__version__}+{tag}" if described.returncode == 0 and tag else __version__
