"""
Shared export utilities.

Output path preparation and default file naming for result files.
"""

import logging
import os
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)


def sanitize_stem(stem: str, max_length: int = 50) -> str:
    """Make a string safe for use as a file stem.

    Keeps alphanumerics, hyphens, underscores and dots; spaces become
    underscores. Returns 'result' if nothing survives.
    """
    safe = "".join(ch for ch in stem if ch.isalnum() or ch in (" ", "-", "_", ".")).strip()
    safe = safe.replace(" ", "_")[:max_length]
    return safe if safe else "result"


def default_output_name(command: str, fixed_f: Optional[float], fmt: str) -> str:
    """File name such as ``scan_f0.5.csv`` for a command's output."""
    stem = command if fixed_f is None else f"{command}_f{fixed_f:g}"
    return f"{sanitize_stem(stem)}.{fmt}"


def secure_mkdir(path: Path, mode: int = 0o700) -> Path:
    """Create a directory (and parents); new directories get *mode* on POSIX."""
    existed = path.exists()
    path.mkdir(parents=True, exist_ok=True)
    if not existed and os.name == "posix":
        path.chmod(mode)
    return path


def prepare_output_path(path: Path) -> Path:
    """Resolve *path* and make sure its parent directory exists.

    Raises:
        OSError: If the parent cannot be created or the target is a directory.
    """
    resolved = Path(path).expanduser().resolve()
    if resolved.is_dir():
        raise IsADirectoryError(f"Output path is a directory: {resolved}")
    secure_mkdir(resolved.parent)
    return resolved
