"""
Utility functions for zmeasures: logging setup, output formatting, atomic writes
"""

import csv
import io
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from .scalars import GaussianRational, format_scalar

stderr_console = Console(stderr=True)


def setup_logging(level: str = "WARNING", debug_log: Optional[Path] = None) -> None:
    """Rich handler on stderr, plus an appended plain-text file when debug_log is given"""
    root = logging.getLogger("zmeasures")
    root.handlers.clear()
    root.setLevel(logging.DEBUG if debug_log else level.upper())
    handler = RichHandler(console=stderr_console, show_time=False, show_path=False)
    handler.setLevel(level.upper())
    root.addHandler(handler)
    if debug_log:
        file_handler = logging.FileHandler(debug_log, mode="a", encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        root.addHandler(file_handler)
    root.propagate = False


def format_count(count: int) -> str:
    """Format count with appropriate suffix (k, M)"""
    if count >= 1000000:
        return f"{count/1000000:.1f}M"
    elif count >= 1000:
        return f"{count/1000:.1f}k"
    else:
        return str(count)


def scalar_parts(value) -> Dict[str, Any]:
    """{"re": ..., "im": ...}: exact values as "p/q" strings, floats as numbers"""
    if isinstance(value, GaussianRational):
        return {"re": format_scalar(value.re), "im": format_scalar(value.im)}
    if isinstance(value, int) or hasattr(value, "denominator"):
        return {"re": format_scalar(value), "im": "0"}
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]], comments: Sequence[str] = ()) -> str:
    """CSV with '#'-prefixed comment lines ahead of the header"""
    buffer = io.StringIO()
    for line in comments:
        buffer.write(f"# {line}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def lines_text(lines: Iterable[str], comments: Sequence[str] = ()) -> str:
    """One value per line after the '#' comment lines"""
    head = "".join(f"# {line}\n" for line in comments)
    return head + "".join(f"{line}\n" for line in lines)


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def json_text(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, sort_keys=False) + "\n"


def write_output(text: str, output: Optional[str]) -> None:
    """stdout, or an atomic replace of the target file"""
    if not output:
        print(text, end="")
        return
    target = Path(output)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(target.parent), prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, target)
    except Exception:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def show_table(title: str, columns: List[str], rows: Iterable[Sequence[Any]]) -> None:
    """Human-readable summary on stderr"""
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*[str(v) for v in row])
    stderr_console.print(table)
