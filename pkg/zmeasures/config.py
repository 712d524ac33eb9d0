"""
Run configuration: built-in defaults, an optional JSON config file and
command-line flags, resolved in that order of priority
"""

import json
import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

from .errors import ParseError
from .halfint import HalfInt, parse_halfint
from .measure import Params
from .scalars import NumericMode, parse_scalar

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json", "lines")
METHODS = ("series", "closed", "both")
FLOAT_SETTINGS = ("tol", "threshold")


@dataclass
class RunConfig:
    """Everything a subcommand needs; scalars stay textual until validate()"""

    command: str = ""
    z: str = "0.3"
    zp: str = "0.7"
    xi: str = "0.3"
    mode: str = "float"
    r: int = 1
    n: int = 0
    max_size: Optional[int] = None
    size_cap: Optional[int] = None
    tol: float = 1e-6
    points: List[str] = field(default_factory=list)
    seed: int = 0
    count: Optional[int] = None
    format: str = "csv"
    output: Optional[str] = None
    method: str = "closed"
    mixed: bool = False
    threshold: float = 0.0
    strict: bool = False
    suite: str = "all"
    alpha: Optional[str] = None
    beta: Optional[str] = None

    @property
    def numeric_mode(self) -> NumericMode:
        return NumericMode(self.mode)

    def size(self, default: int) -> int:
        return default if self.max_size is None else self.max_size

    def draws(self, default: int) -> int:
        return default if self.count is None else self.count

    def params(self) -> Params:
        mode = self.numeric_mode
        return Params(
            z=parse_scalar(str(self.z), mode),
            zp=parse_scalar(str(self.zp), mode),
            xi=parse_scalar(str(self.xi), mode),
            mode=mode,
        )

    def halfint_points(self) -> List[HalfInt]:
        return [parse_halfint(p) for p in self.points]

    def validate(self) -> "RunConfig":
        """Parse every textual field once so errors surface before any computation"""
        if self.mode not in (m.value for m in NumericMode):
            raise ParseError(f"mode must be exact or float, got {self.mode!r}")
        if self.format not in FORMATS:
            raise ParseError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.format == "lines" and self.command != "sample":
            raise ParseError("--format lines only applies to sample")
        if self.method not in METHODS:
            raise ParseError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.r < 1:
            raise ParseError(f"r must be a positive integer, got {self.r}")
        for name in ("n", "max_size", "size_cap", "count"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ParseError(f"{name} must be non-negative")
        if self.tol <= 0:
            raise ParseError("tol must be positive")
        for name in ("z", "zp", "xi", "alpha", "beta"):
            if getattr(self, name) is not None:
                parse_scalar(str(getattr(self, name)), self.numeric_mode)
        self.halfint_points()
        return self

    def to_dict(self) -> Dict[str, Any]:
        """Echoed into every document; float settings as text so exact runs stay float-free"""
        data = asdict(self)
        for name in FLOAT_SETTINGS:
            data[name] = repr(float(data[name]))
        return data


def load_config_file(path: Optional[Path]) -> Dict[str, Any]:
    """Read a JSON object of RunConfig fields; a missing or unreadable file yields {}"""
    if path is None:
        return {}
    path = Path(path)
    if not path.exists():
        logger.warning("config file %s not found, using defaults", path)
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except Exception as e:
        logger.warning("could not read config file %s (%s), using defaults", path, e)
        return {}
    if not isinstance(data, dict):
        logger.warning("config file %s does not hold a JSON object, using defaults", path)
        return {}
    return data


def resolve_config(command: str, flags: Dict[str, Any], config_path: Optional[Path] = None) -> RunConfig:
    """defaults < config file < flags (flags left as None do not override)"""
    known = {f.name for f in fields(RunConfig)}
    values: Dict[str, Any] = {}
    for key, value in load_config_file(config_path).items():
        key = key.replace("-", "_")
        if key not in known:
            logger.warning("ignoring unknown config key %r", key)
            continue
        values[key] = value
    for key, value in flags.items():
        if value is not None:
            values[key] = value
    values["command"] = command
    if isinstance(values.get("points"), str):
        values["points"] = [p for p in values["points"].split(",") if p.strip()]
    cfg = RunConfig(**values)
    return cfg.validate()
