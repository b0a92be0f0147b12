"""Run configuration and report serialisation.

JSON floats are written with 17 significant digits so every report
re-parses to bit-identical values; CSV files use LF line endings.
"""

from dataclasses import asdict, dataclass, field, fields
import json
import math
import os
import tempfile

from .errors import ConfigurationError

COMMANDS = ("classify", "modes", "bessel", "fiber", "spectrum", "weyl", "virial",
            "extension", "polygon")


@dataclass
class RunConfig:
    """Every parameter a command can consume; embedded in each report."""

    command: str
    omega: float | None = None
    mass: float = 0.0
    gamma_phase: float = 0.0
    n_modes: int = 8
    r_min: float = 1e-6
    r_max: float = 20.0
    n_r: int = 600
    output_path: str | None = None
    format: str = "json"
    spacing: str = "uniform"
    coupling: str = "polar"
    n_eigs: int = 20
    seed: int = 0
    kappa: int | None = None
    kappa_max: int = 4
    alpha: float | None = None
    nu: float | None = None
    radii: list = field(default_factory=list)
    weyl_n: float = 1.0
    lam: float = 2.0
    polygon_path: str | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigurationError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv"):
            raise ConfigurationError("format must be 'json' or 'csv'")
        needs_omega = self.command in ("classify", "modes", "fiber", "spectrum", "virial",
                                       "extension")
        if needs_omega:
            if self.omega is None or not math.isfinite(self.omega):
                raise ConfigurationError("--omega (or --omega-frac) is required")
            if not (0.0 < self.omega < math.pi):
                raise ConfigurationError(f"omega = {self.omega} lies outside (0, pi)")
        if self.command in ("fiber", "spectrum", "virial"):
            if not (0.0 < self.r_min < self.r_max):
                raise ConfigurationError("need 0 < r_min < r_max")
            if self.n_r < 16:
                raise ConfigurationError("need n_r >= 16")
        if self.command in ("spectrum", "virial"):
            if self.n_modes < 2:
                raise ConfigurationError("need n_modes >= 2")
            if self.n_eigs < 1:
                raise ConfigurationError("need at least one eigenvalue")
        if self.kappa is not None and self.kappa < 0:
            raise ConfigurationError("kappa must be >= 0")
        if self.alpha is not None and not self.alpha > 0:
            raise ConfigurationError("alpha must be positive")
        if self.command == "polygon" and not self.polygon_path:
            raise ConfigurationError("polygon needs an input file")
        if self.command == "bessel" and (self.nu is None or not self.radii):
            raise ConfigurationError("bessel needs --nu and at least one --r")
        return self

    @classmethod
    def from_dict(cls, data):
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigurationError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)


def _encode(obj):
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        text = format(obj, ".17g")
        if all(ch not in text for ch in ".en"):
            text += ".0"
        return text
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if hasattr(obj, "tolist"):  # numpy arrays and scalars
        return _encode(obj.tolist())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj):
    """JSON text with floats at 17 significant digits."""
    return _encode(obj) + "\n"


def report_document(config, results):
    return {"config": asdict(config), "results": results}


def parse_report(text):
    """(RunConfig, results) from a JSON report."""
    doc = json.loads(text)
    return RunConfig.from_dict(doc["config"]), doc["results"]


def eigenvalue_csv(values):
    lines = ["index,eigenvalue"]
    lines += [f"{i},{format(float(v), '.17g')}" for i, v in enumerate(values)]
    return "\n".join(lines) + "\n"


def write_atomic(path, text):
    """Write ``text`` to ``path`` through a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
