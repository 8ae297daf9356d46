import math
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from affinefields.errors import ConfigError
from affinefields.lattice import LatticeSpacetime
from affinefields.operator import AffineOperator
from affinefields.section import Section

KEYS = ("n_x", "n_t", "dx", "dt", "mass", "source", "statistics", "window", "samples", "seed", "out")


class RunConfig(BaseModel):
    """
    Validated run configuration of the verification suites.

    :param source: inhomogeneity J as (t, x, value) triples, or the text form "t x v; t x v"
    :param window: time window (t_a, t_b) for the time-slice suite, or the text form "t_a t_b"
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    n_x: int = 16
    n_t: int = 64
    dx: float = 1.0
    dt: float = 0.5
    mass: float = 1.0
    source: List[Tuple[int, int, float]] = []
    statistics: Literal["bosonic", "fermionic"] = "bosonic"
    window: Optional[Tuple[int, int]] = None
    samples: int = 20
    seed: int = 0
    out: str = "results"

    @field_validator("source", mode="before")
    @classmethod
    def parse_source(cls, value):
        if isinstance(value, str):
            triples = []
            for item in value.split(";"):
                if not item.strip():
                    continue
                parts = item.split()
                if len(parts) != 3:
                    raise ValueError(f"source entry {item.strip()!r} is not 't x value'")
                triples.append((int(parts[0]), int(parts[1]), float(parts[2])))
            return triples
        return value

    @field_validator("window", mode="before")
    @classmethod
    def parse_window(cls, value):
        if isinstance(value, str):
            parts = value.split()
            if not parts:
                return None
            if len(parts) != 2:
                raise ValueError(f"window {value!r} is not 't_a t_b'")
            return int(parts[0]), int(parts[1])
        return value

    @model_validator(mode="after")
    def check_lattice(self):
        if self.n_x < 3:
            raise ValueError(f"n_x must be at least 3 (n_x={self.n_x})")
        if self.n_t < 8:
            raise ValueError(f"n_t must be at least 8 (n_t={self.n_t})")
        if self.dx <= 0 or self.dt <= 0:
            raise ValueError(f"spacings must be positive (dx={self.dx}, dt={self.dt})")
        if self.dt > self.dx:
            raise ValueError(f"dt must not exceed dx (dt={self.dt}, dx={self.dx})")
        if self.mass <= 0:
            raise ValueError(f"mass must be positive (mass={self.mass})")
        omega_max = math.sqrt(self.mass ** 2 + 4.0 / self.dx ** 2)
        if self.dt * omega_max >= 2.0:
            raise ValueError(f"unstable mode: dt * omega_max = {self.dt * omega_max:.6g} must be below 2")
        for t, x, _ in self.source:
            if not 2 <= t <= self.n_t - 3:
                raise ValueError(f"source site ({t}, {x}) outside the compact-support slices [2, {self.n_t - 3}]")
            if not 0 <= x < self.n_x:
                raise ValueError(f"source site ({t}, {x}) outside the spatial range [0, {self.n_x})")
        if self.window is not None:
            t_a, t_b = self.window
            if not 0 <= t_a <= t_b < self.n_t:
                raise ValueError(f"window ({t_a}, {t_b}) out of range [0, {self.n_t})")
            if t_b - t_a < 4:
                raise ValueError(f"window ({t_a}, {t_b}) too narrow: t_b - t_a must be at least 4")
        if self.samples < 1:
            raise ValueError(f"samples must be positive (samples={self.samples})")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative (seed={self.seed})")
        return self

    def lattice(self) -> LatticeSpacetime:
        return LatticeSpacetime(self.n_x, self.n_t, self.dx, self.dt, self.mass)

    def operator(self) -> AffineOperator:
        lattice = self.lattice()
        return AffineOperator(lattice, Section.fromTriples(lattice, self.source))


def parse_config_text(text: str) -> Dict[str, str]:
    """
    Parses a flat `key = value` file; `#` starts a comment.
    """
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"Line {number}: expected 'key = value', got {raw.strip()!r}.")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"Line {number}: unknown key {key!r}; expected one of {', '.join(KEYS)}.")
        values[key] = value
    return values


def build_config(values: Dict[str, object]) -> RunConfig:
    try:
        return RunConfig(**values)
    except ValidationError as e:
        messages = "; ".join(error["msg"].removeprefix("Value error, ") for error in e.errors())
        raise ConfigError(f"Invalid configuration: {messages}") from None


def load_config(path: Optional[str] = None, overrides: Optional[Dict[str, object]] = None) -> RunConfig:
    """
    Reads the config file at `path` (defaults only if None) and applies
    command-line overrides that are not None.
    """
    values: Dict[str, object] = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as f:
                values.update(parse_config_text(f.read()))
        except OSError as e:
            raise ConfigError(f"Cannot read config file {path!r}: {e.strerror}.") from None
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return build_config(values)
