"""Runtime configuration: defaults, config file, environment, CLI flags.

Precedence, lowest to highest: built-in defaults, `--config` key=value
file, JETLAW_* environment variables, explicit command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from fractions import Fraction

from .expr import ParseError, Sym, as_expr, parse
from .conservation import ORIGIN, ReferenceJetPoint


class ConfigError(ValueError):
    """A configuration source holds an unusable key or value."""


@dataclass(frozen=True)
class Config:
    seed: int = 42
    samples: int = 8
    tolerance: float = 1e-8
    format: str = "text"
    reference_point: ReferenceJetPoint = ORIGIN


ENV_PREFIX = "JETLAW_"
_KEYS = ("seed", "samples", "tolerance", "format", "ref_point")


def parse_reference_point(text: str) -> ReferenceJetPoint:
    """Parse 'atom=value' pairs joined by commas at the top level.

    Atom syntax matches the expression grammar (w[1,0]=2, xi=-1/2), so the
    jet brackets' own commas are honored by splitting on '=' first.
    """
    text = text.strip()
    if not text:
        return ORIGIN
    pieces = text.split("=")
    if len(pieces) < 2:
        raise ConfigError(f"reference point needs atom=value pairs, got {text!r}")
    entries = []
    name = pieces[0]
    for middle in pieces[1:-1]:
        value, _, next_name = middle.rpartition(",")
        if not value or not next_name:
            raise ConfigError(f"malformed reference point near {middle!r}")
        entries.append((name.strip(), value.strip()))
        name = next_name
    entries.append((name.strip(), pieces[-1].strip()))

    values = {}
    for atom_text, value_text in entries:
        try:
            atom_expr = parse(atom_text)
        except ParseError as exc:
            raise ConfigError(f"bad reference atom {atom_text!r}: {exc}") from exc
        atoms = atom_expr.base_atoms()
        if len(atoms) != 1 or atom_expr != as_expr(next(iter(atoms))):
            raise ConfigError(f"reference atom {atom_text!r} is not a single atom")
        atom = next(iter(atoms))
        if isinstance(atom, Sym) and atom.name not in ("xi", "eta"):
            raise ConfigError(f"reference point fixes light-cone atoms, not {atom}")
        try:
            values[atom] = Fraction(value_text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad reference value {value_text!r}") from exc
    return ReferenceJetPoint.from_dict(values)


def _apply(config: Config, key: str, raw: str, origin: str) -> Config:
    try:
        if key == "seed":
            return replace(config, seed=int(raw))
        if key == "samples":
            count = int(raw)
            if count < 1:
                raise ValueError("sample count must be positive")
            return replace(config, samples=count)
        if key == "tolerance":
            value = float(raw)
            if not value > 0:
                raise ValueError("tolerance must be positive")
            return replace(config, tolerance=value)
        if key == "format":
            if raw not in ("text", "json"):
                raise ValueError("format must be text or json")
            return replace(config, format=raw)
        if key == "ref_point":
            return replace(config, reference_point=parse_reference_point(raw))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{origin}: bad value for {key}: {exc}") from exc
    raise ConfigError(f"{origin}: unknown key {key!r}")


def load_file(config: Config, path: str) -> Config:
    """Apply key=value lines; blank lines and #-comments are skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise ConfigError(f"{path}:{number}: expected <key>=<value> with key in {_KEYS}")
        config = _apply(config, key, value.strip(), f"{path}:{number}")
    return config


def load_env(config: Config, environ=None) -> Config:
    environ = os.environ if environ is None else environ
    for key in _KEYS:
        raw = environ.get(ENV_PREFIX + key.upper())
        if raw is not None:
            config = _apply(config, key, raw, ENV_PREFIX + key.upper())
    return config


def resolve(file_path: str | None = None, environ=None, **flags) -> Config:
    """Layer all sources; flags are passed as keyword overrides or None."""
    config = Config()
    if file_path:
        config = load_file(config, file_path)
    config = load_env(config, environ)
    for key, value in flags.items():
        if value is not None:
            config = _apply(config, key, str(value), "command line")
    return config
