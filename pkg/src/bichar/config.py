"""Session configuration files (TOML or JSON).

Example::

    [algebra]
    grouplike = 1
    naming = "plain"            # "plain" (x1, x2, ...) or "lattice" (x(i,m))
    coefficient_ring = "Q[z,z^-1]"

    [bichar.r]
    gg = [["2"]]
    gp = [{i = 1, m = 1, value = "-1/4*z^-1"}]
    pg = []
    pp = [{m = 1, n = 1, value = "1/16*z^-2"}]

    [lattice]                   # optional; registers the lattice bicharacter
    rank = 2
    gram = [[2, -1], [-1, 2]]
    series_order = 4
    depth = 1
    bichar = "r"
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .bicharacter import BicharSpec
from .coeffring import LaurentPoly, as_fraction
from .errors import BicharError, ConfigError, NonConstantGrouplikeValue
from .hopf import Signature
from .lattice import Lattice, flm_series, lattice_bicharacter
from .parsing import parse_coefficient, parse_primitive

RINGS = ("Q", "Q[z]", "Q[z,z^-1]")


@dataclass
class SessionConfig:
    signature: Signature
    coefficient_ring: str = "Q[z,z^-1]"
    bicharacters: dict = field(default_factory=dict)
    lattice: Lattice | None = None
    series_order: int | None = None
    depth: int = 1

    def bichar(self, name: str | None) -> BicharSpec:
        if name is None:
            if len(self.bicharacters) != 1:
                raise ConfigError(
                    f"choose a bicharacter with --bichar (available: {', '.join(sorted(self.bicharacters)) or 'none'})"
                )
            name = next(iter(self.bicharacters))
        try:
            return self.bicharacters[name]
        except KeyError:
            raise ConfigError(f"no bicharacter named {name!r}") from None


def _in_ring(value: LaurentPoly, ring: str) -> bool:
    if ring == "Q":
        return value.is_constant()
    if ring == "Q[z]":
        return all(e >= 0 for e, _ in value.items())
    return True


def _read(path: Path) -> dict:
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return json.loads(text)
    return tomllib.loads(text)


def _grouplike_cell(value):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        if isinstance(value, float):
            raise ConfigError("write grouplike values as exact rationals, e.g. \"1/2\"")
        return as_fraction(value)
    coeff = parse_coefficient(value)
    if not coeff.is_constant():
        raise NonConstantGrouplikeValue(f"grouplike-grouplike value {value!r} must be a rational constant")
    return coeff.constant()


def bichar_from_dict(data: dict, sig: Signature, ring: str = "Q[z,z^-1]") -> BicharSpec:
    ell = sig.num_grouplike
    gg = [[1] * ell for _ in range(ell)]
    rows = data.get("gg", [])
    if rows and (len(rows) != ell or any(len(row) != ell for row in rows)):
        raise ConfigError(f"gg must be a {ell}x{ell} matrix")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            gg[i][j] = _grouplike_cell(v)

    def value(entry):
        v = parse_coefficient(entry["value"])
        if not _in_ring(v, ring):
            raise ConfigError(f"value {v} is outside the coefficient ring {ring}")
        return v

    def grouplike_index(entry):
        i = int(entry["i"])
        if not 1 <= i <= ell:
            raise ConfigError(f"grouplike index {i} out of range 1..{ell}")
        return i - 1

    gp, pg, pp = {}, {}, {}
    try:
        for entry in data.get("gp", []):
            key = (grouplike_index(entry), parse_primitive(entry["m"], sig))
            gp[key] = gp.get(key, LaurentPoly()) + value(entry)
        for entry in data.get("pg", []):
            key = (parse_primitive(entry["m"], sig), grouplike_index(entry))
            pg[key] = pg.get(key, LaurentPoly()) + value(entry)
        for entry in data.get("pp", []):
            key = (parse_primitive(entry["m"], sig), parse_primitive(entry["n"], sig))
            pp[key] = pp.get(key, LaurentPoly()) + value(entry)
    except KeyError as exc:
        raise ConfigError(f"bicharacter entry is missing field {exc}") from None
    return BicharSpec(sig, gg, gp, pg, pp)


def _pid_out(sig: Signature, pid) -> str:
    return sig.primitive_name(pid)


def bichar_to_dict(r: BicharSpec) -> dict:
    """Inverse of :func:`bichar_from_dict`; stable key order for deterministic output."""
    sig = r.sig
    return {
        "gg": [[str(v) for v in row] for row in r.gg],
        "gp": [
            {"i": i + 1, "m": _pid_out(sig, m), "value": str(v)}
            for (i, m), v in sorted(r.gp.items(), key=lambda t: (t[0][0], t[0][1]))
        ],
        "pg": [
            {"m": _pid_out(sig, m), "i": i + 1, "value": str(v)}
            for (m, i), v in sorted(r.pg.items(), key=lambda t: (t[0][0], t[0][1]))
        ],
        "pp": [
            {"m": _pid_out(sig, m), "n": _pid_out(sig, n), "value": str(v)}
            for (m, n), v in sorted(r.pp.items())
        ],
    }


def load_config(path, order: int | None = None, depth: int | None = None) -> SessionConfig:
    path = Path(path)
    try:
        data = _read(path)
    except (OSError, ValueError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return config_from_dict(data, order=order, depth=depth)


def config_from_dict(data: dict, order: int | None = None, depth: int | None = None) -> SessionConfig:
    algebra = data.get("algebra", {})
    lat_data = data.get("lattice")
    lattice = None
    if lat_data is not None:
        try:
            lattice = Lattice(int(lat_data["rank"]), tuple(tuple(_grouplike_cell(v) for v in row) for row in lat_data["gram"]))
        except KeyError as exc:
            raise ConfigError(f"lattice section is missing {exc}") from None
        sig = lattice.signature
        if "grouplike" in algebra and int(algebra["grouplike"]) != lattice.rank:
            raise ConfigError("algebra.grouplike disagrees with lattice.rank")
    else:
        sig = Signature(int(algebra.get("grouplike", 0)), algebra.get("naming", "plain"))
    ring = algebra.get("coefficient_ring", "Q[z,z^-1]")
    if ring not in RINGS:
        raise ConfigError(f"coefficient_ring must be one of {RINGS}")
    cfg = SessionConfig(sig, ring)
    for name, table in (data.get("bichar") or {}).items():
        cfg.bicharacters[name] = bichar_from_dict(table, sig, ring)
    if lattice is not None:
        cfg.lattice = lattice
        cfg.depth = int(depth if depth is not None else lat_data.get("depth", 1))
        cfg.series_order = int(order if order is not None else lat_data.get("series_order", 2 * cfg.depth))
        name = lat_data.get("bichar", "r")
        r = lattice_bicharacter(lattice, flm_series(cfg.series_order), cfg.depth)
        for v in list(r.gp.values()) + list(r.pg.values()) + list(r.pp.values()):
            if not _in_ring(v, ring):
                raise ConfigError(f"lattice bicharacter value {v} is outside {ring}")
        cfg.bicharacters.setdefault(name, r)
    elif order is not None:
        cfg.series_order = order
    return cfg
