"""JSON configuration: exact fractions in, exact fractions out.

Rationals travel as strings ("p/q" or an integer string) because JSON
numbers are lossy. Unknown keys are rejected with a field path, as are
semantic violations (probabilities not summing to one, dyadic sample
points, wrong vector lengths).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .boolalg import BoolElem, FinitePowerAlgebra, Subalgebra
from .model import Cell, NoiseModel, RandomVariable, build_cell_model

FRACTION_RE = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")

_TOP_KEYS = {
    "cells",
    "subalgebras",
    "vectors",
    "embedding",
    "backend",
    "seed",
    "depth",
    "exhaustive_limit",
}


class ConfigError(ValueError):
    """Input error carrying the offending field path."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def parse_fraction(raw, path: str) -> Fraction:
    if not isinstance(raw, str) or not FRACTION_RE.match(raw):
        raise ConfigError(f"not an exact fraction string: {raw!r}", path)
    return Fraction(raw)


def format_fraction(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class ModelConfig:
    cells: tuple[Cell, ...]
    subalgebras: tuple[tuple[str, tuple[tuple[int, ...], ...]], ...] = ()
    vectors: tuple[tuple[str, tuple[Fraction, ...]], ...] = ()
    sample_points: tuple[Fraction, ...] | None = None
    backend: str = "exact"
    seed: int = 0
    depth: int = 6
    exhaustive_limit: int = 16

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def n_points(self) -> int:
        n = 1
        for c in self.cells:
            n *= c.k
        return n

    def build_model(self) -> NoiseModel:
        return build_cell_model(self.cells, backend=self.backend)

    def subalgebra_names(self) -> list[str]:
        return [name for name, _ in self.subalgebras]

    def vector_names(self) -> list[str]:
        return [name for name, _ in self.vectors]

    def subalgebra(self, name: str) -> Subalgebra:
        for key, blocks in self.subalgebras:
            if key == name:
                alg = FinitePowerAlgebra(self.n_cells)
                return Subalgebra(
                    alg, tuple(BoolElem.from_indices(b, self.n_cells) for b in blocks)
                )
        raise ConfigError(f"unknown subalgebra {name!r}", "subalgebras")

    def vector(self, name: str, model: NoiseModel) -> RandomVariable:
        for key, values in self.vectors:
            if key == name:
                return model.from_values(values)
        raise ConfigError(f"unknown vector {name!r}", "vectors")


def _require_keys(obj: dict, allowed: set[str], path: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", path)


def _parse_cells(raw, path: str) -> tuple[Cell, ...]:
    if not isinstance(raw, list):
        raise ConfigError("cells must be a list", path)
    cells = []
    for i, entry in enumerate(raw):
        cpath = f"{path}[{i}]"
        if not isinstance(entry, dict):
            raise ConfigError("cell must be an object", cpath)
        _require_keys(entry, {"k", "probs"}, cpath)
        if "probs" not in entry:
            raise ConfigError("cell needs probs", cpath)
        probs = entry["probs"]
        if not isinstance(probs, list):
            raise ConfigError("probs must be a list", cpath)
        parsed = tuple(
            parse_fraction(p, f"{cpath}.probs[{j}]") for j, p in enumerate(probs)
        )
        if "k" in entry and entry["k"] != len(parsed):
            raise ConfigError(
                f"k={entry['k']} does not match {len(parsed)} probabilities", cpath
            )
        try:
            cells.append(Cell(parsed))
        except ValueError as exc:
            raise ConfigError(str(exc), cpath) from exc
    return tuple(cells)


def load_config_dict(data: dict) -> ModelConfig:
    if not isinstance(data, dict):
        raise ConfigError("top level must be an object")
    _require_keys(data, _TOP_KEYS, "")
    if "cells" not in data:
        raise ConfigError("missing key 'cells'")
    cells = _parse_cells(data["cells"], "cells")
    n = len(cells)
    n_points = 1
    for c in cells:
        n_points *= c.k

    subalgebras = []
    for name, blocks in dict(data.get("subalgebras", {})).items():
        spath = f"subalgebras.{name}"
        if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
            raise ConfigError("blocks must be a list of index lists", spath)
        seen: set[int] = set()
        for b in blocks:
            for i in b:
                if not isinstance(i, int) or not 0 <= i < n:
                    raise ConfigError(f"cell index {i} out of range", spath)
                if i in seen:
                    raise ConfigError(f"cell index {i} repeated across blocks", spath)
                seen.add(i)
            if not b:
                raise ConfigError("empty block", spath)
        if seen != set(range(n)):
            raise ConfigError("blocks do not cover all cells", spath)
        subalgebras.append((name, tuple(tuple(b) for b in blocks)))

    vectors = []
    for name, values in dict(data.get("vectors", {})).items():
        vpath = f"vectors.{name}"
        if not isinstance(values, list):
            raise ConfigError("vector must be a list of fraction strings", vpath)
        parsed_v = tuple(
            parse_fraction(v, f"{vpath}[{j}]") for j, v in enumerate(values)
        )
        if len(parsed_v) != n_points:
            raise ConfigError(
                f"vector has {len(parsed_v)} entries, space has {n_points} points", vpath
            )
        vectors.append((name, parsed_v))

    sample_points = None
    if "embedding" in data:
        epath = "embedding"
        emb = data["embedding"]
        if not isinstance(emb, dict):
            raise ConfigError("embedding must be an object", epath)
        _require_keys(emb, {"sample_points"}, epath)
        pts_raw = emb.get("sample_points")
        if not isinstance(pts_raw, list):
            raise ConfigError("sample_points must be a list", epath)
        pts = tuple(
            parse_fraction(p, f"{epath}.sample_points[{j}]") for j, p in enumerate(pts_raw)
        )
        if len(pts) != n:
            raise ConfigError(f"need {n} sample points, got {len(pts)}", epath)
        for j, t in enumerate(pts):
            if not 0 < t < 1:
                raise ConfigError(f"sample point {t} outside (0,1)", f"{epath}.sample_points[{j}]")
            if t.denominator & (t.denominator - 1) == 0:
                raise ConfigError(
                    f"sample point on a potential boundary: {t}", f"{epath}.sample_points[{j}]"
                )
        for a, b in zip(pts, pts[1:]):
            if not a < b:
                raise ConfigError("sample points must be strictly increasing", epath)
        sample_points = pts

    backend = data.get("backend", "exact")
    if backend not in ("exact", "float"):
        raise ConfigError(f"unknown backend {backend!r}", "backend")
    seed = data.get("seed", 0)
    if not isinstance(seed, int) or not 0 <= seed < 1 << 64:
        raise ConfigError("seed must be an unsigned 64-bit integer", "seed")
    depth = data.get("depth", 6)
    if not isinstance(depth, int) or not 0 <= depth <= 16:
        raise ConfigError("depth must be an integer in 0..16", "depth")
    limit = data.get("exhaustive_limit", 16)
    if not isinstance(limit, int) or limit < 1:
        raise ConfigError("exhaustive_limit must be a positive integer", "exhaustive_limit")

    return ModelConfig(
        cells=cells,
        subalgebras=tuple(subalgebras),
        vectors=tuple(vectors),
        sample_points=sample_points,
        backend=backend,
        seed=seed,
        depth=depth,
        exhaustive_limit=limit,
    )


def load_model_config(path: str) -> ModelConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return load_config_dict(data)


def emit_config_dict(cfg: ModelConfig) -> dict:
    """Canonical JSON form; loading it back reproduces the config exactly."""
    data: dict = {
        "cells": [
            {"k": c.k, "probs": [format_fraction(p) for p in c.probs]} for c in cfg.cells
        ]
    }
    if cfg.subalgebras:
        data["subalgebras"] = {
            name: [list(b) for b in blocks] for name, blocks in cfg.subalgebras
        }
    if cfg.vectors:
        data["vectors"] = {
            name: [format_fraction(v) for v in values] for name, values in cfg.vectors
        }
    if cfg.sample_points is not None:
        data["embedding"] = {
            "sample_points": [format_fraction(t) for t in cfg.sample_points]
        }
    data["backend"] = cfg.backend
    data["seed"] = cfg.seed
    data["depth"] = cfg.depth
    data["exhaustive_limit"] = cfg.exhaustive_limit
    return data


def decimal12(x) -> str:
    """12 significant digits, for the human/CSV renderings."""
    return f"{float(x):.12g}"
