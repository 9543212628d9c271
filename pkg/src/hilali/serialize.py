"""JSON encoding of models and reports.

Models use a canonical layout: fixed top-level key order, degree keys in
numeric order, rationals as lowest-terms strings.  Dumping a loaded model
reproduces the input bytes whenever the input was itself canonical.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from fractions import Fraction
from typing import Any, Callable, Optional

from .errors import DegreeOutOfWindow, MalformedModel
from .graded import GradedDims, GradedLinearMap, RationalMatrix
from .maps import MapModel
from .series import PolynomialQ, TruncatedSeriesQ
from .spaces import SpaceModel


def rational_str(x) -> str:
    return str(Fraction(x))


def _parse_rational(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise MalformedModel(f"rational entries must be strings 'p/q' or integers, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedModel(f"bad rational {s!r}") from e


def support_json(dims: GradedDims) -> dict:
    if not dims.truncated:
        return {"finiteUpTo": dims.bound}
    out = {"truncatedAt": dims.bound}
    if dims.infinite:
        out["infinite"] = True
    return out


def dims_json(dims: GradedDims) -> dict:
    return {str(d): dims.dims[d] for d in sorted(dims.dims)}


def _degree(key) -> int:
    try:
        d = int(key)
    except (TypeError, ValueError) as e:
        raise MalformedModel(f"degree key {key!r} is not an integer") from e
    if d < 0:
        raise MalformedModel(f"negative degree {d}")
    return d


def _field(obj: dict, key: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedModel(f"missing field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise MalformedModel(f"field {key!r} has the wrong type")
    return value


def dims_from_json(ranks: dict, support: dict) -> GradedDims:
    if not isinstance(ranks, dict) or not isinstance(support, dict):
        raise MalformedModel("ranks and support must be objects")
    parsed = {}
    for k, v in ranks.items():
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise MalformedModel(f"rank at degree {k} must be a nonnegative integer")
        parsed[_degree(k)] = v
    key = "finiteUpTo" if "finiteUpTo" in support else "truncatedAt"
    bound = support.get(key)
    if isinstance(bound, bool) or not isinstance(bound, int):
        raise MalformedModel("support must give an integer 'finiteUpTo' or 'truncatedAt'")
    try:
        return GradedDims(parsed, bound, key == "truncatedAt", bool(support.get("infinite", False)))
    except ValueError as e:
        raise MalformedModel(str(e)) from e


def space_to_json(x: SpaceModel) -> dict:
    return {
        "name": x.name,
        "homology": dims_json(x.homology),
        "homotopy": dims_json(x.homotopy),
        "homologySupport": support_json(x.homology),
        "homotopySupport": support_json(x.homotopy),
        "notes": x.notes,
    }


def space_from_json(obj: dict) -> SpaceModel:
    homology = dims_from_json(_field(obj, "homology"), _field(obj, "homologySupport"))
    homotopy = dims_from_json(_field(obj, "homotopy"), _field(obj, "homotopySupport"))
    try:
        return SpaceModel(_field(obj, "name", str), homology, homotopy, obj.get("notes", ""))
    except ValueError as e:
        raise MalformedModel(str(e)) from e


def _blocks_json(f: GradedLinearMap) -> dict:
    return {str(d): [[rational_str(c) for c in row] for row in f.blocks[d].to_rows()]
            for d in sorted(f.blocks)}


def _blocks_from_json(obj: dict, source: GradedDims, target: GradedDims) -> GradedLinearMap:
    if not isinstance(obj, dict):
        raise MalformedModel("blocks must be an object keyed by degree")
    blocks = {}
    for k, rows in obj.items():
        d = _degree(k)
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise MalformedModel(f"block at degree {d} must be a list of rows")
        cols = source.rank(d) if source.knows(d) else None
        try:
            blocks[d] = RationalMatrix.from_rows([[_parse_rational(c) for c in r] for r in rows], cols)
        except ValueError as e:
            raise MalformedModel(f"block at degree {d}: {e}") from e
    try:
        return GradedLinearMap(source, target, blocks)
    except (ValueError, DegreeOutOfWindow) as e:
        raise MalformedModel(str(e)) from e


def map_to_json(f: MapModel, source_ref: Optional[str] = None, target_ref: Optional[str] = None) -> dict:
    return {
        "name": f.name,
        "source": source_ref if source_ref is not None else space_to_json(f.source),
        "target": target_ref if target_ref is not None else space_to_json(f.target),
        "H": _blocks_json(f.h),
        "pi": _blocks_json(f.pi),
        "notes": f.notes,
    }


def map_from_json(obj: dict, resolve_space: Optional[Callable[[str], SpaceModel]] = None) -> MapModel:
    def side(key):
        value = _field(obj, key)
        if isinstance(value, str):
            if resolve_space is None:
                raise MalformedModel(f"{key} is a reference but no resolver was given")
            return resolve_space(value)
        return space_from_json(value)

    source, target = side("source"), side("target")
    h = _blocks_from_json(_field(obj, "H"), source.homology, target.homology)
    pi = _blocks_from_json(_field(obj, "pi"), source.homotopy, target.homotopy)
    try:
        return MapModel(_field(obj, "name", str), source, target, h, pi, obj.get("notes", ""))
    except ValueError as e:
        raise MalformedModel(str(e)) from e


def is_map_json(obj) -> bool:
    return isinstance(obj, dict) and "H" in obj


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def model_to_json(model) -> dict:
    return map_to_json(model) if isinstance(model, MapModel) else space_to_json(model)


def dumps_model(model) -> str:
    return canonical_dumps(model_to_json(model))


def loads_model(text: str, resolve_space: Optional[Callable[[str], SpaceModel]] = None):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedModel(f"invalid JSON: {e}") from e
    return map_from_json(obj, resolve_space) if is_map_json(obj) else space_from_json(obj)


def _float(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return x


def to_jsonable(obj: Any) -> Any:
    """Plain JSON data for reports; exact rationals become strings."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, GradedDims):
        return {"ranks": dims_json(obj), "support": support_json(obj)}
    if isinstance(obj, PolynomialQ):
        return {"coefficients": {str(d): rational_str(c) for d, c in sorted(obj.coeffs.items())},
                "text": str(obj)}
    if isinstance(obj, TruncatedSeriesQ):
        return {"coefficients": {str(d): rational_str(c) for d, c in enumerate(obj.coeffs) if c},
                "truncation": obj.n, "polynomial": obj.polynomial, "text": str(obj)}
    if isinstance(obj, SpaceModel):
        return space_to_json(obj)
    if isinstance(obj, MapModel):
        return map_to_json(obj)
    if dataclasses.is_dataclass(obj):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for name in dir(type(obj)):
            if isinstance(getattr(type(obj), name, None), property) and not name.startswith("_"):
                out[name] = to_jsonable(getattr(obj, name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")
