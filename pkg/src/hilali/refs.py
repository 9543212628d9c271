"""Textual references to catalog spaces and maps, or to JSON model files.

Grammar::

    point | sphere:N | cp:N | kq:N | wedge:N1,N2,...
    product:<ref>*<ref>            (spaces or maps; splits at the first '*')
    constant:<space> | identity:<space> | degree:N:d
    counterexample:referee | wedge-inclusion:N | fold:N
    path/to/model.json
"""

from __future__ import annotations

import os
from typing import Optional, Union

from .errors import InvalidDegree, UnresolvedReference
from .maps import (
    MapModel,
    constant_map,
    fold_map,
    identity_map,
    product_map,
    referee_counterexample,
    sphere_self_map,
    wedge_inclusion,
)
from .serialize import loads_model
from .spaces import (
    SpaceModel,
    complex_projective,
    default_truncation,
    eilenberg_maclane_q,
    point,
    product,
    sphere,
    wedge_of_spheres,
)

Model = Union[SpaceModel, MapModel]


def _int(text: str, ref: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UnresolvedReference(f"{ref!r}: {text!r} is not an integer") from None


def _load_file(path: str, truncation: Optional[int]) -> Model:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UnresolvedReference(f"cannot read {path}: {e.strerror}") from None
    return loads_model(text, lambda r: resolve_space(r, truncation))


def resolve(ref: str, truncation: Optional[int] = None) -> Model:
    """Resolve a reference to a SpaceModel or MapModel."""
    ref = ref.strip()
    d = default_truncation() if truncation is None else truncation
    if ref.endswith(".json") or os.path.sep in ref:
        return _load_file(ref, truncation)
    head, _, rest = ref.partition(":")
    try:
        if ref == "point":
            return point()
        if head == "sphere":
            return sphere(_int(rest, ref))
        if head == "cp":
            return complex_projective(_int(rest, ref))
        if head == "kq":
            return eilenberg_maclane_q(_int(rest, ref), max(d, _int(rest, ref)))
        if head == "wedge":
            degrees = [_int(x, ref) for x in rest.split(",") if x]
            return wedge_of_spheres(degrees, max([d] + degrees))
        if head == "product":
            left, star, right = rest.partition("*")
            if not star:
                raise UnresolvedReference(f"{ref!r}: product needs '<ref>*<ref>'")
            a, b = resolve(left, truncation), resolve(right, truncation)
            if isinstance(a, SpaceModel) and isinstance(b, SpaceModel):
                return product(a, b)
            if isinstance(a, MapModel) and isinstance(b, MapModel):
                return product_map(a, b)
            raise UnresolvedReference(f"{ref!r}: cannot multiply a space by a map")
        if head == "constant":
            return constant_map(resolve_space(rest, truncation))
        if head == "identity":
            return identity_map(resolve_space(rest, truncation))
        if head == "degree":
            n, _, deg = rest.partition(":")
            return sphere_self_map(_int(n, ref), _int(deg, ref))
        if ref == "counterexample:referee":
            return referee_counterexample(max(d, 10))
        if head == "wedge-inclusion":
            n = _int(rest, ref)
            return wedge_inclusion(n, max(d, 2 * n))
        if head == "fold":
            n = _int(rest, ref)
            return fold_map(n, max(d, 2 * n))
    except InvalidDegree as e:
        raise UnresolvedReference(f"{ref!r}: {e}") from None
    raise UnresolvedReference(f"unknown reference {ref!r}")


def resolve_space(ref: str, truncation: Optional[int] = None) -> SpaceModel:
    model = resolve(ref, truncation)
    if not isinstance(model, SpaceModel):
        raise UnresolvedReference(f"{ref!r} names a map, a space was expected")
    return model


def resolve_map(ref: str, truncation: Optional[int] = None) -> MapModel:
    model = resolve(ref, truncation)
    if not isinstance(model, MapModel):
        raise UnresolvedReference(f"{ref!r} names a space, a map was expected")
    return model


SPACE_REFS = ("point", "sphere:2", "sphere:3", "sphere:4", "sphere:5", "sphere:6", "cp:1", "cp:2", "cp:3",
              "kq:3", "kq:4", "wedge:3,3", "wedge:2,2", "wedge:3,3,3", "wedge:2,3",
              "product:sphere:2*sphere:3", "product:sphere:4*sphere:6")

MAP_REFS = ("constant:sphere:2", "identity:sphere:2", "degree:2:0", "degree:2:2", "degree:3:2",
            "constant:cp:2", "constant:product:sphere:2*sphere:3", "product:constant:sphere:2*identity:sphere:3",
            "counterexample:referee", "wedge-inclusion:3", "fold:3")
