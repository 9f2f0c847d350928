"""Scene files: a JSON description of a group, complexes and experiments.

Example::

    {
      "schema": "equirep/1",
      "group": {"cyclic": 2},
      "complexes": {
        "S1": {"builder": "linear_sphere", "m": 2, "weights": [1]},
        "S3": {"builder": "join", "of": ["S1", "S1"]}
      },
      "experiments": [
        {"kind": "stabilize", "complex": "S1", "K": "trivial",
         "n_range": [2, 3], "k_max": 2, "coeffs": ["Z"]}
      ]
    }

Complex blocks are either ``{"explicit": {...}}`` or a builder call:
``point``, ``two_points``, ``circle``/``polygon``, ``simplex_boundary``,
``linear_sphere``, ``join``, ``n_fold_join`` and ``sd``. Subgroups are
``"trivial"``, ``"whole"`` or ``{"generated_by": [perm, ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .complex import (
    DEFAULT_MAX_SIMPLICES,
    GComplex,
    Subcomplex,
    join,
    n_fold_join,
    polygon,
    point,
    sd,
    simplex_boundary,
    singular_subcomplex,
    two_points,
)
from .groups import FiniteGroup, Subgroup, cyclic_group, group_from_generators, symmetric_group, trivial_group

SCHEMA = "equirep/1"
EXPERIMENT_KINDS = ("stabilize", "duality", "tor", "filtration")


class SceneError(ValueError):
    pass


@dataclass
class Experiment:
    name: str
    kind: str
    params: dict[str, Any]


@dataclass
class Scene:
    group: FiniteGroup
    complexes: dict[str, GComplex]
    experiments: list[Experiment] = field(default_factory=list)
    max_simplices: int = DEFAULT_MAX_SIMPLICES

    def complex(self, name: str) -> GComplex:
        try:
            return self.complexes[name]
        except KeyError:
            raise SceneError(f"unknown complex {name!r}") from None

    def subgroup(self, spec: Any) -> Subgroup:
        G = self.group
        if spec in (None, "trivial", "e"):
            return G.trivial_subgroup()
        if spec == "whole":
            return G.whole()
        if isinstance(spec, Mapping) and "generated_by" in spec:
            return G.subgroup_from_perms([tuple(p) for p in spec["generated_by"]])
        raise SceneError(f"cannot read subgroup {spec!r}")

    def subcomplex(self, X: GComplex, spec: Any) -> Subcomplex | None:
        if spec is None:
            return None
        if isinstance(spec, Mapping) and "singular" in spec:
            return singular_subcomplex(X, self.subgroup(spec["singular"]))
        if isinstance(spec, list):
            return X.subcomplex(spec)
        raise SceneError(f"cannot read subcomplex {spec!r}")


def _group(block: Mapping[str, Any]) -> FiniteGroup:
    if "cyclic" in block:
        return cyclic_group(int(block["cyclic"]))
    if "symmetric" in block:
        return symmetric_group(int(block["symmetric"]))
    if "generators" in block:
        gens = [tuple(p) for p in block["generators"]]
        degree = int(block.get("degree", len(gens[0]) if gens else 1))
        return group_from_generators(degree, gens, name=block.get("name", ""))
    if block.get("trivial"):
        return trivial_group()
    raise SceneError("group block needs one of: cyclic, symmetric, generators, trivial")


def _build(name: str, block: Mapping[str, Any], G: FiniteGroup, done: dict[str, GComplex], cap: int) -> GComplex:
    from .lab import linear_sphere

    def ref(key: str) -> GComplex:
        other = block[key]
        if other not in done:
            raise SceneError(f"complex {name!r} refers to {other!r}, which is not defined earlier")
        return done[other]

    if "explicit" in block:
        e = block["explicit"]
        return GComplex.from_generators(int(e["num_vertices"]), [tuple(s) for s in e["simplices"]], G,
                                        [tuple(p) for p in e.get("generator_actions", [])] or None,
                                        max_simplices=cap)
    kind = block.get("builder")
    if kind == "point":
        return point(G)
    if kind == "two_points":
        return two_points(G, bool(block.get("swap", False)))
    if kind in ("circle", "polygon"):
        shifts = block.get("shifts")
        if shifts is None:
            shifts = [int(block.get("shift", 0))] * len(G.generators)
        return polygon(int(block["n"]), group=G, generator_shifts=shifts)
    if kind == "simplex_boundary":
        return simplex_boundary(int(block["d"]), G)
    if kind == "linear_sphere":
        return linear_sphere(int(block["m"]), list(block["weights"]), cap, group=G)
    if kind == "join":
        names = block["of"]
        out = None
        for nm in names:
            if nm not in done:
                raise SceneError(f"complex {name!r} refers to {nm!r}, which is not defined earlier")
            out = done[nm] if out is None else join(out, done[nm], cap)
        if out is None:
            raise SceneError(f"join {name!r} has no factors")
        return out
    if kind == "n_fold_join":
        return n_fold_join(ref("of"), int(block["n"]), cap)
    if kind == "sd":
        X = ref("of")
        for _ in range(int(block.get("times", 1))):
            X = sd(X, cap)
        return X
    raise SceneError(f"complex {name!r}: unknown builder {kind!r}")


def load_scene(obj: Mapping[str, Any] | str) -> Scene:
    """Parse a scene from a dict, a JSON string or a path to a JSON file."""
    if isinstance(obj, str):
        text = obj
        if not obj.lstrip().startswith("{"):
            with open(obj, encoding="utf-8") as fh:
                text = fh.read()
        obj = json.loads(text)
    if obj.get("schema") != SCHEMA:
        raise SceneError(f"schema must be {SCHEMA!r}")
    if "group" not in obj:
        raise SceneError("scene has no group block")
    G = _group(obj["group"])
    cap = int(obj.get("max_simplices", DEFAULT_MAX_SIMPLICES))
    complexes: dict[str, GComplex] = {}
    for name, block in obj.get("complexes", {}).items():
        complexes[name] = _build(name, block, G, complexes, cap)
    experiments = []
    for i, e in enumerate(obj.get("experiments", [])):
        kind = e.get("kind")
        if kind not in EXPERIMENT_KINDS:
            raise SceneError(f"experiment {i}: unknown kind {kind!r}")
        if "complex" in e and e["complex"] not in complexes:
            raise SceneError(f"experiment {i}: unknown complex {e['complex']!r}")
        params = {k: v for k, v in e.items() if k not in ("kind", "name")}
        experiments.append(Experiment(e.get("name", f"{kind}-{i}"), kind, params))
    return Scene(G, complexes, experiments, cap)


def parse_n_range(text: str | list | None) -> list[int]:
    """``"2..4"``, ``"1,3"``, ``[2, 3]`` or ``None`` (empty)."""
    if text is None:
        return []
    if isinstance(text, list):
        return [int(x) for x in text]
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out
