"""Command line front end: ``equirep <command> SCENE [options]``.

Exit status: 0 when every verdict passes, 1 when a verdict fails or a
golden comparison differs, 2 when a simplex/generator cap or a hypothesis
gate stops a computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .algebra import as_group, coeff_label, homology
from .bredon import BredonError, bredon_cohomology, bredon_homology
from .complex import ComplexError, SimplexCapExceeded
from .duality import DualityError, verify_lefschetz
from .functor import (
    GeneratorCapExceeded,
    check_bounds,
    constant_functor,
    group_homology,
    one_object_category,
    tor_over_category,
)
from .groups import conjugacy_classes_of_subgroups
from .lab import emit_many, orbit_filtration, stabilization_experiment
from .scene import Scene, SceneError, load_scene, parse_n_range

EXIT_OK, EXIT_FAIL, EXIT_GATE = 0, 1, 2


def _coeffs(args, default: Sequence[Any] | None = None) -> list:
    if args.coeff:
        return [as_group(c) for c in args.coeff]
    if default:
        return [as_group(c) for c in default]
    return [as_group(None)]


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def cmd_group(scene: Scene, args) -> tuple[str, int]:
    G = scene.group
    classes = [{"order": c.representative.order, "conjugates": len(c.conjugates),
                "representative": list(c.representative.members)}
               for c in conjugacy_classes_of_subgroups(G)]
    return _dump({"name": G.name, "order": G.order, "abelian": G.is_abelian(),
                  "group": G.to_json(), "subgroup_classes": classes}), EXIT_OK


def cmd_build(scene: Scene, args) -> tuple[str, int]:
    out = {}
    for name, X in scene.complexes.items():
        r = X.regularity
        out[name] = {"dim": X.dim, "f_vector": list(X.f_vector), "euler": X.euler_characteristic(),
                     "fixed_sets_full": r.fixed_sets_full, "pointwise_fixing": r.pointwise_fixing,
                     "quotient_safe": r.quotient_safe}
    return _dump(out), EXIT_OK


def cmd_homology(scene: Scene, args) -> tuple[str, int]:
    out = {}
    for name, X in scene.complexes.items():
        out[name] = {coeff_label(M): [str(g) for g in homology(X.chain_complex, M)] for M in _coeffs(args)}
    return _dump(out), EXIT_OK


def cmd_bredon(scene: Scene, args) -> tuple[str, int]:
    out, code = {}, EXIT_OK
    for name, X in scene.complexes.items():
        try:
            out[name] = {coeff_label(M): {"homology": [str(g) for g in bredon_homology(X, None, M)],
                                          "cohomology": [str(g) for g in bredon_cohomology(X, None, M)]}
                         for M in _coeffs(args)}
        except BredonError as exc:
            out[name] = {"error": str(exc)}
            code = EXIT_GATE
    return _dump(out), code


def cmd_duality(scene: Scene, args) -> tuple[str, int]:
    out, code = {}, EXIT_OK
    exps = [e for e in scene.experiments if e.kind == "duality"]
    if not exps:
        raise SceneError("scene has no duality experiments")
    for e in exps:
        p = e.params
        X = scene.complex(p["complex"])
        A = scene.subcomplex(X, p.get("A"))
        coeffs = _coeffs(args, p.get("coeffs"))
        cap = args.max_simplices or int(p.get("max_simplices", scene.max_simplices))
        try:
            rep = verify_lefschetz(X, A, coeffs, bool(p.get("subdivide", True)), cap)
        except SimplexCapExceeded as exc:
            out[e.name] = {"error": str(exc)}
            code = max(code, EXIT_GATE)
            continue
        out[e.name] = rep.to_json()
        if not rep.ok and code == EXIT_OK:
            code = EXIT_FAIL
    return _dump(out), code


def cmd_tor(scene: Scene, args) -> tuple[str, int]:
    G = scene.group
    exps = [e for e in scene.experiments if e.kind == "tor"] or [None]
    out, code = {}, EXIT_OK
    for e in exps:
        p = e.params if e is not None else {}
        k_max = args.kmax if args.kmax is not None else int(p.get("k_max", 2))
        C = one_object_category(G)
        res = {}
        for M in _coeffs(args, p.get("coeffs")):
            F = constant_functor(C, None, "contra")
            Gf = constant_functor(C, M, "co")
            tor = tor_over_category(C, F, Gf, k_max)
            bar = group_homology(G, M, k_max)
            agree = tor == bar
            bounds = check_bounds(tor, G, M)
            res[coeff_label(M)] = {"cobar": [str(g) for g in tor], "bar": [str(g) for g in bar],
                                   "agree": agree, "bounds": bounds}
            if not (agree and bounds):
                code = EXIT_FAIL
        out[e.name if e is not None else "tor"] = res
    return _dump(out), code


def cmd_filtration(scene: Scene, args) -> tuple[str, int]:
    out, code = {}, EXIT_OK
    for name, X in scene.complexes.items():
        try:
            F = orbit_filtration(X)
        except ComplexError as exc:
            out[name] = {"error": str(exc)}
            code = EXIT_GATE
            continue
        out[name] = {"class_orders": [c.representative.order for c in F.classes],
                     "stage_sizes": [len(s.simplex_set) for s in F.stages],
                     "stage_dims": [s.dim for s in F.stages]}
    return _dump(out), code


def cmd_stabilize(scene: Scene, args) -> tuple[str, int]:
    exps = [e for e in scene.experiments if e.kind == "stabilize"]
    if not exps:
        raise SceneError("scene has no stabilize experiments")
    tables, code = {}, EXIT_OK
    for e in exps:
        p = e.params
        X = scene.complex(p["complex"])
        K = scene.subgroup(p.get("K"))
        n_range = parse_n_range(args.n_range) if args.n_range else parse_n_range(p.get("n_range", [1]))
        k_max = args.kmax if args.kmax is not None else int(p.get("k_max", 2))
        cap = args.max_simplices or int(p.get("max_simplices", scene.max_simplices))
        table = stabilization_experiment(X, K, n_range, k_max, _coeffs(args, p.get("coeffs")), cap)
        tables[e.name] = table
        code = max(code, table.exit_code)
    return emit_many(tables, args.format), code


COMMANDS = {
    "group": cmd_group,
    "build": cmd_build,
    "homology": cmd_homology,
    "bredon": cmd_bredon,
    "duality": cmd_duality,
    "tor": cmd_tor,
    "filtration": cmd_filtration,
    "stabilize": cmd_stabilize,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equirep", description="Equivariant homology experiments on scene files.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("scene", help="scene JSON file")
        p.add_argument("--coeff", action="append", help="coefficient group such as Z, Z/2, 'Z + Z/2' (repeatable)")
        p.add_argument("--kmax", type=int, default=None)
        p.add_argument("--n-range", default=None, help="e.g. 2..4 or 1,3")
        p.add_argument("--max-simplices", type=int, default=None)
        p.add_argument("--golden", default=None, help="compare output byte-for-byte with this file")
        p.add_argument("--out", default=None, help="write output here instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="json",
                       help="output format (csv applies to stabilize)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scene = load_scene(args.scene)
        text, code = COMMANDS[args.command](scene, args)
    except (SimplexCapExceeded, GeneratorCapExceeded) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_GATE
    except (SceneError, ComplexError, DualityError, BredonError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GATE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.golden:
        with open(args.golden, encoding="utf-8", newline="") as fh:
            golden = fh.read()
        if golden != text:
            print(f"output differs from golden file {args.golden}", file=sys.stderr)
            return EXIT_FAIL
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
