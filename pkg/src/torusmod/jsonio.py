"""Canonical JSON encoding and the on-disk schemas for modules and elements.

All emitted JSON is compact with sorted keys, so identical inputs produce
byte-identical output across runs and platforms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Union

from .balgebra import BAlgebra, scalars_algebra, truncated_poly_algebra
from .modules import JetModuleH, JetModuleS, MapModule, Window
from .reps import MatrixRep, rep_from_spec
from .scalars import Scalar


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def algebra_from_spec(spec: Union[str, dict]) -> BAlgebra:
    """'trivial', 'truncpoly:M' or an inline algebra table (validated on load)."""
    if isinstance(spec, dict):
        return BAlgebra.from_json(spec)
    if spec == "trivial":
        return scalars_algebra()
    if spec.startswith("truncpoly:"):
        return truncated_poly_algebra(int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown coefficient-algebra spec: {spec!r}")


def rep_from_json_or_name(spec: Union[str, dict], n: int) -> MatrixRep:
    if isinstance(spec, dict):
        return MatrixRep.from_json(spec)
    return rep_from_spec(spec, n)


def module_from_json(obj: dict):
    """Build a module from its descriptor.

    Schema: {kind: jet-s|jet-h|map-s|map-h, n, window, rep, alpha, beta,
    balgebra?, c?, f?, phi?, hConvention?}.
    """
    kind = obj["kind"]
    n = int(obj["n"])
    window = Window(int(obj["window"]))
    rep = rep_from_json_or_name(obj.get("rep", "traceless-natural"), n)
    alpha = [Scalar.from_json(x) if isinstance(x, dict) else Scalar(Fraction(x)) for x in obj.get("alpha", ["0"] * n)]
    beta = [Scalar.from_json(x) if isinstance(x, dict) else Scalar(Fraction(x)) for x in obj.get("beta", ["0"] * n)]
    convention = obj.get("hConvention", "split")
    if kind == "jet-s":
        return JetModuleS(n, rep, alpha, beta, window)
    if kind == "jet-h":
        return JetModuleH(n, rep, alpha, beta, window, convention)
    if kind in ("map-s", "map-h"):
        algebra = algebra_from_spec(obj.get("balgebra", "truncpoly:2"))
        if "phi" in obj:
            phi = [Scalar.from_json(x) if isinstance(x, dict) else Scalar(Fraction(x)) for x in obj["phi"]]
            algebra = BAlgebra(algebra.dim, algebra.names, algebra.mult, algebra.psi, phi)
        c = Scalar.from_json(obj["c"]) if isinstance(obj.get("c"), dict) else Scalar(Fraction(obj.get("c", "1")))
        f = None
        if "f" in obj:
            f = [
                [Scalar.from_json(x) if isinstance(x, dict) else Scalar(Fraction(x)) for x in row]
                for row in obj["f"]
            ]
        if kind == "map-s":
            base = JetModuleS(n, rep, alpha, beta, window)
        else:
            base = JetModuleH(n, rep, alpha, beta, window, convention)
        return MapModule(base, algebra, c, f)
    raise ValueError(f"unknown module kind: {kind!r}")


def module_to_json(module) -> dict:
    """Descriptor round trip for the shipped module classes."""
    base = module.base if isinstance(module, MapModule) else module
    if isinstance(base, JetModuleS):
        kind = "map-s" if isinstance(module, MapModule) else "jet-s"
    elif isinstance(base, JetModuleH):
        kind = "map-h" if isinstance(module, MapModule) else "jet-h"
    else:
        raise ValueError("unknown module class")
    out = {
        "kind": kind,
        "n": module.n,
        "window": module.window.k,
        "rep": module.rep.to_json(),
        "alpha": [c.to_json() for c in module.alpha],
        "beta": [c.to_json() for c in module.beta],
    }
    if isinstance(base, JetModuleH):
        out["hConvention"] = base.convention
    if isinstance(module, MapModule):
        out["balgebra"] = module.algebra.to_json()
        out["c"] = module.c.to_json()
        out["f"] = [[c.to_json() for c in row] for row in module.f]
    return out
