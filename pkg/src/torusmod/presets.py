"""Named module and verification presets for one-command reproduction."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

from .verify import SuiteConfig

# module descriptors, consumable by `act`, `weights` and `diagnose-injectivity`
MODULE_PRESETS: Dict[str, dict] = {
    "thm31-natural-n2": {
        "kind": "jet-s",
        "n": 2,
        "window": 2,
        "rep": "traceless-natural",
        "alpha": ["0", "0"],
        "beta": ["0", "0"],
    },
    "thm41-natural-m1": {
        "kind": "jet-h",
        "n": 2,
        "window": 2,
        "rep": "natural",
        "alpha": ["0", "0"],
        "beta": ["0", "0"],
        "hConvention": "split",
    },
    "thm317-truncpoly3": {
        "kind": "map-s",
        "n": 2,
        "window": 2,
        "rep": "traceless-natural",
        "alpha": ["0", "0"],
        "beta": ["0", "0"],
        "balgebra": "truncpoly:2",
        "phi": ["1", "3", "0"],
        "c": "1",
        "f": [["0", "1", "0"], ["0", "1/2", "2"]],
    },
}

MODULE_PRESET_DESCRIPTIONS: Dict[str, str] = {
    "thm31-natural-n2": "divergence-free jet module, N=2, traceless natural fiber, alpha=beta=0",
    "thm41-natural-m1": "Hamiltonian jet module, N=2 (m=1), natural fiber, alpha=beta=0",
    "thm317-truncpoly3": "map module over the N=2 divergence-free base with B=truncated polynomials (x^3=0), evaluation psi, phi(x)=3, c=1",
}


def verify_preset(name: str) -> SuiteConfig:
    if name == "default":
        return SuiteConfig()
    if name == "thm31-natural-n2":
        return SuiteConfig(b_spec="trivial", rep_spec="traceless-natural")
    if name == "thm41-natural-m1":
        return SuiteConfig(b_spec="trivial", rep_spec="natural")
    if name == "thm317-truncpoly3":
        return SuiteConfig(b_spec="truncpoly:2", rep_spec="traceless-natural", c=Fraction(1))
    raise ValueError(f"unknown preset {name!r}")


VERIFY_PRESET_NAMES = ("default", "thm31-natural-n2", "thm41-natural-m1", "thm317-truncpoly3")
