"""Declarative JSON configs for schemes and simulations.

Scheme config:
    {"scheme": "ct",  "n_t": 4, "n_a": 3, "L": 4,
     "alphabet": {"kind": "modified-square", "M": 64}}
    {"scheme": "gsm", "n_t": 4, "n_a": 3, "L": 4,
     "alphabets": [{"kind": "square", "M": 64},
                   {"kind": "cross", "M": 128},
                   {"kind": "cross", "M": 128}]}
    {"scheme": "smx", "n_t": 2,
     "alphabets": [{"kind": "square", "M": 4}, {"kind": "square", "M": 4}]}

Simulation config adds:
    {"schemes": [{"name": "...", ...scheme config...}, ...],
     "n_r": 4, "snr_db": [10, 12, 14], "seed": 1,
     "min_errors": 200, "max_trials": 1000000}
"""

from __future__ import annotations

import json
from typing import Any

from .alphabets import Alphabet, make_alphabet
from .constellation import (Constellation, DEFAULT_CAP, build_ct, build_gsm,
                            build_smx, default_activation_set, default_L)
from .simulator import SimConfig


def alphabet_from_spec(spec: dict[str, Any]) -> Alphabet:
    return make_alphabet(spec["kind"], int(spec["M"]))


def scheme_from_dict(d: dict[str, Any], cap: int = DEFAULT_CAP) -> Constellation:
    scheme = d.get("scheme")
    if scheme not in ("ct", "gsm", "smx"):
        raise ValueError(f"scheme must be ct, gsm or smx, got {scheme!r}")
    n_t = int(d["n_t"])
    if scheme == "smx":
        alphabets = [alphabet_from_spec(s) for s in d["alphabets"]]
        if len(alphabets) != n_t:
            raise ValueError("smx needs one alphabet per antenna")
        return build_smx(alphabets, n_t, cap)
    n_a = int(d["n_a"])
    L = int(d["L"]) if "L" in d else default_L(n_t, n_a)
    act = default_activation_set(n_t, n_a, L)
    if scheme == "ct":
        return build_ct(alphabet_from_spec(d["alphabet"]), act, n_t, cap)
    alphabets = [alphabet_from_spec(s) for s in d["alphabets"]]
    if len(alphabets) != n_a:
        raise ValueError("gsm needs one alphabet per active slot")
    return build_gsm(alphabets, act, n_t, cap)


def load_scheme(path: str, cap: int = DEFAULT_CAP) -> Constellation:
    with open(path) as f:
        return scheme_from_dict(json.load(f), cap)


def sim_configs_from_dict(d: dict[str, Any], seed: int | None = None,
                          threads: int = 1,
                          cap: int = DEFAULT_CAP) -> list[SimConfig]:
    snr_db = [float(s) for s in d["snr_db"]]
    base_seed = int(d.get("seed", 0)) if seed is None else seed
    out = []
    for spec in d["schemes"]:
        c = scheme_from_dict(spec, cap)
        out.append(SimConfig(
            constellation=c,
            n_r=int(d["n_r"]),
            snr_db=snr_db,
            seed=base_seed,
            name=spec.get("name", c.scheme),
            min_errors=int(d.get("min_errors", 200)),
            max_trials=int(d.get("max_trials", 10_000_000)),
            threads=threads,
        ))
    return out


def load_sim_configs(path: str, seed: int | None = None, threads: int = 1,
                     cap: int = DEFAULT_CAP) -> list[SimConfig]:
    with open(path) as f:
        return sim_configs_from_dict(json.load(f), seed, threads, cap)
