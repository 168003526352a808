"""Scenario JSON: a chain model plus whatever permutation and restriction data is known.

A bare chain-pair object (with ``max_degree`` and ``chain_map`` at top level)
is accepted as a scenario with nothing but the model.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .chains import model_from_json
from .errors import ConleyError, ParseError
from .exactalg import Matrix, to_fraction
from .formulas import RestrictionData, ScenarioBundle
from .unstable import BranchCohomology, PermutationModel, permutation_from_json

DEFAULT_N_MAX = 8

_FLAGS = ("is_attractor", "planar", "orientation_reversing", "fixes_complement_components")


def _square(data, where: str) -> Matrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ParseError("expected a list of rows", where)
    n = len(data)
    for i, row in enumerate(data):
        if len(row) != n:
            raise ParseError(f"row {i} has {len(row)} entries, expected {n}", where)
        for j, x in enumerate(row):
            try:
                to_fraction(x)
            except (TypeError, ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational entry {x!r}", f"{where}[{i}][{j}]") from None
    return Matrix(data, shape=(n, n))


def _degree_maps(data, where: str) -> dict[int, Matrix]:
    if not isinstance(data, dict):
        raise ParseError("expected an object keyed by degree", where)
    out = {}
    for key, raw in data.items():
        if not str(key).isdigit():
            raise ParseError(f"degree key {key!r} is not a non-negative integer", where)
        out[int(key)] = _square(raw, f"{where}.{key}")
    return out


def _restriction(data, where: str) -> RestrictionData:
    if not isinstance(data, dict):
        raise ParseError("restriction must be an object", where)
    im = _degree_maps(data.get("im_i_star", {}), f"{where}.im_i_star")
    hx = _degree_maps(data.get("hX", {}), f"{where}.hX")
    try:
        return RestrictionData(im, hx)
    except ConleyError as exc:
        raise ParseError(str(exc), where) from None


def _int(data, key: str, where: str, default=None, minimum=None):
    v = data.get(key, default)
    if v is None:
        return None
    if not isinstance(v, int) or isinstance(v, bool) or (minimum is not None and v < minimum):
        bound = f" >= {minimum}" if minimum is not None else ""
        raise ParseError(f"{key} must be an integer{bound}", f"{where}.{key}")
    return v


def bundle_from_json(data, n_max: int | None = None, where: str = "$") -> ScenarioBundle:
    """Build a ScenarioBundle; ``n_max`` overrides the file's own value."""
    if not isinstance(data, dict):
        raise ParseError("scenario must be an object", where)
    if "chain_map" in data and "model" not in data:
        data = {"model": data}
    if "model" not in data:
        raise ParseError("missing key 'model'", where)
    model = model_from_json(data["model"], f"{where}.model")
    dual = model_from_json(data["dual_model"], f"{where}.dual_model") if "dual_model" in data else None

    perm, branch = None, BranchCohomology()
    if "perm" in data:
        perm, branch = permutation_from_json(data["perm"], f"{where}.perm")
    stable = None
    if "stable_perm" in data:
        stable, _ = permutation_from_json(data["stable_perm"], f"{where}.stable_perm")
    restriction = _restriction(data["restriction"], f"{where}.restriction") if "restriction" in data else RestrictionData()

    kwargs = {}
    for flag in _FLAGS:
        if flag in data:
            if not isinstance(data[flag], bool):
                raise ParseError(f"{flag} must be true or false", f"{where}.{flag}")
            kwargs[flag] = data[flag]
    orientation = _int(data, "orientation", where, default=1)
    if orientation not in (1, -1):
        raise ParseError("orientation must be 1 or -1", f"{where}.orientation")
    dim_ambient = _int(data, "dim_ambient", where, minimum=0)

    lam = data.get("lambda_X")
    if lam is not None:
        if not isinstance(lam, list):
            raise ParseError("lambda_X must be a list", f"{where}.lambda_X")
        try:
            lam = tuple(to_fraction(x) for x in lam)
        except (TypeError, ValueError, ZeroDivisionError):
            raise ParseError("lambda_X entries must be rationals", f"{where}.lambda_X") from None

    expected = data.get("expected", {})
    if not isinstance(expected, dict):
        raise ParseError("expected must be an object", f"{where}.expected")
    name = data.get("name", data["model"].get("name", "") if isinstance(data["model"], dict) else "")
    params = data.get("parameters", {})
    if not isinstance(params, dict):
        raise ParseError("parameters must be an object", f"{where}.parameters")

    if n_max is None:
        n_max = _int(data, "n_max", where, default=DEFAULT_N_MAX, minimum=1)
    try:
        return ScenarioBundle.from_model(
            model,
            n_max,
            perm=perm,
            branch=branch,
            stable_perm=stable,
            restriction=restriction,
            dual_model=dual,
            dim_ambient=dim_ambient,
            orientation=orientation,
            lambda_X=lam,
            name=str(name),
            parameters=params,
            expected=expected,
            **kwargs,
        )
    except ConleyError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), f"{where}.model") from None


def load_bundle(text: str, n_max: int | None = None, source: str = "<input>") -> ScenarioBundle:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"{source}:{exc.lineno}:{exc.colno}") from None
    try:
        return bundle_from_json(data, n_max)
    except ParseError as exc:
        raise ParseError(exc.message, f"{source}:{exc.location}") from None


def _perm_json(perm: PermutationModel, branch: BranchCohomology | None = None) -> dict:
    out = perm.to_json()
    if branch is not None and branch.betti:
        out["branch_betti"] = branch.to_json()
    return out


def _json_value(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def bundle_to_json(b: ScenarioBundle) -> dict:
    if b.model is None:
        raise ValueError("only bundles built from a chain model can be serialised")
    out: dict = {"name": b.name}
    if b.parameters:
        out["parameters"] = dict(b.parameters)
    out["n_max"] = b.n_max
    out["model"] = b.model.to_json()
    if b.perm is not None:
        out["perm"] = _perm_json(b.perm, b.branch)
    if b.stable_perm is not None:
        out["stable_perm"] = _perm_json(b.stable_perm)
    if b.restriction.im_i_star or b.restriction.hX:
        out["restriction"] = b.restriction.to_json()
    for flag in _FLAGS:
        v = getattr(b, flag)
        if v:
            out[flag] = v
    if b.dual_model is not None:
        out["dual_model"] = b.dual_model.to_json()
    if b.dim_ambient is not None:
        out["dim_ambient"] = b.dim_ambient
    out["orientation"] = b.orientation
    if b.lambda_X is not None:
        out["lambda_X"] = [str(x) for x in b.lambda_X]
    if b.expected:
        out["expected"] = _json_value(dict(b.expected))
    return out


def dump_bundle(b: ScenarioBundle) -> str:
    return json.dumps(bundle_to_json(b), indent=2, sort_keys=False) + "\n"
