"""Command-line front end for the verification suites.

One JSON config per run: the document names a command, a group, and the
command's parameters; the process writes ``report.json`` (plus ``spheres.csv``
or ``fourier.csv`` where a table is natural) into the output directory and
exits 0 exactly when every check passed, 1 on a failed check, 2 on a config
error.  Reports are deterministic: same config and seed, same bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .groups import (
    GeneratorSet,
    Group,
    GroupSpec,
    element_from_payload,
    make_generator_set,
    make_group,
    standard_generators,
)
from .hopf import (
    BRUTE_FORCE_DIM_CAP,
    check_hopf_axioms,
    duality_cycle,
    dual_hopf,
    function_algebra,
    group_algebra,
    group_part,
    product_iso_check,
)
from .length import (
    DEFAULT_ELEMENT_CAP,
    DEFAULT_RADIUS,
    WeightFunction,
    explore_ball,
    heisenberg_witness,
    nuclearity_witness,
    sphere_bound_check,
    subadditivity_check,
    summability_partial_sums,
)
from .reports import CheckResult, write_csv, write_json
from .scalars import make_backend
from .semichar import ExpLength, build_semicharacter, sampled_submultiplicativity
from .weighted import (
    SubmultiplicativeSeminorm,
    domination_check,
    seminorm_support_check,
    summability_check,
    weighted_property_trials,
)


class ConfigError(Exception):
    """Validation failure; carries (path, message) pairs."""

    def __init__(self, errors):
        self.errors = [(str(p), str(m)) for p, m in errors]
        super().__init__("; ".join(f"{p}: {m}" for p, m in self.errors))


def _fail(path: str, message: str):
    raise ConfigError([(path, message)])


# ---------------------------------------------------------------------------
# field-level parsing


def _as_int(value, path: str, minimum=None, maximum=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        _fail(path, f"must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        _fail(path, f"must be <= {maximum}, got {value}")
    return value


def _as_fraction(value, path: str, minimum=None) -> Fraction:
    """Exact rational from an int, a decimal float, or an [num, den] pair."""
    if isinstance(value, bool):
        _fail(path, f"expected a number, got {value!r}")
    if isinstance(value, Fraction):  # internal defaults arrive pre-parsed
        q = value
    elif isinstance(value, int):
        q = Fraction(value)
    elif isinstance(value, float):
        if not math.isfinite(value):
            _fail(path, f"expected a finite number, got {value!r}")
        q = Fraction(str(value))
    elif (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        if value[1] == 0:
            _fail(path, "denominator must be nonzero")
        q = Fraction(value[0], value[1])
    else:
        _fail(path, f"expected a number or [num, den] pair, got {value!r}")
    if minimum is not None and q < minimum:
        _fail(path, f"must be >= {minimum}, got {q}")
    return q


def _echo_fraction(q: Fraction):
    return int(q) if q.denominator == 1 else str(q)


def _as_str(value, path: str, choices=None) -> str:
    if not isinstance(value, str):
        _fail(path, f"expected a string, got {value!r}")
    if choices is not None and value not in choices:
        _fail(path, f"expected one of {sorted(choices)}, got {value!r}")
    return value


_GROUP_KEYS = {"kind", "orders", "rank", "degree", "label"}
_GROUP_KINDS = ("finite_abelian", "symmetric", "heisenberg", "free", "free_abelian")


def _parse_group(obj, path: str) -> tuple[Group, dict]:
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {obj!r}")
    unknown = set(obj) - _GROUP_KEYS
    if unknown:
        raise ConfigError([(f"{path}.{k}", "unknown key") for k in sorted(unknown)])
    if "kind" not in obj:
        _fail(f"{path}.kind", "required")
    kind = _as_str(obj["kind"], f"{path}.kind")
    if kind not in _GROUP_KINDS:
        _fail(f"{path}.kind", f"unknown group kind {kind!r} (expected one of {_GROUP_KINDS})")
    label = _as_str(obj.get("label", ""), f"{path}.label")
    echo: dict = {"kind": kind}
    if label:
        echo["label"] = label
    if kind == "finite_abelian":
        orders = obj.get("orders")
        if not isinstance(orders, list) or not orders:
            _fail(f"{path}.orders", "expected a non-empty list of positive integers")
        for i, n in enumerate(orders):
            _as_int(n, f"{path}.orders[{i}]", minimum=1)
        spec = GroupSpec.finite_abelian(orders, label=label)
        echo["orders"] = list(orders)
    elif kind == "symmetric":
        if "degree" not in obj:
            _fail(f"{path}.degree", "required")
        degree = _as_int(obj["degree"], f"{path}.degree", minimum=1, maximum=6)
        spec = GroupSpec.symmetric(degree, label=label)
        echo["degree"] = degree
    elif kind in ("free", "free_abelian"):
        if "rank" not in obj:
            _fail(f"{path}.rank", "required")
        rank = _as_int(obj["rank"], f"{path}.rank", minimum=1)
        spec = GroupSpec(kind=kind, rank=rank, label=label)
        echo["rank"] = rank
    else:
        spec = GroupSpec.heisenberg(label=label)
    for field in ("orders", "rank", "degree"):
        if field in obj and field not in echo:
            _fail(f"{path}.{field}", f"not a {kind} field")
    return make_group(spec), echo


def _require_finite(group: Group, path: str) -> Group:
    if not group.is_finite:
        _fail(path, f"this command needs a finite group, got {group.label!r}")
    return group


def _exponent(group: Group) -> int:
    """lcm of element orders; the natural root order for exact backends."""
    exp = 1
    for x in group.elements():
        acc, o = x, 1
        while acc != group.identity:
            acc = group.mul(acc, x)
            o += 1
        exp = exp * o // math.gcd(exp, o)
    return exp


def _parse_generators(raw, group: Group, path: str) -> tuple[GeneratorSet, object]:
    value = raw.get("generators", "standard")
    if value == "standard":
        try:
            return standard_generators(group), "standard"
        except ValueError as exc:
            _fail(path, str(exc))
    if not isinstance(value, list) or not value:
        _fail(path, "expected \"standard\" or a non-empty list of elements")
    elems = []
    for i, payload in enumerate(value):
        try:
            elems.append(element_from_payload(group, payload))
        except ValueError as exc:
            _fail(f"{path}[{i}]", str(exc))
    try:
        gens = make_generator_set(group, elems)
    except ValueError as exc:
        _fail(path, str(exc))
    return gens, value


def _parse_weights(raw, count: int, path: str) -> tuple[WeightFunction, object]:
    value = raw.get("weights", "enumerated")
    if value == "enumerated":
        return WeightFunction.enumerated(count), "enumerated"
    if value == "constant":
        return WeightFunction.constant(count), "constant"
    if not isinstance(value, list):
        _fail(path, "expected \"enumerated\", \"constant\", or a list of weights")
    if len(value) != count:
        _fail(path, f"expected {count} weights (one per generator), got {len(value)}")
    parsed = [_as_fraction(v, f"{path}[{i}]", minimum=0) for i, v in enumerate(value)]
    return WeightFunction(tuple(parsed)), value


def _parse_recipe(obj, path: str) -> dict:
    """Structural validation of a semicharacter recipe (binding happens later)."""
    if not isinstance(obj, dict) or "kind" not in obj:
        _fail(path, f"expected an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    unknown = set(obj) - {"kind", "value", "arg", "args"}
    if unknown:
        raise ConfigError([(f"{path}.{k}", "unknown key") for k in sorted(unknown)])
    if kind == "const":
        if "value" in obj:
            _as_fraction(obj["value"], f"{path}.value", minimum=1)
    elif kind == "expLength":
        pass
    elif kind in ("sum", "product", "max"):
        args = obj.get("args")
        if not isinstance(args, list) or len(args) < 2:
            _fail(f"{path}.args", f"{kind} needs a list with at least two entries")
        for i, a in enumerate(args):
            _parse_recipe(a, f"{path}.args[{i}]")
    elif kind == "scale":
        if "value" in obj:
            _as_fraction(obj["value"], f"{path}.value", minimum=1)
        if "arg" not in obj:
            _fail(f"{path}.arg", "required")
        _parse_recipe(obj["arg"], f"{path}.arg")
    elif kind == "inverse":
        if "arg" not in obj:
            _fail(f"{path}.arg", "required")
        _parse_recipe(obj["arg"], f"{path}.arg")
    else:
        _fail(f"{path}.kind", f"unknown recipe kind {kind!r}")
    return obj


# ---------------------------------------------------------------------------
# the run configuration


@dataclass
class RunConfig:
    command: str
    params: dict
    inputs: dict


_COMMON_KEYS = {"command", "seed", "tolerance"}
_BACKEND_COMMANDS = {"hopf-axioms", "duality-cycle", "group-part", "tensor-iso"}

_COMMAND_KEYS = {
    "hopf-axioms": {"group", "algebra", "backend"},
    "duality-cycle": {"group", "perturb", "backend"},
    "group-part": {"group", "algebra", "mode", "expectedCount", "backend"},
    "tensor-iso": {"left", "right", "backend"},
    "cayley": {"group", "generators", "weights", "radius", "elementCap", "samples"},
    "counterexample": {"group", "nMax", "C"},
    "nuclearity": {"group", "generators", "weights", "radius", "elementCap"},
    "seminorm-suite": {"group", "radius", "elementCap", "count", "trials"},
    "polar-suite": {"group", "radius", "elementCap", "weightF", "weightG", "trials"},
}


def parse_config(raw, seed_override=None, backend_override=None) -> RunConfig:
    """Validate one JSON document; raises ConfigError with precise paths."""
    if not isinstance(raw, dict):
        _fail("$", f"top level must be an object, got {type(raw).__name__}")
    if "command" not in raw:
        _fail("command", "required")
    command = _as_str(raw["command"], "command", choices=set(_COMMAND_KEYS))
    allowed = _COMMON_KEYS | _COMMAND_KEYS[command]
    unknown = set(raw) - allowed
    if unknown:
        raise ConfigError([(k, "unknown key") for k in sorted(unknown)])

    seed = raw.get("seed", 0) if seed_override is None else seed_override
    seed = _as_int(seed, "seed", minimum=0, maximum=2**64 - 1)
    tolerance = float(_as_fraction(raw.get("tolerance", 1e-9), "tolerance"))
    if tolerance <= 0:
        _fail("tolerance", f"must be positive, got {tolerance}")

    backend_name = None
    if command in _BACKEND_COMMANDS:
        backend_name = _as_str(
            raw.get("backend", "cyclotomic"), "backend", choices={"float", "cyclotomic"}
        )
        if backend_override is not None:
            backend_name = backend_override

    params: dict = {"seed": seed, "tolerance": tolerance}
    inputs: dict = {"command": command, "seed": seed, "tolerance": tolerance}
    if backend_name is not None:
        params["backend_name"] = backend_name
        inputs["backend"] = backend_name

    _PARSERS[command](raw, params, inputs)
    return RunConfig(command=command, params=params, inputs=inputs)


def _make_backend_for(params, *groups):
    order = 1
    for g in groups:
        e = _exponent(g)
        order = order * e // math.gcd(order, e)
    return make_backend(params["backend_name"], tolerance=params["tolerance"], order=order)


def _parse_hopf_axioms(raw, params, inputs):
    group, echo = _parse_group(raw.get("group"), "group")
    _require_finite(group, "group")
    algebra = _as_str(raw.get("algebra", "both"), "algebra", choices={"function", "group", "both"})
    params["group"] = group
    params["backend"] = _make_backend_for(params, group)
    params["algebras"] = ("function", "group") if algebra == "both" else (algebra,)
    inputs["group"] = echo
    inputs["algebra"] = algebra


def _parse_duality_cycle(raw, params, inputs):
    group, echo = _parse_group(raw.get("group"), "group")
    _require_finite(group, "group")
    if group.kind != "finite_abelian":
        _fail("group.kind", "duality-cycle needs a finite_abelian group")
    perturb = raw.get("perturb")
    if perturb is not None:
        if not isinstance(perturb, list) or len(perturb) != 2:
            _fail("perturb", f"expected [row, col], got {perturb!r}")
        i = _as_int(perturb[0], "perturb[0]", minimum=0, maximum=group.order - 1)
        j = _as_int(perturb[1], "perturb[1]", minimum=0, maximum=group.order - 1)
        perturb = (i, j)
    params["group"] = group
    params["backend"] = _make_backend_for(params, group)
    params["perturb"] = perturb
    inputs["group"] = echo
    inputs["perturb"] = None if perturb is None else list(perturb)


def _parse_group_part(raw, params, inputs):
    group, echo = _parse_group(raw.get("group"), "group")
    _require_finite(group, "group")
    algebra = _as_str(raw.get("algebra", "group"), "algebra", choices={"function", "group"})
    mode = _as_str(raw.get("mode", "both"), "mode", choices={"closedForm", "bruteForce", "both"})
    expected = raw.get("expectedCount")
    if expected is not None:
        expected = _as_int(expected, "expectedCount", minimum=0)
    params["group"] = group
    params["backend"] = _make_backend_for(params, group)
    params["algebra"] = algebra
    params["modes"] = {
        "closedForm": ("closed_form",),
        "bruteForce": ("brute_force",),
        "both": ("closed_form", "brute_force"),
    }[mode]
    params["expected"] = expected
    inputs["group"] = echo
    inputs["algebra"] = algebra
    inputs["mode"] = mode
    if expected is not None:
        inputs["expectedCount"] = expected


def _parse_tensor_iso(raw, params, inputs):
    left, echo_l = _parse_group(raw.get("left"), "left")
    right, echo_r = _parse_group(raw.get("right"), "right")
    _require_finite(left, "left")
    _require_finite(right, "right")
    params["left"] = left
    params["right"] = right
    params["backend"] = _make_backend_for(params, left, right)
    inputs["left"] = echo_l
    inputs["right"] = echo_r


def _parse_cayley(raw, params, inputs):
    group, echo = _parse_group(raw.get("group"), "group")
    gens, gens_echo = _parse_generators(raw, group, "generators")
    weights, weights_echo = _parse_weights(raw, len(gens.elements), "weights")
    radius = _as_fraction(raw.get("radius", DEFAULT_RADIUS), "radius", minimum=0)
    cap = _as_int(raw.get("elementCap", DEFAULT_ELEMENT_CAP), "elementCap", minimum=1)
    samples = _as_int(raw.get("samples", 500), "samples", minimum=0)
    params.update(group=group, generators=gens, weights=weights, radius=radius,
                  element_cap=cap, samples=samples)
    inputs["group"] = echo
    inputs["generators"] = gens_echo
    inputs["weights"] = weights_echo
    inputs["radius"] = _echo_fraction(radius)
    inputs["elementCap"] = cap
    inputs["samples"] = samples


def _parse_counterexample(raw, params, inputs):
    if "group" in raw:
        group, echo = _parse_group(raw["group"], "group")
        if group.kind != "heisenberg":
            _fail("group.kind", "counterexample needs the heisenberg group")
    else:
        group, echo = make_group(GroupSpec.heisenberg()), {"kind": "heisenberg"}
    if "nMax" not in raw:
        _fail("nMax", "required")
    n_max = _as_int(raw["nMax"], "nMax", minimum=1, maximum=10**4)
    constant = _as_fraction(raw.get("C", 1), "C", minimum=1)
    params.update(group=group, n_max=n_max, constant=constant)
    inputs["group"] = echo
    inputs["nMax"] = n_max
    inputs["C"] = _echo_fraction(constant)


def _parse_nuclearity(raw, params, inputs):
    group, echo = _parse_group(raw.get("group"), "group")
    gens, gens_echo = _parse_generators(raw, group, "generators")
    weights, weights_echo = _parse_weights(raw, len(gens.elements), "weights")
    if not weights.is_integer:
        _fail("weights", "nuclearity needs integer base weights")
    radius = _as_fraction(raw.get("radius", DEFAULT_RADIUS), "radius", minimum=0)
    cap = _as_int(raw.get("elementCap", DEFAULT_ELEMENT_CAP), "elementCap", minimum=1)
    params.update(group=group, generators=gens, weights=weights, radius=radius, element_cap=cap)
    inputs["group"] = echo
    inputs["generators"] = gens_echo
    inputs["weights"] = weights_echo
    inputs["radius"] = _echo_fraction(radius)
    inputs["elementCap"] = cap


def _parse_seminorm_suite(raw, params, inputs):
    group, echo = _parse_group(raw.get("group"), "group")
    gens, _ = _parse_generators(raw, group, "generators")
    radius = _as_fraction(raw.get("radius", 8), "radius", minimum=0)
    cap = _as_int(raw.get("elementCap", DEFAULT_ELEMENT_CAP), "elementCap", minimum=1)
    count = _as_int(raw.get("count", 20), "count", minimum=1)
    trials = _as_int(raw.get("trials", 200), "trials", minimum=1)
    params.update(group=group, generators=gens, radius=radius, element_cap=cap,
                  count=count, trials=trials)
    inputs["group"] = echo
    inputs["radius"] = _echo_fraction(radius)
    inputs["elementCap"] = cap
    inputs["count"] = count
    inputs["trials"] = trials


def _parse_polar_suite(raw, params, inputs):
    group, echo = _parse_group(raw.get("group"), "group")
    gens, _ = _parse_generators(raw, group, "generators")
    radius = _as_fraction(raw.get("radius", DEFAULT_RADIUS), "radius", minimum=0)
    cap = _as_int(raw.get("elementCap", DEFAULT_ELEMENT_CAP), "elementCap", minimum=1)
    trials = _as_int(raw.get("trials", 1000), "trials", minimum=1)
    recipe_f = _parse_recipe(raw.get("weightF", {"kind": "expLength"}), "weightF")
    recipe_g = _parse_recipe(raw.get("weightG", {"kind": "const", "value": 3}), "weightG")
    params.update(group=group, generators=gens, radius=radius, element_cap=cap,
                  trials=trials, recipe_f=recipe_f, recipe_g=recipe_g)
    inputs["group"] = echo
    inputs["radius"] = _echo_fraction(radius)
    inputs["elementCap"] = cap
    inputs["trials"] = trials
    inputs["weightF"] = recipe_f
    inputs["weightG"] = recipe_g


_PARSERS = {
    "hopf-axioms": _parse_hopf_axioms,
    "duality-cycle": _parse_duality_cycle,
    "group-part": _parse_group_part,
    "tensor-iso": _parse_tensor_iso,
    "cayley": _parse_cayley,
    "counterexample": _parse_counterexample,
    "nuclearity": _parse_nuclearity,
    "seminorm-suite": _parse_seminorm_suite,
    "polar-suite": _parse_polar_suite,
}


# ---------------------------------------------------------------------------
# command runners


def _rename(prefix: str, c: CheckResult) -> CheckResult:
    return CheckResult(name=f"{prefix}/{c.name}", passed=c.passed, residual=c.residual, detail=c.detail)


def _capped(fn, *args, **kwargs):
    """Run a library call, turning cap violations into a structured failure."""
    try:
        return fn(*args, **kwargs), None
    except ValueError as exc:
        return None, CheckResult(name="resource-cap", passed=False, detail=str(exc))


def _cmd_hopf_axioms(params):
    group = params["group"]
    backend = params["backend"]
    checks = []
    for alg in params["algebras"]:
        build = function_algebra if alg == "function" else group_algebra
        h = build(group, backend)
        checks.extend(_rename(alg, c) for c in check_hopf_axioms(h))
        checks.extend(_rename(f"{alg}-dual", c) for c in check_hopf_axioms(dual_hopf(h)))
    results = {"order": group.order, "backend": backend.name}
    return checks, results, {}


def _cmd_duality_cycle(params):
    group = params["group"]
    backend = params["backend"]
    rep, cap = _capped(duality_cycle, group, backend, params["perturb"])
    if cap is not None:
        return [cap], {"order": group.order}, {}
    if params["perturb"] is None:
        checks = list(rep.stages)
    else:
        failing = [s.name for s in rep.stages if not s.passed]
        checks = [
            CheckResult(
                name="perturbation-detected",
                passed=not rep.passed,
                detail="tripped: " + ", ".join(failing) if failing else "no stage tripped",
            )
        ]
    rows = []
    for i, row in enumerate(rep.transform.matrix):
        for j, entry in enumerate(row):
            rows.append([i, j, backend.format(entry)])
    tables = {"fourier.csv": (["row", "col", "value"], rows)}
    results = {"order": group.order, "backend": backend.name, "perturbed": params["perturb"] is not None}
    return checks, results, tables


def _cmd_group_part(params):
    group = params["group"]
    backend = params["backend"]
    build = function_algebra if params["algebra"] == "function" else group_algebra
    h = build(group, backend)
    checks = []
    counts = {}
    for mode in params["modes"]:
        res, cap = _capped(group_part, h, mode)
        if cap is not None:
            checks.append(_rename(mode, cap))
            continue
        counts[mode] = res.count
        checks.append(CheckResult(f"{mode}/verified", res.verified, res.worst_residual))
        checks.append(CheckResult(f"{mode}/closed-under-product", res.closed_under_product))
    if len(counts) == 2:
        a, b = counts["closed_form"], counts["brute_force"]
        checks.append(CheckResult("modes-agree", a == b, detail=f"closed {a}, brute {b}"))
    if params["expected"] is not None and counts:
        count = next(iter(counts.values()))
        checks.append(
            CheckResult("expected-count", count == params["expected"],
                        detail=f"found {count}, expected {params['expected']}")
        )
    results = {"algebra": params["algebra"], "counts": {k: v for k, v in sorted(counts.items())},
               "dimension": h.dim}
    return checks, results, {}


def _cmd_tensor_iso(params):
    res, cap = _capped(product_iso_check, params["left"], params["right"], params["backend"])
    checks = res if res is not None else [cap]
    results = {
        "leftOrder": params["left"].order,
        "rightOrder": params["right"].order,
        "productOrder": params["left"].order * params["right"].order,
    }
    return checks, results, {}


def _cmd_cayley(params):
    report = explore_ball(
        params["group"], params["generators"], params["weights"],
        params["radius"], params["element_cap"],
    )
    checks = []
    tables = {}
    sub = subadditivity_check(report, samples=params["samples"], seed=params["seed"])
    checks.append(
        CheckResult("subadditivity", sub.passed,
                    detail=f"{sub.checked} checked, {sub.skipped} skipped")
    )
    if params["weights"].is_injective_integer:
        spheres = sphere_bound_check(report)
        checks.append(
            CheckResult("sphere-bound", spheres.passed,
                        detail=f"levels 1..{spheres.max_level} complete")
        )
        rows = [[r.level, r.count, r.bound, repr(r.cumulative)] for r in spheres.rows]
        tables["spheres.csv"] = (["level", "count", "bound", "cumulative_sum"], rows)
        if not report.truncated:
            summ = summability_partial_sums(report)
            checks.append(
                CheckResult(
                    "summability", summ.passed,
                    residual=max(summ.partial - summ.closed_form, 0.0),
                    detail=f"partial {summ.partial:.12g}, closed form {summ.closed_form:.12g}",
                )
            )
    results = {
        "settled": len(report.lengths),
        "truncated": report.truncated,
        "boundary": None if report.boundary is None else _echo_fraction(report.boundary),
        "maxCompleteLevel": report.max_complete_integer_level(),
    }
    return checks, results, tables


def _cmd_counterexample(params):
    rep = heisenberg_witness(params["group"], params["n_max"], params["constant"])
    first = rep.first_violation
    checks = [
        CheckResult("central-products", rep.products_pass,
                    detail=f"n = 1..{params['n_max']} verified"),
        CheckResult(
            "envelope-crossing",
            all(r.violated == (r.n >= first) for r in rep.rows),
            detail=f"first violation at n = {first}",
        ),
    ]
    results = {"firstViolation": first, "nMax": params["n_max"], "C": _echo_fraction(rep.constant)}
    return checks, results, {}


def _cmd_nuclearity(params):
    rep = nuclearity_witness(
        params["group"], params["generators"], params["weights"],
        params["radius"], params["element_cap"],
    )
    checks = [
        CheckResult("difference-counts", rep.counts_pass,
                    detail=f"{len(rep.rows)} gap levels, region {rep.region_size}"),
        CheckResult("difference-partial", rep.partial_pass,
                    residual=max(rep.partial - rep.closed_form, 0.0),
                    detail=f"partial {rep.partial:.12g}, closed form {rep.closed_form:.12g}"),
    ]
    rows = []
    cumulative = 0.0
    for r in rep.rows:
        cumulative += r.count * math.exp(-r.level)
        rows.append([r.level, r.count, r.bound, repr(cumulative)])
    tables = {"spheres.csv": (["level", "count", "bound", "cumulative_sum"], rows)}
    results = {
        "regionSize": rep.region_size,
        "excluded": rep.excluded,
        "partial": rep.partial,
        "closedForm": rep.closed_form,
    }
    return checks, results, tables


_SEMINORM_CHECKS = ("indicator-floor", "idempotent-consistency", "submultiplicative",
                    "domination", "summability")


def _cmd_seminorm_suite(params):
    report = explore_ball(
        params["group"], params["generators"], WeightFunction.enumerated(len(params["generators"].elements)),
        params["radius"], params["element_cap"],
    )
    if report.truncated:
        return (
            [CheckResult("resource-cap", False,
                         detail="exploration truncated; raise elementCap or lower radius")],
            {"settled": len(report.lengths)},
            {},
        )
    region = [x for x, _ in report.final_items()]
    f = ExpLength(report)
    rng = np.random.default_rng(params["seed"])
    agg = {name: (True, 0.0) for name in _SEMINORM_CHECKS}
    for _ in range(params["count"]):
        size = int(rng.integers(1, min(8, len(region)) + 1))
        picks = rng.choice(len(region), size=size, replace=False)
        support = tuple(region[int(i)] for i in picks)
        weights = {x: float(rng.uniform(1.0, 4.0)) for x in support}
        scale = float(rng.uniform(1.0, 3.0))
        q = SubmultiplicativeSeminorm(support=support, weights=weights, scale=scale)
        outcomes = seminorm_support_check(q, rng, trials=params["trials"])
        outcomes.append(domination_check(q, rng, trials=params["trials"]))
        outcomes.append(summability_check(q, f, report))
        for c in outcomes:
            ok, worst = agg[c.name]
            agg[c.name] = (ok and c.passed, max(worst, c.residual))
    detail = f"{params['count']} seminorms x {params['trials']} tables"
    checks = [CheckResult(name, agg[name][0], agg[name][1], detail) for name in _SEMINORM_CHECKS]
    results = {"regionSize": len(region), "count": params["count"], "trials": params["trials"]}
    return checks, results, {}


def _cmd_polar_suite(params):
    report = explore_ball(
        params["group"], params["generators"], WeightFunction.enumerated(len(params["generators"].elements)),
        params["radius"], params["element_cap"],
    )
    if report.truncated:
        return (
            [CheckResult("resource-cap", False,
                         detail="exploration truncated; raise elementCap or lower radius")],
            {"settled": len(report.lengths)},
            {},
        )
    # products of half-radius elements stay settled, so every weight evaluates
    half = [x for x, v in report.final_items() if 2 * v <= report.radius]
    f = build_semicharacter(params["recipe_f"], report)
    g = build_semicharacter(params["recipe_g"], report)
    checks = weighted_property_trials(f, g, half, trials=params["trials"], seed=params["seed"])
    for name, weight in (("weight-f", f), ("weight-g", g)):
        sub = sampled_submultiplicativity(weight, half, group=params["group"], seed=params["seed"])
        checks.append(
            CheckResult(f"{name}-submultiplicative", sub.passed,
                        detail=f"{sub.checked} checked, {sub.skipped} skipped")
        )
    results = {"regionSize": len(half), "trials": params["trials"]}
    return checks, results, {}


_RUNNERS = {
    "hopf-axioms": _cmd_hopf_axioms,
    "duality-cycle": _cmd_duality_cycle,
    "group-part": _cmd_group_part,
    "tensor-iso": _cmd_tensor_iso,
    "cayley": _cmd_cayley,
    "counterexample": _cmd_counterexample,
    "nuclearity": _cmd_nuclearity,
    "seminorm-suite": _cmd_seminorm_suite,
    "polar-suite": _cmd_polar_suite,
}


def run_command(cfg: RunConfig) -> tuple[dict, dict]:
    """Execute the configured command; returns (report dict, csv tables)."""
    checks, results, tables = _RUNNERS[cfg.command](cfg.params)
    report = {
        "allPass": all(c.passed for c in checks),
        "checks": [c.to_json() for c in checks],
        "command": cfg.command,
        "inputs": cfg.inputs,
        "results": results,
        "version": __version__,
    }
    if tables:
        report["csv"] = {
            name: {"columns": ",".join(header), "rows": len(rows)}
            for name, (header, rows) in sorted(tables.items())
        }
    return report, tables


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="duality-lab",
        description="Run one verification suite described by a JSON config.",
    )
    p.add_argument("--config", required=True, metavar="PATH", help="JSON config file")
    p.add_argument("--out", metavar="DIR", default=".", help="output directory (default: .)")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--backend", choices=("float", "cyclotomic"), default=None,
                   help="override the scalar backend where one applies")
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"config error at {args.config}: {exc}", file=sys.stderr)
        return 2
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"config error at line {exc.lineno}, column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    try:
        cfg = parse_config(raw, seed_override=args.seed, backend_override=args.backend)
    except ConfigError as exc:
        for path, message in exc.errors:
            print(f"config error at {path}: {message}", file=sys.stderr)
        return 2

    report, tables = run_command(cfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_json(out_dir / "report.json", report)
    for name, (header, rows) in sorted(tables.items()):
        write_csv(out_dir / name, header, rows)

    for c in report["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        detail = f"  ({c['detail']})" if c.get("detail") else ""
        print(f"[{mark}] {c['name']}{detail}")
    verdict = "all checks passed" if report["allPass"] else "some checks FAILED"
    print(f"{verdict}; report written to {out_dir / 'report.json'}")
    return 0 if report["allPass"] else 1


if __name__ == "__main__":
    sys.exit(main())
