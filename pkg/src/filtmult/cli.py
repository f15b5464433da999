"""Command line interface: JSON job descriptions in, reports out.

Exit codes: 0 on success, 1 for input problems (bad config, bad flags),
2 when a verification check fails.  Reports are emitted with sorted keys
so two runs on the same job are byte-identical once the timestamp is
suppressed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction

from . import okounkov, serialize
from .components import ComponentModel, component_growth, component_mixed, two_branch_model
from .filtration import check_submultiplicative
from .multiplicity import (
    DEFAULT_LADDER,
    DIRECT,
    TRUNCATION_EXACT,
    LimitEstimate,
    mixed_multiplicities,
    positivity_report,
    product_ideal_at,
    truncation_ladder,
)

_PARAM_KEYS = {
    "levels",
    "backend",
    "ladder",
    "trunc_level",
    "truncation_levels",
    "check_bound",
    "order",
    "sigma",
    "tau",
    "cutoff",
    "tolerance",
    "zero_threshold",
    "submult_bound",
    "i_bound",
    "b_cap",
    "expected",
}

_COMMANDS = ("colength", "multiplicity", "mixed", "okounkov", "verify", "example1")


class CliError(Exception):
    """Input problem; rendered to stderr and mapped to exit code 1."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="filtmult",
        description="Exact multiplicities and convex bodies of monomial ideal filtrations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in (
        ("colength", "lengths of quotient rings at requested levels"),
        ("multiplicity", "multiplicity of each filtration in the model"),
        ("mixed", "mixed multiplicities, optionally along a truncation ladder"),
        ("okounkov", "semigroup body of the model at a sigma vector"),
        ("verify", "run the model's verification checks"),
        ("example1", "built-in two-component worked example"),
    ):
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--config", help="path to a JSON job description")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument(
            "--no-timestamp",
            action="store_true",
            help="omit the generation time for byte-stable output",
        )
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            help="worker threads for independent verification sections",
        )
    return parser


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise CliError("config must be a JSON object")
    return obj


def validate(config: dict) -> list[str]:
    """Collect configuration problems without running anything."""
    problems = []
    unknown = set(config) - {"model", "params"}
    if unknown:
        problems.append(f"unknown config keys: {sorted(unknown)}")
    if "model" not in config:
        problems.append("config needs a model")
        return problems
    try:
        model = serialize.model_from_json(config["model"])
    except (ValueError, KeyError, TypeError) as exc:
        problems.append(f"bad model: {exc}")
        return problems
    params = config.get("params", {})
    if not isinstance(params, dict):
        problems.append("params must be an object")
        return problems
    unknown = set(params) - _PARAM_KEYS
    if unknown:
        problems.append(f"unknown params: {sorted(unknown)}")
    r = model.r

    def check_vector(key, allow_zero=True):
        v = params.get(key)
        if v is None:
            return
        if (
            not isinstance(v, list)
            or len(v) != r
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in v)
        ):
            problems.append(f"{key} must be a list of {r} integers")
        elif any(c < 0 for c in v) or (not allow_zero and all(c == 0 for c in v)):
            problems.append(f"{key} entries must be nonnegative")

    check_vector("sigma")
    check_vector("tau")
    if "levels" in params:
        rows = params["levels"]
        if not isinstance(rows, list) or not rows:
            problems.append("levels must be a nonempty list of level vectors")
        else:
            for row in rows:
                if (
                    not isinstance(row, list)
                    or len(row) != r
                    or not all(isinstance(c, int) and not isinstance(c, bool) and c >= 0 for c in row)
                ):
                    problems.append(f"levels row must be {r} nonnegative integers: {row!r}")
                    break
    if "ladder" in params:
        lad = params["ladder"]
        if (
            not isinstance(lad, list)
            or len(lad) < 3
            or not all(isinstance(c, int) and c > 0 for c in lad)
            or any(a >= b for a, b in zip(lad, lad[1:]))
        ):
            problems.append("ladder must be a strictly increasing list of >= 3 positive integers")
    if "truncation_levels" in params:
        ts = params["truncation_levels"]
        if (
            not isinstance(ts, list)
            or not ts
            or not all(isinstance(c, int) and c > 0 for c in ts)
            or any(a >= b for a, b in zip(ts, ts[1:]))
        ):
            problems.append("truncation_levels must be strictly increasing positive integers")
        if len(model.components) > 1:
            problems.append("truncation ladders need a single-component model")
    for key in ("trunc_level", "check_bound", "cutoff", "submult_bound", "i_bound", "b_cap"):
        if key in params and (not isinstance(params[key], int) or params[key] < 1):
            problems.append(f"{key} must be a positive integer")
    if "order" in params and (not isinstance(params["order"], int) or params["order"] < 2):
        problems.append("order must be an integer of at least 2")
    if "backend" in params and params["backend"] not in (DIRECT, TRUNCATION_EXACT):
        problems.append(f"backend must be {DIRECT!r} or {TRUNCATION_EXACT!r}")
    for key in ("tolerance", "zero_threshold"):
        if key in params:
            try:
                if serialize.parse_frac(params[key]) <= 0:
                    problems.append(f"{key} must be positive")
            except ValueError as exc:
                problems.append(str(exc))
    if "expected" in params:
        exp = params["expected"]
        if not isinstance(exp, dict):
            problems.append("expected must be an object")
        else:
            for section, table in exp.items():
                if section not in ("coefficients", "multiplicity", "colength"):
                    problems.append(f"unknown expected section: {section!r}")
                    continue
                if not isinstance(table, dict):
                    problems.append(f"expected {section} must be an object")
                    continue
                for k, v in table.items():
                    try:
                        serialize.parse_frac(v)
                    except ValueError:
                        problems.append(f"expected {section}[{k}] is not a rational: {v!r}")
    return problems


def _single_component(model: ComponentModel):
    if len(model.components) != 1 or model.components[0].weight != 1:
        return None
    return list(model.components[0].filtrations)


def _backend_args(params):
    return {
        "backend": params.get("backend", DIRECT),
        "trunc_level": params.get("trunc_level"),
        "ladder": tuple(params["ladder"]) if "ladder" in params else None,
        "check_bound": params.get("check_bound", 16),
        "order": params.get("order", 2),
    }


def run_colength(model: ComponentModel, params: dict):
    rows = []
    for levels in params.get("levels", [[1] * model.r]):
        per = [
            comp.weight * product_ideal_at(comp.filtrations, levels).colength()
            for comp in model.components
        ]
        rows.append(
            {"levels": list(levels), "per_component": per, "colength": sum(per)}
        )
    payload = {"kind": "colength", "rows": rows}
    lines = ["levels,colength"]
    lines += [
        "{},{}".format(" ".join(map(str, r["levels"])), r["colength"]) for r in rows
    ]
    return payload, "\n".join(lines) + "\n"


def run_multiplicity(model: ComponentModel, params: dict):
    args = _backend_args(params)
    d = model.dim
    fact = 1
    for k in range(2, d + 1):
        fact *= k
    per = []
    for j in range(model.r):
        unit = tuple(1 if i == j else 0 for i in range(model.r))
        est = component_growth(model, unit, **args)
        scaled = LimitEstimate(
            value=est.value * fact,
            lower_evidence=est.lower_evidence * fact,
            method=est.method,
            error_note=f"{est.error_note}; growth scaled by {d}!",
            tail=tuple((m, v * fact) for m, v in est.tail),
        )
        per.append({"index": j, "multiplicity": serialize.estimate_to_json(scaled)})
    payload = {"kind": "multiplicity", "per_filtration": per}
    lines = ["index,multiplicity"]
    for entry in per:
        m = entry["multiplicity"]
        lines.append(f"{entry['index']},{m.get('exact', m.get('fit'))}")
    return payload, "\n".join(lines) + "\n"


def run_mixed(model: ComponentModel, params: dict):
    args = _backend_args(params)
    fs = _single_component(model)
    if fs is not None:
        rep = mixed_multiplicities(fs, **args)
    else:
        rep = component_mixed(model, **args)
    payload = {"kind": "mixed", "mixed": serialize.mixed_report_to_json(rep)}
    csv_text = None
    if "truncation_levels" in params:
        if fs is None:
            raise CliError("truncation ladders need a single-component model")
        tl = truncation_ladder(
            fs, params["truncation_levels"], check_bound=args["check_bound"]
        )
        payload["ladder"] = serialize.ladder_to_json(tl)
        csv_text = serialize.ladder_to_csv(tl)
    if csv_text is None:
        types = sorted(rep.coeffs, reverse=True)
        lines = ["type,value"]
        lines += [
            "{},{}".format(
                " ".join(map(str, t)), serialize.frac_str(rep.coeffs[t].value)
            )
            for t in types
        ]
        csv_text = "\n".join(lines) + "\n"
    return payload, csv_text


def run_okounkov(model: ComponentModel, params: dict):
    fs = _single_component(model)
    if fs is None:
        raise CliError("semigroup bodies need a single-component model")
    sigma = tuple(params.get("sigma", [1] * model.r))
    cutoff = params.get("cutoff", 16)
    bound = okounkov.degree_bound(fs, sigma)
    sem = okounkov.value_semigroup(fs, sigma, bound, cutoff)
    b = okounkov.body(sem)
    payload = {
        "kind": "okounkov",
        "degree_bound": bound,
        "body": serialize.body_to_json(b),
    }
    return payload, serialize.body_to_csv(b)


def _verify_checks(model: ComponentModel, params: dict):
    """Named, independent verification sections; each returns (passed, detail, extra)."""
    args = _backend_args(params)
    fs = _single_component(model)
    checks = []

    sub_bound = params.get("submult_bound", 8)
    for ci, comp in enumerate(model.components):
        for j, f in enumerate(comp.filtrations):
            def submult(f=f):
                rep = check_submultiplicative(f, sub_bound)
                detail = (
                    f"levels multiply into deeper levels through {rep.bound}"
                    if rep.ok
                    else f"violated at {rep.first_violation}"
                )
                return rep.ok, detail, serialize.submultiplicativity_to_json(rep)

            checks.append((f"submultiplicative[c{ci}.f{j}]", submult))

    def positivity():
        if fs is not None:
            rep = positivity_report(
                fs,
                zero_threshold=serialize.parse_frac(
                    params.get("zero_threshold", "1/1000")
                ),
                **args,
            )
            failing = [c.name for c in rep.checks if not c.passed]
            detail = "all sign checks hold" if rep.ok else f"failing: {failing}"
            return rep.ok, detail, serialize.positivity_report_to_json(rep)
        rep = component_mixed(model, **args)
        bad = [t for t, est in rep.coeffs.items() if est.value < 0]
        return (
            not bad,
            "all coefficients nonnegative" if not bad else f"negative at {bad[0]}",
            serialize.mixed_report_to_json(rep),
        )

    checks.append(("positivity", positivity))

    if fs is not None and model.r == 1:
        cutoff = params.get("cutoff", 16)

        def identity():
            rep = okounkov.volume_identity_report(
                fs[0], cutoff, ladder=args["ladder"]
            )
            tol = (
                serialize.parse_frac(params["tolerance"])
                if "tolerance" in params
                else max(Fraction(1, 100), Fraction(4, cutoff))
            )
            ok = rep.discrepancy <= tol
            detail = f"discrepancy {serialize.frac_str(rep.discrepancy)} vs tolerance {tol}"
            return ok, detail, serialize.volume_identity_to_json(rep)

        checks.append(("volume-identity", identity))

        def collapse():
            rep = okounkov.origin_collapse_check(
                fs[0], cutoff, serialize.parse_frac(params.get("tolerance", "1/8"))
            )
            ok = (not rep.triggered) or bool(rep.gap_decreasing)
            detail = (
                "no quotient point near the origin"
                if not rep.triggered
                else f"gap {rep.gap_at_half} -> {rep.gap_at_full}"
            )
            return ok, detail, serialize.origin_collapse_to_json(rep)

        checks.append(("origin-collapse", collapse))

    if fs is not None and model.r >= 2:
        cutoff = params.get("cutoff", 8)
        sigma = tuple(params.get("sigma", [1 if j == 0 else 0 for j in range(model.r)]))
        tau = tuple(params.get("tau", [0 if j == 0 else 1 for j in range(model.r)]))

        def minkowski():
            rep = okounkov.minkowski_checks(fs, sigma, tau, cutoff)
            ok = rep.containment_pass and rep.volume_agreement is not False
            detail = (
                f"{rep.contained_vertices} sum-body vertices contained"
                if ok
                else "unresolved vertices or volume disagreement"
            )
            return ok, detail, serialize.minkowski_report_to_json(rep)

        checks.append(("minkowski", minkowski))

    expected = params.get("expected", {})
    if "coefficients" in expected:
        table = expected["coefficients"]

        def exp_coeffs(table=table):
            rep = (
                mixed_multiplicities(fs, **args)
                if fs is not None
                else component_mixed(model, **args)
            )
            tol = (
                Fraction(0)
                if args["backend"] == TRUNCATION_EXACT
                else serialize.parse_frac(params.get("tolerance", "1/100"))
            )
            for key, want in sorted(table.items()):
                t = serialize.parse_type_key(key)
                if t not in rep.coeffs:
                    return False, f"no coefficient of type {key}", None
                got = rep.coeffs[t].value
                if abs(got - serialize.parse_frac(want)) > tol:
                    return (
                        False,
                        f"coefficient {key}: got {serialize.frac_str(got)}, expected {want}",
                        None,
                    )
            return True, f"{len(table)} expected coefficients match", None

        checks.append(("expected-coefficients", exp_coeffs))
    if "colength" in expected:
        table = expected["colength"]

        def exp_colength(table=table):
            for key, want in sorted(table.items()):
                levels = [int(c) for c in key.split(",")]
                got = sum(
                    comp.weight * product_ideal_at(comp.filtrations, levels).colength()
                    for comp in model.components
                )
                if got != serialize.parse_frac(want):
                    return False, f"colength at [{key}]: got {got}, expected {want}", None
            return True, f"{len(table)} expected colengths match", None

        checks.append(("expected-colength", exp_colength))
    if "multiplicity" in expected:
        table = expected["multiplicity"]

        def exp_mult(table=table):
            d = model.dim
            fact = 1
            for k in range(2, d + 1):
                fact *= k
            tol = (
                Fraction(0)
                if args["backend"] == TRUNCATION_EXACT
                else serialize.parse_frac(params.get("tolerance", "1/100"))
            )
            for key, want in sorted(table.items()):
                j = int(key)
                unit = tuple(1 if i == j else 0 for i in range(model.r))
                got = fact * component_growth(model, unit, **args).value
                if abs(got - serialize.parse_frac(want)) > tol:
                    return (
                        False,
                        f"multiplicity[{key}]: got {serialize.frac_str(got)}, expected {want}",
                        None,
                    )
            return True, f"{len(table)} expected multiplicities match", None

        checks.append(("expected-multiplicity", exp_mult))

    return checks


def run_verify(model: ComponentModel, params: dict, threads: int):
    checks = _verify_checks(model, params)

    def guarded(fn):
        try:
            return fn()
        except Exception as exc:  # a crashed check is a failed check
            return False, f"check raised {type(exc).__name__}: {exc}", None

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        futures = [(name, pool.submit(guarded, fn)) for name, fn in checks]
        results = [(name, fut.result()) for name, fut in futures]

    entries = []
    failed = []
    for name, (ok, detail, extra) in results:
        entry = {"name": name, "passed": ok, "detail": detail}
        if extra is not None:
            entry["report"] = extra
        entries.append(entry)
        if not ok:
            failed.append(name)
    payload = {"kind": "verify", "checks": entries, "failed": failed, "ok": not failed}
    return payload, None


def run_example1(params: dict):
    model = two_branch_model()
    ladder = tuple(params.get("ladder", DEFAULT_LADDER))
    rep = component_mixed(model, ladder=ladder)
    coeffs = {
        ",".join(map(str, t)): serialize.frac_str(est.value)
        for t, est in rep.coeffs.items()
    }
    growth = {}
    for label, n in (("1,0", (1, 0)), ("0,1", (0, 1)), ("1,1", (1, 1))):
        est = component_growth(model, n, ladder=ladder)
        growth[label] = serialize.frac_str(est.value)
    closed_form_ok = all(
        product_ideal_at(model.components[0].filtrations, (n, n)).colength()
        == (n + 1) * (n + 2) // 2 + (n - 1)
        for n in range(1, 17)
    )
    payload = {
        "kind": "example1",
        "mixed": serialize.mixed_report_to_json(rep),
        "coefficients": coeffs,
        "growth": growth,
        "diagonal_length_closed_form_holds": closed_form_ok,
    }
    return payload, None


def _emit(payload, csv_text, ns, command):
    if ns.format == "csv":
        if csv_text is None:
            raise CliError(f"{command} has no csv form")
        text = csv_text
    else:
        envelope = {"schema_version": serialize.SCHEMA_VERSION, "command": command}
        if not ns.no_timestamp:
            envelope["generated_at"] = datetime.now(timezone.utc).isoformat(
                timespec="seconds"
            )
        envelope.update(payload)
        text = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.threads < 1:
            raise CliError("--threads must be at least 1")
        if ns.command == "example1":
            params = {}
            if ns.config:
                params = load_config(ns.config).get("params", {})
            payload, csv_text = run_example1(params)
            _emit(payload, csv_text, ns, ns.command)
            return 0
        if not ns.config:
            raise CliError(f"{ns.command} requires --config")
        config = load_config(ns.config)
        problems = validate(config)
        if problems:
            for p in problems:
                print(f"config error: {p}", file=sys.stderr)
            return 1
        model = serialize.model_from_json(config["model"])
        params = config.get("params", {})
        if ns.command == "colength":
            payload, csv_text = run_colength(model, params)
        elif ns.command == "multiplicity":
            payload, csv_text = run_multiplicity(model, params)
        elif ns.command == "mixed":
            payload, csv_text = run_mixed(model, params)
        elif ns.command == "okounkov":
            payload, csv_text = run_okounkov(model, params)
        else:
            payload, csv_text = run_verify(model, params, ns.threads)
            _emit(payload, csv_text, ns, ns.command)
            if payload["failed"]:
                for name in payload["failed"]:
                    print(f"verify failed: {name}", file=sys.stderr)
                return 2
            return 0
        _emit(payload, csv_text, ns, ns.command)
        return 0
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
