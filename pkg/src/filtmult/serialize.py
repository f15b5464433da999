"""JSON and CSV forms for ideals, filtrations, models and reports.

Rationals travel as "p/q" strings so nothing is rounded on the way out;
floats appear only as explicit companions to an exact value.  Parsing is
strict: unknown kinds and malformed fractions raise ValueError with the
offending value named.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from . import okounkov
from .components import Component, ComponentModel
from .filtration import (
    AdicFiltration,
    Filtration,
    FixedPlusAdicFiltration,
    PeriodCertificate,
    RescaledFiltration,
    RoundedValuationFiltration,
    SubmultiplicativityReport,
    SurdScalar,
    TruncatedFiltration,
    adic,
    fixed_plus_adic,
    rescale,
    rounded_valuation,
    truncate,
)
from .monomial import MonomialIdeal, ideal
from .multiplicity import (
    TRUNCATION_EXACT,
    LimitEstimate,
    MixedMultiplicityReport,
    PositivityReport,
    TruncationLadder,
)

SCHEMA_VERSION = 1


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_frac(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def estimate_to_json(est: LimitEstimate) -> dict:
    if est.method == TRUNCATION_EXACT:
        return {"exact": frac_str(est.value), "method": est.method, "note": est.error_note}
    return {
        "approx": float(est.value),
        "fit": frac_str(est.value),
        "lower_evidence": frac_str(est.lower_evidence),
        "method": est.method,
        "note": est.error_note,
        "tail": [[m, frac_str(v)] for m, v in est.tail],
    }


def ideal_to_json(I: MonomialIdeal) -> dict:
    return {"dim": I.dim, "gens": [list(g) for g in I.gens]}


def ideal_from_json(obj) -> MonomialIdeal:
    if not isinstance(obj, dict) or "dim" not in obj or "gens" not in obj:
        raise ValueError(f"ideal spec needs dim and gens: {obj!r}")
    return ideal(int(obj["dim"]), [tuple(int(c) for c in g) for g in obj["gens"]])


def scale_to_json(s: SurdScalar) -> dict:
    return {"sqrt": [s.p, s.q]} if s.is_root else {"rat": [s.p, s.q]}


def scale_from_json(obj) -> SurdScalar:
    if isinstance(obj, dict) and "sqrt" in obj:
        p, q = obj["sqrt"]
        from .filtration import root_scale

        return root_scale(int(p), int(q))
    if isinstance(obj, dict) and "rat" in obj:
        p, q = obj["rat"]
        from .filtration import rational_scale

        return rational_scale(int(p), int(q))
    raise ValueError(f"scale spec needs sqrt or rat: {obj!r}")


def filtration_to_json(f: Filtration) -> dict:
    if isinstance(f, AdicFiltration):
        return {"kind": f.kind, "ideal": ideal_to_json(f.base)}
    if isinstance(f, FixedPlusAdicFiltration):
        return {
            "kind": f.kind,
            "fixed": ideal_to_json(f.fixed),
            "bulk": ideal_to_json(f.bulk),
        }
    if isinstance(f, RoundedValuationFiltration):
        return {
            "kind": f.kind,
            "weights": [frac_str(w) for w in f.weights],
            "scale": scale_to_json(f.scale),
        }
    if isinstance(f, TruncatedFiltration):
        return {"kind": f.kind, "base": filtration_to_json(f.base), "level": f.a}
    if isinstance(f, RescaledFiltration):
        return {"kind": f.kind, "base": filtration_to_json(f.base), "stride": f.s}
    raise ValueError(f"unknown filtration type: {type(f).__name__}")


def filtration_from_json(obj) -> Filtration:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"filtration spec needs a kind: {obj!r}")
    kind = obj["kind"]
    if kind == "adic":
        return adic(ideal_from_json(obj["ideal"]))
    if kind == "fixed-plus-adic":
        return fixed_plus_adic(ideal_from_json(obj["fixed"]), ideal_from_json(obj["bulk"]))
    if kind == "rounded-valuation":
        return rounded_valuation(
            [parse_frac(w) for w in obj["weights"]], scale_from_json(obj["scale"])
        )
    if kind == "truncated":
        return truncate(filtration_from_json(obj["base"]), int(obj["level"]))
    if kind == "rescaled":
        return rescale(filtration_from_json(obj["base"]), int(obj["stride"]))
    raise ValueError(f"unknown filtration kind: {kind!r}")


def model_to_json(model: ComponentModel) -> dict:
    return {
        "components": [
            {
                "weight": c.weight,
                "filtrations": [filtration_to_json(f) for f in c.filtrations],
            }
            for c in model.components
        ]
    }


def model_from_json(obj) -> ComponentModel:
    if not isinstance(obj, dict):
        raise ValueError(f"model spec must be an object: {obj!r}")
    if "filtrations" in obj:
        fs = tuple(filtration_from_json(f) for f in obj["filtrations"])
        return ComponentModel((Component(1, fs),))
    if "components" in obj:
        comps = []
        for c in obj["components"]:
            fs = tuple(filtration_from_json(f) for f in c["filtrations"])
            comps.append(Component(int(c.get("weight", 1)), fs))
        return ComponentModel(tuple(comps))
    raise ValueError("model spec needs filtrations or components")


def _type_key(t) -> str:
    return ",".join(str(c) for c in t)


def parse_type_key(key: str) -> tuple[int, ...]:
    return tuple(int(c) for c in key.split(","))


def mixed_report_to_json(rep: MixedMultiplicityReport) -> dict:
    return {
        "kind": "mixed-multiplicities",
        "d": rep.d,
        "r": rep.r,
        "backend": rep.backend,
        "coefficients": {
            _type_key(t): estimate_to_json(est) for t, est in rep.coeffs.items()
        },
    }


def positivity_report_to_json(rep: PositivityReport) -> dict:
    return {
        "kind": "positivity",
        "backend": rep.backend,
        "zero_threshold": frac_str(rep.zero_threshold),
        "single": [
            {"index": i, "value": frac_str(v), "positive": pos}
            for i, v, pos in rep.single
        ],
        "positive_indices": list(rep.positive_indices),
        "mixed": mixed_report_to_json(rep.report),
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks
        ],
        "ok": rep.ok,
    }


def ladder_to_json(tl: TruncationLadder) -> dict:
    return {
        "kind": "truncation-ladder",
        "entries": [
            {"level": a, "mixed": mixed_report_to_json(rep)} for a, rep in tl.entries
        ],
        "differences": {
            _type_key(t): [frac_str(v) for v in diffs]
            for t, diffs in tl.differences.items()
        },
    }


def ladder_to_csv(tl: TruncationLadder) -> str:
    """One row per truncation level, one exact column per type vector."""
    types = sorted(tl.entries[0][1].coeffs, reverse=True)
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["level"] + [f"e[{_type_key(t)}]" for t in types])
    for a, rep in tl.entries:
        w.writerow([a] + [frac_str(rep.coeffs[t].value) for t in types])
    return out.getvalue()


def body_to_json(b: okounkov.OkounkovBody) -> dict:
    return {
        "kind": "okounkov-body",
        "sigma": list(b.sigma),
        "bound": b.bound,
        "cutoff": b.cutoff,
        "inner": b.inner,
        "vertices": [[frac_str(c) for c in v] for v in b.body.vertices],
        "volume": frac_str(b.volume()),
    }


def body_to_csv(b: okounkov.OkounkovBody) -> str:
    """Vertex table with float companions, for plotting."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    d = b.body.dim
    w.writerow([f"x{i+1}" for i in range(d)] + [f"x{i+1}_float" for i in range(d)])
    for v in b.body.vertices:
        w.writerow([frac_str(c) for c in v] + [float(c) for c in v])
    return out.getvalue()


def volume_identity_to_json(rep: okounkov.VolumeIdentityReport) -> dict:
    return {
        "kind": "volume-identity",
        "cutoff": rep.cutoff,
        "bound": rep.bound,
        "limit": estimate_to_json(rep.limit),
        "hat_volume": frac_str(rep.hat_volume),
        "body_volume": frac_str(rep.body_volume),
        "volume_difference": frac_str(rep.volume_difference),
        "discrepancy": frac_str(rep.discrepancy),
    }


def origin_collapse_to_json(rep: okounkov.OriginCollapseReport) -> dict:
    return {
        "kind": "origin-collapse",
        "cutoff": rep.cutoff,
        "tolerance": frac_str(rep.tolerance),
        "triggered": rep.triggered,
        "witness": (
            None
            if rep.witness is None
            else {"exponent": list(rep.witness[0]), "level": rep.witness[1]}
        ),
        "gap_at_half": None if rep.gap_at_half is None else frac_str(rep.gap_at_half),
        "gap_at_full": None if rep.gap_at_full is None else frac_str(rep.gap_at_full),
        "gap_decreasing": rep.gap_decreasing,
    }


def containment_bound_to_json(rep: okounkov.ContainmentBound) -> dict:
    return {
        "kind": "containment-bound",
        "found": rep.found,
        "b": rep.b,
        "bound": rep.bound,
        "verified_through": rep.verified_through,
    }


def minkowski_report_to_json(rep: okounkov.MinkowskiReport) -> dict:
    return {
        "kind": "minkowski-checks",
        "bound": rep.bound,
        "cutoff": rep.cutoff,
        "contained_vertices": rep.contained_vertices,
        "unresolved_vertices": [
            [frac_str(c) for c in v] for v in rep.unresolved_vertices
        ],
        "containment_pass": rep.containment_pass,
        "collapse_triggered": rep.collapse_triggered,
        "collapse_proxy": frac_str(rep.collapse_proxy),
        "tolerance": frac_str(rep.tolerance),
        "sum_volume": None if rep.sum_volume is None else frac_str(rep.sum_volume),
        "tau_volume": None if rep.tau_volume is None else frac_str(rep.tau_volume),
        "volume_agreement": rep.volume_agreement,
    }


def submultiplicativity_to_json(rep: SubmultiplicativityReport) -> dict:
    return {
        "kind": "submultiplicativity",
        "bound": rep.bound,
        "ok": rep.ok,
        "first_violation": (
            None if rep.first_violation is None else list(rep.first_violation)
        ),
    }


def period_to_json(cert: PeriodCertificate) -> dict:
    return {
        "kind": "period-certificate",
        "period": cert.period,
        "checked_bound": cert.checked_bound,
    }
