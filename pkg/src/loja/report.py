"""Text and JSON renderings of engine and estimator results."""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .engine import ExponentReport
from .estimator import EstimateReport


def fmt_exact(v) -> str:
    """Exact value as text: ``"p/q"``, ``"n"`` or ``"-inf"``."""
    if isinstance(v, float):
        if math.isinf(v):
            return "-inf" if v < 0 else "inf"
        raise TypeError("exact values must be rational or infinite")
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_exact(s: str):
    if s in ("-inf", "inf"):
        return float(s)
    return Fraction(s)


def fmt_num(x: float) -> str:
    """Six significant digits."""
    if isinstance(x, float) and (math.isinf(x) or math.isnan(x)):
        return str(x)
    return f"{x:.6g}"


def _cplx(z):
    if z is None:
        return None
    z = complex(z)
    return {"re": round(z.real, 6) + 0.0, "im": round(z.imag, 6) + 0.0}


def dumps(obj) -> str:
    """Canonical JSON (sorted keys, default separators)."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def branch_dict(b, max_terms=6):
    kappa, lead = b.leading_coefficients()
    terms = [{"exponent": e, "coefficient": _cplx(c)} for e, c in b.series[:max_terms]]
    return {
        "ramification": b.ramification,
        "deg_phi": b.deg_phi,
        "conjugacy_size": b.conjugacy_size,
        "source_factor": str(b.source_factor),
        "x_coefficient": _cplx(kappa),
        "y_leading_coefficient": _cplx(lead),
        "y_leading_exponent": fmt_exact(b.lead_exponent) if b.A else "-inf",
        "series": terms,
        "truncation_exponent": fmt_exact(b.truncation_exponent)
        if isinstance(b.truncation_exponent, float) else b.truncation_exponent,
    }


def exponent_dict(r: ExponentReport, seed=None):
    out = {
        "exponent": fmt_exact(r.exponent),
        "proper": bool(r.proper),
        "degenerate_case": r.degenerate_case.value,
        "transform": [[fmt_exact(v) for v in row] for row in r.transform],
        "witness": r.witness,
        "branches": [],
    }
    if r.mapping is not None:
        out["variables"] = list(r.mapping.variables)
        out["components"] = [str(c) for c in r.mapping.components]
    if seed is not None:
        out["seed"] = seed
    for v in r.branch_verdicts:
        d = branch_dict(v.branch)
        d.update({
            "deg_compose": fmt_exact(v.deg_F_compose) if isinstance(v.deg_F_compose, float)
            else v.deg_F_compose,
            "lambda": fmt_exact(v.lam),
            "component_degrees": [fmt_exact(x) if isinstance(x, float) else x
                                  for x in v.component_degrees],
        })
        out["branches"].append(d)
    return out


def exponent_text(r: ExponentReport) -> str:
    lines = [f"L_inf = {fmt_exact(r.exponent)}",
             f"proper: {'yes' if r.proper else 'no'}",
             f"degenerate case: {r.degenerate_case.value}"]
    if r.branch_verdicts:
        M = r.transform
        lines.append("transform: [[%s, %s], [%s, %s]]" % tuple(fmt_exact(v) for row in M for v in row))
        lines.append("branches at infinity:")
        for i, v in enumerate(r.branch_verdicts):
            b = v.branch
            mark = "  <- witness" if i == r.witness else ""
            lines.append(
                f"  [{i}] p={b.ramification} deg_phi={v.deg_phi} "
                f"deg(F o Phi)={fmt_exact(v.deg_F_compose) if isinstance(v.deg_F_compose, float) else v.deg_F_compose} "
                f"lambda={fmt_exact(v.lam)} conjugates={b.conjugacy_size} "
                f"on {b.source_factor} = 0{mark}")
    return "\n".join(lines)


def branches_text(branches, transform) -> str:
    lines = ["transform: [[%s, %s], [%s, %s]]" % tuple(fmt_exact(v) for row in transform for v in row)]
    for i, b in enumerate(branches):
        kappa, _ = b.leading_coefficients()
        k = complex(kappa)
        terms = " + ".join(f"({fmt_num(complex(c).real)}{complex(c).imag:+.6g}j)*t^{e}"
                           for e, c in b.series[:6]) or "0"
        lines.append(f"[{i}] p={b.ramification} deg_phi={b.deg_phi} conjugates={b.conjugacy_size} "
                     f"on {b.source_factor} = 0")
        lines.append(f"    x = ({fmt_num(k.real)}{k.imag:+.6g}j)*t^{b.ramification}")
        lines.append(f"    y = {terms} + ...")
    return "\n".join(lines)


def estimate_dict(r: EstimateReport):
    return r.to_dict()


def estimate_text(r: EstimateReport) -> str:
    def line(name, f):
        return (f"{name} slope: {fmt_num(f.slope)} "
                f"(rms {fmt_num(f.residual)}, tail {f.used_tail} radii)")

    return "\n".join([line("restricted (on S)", r.restricted),
                      line("full sphere", r.full),
                      f"agreement: {fmt_num(r.agreement)}"])
