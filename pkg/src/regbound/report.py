"""Turning results into text tables and stable JSON records."""

from __future__ import annotations

import json

from .algebra import format_element, format_poly_terms
from .hilbert import HilbertSeries
from .homology import ResolutionData


def _stringify(v):
    # exact integers travel as decimal strings
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _stringify(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_stringify(x) for x in v]
    return v if isinstance(v, str) else str(v)


def structured(record: dict) -> str:
    return json.dumps(_stringify(record), sort_keys=True, indent=2) + "\n"


def series_record(H: HilbertSeries) -> dict:
    start = min(0, H.shift) if H.coeffs else 0
    h, s, d = H.reduced() if H.coeffs else ((), 0, 0)
    return {
        "numerator": H.numerator(start),
        "numerator_start": start,
        "denominator_power": H.nvars,
        "reduced_numerator": list(h),
        "reduced_start": s,
        "reduced_power": d,
    }


def numerator_text(H: HilbertSeries) -> str:
    if not H.coeffs:
        return "0"
    items = [((k,), c) for k, c in sorted(H.as_dict().items())]
    return format_poly_terms(items).replace("x0", "z")


def betti_rows(res: ResolutionData) -> list[list[int]]:
    return [[i, j, b] for i, j, b in res.betti_list()]


# --------------------------------------------------------------------------
# text rendering


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_scalar(x) for x in v) + ")"
    return str(v)


def key_values(pairs: list[tuple[str, object]]) -> str:
    if not pairs:
        return ""
    w = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k:<{w}}  {_scalar(v)}" for k, v in pairs)


def text_invariants(rec: dict, res: ResolutionData | None, H: HilbertSeries) -> str:
    keys = ["ring", "input", "reg", "r1", "e_plus", "depth", "dim", "deg", "bdeg", "hdeg", "I_bdeg", "I_hdeg", "I_h", "gin", "seeds"]
    out = [key_values([(k, rec.get(k)) for k in keys])]
    out.append("")
    out.append("hilbert numerator  " + numerator_text(H) + f"  over (1-z)^{H.nvars}")
    if res is not None:
        out.append("")
        out.append("betti")
        out.append(res.betti_grid())
    coh = rec.get("cohomology") or {}
    if coh:
        out.append("")
        out.append(text_cohomology(coh))
    return "\n".join(out) + "\n"


def text_cohomology(coh: dict) -> str:
    lines = ["local cohomology"]
    for i in sorted(coh, key=int):
        c = coh[i]
        if c["zero"]:
            lines.append(f"  H^{i}: 0")
            continue
        win = ", ".join(f"{j}:{v}" for j, v in sorted(c["window"].items(), key=lambda kv: int(kv[0])))
        lo = c["start"] if c["finite"] else "-inf"
        lines.append(f"  H^{i}: degrees {lo}..{c['end']}  dual dim {c['dual_dim']} deg {c['dual_deg']}  [{win}]")
    return "\n".join(lines)


def generators_text(gens) -> list[str]:
    return [format_element(g) for g in gens]
