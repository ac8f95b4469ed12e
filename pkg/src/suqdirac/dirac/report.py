"""JSON, CSV and table renderings of spectra and limit sweeps.

Output ordering is deterministic: weights sorted by (J, N), records in the
order the closed forms produce them.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json

from ..hodge import HodgeConfig
from ..qscalar.ops import scalar_str
from ..uqsu2 import Weight
from .classical import LimitSweep, classical_spectrum
from .reduce import case_of
from .spectrum import spectrum_closed_form, spectrum_numeric

TABLE_WIDTH = 120

CSV_COLUMNS = [
    "q", "J", "N", "case", "label", "kind",
    "lambda_closed_re", "lambda_closed_im", "lambda_numeric_re", "lambda_numeric_im",
    "abs_err", "eigvec_ratios",
]


def truncate(text: str, width: int = TABLE_WIDTH) -> str:
    """Shorten long expressions, keeping a hash so distinct ones stay distinct."""
    if len(text) <= width:
        return text
    digest = hashlib.sha1(text.encode()).hexdigest()[:8]
    return text[: width - 14] + "...[" + digest + "]"


def _cx(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def spectrum_report(w: Weight, cfg: HodgeConfig, q0: float | None, D=None) -> dict:
    """One weight: closed forms as strings, numeric columns when q0 is given."""
    closed = spectrum_closed_form(w, cfg, D)
    records = []
    numeric = spectrum_numeric(w, cfg, q0, D) if q0 is not None else [None] * len(closed)
    for rec, num in zip(closed, numeric):
        entry = {"label": rec.label, "kind": rec.kind, "lambda_closed_expr": scalar_str(rec.value)}
        if num is not None:
            entry.update(num.to_json())
        records.append(entry)
    return {"q": q0, "J": str(w.J), "N": w.N, "case": case_of(w), "records": records}


def classical_report(w: Weight) -> dict:
    recs = []
    for r in classical_spectrum(w):
        z = r.value.evaluate(1.0)
        recs.append(
            {
                "label": r.label,
                "kind": r.kind,
                "lambda_closed_expr": scalar_str(r.value),
                "lambda_closed": _cx(z),
                "eigvec": {k: scalar_str(v) for k, v in r.eigvec_dict().items()},
            }
        )
    return {"q": 1.0, "J": str(w.J), "N": w.N, "case": case_of(w), "records": recs}


def limit_report(sweep: LimitSweep) -> dict:
    w = sweep.weight
    labels = list(sweep.orders)
    return {
        "J": str(w.J),
        "N": w.N,
        "case": case_of(w),
        "grid": sorted({r.q for r in sweep.rows}),
        "errors": {lab: [r.abs_err for r in sweep.rows if r.label == lab] for lab in labels},
        "order": sweep.orders,
        "naive_order": sweep.naive_orders,
        "monotone": sweep.monotone,
        "tail_start": sweep.tail_start,
        "ok": sweep.ok(),
    }


def to_json(reports: list[dict]) -> str:
    return json.dumps(reports, indent=2, sort_keys=True) + "\n"


def to_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in reports:
        for r in rep["records"]:
            lc = r.get("lambda_closed", [None, None])
            ln = r.get("lambda_numeric", [None, None])
            writer.writerow(
                [
                    rep["q"], rep["J"], rep["N"], rep["case"], r["label"], r["kind"],
                    lc[0], lc[1], ln[0], ln[1], r.get("abs_err"),
                    json.dumps(r.get("eigvec_ratios", r.get("eigvec", {})), sort_keys=True),
                ]
            )
    return buf.getvalue()


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, list):
        return f"{x[0]:+.12g}{x[1]:+.12g}i"
    if isinstance(x, float):
        return f"{x:.3e}"
    return str(x)


def to_table(reports: list[dict]) -> str:
    lines = []
    for rep in reports:
        lines.append(f"J={rep['J']} N={rep['N']} case={rep['case']} q={rep['q']}")
        for r in rep["records"]:
            cols = [r["label"], r["kind"], truncate(r["lambda_closed_expr"])]
            if "lambda_numeric" in r:
                cols += [_fmt(r["lambda_closed"]), _fmt(r["lambda_numeric"]), _fmt(r["abs_err"])]
            elif "lambda_closed" in r:
                cols.append(_fmt(r["lambda_closed"]))
            lines.append("  " + " | ".join(cols))
    return "\n".join(lines) + "\n"


def limit_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["J", "N", "case", "label", "q", "abs_err", "order"])
    for rep in reports:
        for lab, errs in rep["errors"].items():
            for q, e in zip(rep["grid"], errs):
                writer.writerow([rep["J"], rep["N"], rep["case"], lab, q, e, rep["order"][lab]])
    return buf.getvalue()


def limit_table(reports: list[dict]) -> str:
    lines = []
    for rep in reports:
        lines.append(f"J={rep['J']} N={rep['N']} case={rep['case']}")
        labels = list(rep["errors"])
        lines.append("  " + " | ".join(["q"] + labels))
        for k, q in enumerate(rep["grid"]):
            lines.append("  " + " | ".join([f"{q:.6f}"] + [f"{rep['errors'][lab][k]:.3e}" for lab in labels]))
        orders = ["-" if rep["order"][lab] is None else f"{rep['order'][lab]:.3f}" for lab in labels]
        lines.append("  " + " | ".join(["order"] + orders))
    return "\n".join(lines) + "\n"
