# emitters.py
"""
Renders computed artifacts as json, dot, csv or text. JSON keys are sorted
and every renderer is deterministic, so repeated runs give identical bytes.
"""

import csv
import io
import json

from activation import ActivationClass, class_report
from config import OUTPUT_FORMATS
from contributors import Contributor
from errors import CapabilityError
from exact_matrix import IntMatrix
from kirchhoff_laws import EdgeLabeling, LawReport


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _unsupported(kind, fmt):
    raise CapabilityError(f"Format '{fmt}' is not available for {kind}.")


# --- Edge labelings ---

def _labeling_dot(lab):
    lines = [
        "digraph transpedance {",
        f'  label="source {lab.source}, sink {lab.sink} ({lab.sign}, {lab.method})";',
    ]
    for (a, b), value in lab.labels.items():
        lines.append(f'  "{a}" -> "{b}" [label="{value}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _labeling_text(lab):
    lines = [f"SOURCE: {lab.source} | SINK: {lab.sink} | SIGN: {lab.sign} | METHOD: {lab.method}"]
    if lab.tau is not None:
        lines.append(f"TAU: {lab.tau}")
    width = max((len(a) + len(b) for a, b in lab.labels), default=0) + 4
    for (a, b), value in lab.labels.items():
        lines.append(f"{(a + ' -> ' + b).ljust(width)} {value:>6}")
    return "\n".join(lines) + "\n"


def emit_labeling(lab, fmt):
    if fmt == "json":
        return _json(lab.to_json())
    if fmt == "dot":
        return _labeling_dot(lab)
    if fmt == "csv":
        return _csv(["from", "to", "value", "multiplicity"],
                    [[a, b, v, lab.multiplicity[(a, b)]] for (a, b), v in lab.labels.items()])
    return _labeling_text(lab)


# --- Law reports ---

def _report_text(report):
    lines = [
        f"SOURCE: {report.source} | SINK: {report.sink} | |V| = {report.vertex_count} | METHOD: {report.method}",
        f"ALL POSITIVE: {report.all_positive} | TAU: {report.tau}",
        "-" * 60,
    ]
    for v in report.verdicts:
        line = f"[{v.status.upper()}] {v.law}"
        if v.detail:
            line += f" ({v.detail})"
        lines.append(line)
        if v.witness is not None:
            lines.append(f"    witness: {json.dumps(v.witness, sort_keys=True)}")
    lines.append("-" * 60)
    lines.append("RESULT: " + ("VIOLATION FOUND" if report.violated else "ALL LAWS HOLD"))
    return "\n".join(lines) + "\n"


def _report_csv(report):
    rows = []
    for v in report.verdicts:
        for r in v.residuals:
            if "triple" in r:
                rows.append([v.law, " ".join(r["triple"]), r["residual"], r["residual_d"]])
            elif "vertex" in r:
                rows.append([v.law, r["vertex"], r["residual"], ""])
    return _csv(["law", "where", "residual", "residual_d"], rows)


def emit_report(report, fmt):
    if fmt == "json":
        return _json(report.to_json())
    if fmt == "csv":
        return _report_csv(report)
    if fmt == "dot":
        _unsupported("law reports", fmt)
    return _report_text(report)


# --- Enumerations ---

def _move_text(m):
    if m.is_backstep:
        return f"{m.tail}({m.edge})"
    return f"{m.tail}->{m.head}({m.edge})"


def emit_enumeration(contributors, fmt):
    if fmt == "json":
        return _json([c.to_json() for c in contributors])
    if fmt == "csv":
        return _csv(["index", "tail", "edge", "head"],
                    [[k, m.tail, m.edge, m.head] for k, c in enumerate(contributors) for m in c.moves])
    if fmt == "dot":
        _unsupported("contributor enumerations", fmt)
    lines = [" ".join(_move_text(m) for m in c.moves) or "(empty)" for c in contributors]
    lines.append(f"TOTAL: {len(contributors)}")
    return "\n".join(lines) + "\n"


def emit_classes(classes, fmt):
    reports = [class_report(cls) for cls in classes]
    if fmt == "json":
        return _json(reports)
    if fmt != "text":
        _unsupported("activation classes", fmt)
    lines = []
    for r in reports:
        tails = " ".join(f"{t['vertex']}:{t['edge']}" for t in r["tailmap"])
        lines.append(
            f"[{tails}] size={r['size']} rank={r['rank']} eta={r['eta']} "
            f"positive_circle_free={r['positive_circle_free']} sum_sgnD={r['sum_sgnD']}"
        )
    lines.append(f"CLASSES: {len(reports)}")
    return "\n".join(lines) + "\n"


# --- Matrices & scalars ---

def emit_matrix(M, fmt):
    if fmt == "json":
        return _json(M.tolist())
    if fmt == "csv":
        return _csv(list(M.labels) if M.labels else [f"c{j}" for j in range(M.cols)], M.tolist())
    if fmt == "dot":
        _unsupported("matrices", fmt)
    return M.to_text() + "\n"


def emit_value(value, fmt):
    if fmt == "json":
        return _json(value)
    if fmt == "text":
        return f"{value}\n"
    _unsupported("scalar values", fmt)


def emit(artifact, fmt="text"):
    """Dispatches on the artifact type."""
    if fmt not in OUTPUT_FORMATS:
        _unsupported("any artifact", fmt)
    if isinstance(artifact, EdgeLabeling):
        return emit_labeling(artifact, fmt)
    if isinstance(artifact, LawReport):
        return emit_report(artifact, fmt)
    if isinstance(artifact, IntMatrix):
        return emit_matrix(artifact, fmt)
    if isinstance(artifact, int):
        return emit_value(artifact, fmt)
    if isinstance(artifact, (list, tuple)):
        if artifact and isinstance(artifact[0], ActivationClass):
            return emit_classes(artifact, fmt)
        if all(isinstance(c, Contributor) for c in artifact):
            return emit_enumeration(artifact, fmt)
    raise CapabilityError(f"Cannot emit objects of type {type(artifact).__name__}.")
