"""Appendix-style table rendering of classification records.

The layout mirrors the classification tables (columns: No., the color
functional matrix, DSC, admissible map, active-root classes) so diffing a
run against the published data is immediate.
"""

from __future__ import annotations

from spherica.enumeration import ClassificationRecord
from spherica.luna import SphRoot


def root_str(rs, coords) -> str:
    return str(SphRoot(tuple(coords), 1))


def _display_key(root):
    lead = next((i for i, c in enumerate(root) if c), len(root))
    return (lead, root)


def classes_str(rs, classes) -> str:
    parts = []
    for cls in sorted(classes, key=lambda c: min(_display_key(r) for r in c)):
        roots = sorted(cls, key=_display_key)
        parts.append("{" + ", ".join(root_str(rs, r) for r in roots) + "}")
    return ", ".join(parts)


def matrix_str(matrix) -> str:
    return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in matrix) + "]"


def kappa_str(kappa) -> str:
    return "; ".join("(" + ",".join(str(x) for x in row) + ")" for row in kappa)


def dsc_str(witness) -> str:
    return ",".join(str(i + 1) for i in sorted(witness))


def records_markdown(records: list[ClassificationRecord]) -> str:
    lines = [
        "| No. | D^a | DSC | Admissible map | Active roots |",
        "| --- | --- | --- | --- | --- |",
    ]
    for no, rec in enumerate(records, 1):
        first = True
        for w in rec.per_witness:
            lines.append(
                "| {} | {} | {} | {} | {} |".format(
                    no if first else "",
                    kappa_str(rec.system.kappa) if first else "",
                    dsc_str(w.witness),
                    matrix_str(w.eta.eta),
                    classes_str(rec.system.rs, w.active_classes),
                )
            )
            first = False
    return "\n".join(lines) + "\n"


def records_text(records: list[ClassificationRecord]) -> str:
    out = []
    for no, rec in enumerate(records, 1):
        out.append(f"system {no}: D^a = {kappa_str(rec.system.kappa)}")
        for w in rec.per_witness:
            out.append(
                f"  dsc {dsc_str(w.witness)}: eta = {matrix_str(w.eta.eta)}; "
                f"active roots {classes_str(rec.system.rs, w.active_classes)}"
            )
    return "\n".join(out) + "\n"


def records_json_doc(records: list[ClassificationRecord]) -> list:
    from spherica import serialize

    out = []
    for rec in records:
        entry = serialize.system_to_doc(rec.system)
        entry["dscs"] = [
            {
                "dsc": sorted(i + 1 for i in w.witness),
                "admissible": [list(r) for r in w.eta.eta],
                "active_roots": serialize.active_classes_doc(w.active_classes),
            }
            for w in rec.per_witness
        ]
        out.append(entry)
    return out
