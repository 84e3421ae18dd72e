"""Full structured report and its plain-text table rendering.

The structured document is the single source of truth: the table mode is a
pure rendering of the same dict, so the two output modes cannot drift
apart.  Every leaf is a JSON-native value; exact scalars are rendered as
strings through their canonical str() form.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence

from .cohomology import (
    CohomologyTable,
    MatrixComplex,
    ddj_lemma_holds,
    frolicher_degenerate,
    non_hkt_degrees,
)
from .fileio import document_from_spec
from .linalg import Mat
from .metrics import ExistenceVerdict, MetricCandidate, hkt_existence, sg_existence
from .model import AlgebraSpec, ValidationReport
from .quaternionic import QuaternionicComplex
from .scalars import RationalLike
from .slstructure import DecompositionReport, PairingResult, SLStructure
from .suite import CheckResult, run_property_suite


class ReportSession:
    """Everything computed once for one instantiated structure.

    Bundles the operator complex, its matrix reduction, and the volume
    form layer so that the CLI subcommands share the same objects instead
    of rebuilding them per question.
    """

    def __init__(self, spec: AlgebraSpec,
                 bindings: Optional[Mapping[str, RationalLike]] = None):
        self.spec = spec
        self.bindings: Dict[str, Fraction] = {
            name: Fraction(value) for name, value in (bindings or {}).items()
        }
        self.cx = QuaternionicComplex.build(spec, bindings)
        self.mc = MatrixComplex.from_quaternionic(self.cx)
        self.sl = SLStructure(self.cx, self.mc)

    def render_class(self, coords: Sequence, p: int) -> str:
        return self.cx.render_form(self.cx.from_coords(coords, p))


# ---------------------------------------------------------------------------
# Document assembly.  Keys are stable; json.dumps sorts them on output.
# ---------------------------------------------------------------------------


def _validation_document(report: Optional[ValidationReport]) -> dict:
    if report is None:
        return {"checked": False}
    return {
        "checked": True,
        "jacobi": report.jacobi_ok,
        "nilpotent": report.nilpotent_ok,
        "nilpotency_step": report.nilpotency_step,
        "quaternionic_relations": report.quaternionic_relations_ok,
        "integrability": dict(report.integrability),
        "messages": list(report.messages),
    }


def _cohomology_document(table: CohomologyTable) -> dict:
    rows = []
    for p in table.degrees:
        rows.append({
            "p": p,
            "h_del": table.h_del[p],
            "h_del_j": table.h_delj[p],
            "h_bc": table.h_bc[p],
            "h_ae": table.h_ae[p],
            "a": table.a[p],
            "b": table.b[p],
            "c": table.c[p],
            "d": table.d[p],
            "e": table.e[p],
            "f": table.f[p],
            "dim_e1": table.dim_e1[p],
            "dim_e2": table.dim_e2[p],
            "delta": table.delta[p],
        })
    return {
        "top_degree": table.top_degree,
        "rows": rows,
        "degenerate_at_first_page": frolicher_degenerate(table),
        "ddj_lemma": ddj_lemma_holds(table),
        "defect_degrees": list(non_hkt_degrees(table)),
    }


def _matrix_document(matrix: Mat) -> List[List[str]]:
    return [[str(entry) for entry in row] for row in matrix.data]


def certificate_document(session: ReportSession,
                         cand: MetricCandidate) -> dict:
    return {
        "omega": session.cx.render_form(cand.omega),
        "gram": _matrix_document(cand.gram),
        "leading_minors": [str(m) for m in cand.minors],
        "is_real": cand.is_real,
        "positive": cand.positive,
        "hermitian": cand.hermitian,
        "hkt": cand.hkt,
        "gauduchon": cand.gauduchon,
        "strongly_gauduchon": cand.strongly_gauduchon,
        "hyperkahler": cand.hyperkahler,
    }


def verdict_document(session: ReportSession, verdict: ExistenceVerdict) -> dict:
    doc = {
        "question": verdict.question,
        "answer": "yes" if verdict.answer else "no",
        "method": verdict.method,
        "certificate": None,
    }
    if verdict.certificate is not None:
        doc["certificate"] = certificate_document(session, verdict.certificate)
    return doc


def decomposition_document(session: ReportSession,
                           rep: DecompositionReport) -> dict:
    return {
        "self_dual": None if rep.phi_plus_dim is None else {
            "plus_dim": rep.phi_plus_dim,
            "minus_dim": rep.phi_minus_dim,
            "direct_sum": rep.phi_direct,
        },
        "jbar_plus_real_dim": rep.jbar_plus_real_dim,
        "jbar_minus_real_dim": rep.jbar_minus_real_dim,
        "jbar_plus_dim": str(rep.jbar_plus_dim),
        "jbar_minus_dim": str(rep.jbar_minus_dim),
        "intersection_dim": rep.intersection_dim,
        "sum_dim": rep.sum_dim,
        "complement_dim": rep.complement_dim,
        "pure": rep.pure,
        "full": rep.full,
        "representatives_plus": [
            session.render_class(row, 2) for row in rep.representatives_plus
        ],
        "representatives_minus": [
            session.render_class(row, 2) for row in rep.representatives_minus
        ],
    }


def pairing_document(session: ReportSession, result: PairingResult) -> dict:
    return {
        "p": result.p,
        "invertible": result.invertible,
        "matrix": _matrix_document(result.matrix),
        "bott_chern_classes": [
            session.render_class(row, result.p)
            for row in result.bc_representatives
        ],
        "aeppli_classes": [
            session.render_class(row, 2 * session.cx.n - result.p)
            for row in result.ae_representatives
        ],
    }


def suite_document(results: Sequence[CheckResult]) -> List[dict]:
    return [
        {
            "name": r.name,
            "statement": r.statement,
            "status": r.status,
            "detail": r.detail,
        }
        for r in results
    ]


def build_report(spec: AlgebraSpec,
                 bindings: Optional[Mapping[str, RationalLike]] = None,
                 den_bound: int = 4, coeff_bound: int = 2,
                 probe_limit: int = 2000) -> dict:
    """Compute the complete report document for one structure instance."""
    session = ReportSession(spec, bindings)
    return build_report_from_session(
        session, den_bound=den_bound, coeff_bound=coeff_bound,
        probe_limit=probe_limit,
    )


def build_report_from_session(session: ReportSession,
                              den_bound: int = 4, coeff_bound: int = 2,
                              probe_limit: int = 2000) -> dict:
    cx = session.cx
    table = session.mc.table()

    if cx.n == 2:
        hkt = verdict_document(session, hkt_existence(
            cx, session.mc, den_bound=den_bound, coeff_bound=coeff_bound,
            probe_limit=probe_limit,
        ))
        sg = verdict_document(session, sg_existence(
            cx, session.mc, den_bound=den_bound, coeff_bound=coeff_bound,
            probe_limit=probe_limit,
        ))
        verdicts = {"applicable": True, "hkt": hkt, "strongly_gauduchon": sg}
    else:
        verdicts = {
            "applicable": False,
            "reason": f"existence questions are decided only for "
                      f"quaternionic dimension 2, not {cx.n}",
        }

    suite = run_property_suite(cx, session.mc, session.sl,
                               den_bound=den_bound, coeff_bound=coeff_bound,
                               probe_limit=min(probe_limit, 400))

    return {
        "algebra": document_from_spec(session.spec),
        "bindings": {k: str(v) for k, v in sorted(session.bindings.items())},
        "dimension": cx.dimension,
        "quaternionic_dimension": cx.n,
        "validation": _validation_document(cx.report),
        "cohomology": _cohomology_document(table),
        "decomposition": decomposition_document(
            session, session.sl.decomposition_report()),
        "verdicts": verdicts,
        "suite": suite_document(suite),
    }


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Table rendering.
# ---------------------------------------------------------------------------


def _grid(header: Sequence[str], rows: Sequence[Sequence[str]]) -> List[str]:
    """Left column label, right-aligned value columns, pipe separators."""
    table = [list(header)] + [list(r) for r in rows]
    widths = [max(len(row[j]) for row in table) for j in range(len(header))]
    lines = []
    for idx, row in enumerate(table):
        cells = [row[0].ljust(widths[0])]
        cells += [row[j].rjust(widths[j]) for j in range(1, len(row))]
        lines.append(" | ".join(cells).rstrip())
        if idx == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return lines


def _interior_rows(doc: dict) -> List[dict]:
    top = doc["cohomology"]["top_degree"]
    rows = doc["cohomology"]["rows"]
    return [rows[p] for p in range(1, top)]


def _dimension_table(doc: dict) -> List[str]:
    header = ["(p,0)", "h_del", "h_del_J", "h_BC", "h_AE"]
    rows = [
        [f"({r['p']},0)", str(r["h_del"]), str(r["h_del_j"]),
         str(r["h_bc"]), str(r["h_ae"])]
        for r in _interior_rows(doc)
    ]
    return _grid(header, rows)


def _varouchas_table(doc: dict) -> List[str]:
    header = ["(p,0)", "a", "b", "c", "d", "e", "f"]
    rows = [
        [f"({r['p']},0)"] + [str(r[k]) for k in "abcdef"]
        for r in _interior_rows(doc)
    ]
    return _grid(header, rows)


def _full_table(doc: dict) -> List[str]:
    header = ["(p,0)", "h_del", "h_del_J", "h_BC", "h_AE",
              "a", "b", "c", "d", "e", "f", "E1", "E2", "Delta"]
    rows = []
    for r in doc["cohomology"]["rows"]:
        rows.append(
            [f"({r['p']},0)", str(r["h_del"]), str(r["h_del_j"]),
             str(r["h_bc"]), str(r["h_ae"])]
            + [str(r[k]) for k in "abcdef"]
            + [str(r["dim_e1"]), str(r["dim_e2"]), str(r["delta"])]
        )
    return _grid(header, rows)


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def certificate_lines(cert: dict, indent: str = "  ") -> List[str]:
    lines = [
        indent + "Omega = " + cert["omega"],
        indent + "leading principal minors: "
        + ", ".join(cert["leading_minors"]),
    ]
    flags = ["hermitian", "hkt", "gauduchon", "strongly_gauduchon",
             "hyperkahler"]
    lines.append(indent + "flags: " + ", ".join(
        f"{name}={_yesno(cert[name])}" for name in flags))
    return lines


def verdict_lines(doc: dict) -> List[str]:
    verdicts = doc["verdicts"]
    if not verdicts["applicable"]:
        return ["existence questions: not applicable ("
                + verdicts["reason"] + ")"]
    lines = []
    for key, label in (("hkt", "HKT"),
                       ("strongly_gauduchon", "strongly Gauduchon")):
        v = verdicts[key]
        lines.append(f"{label}: {v['answer']} (method: {v['method']})")
        if v["certificate"] is not None:
            lines.extend(certificate_lines(v["certificate"]))
    return lines


def decomposition_lines(dec: dict) -> List[str]:
    lines = [
        f"pure: {_yesno(dec['pure'])} "
        f"(intersection dim {dec['intersection_dim']})",
        f"full: {_yesno(dec['full'])} "
        f"(complement dim {dec['complement_dim']})",
        f"dim H^(Jbar,+) = {dec['jbar_plus_dim']}, "
        f"dim H^(Jbar,-) = {dec['jbar_minus_dim']} "
        f"(real dims {dec['jbar_plus_real_dim']}, "
        f"{dec['jbar_minus_real_dim']})",
    ]
    if dec["self_dual"] is not None:
        sd = dec["self_dual"]
        lines.append(
            f"self-dual split: {sd['plus_dim']} + {sd['minus_dim']}, "
            f"direct sum: {_yesno(sd['direct_sum'])}"
        )
    if dec["representatives_plus"]:
        lines.append("plus classes: "
                     + "; ".join(dec["representatives_plus"]))
    if dec["representatives_minus"]:
        lines.append("minus classes: "
                     + "; ".join(dec["representatives_minus"]))
    return lines


def suite_lines(entries: Sequence[dict]) -> List[str]:
    tags = {"pass": "PASS", "fail": "FAIL", "n/a": "N/A "}
    lines = []
    for entry in entries:
        line = f"{tags[entry['status']]} {entry['name']}: {entry['statement']}"
        if entry["detail"]:
            line += f" [{entry['detail']}]"
        lines.append(line)
    return lines


def to_table(doc: dict) -> str:
    """Render the document the way the source tables are laid out.

    The two headline tables list the interior degrees only; the full grid
    below them carries every degree and every computed column, so the text
    mode exposes exactly the numbers of the structured mode.
    """
    name = doc["algebra"].get("name") or "<unnamed>"
    out: List[str] = []
    out.append(f"structure: {name}  (dimension {doc['dimension']}, "
               f"quaternionic dimension {doc['quaternionic_dimension']})")
    if doc["bindings"]:
        out.append("bindings: " + ", ".join(
            f"{k} = {v}" for k, v in sorted(doc["bindings"].items())))
    out.append("")
    out.extend(_dimension_table(doc))
    out.append("")
    out.extend(_varouchas_table(doc))
    out.append("")
    out.append("all degrees:")
    out.extend(_full_table(doc))
    out.append("")
    coh = doc["cohomology"]
    out.append("degenerates at first page: "
               + _yesno(coh["degenerate_at_first_page"]))
    out.append("del del_J lemma: " + _yesno(coh["ddj_lemma"]))
    out.append("")
    out.extend(verdict_lines(doc))
    out.append("")
    out.append("middle cohomology decomposition:")
    out.extend("  " + line for line in decomposition_lines(doc["decomposition"]))
    out.append("")
    out.append("property suite:")
    out.extend("  " + line for line in suite_lines(doc["suite"]))
    return "\n".join(out) + "\n"
