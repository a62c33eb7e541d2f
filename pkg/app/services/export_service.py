import csv
import io
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Union

import sympy

from app import __version__
from app.errors import DomainError
from app.models.matrices import MatrixQ
from app.models.polynomials import LaurentU, NPoly
from app.models.rationals import format_rational, parse_rational
from app.models.schemas import (
    LaurentTerm,
    Meta,
    NCPolyTerm,
    NPolyTerm,
    OutputDocument,
    ProfilePayload,
    TablePayload,
    VerdictPayload,
)
from app.models.words import NCPoly, Word
from app.services.asymptotics import AsymProfile, bminus, cminus
from app.services.harmonic import hsum
from app.services.polylog import polylog_op
from app.services.toplaw import top
from app.utils.enumeration import words_up_to_grade

logger = logging.getLogger(__name__)

TABLE_KINDS = ("C", "B", "H", "Li", "top")
_WORD_COLUMNS = {"word", "u", "v"}
_N, _U = sympy.symbols("N u")


class ExportService:
    """
    Builds OutputDocuments from library values, converts them back, and renders them as
    JSON, CSV or LaTeX.
    """

    def __init__(self, version: str = __version__):
        self.version = version

    # ------------------------------------------------------------ documents

    def _meta(self, input_text: str, params: Optional[Dict[str, str]] = None) -> Meta:
        return Meta(input=input_text, version=self.version, params=params or {})

    def npoly_document(self, h: NPoly, input_text: str, params=None) -> OutputDocument:
        terms = [NPolyTerm(power=k, coeff=format_rational(c)) for k, c in enumerate(h.coeffs) if c]
        return OutputDocument(kind="npoly", meta=self._meta(input_text, params), payload=terms)

    def laurent_document(self, f: LaurentU, input_text: str, params=None) -> OutputDocument:
        terms = [LaurentTerm(upower=k, coeff=format_rational(c)) for k, c in f.terms()]
        return OutputDocument(kind="laurent", meta=self._meta(input_text, params), payload=terms)

    def ncpoly_document(self, p: NCPoly, input_text: str, params=None) -> OutputDocument:
        terms = [NCPolyTerm(word=list(w.indices), coeff=format_rational(c)) for w, c in p.terms()]
        return OutputDocument(kind="ncpoly", meta=self._meta(input_text, params), payload=terms)

    def profile_document(self, profile: AsymProfile, input_text: str, params=None) -> OutputDocument:
        payload = ProfilePayload(n=profile.degree, C=format_rational(profile.lead_h), B=format_rational(profile.lead_li))
        return OutputDocument(kind="profile", meta=self._meta(input_text, params), payload=payload)

    def table_document(self, table: TablePayload, input_text: str, params=None) -> OutputDocument:
        return OutputDocument(kind="table", meta=self._meta(input_text, params), payload=table)

    def verdict_document(self, verdict: VerdictPayload, input_text: str, params=None) -> OutputDocument:
        return OutputDocument(kind="verdict", meta=self._meta(input_text, params), payload=verdict)

    def from_document(self, doc: OutputDocument) -> Union[NPoly, LaurentU, NCPoly, AsymProfile, TablePayload, VerdictPayload]:
        """Inverse of the *_document builders."""
        if doc.kind == "npoly":
            degree = max((t.power for t in doc.payload), default=-1)
            coeffs = [Fraction(0)] * (degree + 1)
            for term in doc.payload:
                coeffs[term.power] = parse_rational(term.coeff)
            return NPoly(coeffs)
        if doc.kind == "laurent":
            return LaurentU({t.upower: parse_rational(t.coeff) for t in doc.payload})
        if doc.kind == "ncpoly":
            return NCPoly({Word(tuple(t.word)): parse_rational(t.coeff) for t in doc.payload})
        if doc.kind == "profile":
            p = doc.payload
            return AsymProfile(p.n, parse_rational(p.C), parse_rational(p.B))
        return doc.payload

    # ------------------------------------------------------------ tables

    def word_table(self, kind: str, max_grade: int) -> TablePayload:
        """Tables of C⁻, B⁻, H⁻, Li⁻ or ⊤ in graded word order up to max_grade."""
        if kind not in TABLE_KINDS:
            raise DomainError(f"Unknown table kind {kind!r}; expected one of {', '.join(TABLE_KINDS)}")
        logger.info(f"Building {kind} table up to grade {max_grade}")
        words = words_up_to_grade(max_grade)
        if kind == "C":
            rows = [[str(w), format_rational(cminus(w))] for w in words]
            return TablePayload(title="C-", columns=["word", "C"], rows=rows)
        if kind == "B":
            rows = [[str(w), format_rational(bminus(w))] for w in words]
            return TablePayload(title="B-", columns=["word", "B"], rows=rows)
        if kind == "H":
            rows = [[str(w), str(hsum(w))] for w in words]
            return TablePayload(title="H-", columns=["word", "H"], rows=rows)
        if kind == "Li":
            rows = [[str(w), str(polylog_op(w))] for w in words]
            return TablePayload(title="Li-", columns=["word", "Li"], rows=rows)
        rows = []
        nonempty = [w for w in words if not w.is_empty]
        for i, u in enumerate(nonempty):
            for v in nonempty[i:]:
                if u.grade + v.grade <= max_grade:
                    rows.append([str(u), str(v), str(top(u, v).as_ncpoly())])
        return TablePayload(title="top", columns=["u", "v", "u top v"], rows=rows)

    def matrix_table(self, matrix: MatrixQ) -> TablePayload:
        columns = ["row"] + [str(j) for j in matrix.col_labels]
        rows = [[str(i)] + [format_rational(x) for x in matrix.row(i)] for i in matrix.row_labels]
        return TablePayload(title=matrix.name, columns=columns, rows=rows)

    # ------------------------------------------------------------ rendering

    def render(self, doc: OutputDocument, fmt: str = "json") -> str:
        if fmt == "json":
            return doc.model_dump_json(indent=2)
        if fmt == "csv":
            return self._render_csv(doc)
        if fmt == "latex":
            return self._render_latex(doc)
        raise DomainError(f"Unknown output format {fmt!r}")

    def _header_and_rows(self, doc: OutputDocument):
        if doc.kind == "npoly":
            return ["power", "coeff"], [[str(t.power), t.coeff] for t in doc.payload]
        if doc.kind == "laurent":
            return ["upower", "coeff"], [[str(t.upower), t.coeff] for t in doc.payload]
        if doc.kind == "ncpoly":
            return ["word", "coeff"], [[str(Word(tuple(t.word))), t.coeff] for t in doc.payload]
        if doc.kind == "profile":
            p = doc.payload
            return ["n", "C", "B"], [[str(p.n), p.C, p.B]]
        if doc.kind == "table":
            return doc.payload.columns, doc.payload.rows
        verdict = doc.payload
        rows = [[c.name, c.anchor, "pass" if c.passed else "FAIL", str(c.cases), c.detail or ""] for c in verdict.checks]
        if not rows:
            rows = [["result", "", "pass" if verdict.passed else "FAIL", "", ""]]
        return ["check", "anchor", "status", "cases", "detail"], rows

    def _render_csv(self, doc: OutputDocument) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        header, rows = self._header_and_rows(doc)
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue().rstrip("\n")

    def _render_latex(self, doc: OutputDocument) -> str:
        if doc.kind in ("npoly", "laurent", "ncpoly"):
            value = self.from_document(doc)
            return f"{doc.meta.input} & {latex_value(value)} \\\\"
        header, rows = self._header_and_rows(doc)
        lines = [r"\begin{tabular}{" + "|".join("c" for _ in header) + "}", " & ".join(header) + r" \\", r"\hline"]
        for row in rows:
            cells = [latex_cell(column, cell) for column, cell in zip(header, row)]
            lines.append(" & ".join(cells) + r" \\")
        lines.append(r"\end{tabular}")
        return "\n".join(lines)


def latex_word(w: Word) -> str:
    if w.is_empty:
        return r"1_{Y_0^*}"
    return "".join(f"y_{{{s}}}" for s in w.indices)


def _to_sympy_rational(c: Fraction) -> sympy.Rational:
    return sympy.Rational(c.numerator, c.denominator)


def sympy_expr(value: Union[NPoly, LaurentU]) -> sympy.Expr:
    """The polynomial as a sympy expression in the symbol N or u."""
    if isinstance(value, NPoly):
        return sum((_to_sympy_rational(c) * _N ** k for k, c in enumerate(value.coeffs)), sympy.Integer(0))
    return sum((_to_sympy_rational(c) * _U ** k for k, c in value.terms()), sympy.Integer(0))


def latex_value(value: Union[NPoly, LaurentU, NCPoly]) -> str:
    """Factored LaTeX for polynomials in N, expanded for u; NCPolys are written term by term."""
    if isinstance(value, NPoly):
        return sympy.latex(sympy.factor(sympy_expr(value)))
    if isinstance(value, LaurentU):
        return sympy.latex(sympy.expand(sympy_expr(value)))
    parts: List[str] = []
    for w, c in value.terms():
        coefficient = sympy.latex(_to_sympy_rational(c))
        parts.append(f"{coefficient} {latex_word(w)}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def latex_cell(column: str, text: str) -> str:
    if column in _WORD_COLUMNS:
        return latex_word(Word.parse(text))
    if column == "u top v":
        return latex_value(NCPoly.parse(text))
    try:
        expr = sympy.sympify(text, locals={"N": _N, "u": _U})
    except (sympy.SympifyError, SyntaxError, TypeError):
        return text
    return sympy.latex(sympy.factor(expr))
