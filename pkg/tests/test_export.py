import pytest
from pydantic import ValidationError

from app.errors import DomainError
from app.models.schemas import CheckOutcome, Meta, OutputDocument, TablePayload, VerdictPayload
from app.models.words import EMPTY, NCPoly, Word
from app.services import special_numbers
from app.services.asymptotics import asym_profile
from app.services.export_service import ExportService, latex_value, latex_word
from app.services.harmonic import hsum
from app.services.polylog import polylog_op


@pytest.fixture
def export():
    return ExportService(version="test")


def _round_trip(export: ExportService, doc: OutputDocument):
    text = export.render(doc, "json")
    return export.from_document(OutputDocument.model_validate_json(text))


def test_npoly_round_trip(export):
    h = hsum(Word.of(2, 1))
    doc = export.npoly_document(h, "y2.y1")
    assert doc.kind == "npoly"
    assert doc.meta == Meta(input="y2.y1", version="test")
    assert _round_trip(export, doc) == h


def test_laurent_round_trip(export):
    f = polylog_op(Word.of(1, 1))
    assert _round_trip(export, export.laurent_document(f, "y1.y1")) == f


def test_ncpoly_round_trip(export):
    p = NCPoly.parse("-1/6*y1 + 1/6*y3 + 2*e")
    doc = export.ncpoly_document(p, "y1 top y1", {"law": "top"})
    assert doc.payload[0].word == []
    assert _round_trip(export, doc) == p


def test_profile_round_trip(export):
    profile = asym_profile(NCPoly.parse("6*y4.y2 + 12*y3.y3 - 9*y5"))
    doc = export.profile_document(profile, "P")
    assert (doc.payload.n, doc.payload.C, doc.payload.B) == (8, "5/8", "25200")
    assert _round_trip(export, doc) == profile


def test_table_and_verdict_round_trip(export):
    table = export.word_table("C", 3)
    assert _round_trip(export, export.table_document(table, "table C 3")) == table
    verdict = VerdictPayload(
        passed=False,
        suite="products",
        max_grade=2,
        seed=0,
        checks=[CheckOutcome(name="x", anchor="y", passed=False, cases=3, detail="fails at y1")],
    )
    assert _round_trip(export, export.verdict_document(verdict, "verify")) == verdict


def test_zero_values_round_trip(export):
    assert _round_trip(export, export.npoly_document(hsum(EMPTY) - hsum(EMPTY), "0")).is_zero()
    assert _round_trip(export, export.ncpoly_document(NCPoly(), "0")).is_zero()


def test_character_tables(export):
    c_rows = export.word_table("C", 5).rows
    assert ["y1.y2", "1/15"] in c_rows
    assert ["e", "1"] in c_rows
    b_rows = export.word_table("B", 7).rows
    assert ["y2.y3", "180"] in b_rows


def test_word_table_follows_graded_order(export):
    rows = export.word_table("H", 3).rows
    assert [row[0] for row in rows] == ["e", "y0", "y1", "y0.y0", "y2", "y0.y1", "y1.y0", "y0.y0.y0"]


def test_top_table(export):
    table = export.word_table("top", 4)
    assert table.columns == ["u", "v", "u top v"]
    assert ["y1", "y1", "-1/6*y1 + 1/6*y3"] in table.rows


def test_unknown_table_kind(export):
    with pytest.raises(DomainError):
        export.word_table("Z", 3)


def test_matrix_table(export):
    table = export.matrix_table(special_numbers.build_M(2))
    assert table.title == "M"
    assert table.columns == ["row", "1", "2", "3"]
    assert table.rows[1] == ["1", "1/2", "1/2", "0"]


def test_csv_rendering(export):
    text = export.render(export.npoly_document(hsum(Word.of(1)), "y1"), "csv")
    assert text.splitlines() == ["power,coeff", "1,1/2", "2,1/2"]
    assert not text.endswith("\n")
    table_text = export.render(export.table_document(export.word_table("C", 2), "C"), "csv")
    assert table_text.splitlines()[0] == "word,C"


def test_latex_rendering(export):
    row = export.render(export.npoly_document(hsum(Word.of(2)), "y2"), "latex")
    assert row.startswith("y2 & ")
    assert row.endswith("\\\\")
    assert "\\frac" in row
    table = export.render(export.table_document(export.word_table("C", 2), "C"), "latex")
    assert table.startswith("\\begin{tabular}")
    assert "y_{1}" in table
    assert table.endswith("\\end{tabular}")


def test_latex_helpers():
    assert latex_word(Word.of(2, 1)) == "y_{2}y_{1}"
    assert latex_word(EMPTY) == "1_{Y_0^*}"
    text = latex_value(NCPoly.parse("-1/6*y1 + 1/6*y3"))
    assert text.index("y_{1}") < text.index("y_{3}")
    assert text.count("\\frac{1}{6}") == 2
    assert latex_value(NCPoly()) == "0"


def test_unknown_format(export):
    with pytest.raises(DomainError):
        export.render(export.npoly_document(hsum(Word.of(1)), "y1"), "xml")


def test_payload_must_match_kind():
    with pytest.raises(ValidationError):
        OutputDocument.model_validate(
            {"kind": "npoly", "meta": {"input": "y1", "version": "x"}, "payload": [{"upower": 1, "coeff": "1"}]}
        )


def test_table_rows_must_match_columns():
    with pytest.raises(ValidationError):
        TablePayload(title="t", columns=["a", "b"], rows=[["1"]])
