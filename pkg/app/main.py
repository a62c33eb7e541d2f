"""
Command-line front end: compute harmonic sums, polylogarithms, products and profiles,
run the verification suites and export tables.

Documents go to stdout, logs to stderr.
"""
import argparse
import logging
import sys
from typing import List, Optional

from app import __version__
from app.config import LOG_LEVELS, Settings, get_settings
from app.errors import NegIndexError, ParseError
from app.models.schemas import OutputDocument, VerdictPayload
from app.models.words import NCPoly, Word
from app.services import special_numbers
from app.services.asymptotics import asym_profile
from app.services.export_service import TABLE_KINDS, ExportService
from app.services.harmonic import hsum
from app.services.polylog import polylog_op
from app.services.products import ProductLaw, ncp_product
from app.services.toplaw import kernel_member, letter_normal_form, top_poly
from app.services.verification_service import SUITES, VerificationService

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "latex")
MATRICES = ("M", "T", "X", "U", "D", "Dinv")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="Output format (default from settings)")

    parser = argparse.ArgumentParser(prog="negindex", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=None, help="Override NEGINDEX_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hsum", parents=[common], help="H-_w as a polynomial in N")
    p.add_argument("word")

    p = sub.add_parser("polylog", parents=[common], help="Li-_w as a polynomial in u = (1-z)^-1")
    p.add_argument("word")

    p = sub.add_parser("product", parents=[common], help="Product of two polynomials under a law")
    p.add_argument("law", choices=[law.value for law in ProductLaw])
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("top", parents=[common], help="P top Q")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("profile", parents=[common], help="(n, C-, B-) of a polynomial")
    p.add_argument("poly")
    p.add_argument("--method", choices=("expansion", "scan"), default="expansion")

    p = sub.add_parser("kernel", parents=[common], help="Is the polynomial in ker H- = ker Li-?")
    p.add_argument("poly")

    p = sub.add_parser("normal-form", parents=[common], help="w top 1 over the letters")
    p.add_argument("word")

    p = sub.add_parser("verify", parents=[common], help="Run identity suites")
    p.add_argument("suite_pos", nargs="?", metavar="suite", choices=SUITES + ("all",))
    p.add_argument("max_grade_pos", nargs="?", metavar="max-grade", type=int)
    p.add_argument("seed_pos", nargs="?", metavar="seed", type=int)
    p.add_argument("--suite", default=None)
    p.add_argument("--max-grade", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("table", parents=[common], help="Word tables in graded order")
    p.add_argument("kind", choices=TABLE_KINDS)
    p.add_argument("max_grade_pos", nargs="?", metavar="max-grade", type=int)
    p.add_argument("format_pos", nargs="?", metavar="format", choices=FORMATS)
    p.add_argument("--max-grade", type=int, default=None)

    p = sub.add_parser("matrix", parents=[common], help="Truncations of M, T, X, U, D, Dinv")
    p.add_argument("name", choices=MATRICES)
    p.add_argument("size", help="Truncation size, or the word for D and Dinv")

    return parser


def _first(*values):
    return next((v for v in values if v is not None), None)


def _matrix(name: str, size: str):
    if name in ("D", "Dinv"):
        word = Word.parse(size)
        return special_numbers.build_D(word) if name == "D" else special_numbers.build_Dinv(word)
    try:
        n = int(size)
    except ValueError:
        raise ParseError(f"Expected an integer size, got {size!r}", size, 0)
    builders = {
        "M": special_numbers.build_M,
        "T": special_numbers.build_T,
        "X": special_numbers.build_X,
        "U": special_numbers.build_U,
    }
    return builders[name](n)


def run_command(args: argparse.Namespace, settings: Settings, export: ExportService) -> OutputDocument:
    command = args.command
    if command == "hsum":
        return export.npoly_document(hsum(Word.parse(args.word)), args.word)
    if command == "polylog":
        return export.laurent_document(polylog_op(Word.parse(args.word)), args.word)
    if command == "product":
        value = ncp_product(ProductLaw(args.law), NCPoly.parse(args.a), NCPoly.parse(args.b))
        return export.ncpoly_document(value, f"{args.a} {args.b}", {"law": args.law})
    if command == "top":
        return export.ncpoly_document(top_poly(NCPoly.parse(args.a), NCPoly.parse(args.b)), f"{args.a} {args.b}")
    if command == "profile":
        profile = asym_profile(NCPoly.parse(args.poly), method=args.method)
        return export.profile_document(profile, args.poly, {"method": args.method})
    if command == "kernel":
        verdict = VerdictPayload(passed=kernel_member(NCPoly.parse(args.poly)))
        return export.verdict_document(verdict, args.poly)
    if command == "normal-form":
        return export.ncpoly_document(letter_normal_form(Word.parse(args.word)).as_ncpoly(), args.word)
    if command == "verify":
        suite = _first(args.suite, args.suite_pos, "all")
        max_grade = _first(args.max_grade, args.max_grade_pos, settings.default_max_grade)
        seed = _first(args.seed, args.seed_pos, settings.default_seed)
        verdict = VerificationService(settings).run(suite, max_grade, seed)
        params = {"suite": suite, "max_grade": str(max_grade), "seed": str(seed)}
        return export.verdict_document(verdict, f"verify {suite} {max_grade} {seed}", params)
    if command == "table":
        max_grade = _first(args.max_grade, args.max_grade_pos, settings.default_max_grade)
        table = export.word_table(args.kind, max_grade)
        return export.table_document(table, f"table {args.kind} {max_grade}", {"max_grade": str(max_grade)})
    matrix = _matrix(args.name, args.size)
    return export.table_document(export.matrix_table(matrix), f"matrix {args.name} {args.size}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = get_settings()
    except NegIndexError as e:
        logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
        logger.error(e.detail)
        return e.exit_code

    logging.basicConfig(
        level=args.log_level or settings.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    fmt = _first(args.format, getattr(args, "format_pos", None), settings.default_format)
    export = ExportService()

    try:
        document = run_command(args, settings, export)
        print(export.render(document, fmt))
    except ParseError as e:
        print(e.annotated(), file=sys.stderr)
        return e.exit_code
    except NegIndexError as e:
        logger.error(e.detail)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error while running '{args.command}': {e}")
        return 1

    if document.kind == "verdict" and args.command == "verify" and not document.payload.passed:
        failed = [check.name for check in document.payload.checks if not check.passed]
        logger.error(f"Verification failed: {', '.join(failed)}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
