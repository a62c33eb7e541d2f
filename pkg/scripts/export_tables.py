#!/usr/bin/env python3
"""
Table export script
Writes the C-, B-, H-, Li- and top tables, plus the M, T and X truncations, to an output directory
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import argparse
import logging
from pathlib import Path

from app.config import get_settings
from app.services import special_numbers
from app.services.export_service import TABLE_KINDS, ExportService

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

EXTENSIONS = {"json": "json", "csv": "csv", "latex": "tex"}


def main():
    """Main export function"""
    settings = get_settings()
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="tables", help="Output directory")
    parser.add_argument("--max-grade", type=int, default=settings.default_max_grade)
    parser.add_argument("--format", choices=tuple(EXTENSIONS), default=settings.default_format)
    args = parser.parse_args()

    logger.info(f"Exporting tables up to grade {args.max_grade} as {args.format} into {args.out}...")

    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        export = ExportService()
        ext = EXTENSIONS[args.format]

        for kind in TABLE_KINDS:
            doc = export.table_document(export.word_table(kind, args.max_grade), f"table {kind} {args.max_grade}")
            (out / f"{kind}.{ext}").write_text(export.render(doc, args.format) + "\n")
            logger.info(f"Wrote {kind} table ({len(doc.payload.rows)} rows)")

        size = max(args.max_grade, 1)
        for build in (special_numbers.build_M, special_numbers.build_T, special_numbers.build_X):
            matrix = build(size)
            doc = export.table_document(export.matrix_table(matrix), f"matrix {matrix.name} {size}")
            (out / f"{matrix.name}.{ext}").write_text(export.render(doc, args.format) + "\n")
            logger.info(f"Wrote matrix {matrix.name} ({matrix.n_rows}x{matrix.n_cols})")

        logger.info("Table export completed successfully!")

    except Exception as e:
        logger.error(f"Error during table export: {e}")
        sys.exit(1)

if __name__ == "__main__":
    main()
