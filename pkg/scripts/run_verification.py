#!/usr/bin/env python3
"""
Verification sweep script
Runs every identity suite for a range of seeds and stops at the first failing report
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import argparse
import logging

from app.config import get_settings
from app.errors import VerificationFailure
from app.services.verification_service import VerificationService

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def main():
    """Main verification function"""
    settings = get_settings()
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--suite", default="all")
    parser.add_argument("--max-grade", type=int, default=settings.default_max_grade)
    parser.add_argument("--seeds", type=int, default=3, help="Number of seeds, starting at --first-seed")
    parser.add_argument("--first-seed", type=int, default=settings.default_seed)
    args = parser.parse_args()

    try:
        service = VerificationService(settings)
        for seed in range(args.first_seed, args.first_seed + args.seeds):
            verdict = service.run(args.suite, args.max_grade, seed)
            if not verdict.passed:
                failed = [check for check in verdict.checks if not check.passed]
                raise VerificationFailure(
                    f"seed {seed}: {', '.join(f'{c.name} ({c.detail})' for c in failed)}", report=verdict
                )
            logger.info(f"Seed {seed}: {len(verdict.checks)} checks passed")

        logger.info("Verification sweep completed successfully!")

    except Exception as e:
        logger.error(f"Error during verification: {e}")
        sys.exit(1)

if __name__ == "__main__":
    main()
