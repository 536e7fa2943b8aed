#!/usr/bin/env python3
"""Run the acceptance suite and show the per-criterion PASS/FAIL lines."""

import subprocess
import sys


def main() -> int:
    return subprocess.call(
        [sys.executable, "-m", "pytest", "tests/test_acceptance.py", "-s", "-v"]
    )


if __name__ == "__main__":
    sys.exit(main())
