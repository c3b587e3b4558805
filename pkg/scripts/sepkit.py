#!/usr/bin/env python3
"""
Run the sepkit CLI from a source checkout without installing the package.

Usage:
    python scripts/sepkit.py run tests/golden/retraction_without_idempotent.json
    python scripts/sepkit.py solve-idempotent tests/golden/heavy_idempotents.json --json

Exit codes are those of `sepkit` (see src/cli.py).
"""

import sys
from pathlib import Path

# Add project root to Python path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
