#!/usr/bin/env python3
"""Command line entry point: python scripts/loja.py bound data/f1.poly --refine"""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.report.cli import main

if __name__ == "__main__":
    main()
