#!/usr/bin/env python3
# scripts/khr.py

"""
Launcher for the khr command surface when the package is not installed.

Usage:
    python scripts/khr.py validate evaluation/datasets/paper_33.khr --weak
    python scripts/khr.py suite evaluation/datasets/anchors.corpus --json data/reports/anchors.json
"""

from __future__ import annotations
import sys
from pathlib import Path

# Ensure src/ is importable when running from anywhere
SRC = Path(__file__).resolve().parents[1] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from core.cli import main

if __name__ == "__main__":
    sys.exit(main())
