"""Shared locations for the demo scripts."""

from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
MINIMART = ROOT / "fixtures" / "minimart"
MINIMART_V2 = ROOT / "fixtures" / "minimart-v2"
