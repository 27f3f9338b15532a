from __future__ import annotations

import sys
from pathlib import Path

import pytest

# Add src/ to path so tests run without installing the package
SRC = Path(__file__).resolve().parents[2] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from core.config import CFG
from core.corpus import generate_product_ring, generate_ring_embedding

DATASETS = CFG.datasets_dir


@pytest.fixture(autouse=True)
def restore_config():
    """CLI commands override CFG in memory; undo that after every test."""
    saved = CFG.model_dump()
    yield
    for key, value in saved.items():
        setattr(CFG, key, value)


@pytest.fixture
def z6():
    return generate_ring_embedding(6)


@pytest.fixture
def z2():
    return generate_ring_embedding(2)


@pytest.fixture
def z2xz2():
    return generate_product_ring(2, 2)


@pytest.fixture
def paper_path() -> Path:
    return CFG.paper_33_path
