"""Shared fixtures"""

from pathlib import Path

import pytest

from config.settings import Settings
from cpa.expression import Max, leaf
from processors.piece_counter import PieceCounter
from services.reports import load_expression

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def fig1():
    """min(y, min(max(-x, -1), max(3 - 2x, -x))) on coordinates (x, y)"""
    return load_expression(FIXTURES / "fig1.json")


@pytest.fixture
def abs_x():
    return Max((leaf([1], 0), leaf([-1], 0)))


@pytest.fixture
def counter() -> PieceCounter:
    return PieceCounter()


@pytest.fixture
def settings() -> Settings:
    return Settings(
        LEMMA6_INSTANCES=3,
        LEMMA6_MAX_M=2,
        ORACLE_INSTANCES=5,
        ORACLE_RESOLUTION=21,
    )
