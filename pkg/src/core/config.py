# core/config.py
from __future__ import annotations
from pathlib import Path
from typing import Literal
from pydantic_settings import BaseSettings, SettingsConfigDict


ROOT = Path(__file__).resolve().parents[2]

# Element sets are stored as Python ints / numpy uint64 bitmasks.
BITMASK_LIMIT = 64


class AppConfig(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="KHR_", case_sensitive=False)

    # ─── Paths ─────────────────────────────────────────────────────────────
    datasets_dir: Path = ROOT / "evaluation" / "datasets"
    logs_dir:     Path = ROOT / "data" / "logs"

    # ─── Size caps ─────────────────────────────────────────────────────────
    # Associativity scans visit card^(2m-1) tuples, so these stay small.
    max_card:       int = 8
    suite_max_card: int = 6
    max_arity:      int = 4
    hom_search_cap: int = 1_000_000

    # ─── Semantics switches ────────────────────────────────────────────────
    allow_weak:         bool = False
    relation_form:      Literal["negated", "display"] = "negated"
    primary_quantifier: Literal["universal", "existential"] = "universal"
    homs_preserve_one:  bool = True

    # ─── Execution ─────────────────────────────────────────────────────────
    workers:  int  = 1
    progress: bool = True
    log_sessions: bool = False

    @property
    def paper_33_path(self) -> Path:
        """The shipped weakly distributive (3,3) example."""
        return self.datasets_dir / "paper_33.khr"


CFG = AppConfig()
