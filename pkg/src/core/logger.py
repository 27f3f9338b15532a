# core/logger.py
from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from datetime import datetime
from typing import Any, Dict, Optional

from .bitset import members
from .config import CFG


class SuiteLogger:
    """Per-session logs for validation, localization and theorem-suite runs."""

    COMPONENTS = ("validation", "localization", "theorems", "errors")

    def __init__(self, session_id: Optional[str] = None, logs_dir: Optional[Path] = None):
        self.session_id = session_id or datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
        self.logs_root = Path(logs_dir or CFG.logs_dir) / f"session_{self.session_id}"
        self._ensure_dirs()
        self._setup_loggers()
        self._init_stats()

    # ---------- setup ----------

    def _ensure_dirs(self):
        for d in self.COMPONENTS:
            (self.logs_root / d).mkdir(parents=True, exist_ok=True)

    def _setup_loggers(self):
        self.validation_logger = self._component_logger("validation")
        self.localization_logger = self._component_logger("localization")
        self.theorems_logger = self._component_logger("theorems")
        self.errors_logger = self._component_logger("errors")

    def _component_logger(self, name: str) -> logging.Logger:
        logger = logging.getLogger(f"khr.{name}")
        target = str(self.logs_root / name / f"{name}.log")
        if not any(getattr(h, "baseFilename", "") == target for h in logger.handlers):
            fh = logging.FileHandler(target, encoding="utf-8")
            fh.setFormatter(logging.Formatter("%(asctime)s | %(levelname)s | %(message)s"))
            logger.addHandler(fh)
            logger.setLevel(logging.INFO)
        return logger

    def _init_stats(self):
        self.stats: Dict[str, Dict[str, Any]] = {
            "validation": {"structures_checked": 0, "strict_failures": 0},
            "localization": {"localizations_built": 0, "classes_total": 0},
            "theorems": {"pass": 0, "fail": 0, "skip": 0, "adjudicate": 0},
        }
        self.label = ""

    # ---------- utilities ----------

    def log_error(self, component: str, message: str, exc: Optional[BaseException] = None):
        msg = f"{component.upper()}: {message}"
        if exc:
            msg += f" | EXC: {type(exc).__name__}: {exc}"
        self.errors_logger.error(msg)

    # ---------- validation ----------

    def log_validation(self, report) -> None:
        """Takes a ValidationReport."""
        status = "ok" if report.ok else f"fails {', '.join(report.failed)}"
        self.validation_logger.info(f"{report.subject} [{report.mode}]: {status}")
        self.stats["validation"]["structures_checked"] += 1
        if not report.ok and report.mode == "strict":
            self.stats["validation"]["strict_failures"] += 1

    # ---------- localization ----------

    def log_localization(self, L) -> None:
        self.localization_logger.info(
            f"{L.base.name} at {members(L.subset)} -> {len(L.classes)} classes "
            f"| valid={L.report.ok}"
        )
        self.stats["localization"]["localizations_built"] += 1
        self.stats["localization"]["classes_total"] += len(L.classes)

    # ---------- theorems ----------

    def log_suite_start(self, label: str, structures: int, workers: int):
        self.label = label
        self.theorems_logger.info(f"SUITE STARTED - {label}: {structures} structures, workers={workers}")
        path = self.logs_root / "theorems" / "verdicts.csv"
        with path.open("w", newline="", encoding="utf-8") as f:
            csv.writer(f).writerow(["timestamp", "theorem", "structure", "instance", "status", "detail"])

    def log_verdict(self, record) -> None:
        """Takes a VerdictRecord."""
        if record.status in ("fail", "adjudicate"):
            self.theorems_logger.warning(
                f"{record.status.upper()} {record.theorem} on {record.structure} "
                f"{record.instance} | {record.detail}"
            )
        path = self.logs_root / "theorems" / "verdicts.csv"
        new_file = not path.exists()
        with path.open("a", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            if new_file:
                w.writerow(["timestamp", "theorem", "structure", "instance", "status", "detail"])
            w.writerow([
                datetime.now().isoformat(), record.theorem, record.structure,
                json.dumps(record.instance, sort_keys=True), record.status, record.detail,
            ])
        self.stats["theorems"][record.status] += 1

    # ---------- summary ----------

    def finalize(self, report=None) -> Dict[str, Any]:
        summary = {
            "session_id": self.session_id,
            "start_time": self.session_id,
            "end_time": datetime.now().isoformat(),
            "corpus": self.label,
            "statistics": self.stats,
            "logs_location": str(self.logs_root),
            "suite_ok": None if report is None else report.ok,
            "suite_meta": None if report is None else report.meta,
        }
        with (self.logs_root / "session_summary.json").open("w", encoding="utf-8") as f:
            json.dump(summary, f, indent=2, ensure_ascii=False)
        self._write_markdown_report(summary)
        self.theorems_logger.info(f"SUITE FINISHED - {self.stats['theorems']}")
        return summary

    def _write_markdown_report(self, summary: Dict[str, Any]):
        t = summary["statistics"]["theorems"]
        v = summary["statistics"]["validation"]
        loc = summary["statistics"]["localization"]
        report = f"""# Theorem Suite Report

**Session ID:** {summary['session_id']}
**Corpus:** {summary['corpus'] or '-'}
**Logs Location:** `{summary['logs_location']}`

## Verdicts
- Pass: {t['pass']:,}
- Fail: {t['fail']:,}
- Skip: {t['skip']:,}
- Adjudicate: {t['adjudicate']:,}

## Validation
- Structures Checked: {v['structures_checked']:,}
- Strict Failures: {v['strict_failures']:,}

## Localization
- Localizations Built: {loc['localizations_built']:,}
- Classes Total: {loc['classes_total']:,}

## Generated Log Files
- validation/validation.log
- localization/localization.log
- theorems/theorems.log, theorems/verdicts.csv
- errors/errors.log
- session_summary.json
- run_report.md
"""
        with (self.logs_root / "run_report.md").open("w", encoding="utf-8") as f:
            f.write(report)


# Singleton accessor
_suite_logger_singleton: Optional[SuiteLogger] = None

def get_suite_logger() -> SuiteLogger:
    global _suite_logger_singleton
    if _suite_logger_singleton is None:
        _suite_logger_singleton = SuiteLogger()
    return _suite_logger_singleton
