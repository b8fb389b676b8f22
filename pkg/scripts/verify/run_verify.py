import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List

# Ensure repo root is on PYTHONPATH so `import mfk` works when running as a script
REPO_ROOT = Path(__file__).resolve().parents[2]  # scripts/verify/run_verify.py -> repo root
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from mfk import export, suites  # noqa: E402
from mfk.config import ENGINE_VERSION, configure_logging, settings  # noqa: E402


# -----------------------------
# Config
# -----------------------------
SUITES = [s.strip() for s in os.getenv("VERIFY_SUITES", ",".join(suites.VERIFY_SUITES)).split(",") if s.strip()]
RUN_ORACLE = os.getenv("VERIFY_ORACLE", "1").strip().lower() in ("1", "true", "yes", "y")
CHECK_GOLDEN = os.getenv("VERIFY_GOLDEN", "1").strip().lower() in ("1", "true", "yes", "y")
OUT_PATH = os.getenv("MFK_REPORT_PATH", settings.report_path)

# keep the written report small when something regresses badly
MAX_FAILURES = 200


# -----------------------------
# Result model
# -----------------------------
@dataclass
class SuiteResult:
    suite: str
    total: int
    passed: int
    failed: int
    wall_ms: float


# -----------------------------
# Main
# -----------------------------
def main() -> int:
    configure_logging()
    names = SUITES + (["oracle"] if RUN_ORACLE else [])

    t_run = time.time()
    results: List[SuiteResult] = []
    failures: List[Dict[str, Any]] = []

    for name in names:
        t0 = time.perf_counter()
        run = suites.run_suite(name)
        elapsed = (time.perf_counter() - t0) * 1000.0
        s = run.summary
        results.append(SuiteResult(name, s.total, s.passed, s.failed, round(elapsed, 1)))
        for r in run.records:
            if not r.passed:
                failures.append({"suite": name, "id": r.id, "detail": r.detail})
        print(f"{name:16s} {s.passed:4d}/{s.total:<4d} {elapsed / 1000.0:7.2f}s")

    golden = []
    if CHECK_GOLDEN:
        golden_dir = str(REPO_ROOT / settings.golden_dir)
        golden = [d for d in (export.golden_diff(t, golden_dir) for t in export.golden_targets()) if d]
        for d in golden:
            failures.append({"suite": "golden", "id": d["target"], "detail": d})
        print(f"{'golden':16s} {len(export.golden_targets()) - len(golden):4d}/{len(export.golden_targets()):<4d}")

    out = {
        "run_id": f"verify-{int(t_run)}",
        "run_ts_unix": int(t_run),
        "engine_version": ENGINE_VERSION,
        "suites": [asdict(r) for r in results],
        "passed": not failures,
        "failures": failures[:MAX_FAILURES],
    }

    os.makedirs(os.path.dirname(OUT_PATH) or ".", exist_ok=True)
    with open(OUT_PATH, "w", encoding="utf-8") as f:
        json.dump(out, f, indent=2)

    print(f"Wrote report to: {OUT_PATH}")
    if failures:
        print(json.dumps(failures[:5], indent=2))
    return 0 if not failures else 1


if __name__ == "__main__":
    sys.exit(main())
