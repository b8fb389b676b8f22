from dotenv import load_dotenv
load_dotenv()

import logging
import os
import re

from pydantic import BaseModel

from mfk.errors import ConfigError

ENGINE_VERSION = "0.3.0"


class Caps(BaseModel):
    """Limits for a single Buchberger run."""

    max_degree: int = 24
    max_basis: int = 500


_CAPS_KV_RE = re.compile(r"^\s*(max_degree|max_basis)\s*=\s*(\d+)\s*$")


def parse_caps(text: str) -> Caps:
    """Accepts "max_degree=24,max_basis=500" or the positional "24,500"."""
    text = (text or "").strip()
    if not text:
        return Caps()

    parts = [p for p in text.split(",") if p.strip()]
    values = {}
    if all(p.strip().isdigit() for p in parts):
        if len(parts) != 2:
            raise ConfigError(f"MFK_CAPS needs two integers, got {text!r}", {"caps": text})
        values = {"max_degree": int(parts[0]), "max_basis": int(parts[1])}
    else:
        for p in parts:
            m = _CAPS_KV_RE.match(p)
            if not m:
                raise ConfigError(f"Bad MFK_CAPS entry {p!r}", {"caps": text})
            values[m.group(1)] = int(m.group(2))

    caps = Caps(**values)
    if caps.max_degree <= 0 or caps.max_basis <= 0:
        raise ConfigError("Gröbner caps must be positive", {"caps": text})
    return caps


class Settings(BaseModel):
    caps: str = os.getenv("MFK_CAPS", "max_degree=24,max_basis=500")
    threads: int = int(os.getenv("MFK_THREADS", "1"))
    max_rank: int = int(os.getenv("MFK_MAX_RANK", "64"))
    log_level: str = os.getenv("MFK_LOG_LEVEL", "WARNING")

    golden_dir: str = os.getenv("MFK_GOLDEN_DIR", "data/golden")
    report_path: str = os.getenv("MFK_REPORT_PATH", "data/reports/verify_latest.json")

    def gb_caps(self) -> Caps:
        return parse_caps(self.caps)


settings = Settings()


def configure_logging(level: str = "") -> None:
    name = (level or settings.log_level or "WARNING").upper()
    numeric = getattr(logging, name, None)
    if not isinstance(numeric, int):
        raise ConfigError(f"Unknown log level {name!r}", {"log_level": name})
    logging.basicConfig(
        level=numeric,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
