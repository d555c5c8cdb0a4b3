"""Service configuration from environment variables.

DOCELEM_DATA_DIR      where the corpus file and job log live (default ./docelem-data)
DOCELEM_SIDECAR_URL   base URL of the model backend; unset = degraded mode
                      (every endpoint except training works)
DOCELEM_LISTEN        host:port for the built-in runner (default 127.0.0.1:8100)
DOCELEM_GAZETTEER     path to a pattern-rule config for the builtin tagger;
                      unset = rules derived from the stored gold annotations
DOCELEM_CONVERTER     external command turning a non-text upload into plain
                      text on stdout; unset = only text/plain accepted
"""

import os
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class ServiceConfig:
    data_dir: Path
    sidecar_url: str | None = None
    host: str = "127.0.0.1"
    port: int = 8100
    gazetteer_path: Path | None = None
    converter_command: str | None = None


def config_from_env(environ: dict | None = None) -> ServiceConfig:
    env = os.environ if environ is None else environ
    listen = env.get("DOCELEM_LISTEN", "127.0.0.1:8100")
    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"DOCELEM_LISTEN must be host:port, got {listen!r}")
    gazetteer = env.get("DOCELEM_GAZETTEER")
    return ServiceConfig(
        data_dir=Path(env.get("DOCELEM_DATA_DIR", "docelem-data")),
        sidecar_url=env.get("DOCELEM_SIDECAR_URL") or None,
        host=host,
        port=int(port_text),
        gazetteer_path=Path(gazetteer) if gazetteer else None,
        converter_command=env.get("DOCELEM_CONVERTER") or None,
    )
