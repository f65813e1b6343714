# ==============================================================================
# utils/output.py - Output envelope and renderers
# ==============================================================================

"""
Every command produces a CommandResult: the JSON envelope, a text rendering
and, when the payload is tabular, a pandas DataFrame used for CSV.
"""

import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Dict, Optional

import pandas as pd
from pydantic import BaseModel, Field

from config.settings import Settings

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "csv")


class OutputEnvelope(BaseModel):
    """Machine-readable result of one command"""
    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    result: Any = None
    tool_version: str = Settings.APP_VERSION

    def to_json(self) -> str:
        return json.dumps(self.model_dump(), sort_keys=True, indent=2) + "\n"


@dataclass
class CommandResult:
    envelope: OutputEnvelope
    text: str
    frame: Optional[pd.DataFrame] = None
    exit_code: int = 0


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def render(result: CommandResult, fmt: str) -> str:
    if fmt == "json":
        return result.envelope.to_json()
    if fmt == "csv":
        if result.frame is None:
            frame = pd.DataFrame([result.envelope.result if isinstance(result.envelope.result, dict)
                                  else {"result": result.envelope.result}])
        else:
            frame = result.frame
        return frame_to_csv(frame)
    text = result.text
    return text if text.endswith("\n") else text + "\n"


def emit(result: CommandResult, fmt: str, out: Optional[str] = None) -> None:
    """Write the rendering to ``out`` or stdout"""
    rendered = render(result, fmt)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(rendered)
        logger.info(f"Wrote {fmt} output of {result.envelope.command} to {out}")
    else:
        sys.stdout.write(rendered)
