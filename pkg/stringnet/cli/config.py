import os
import sys
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel, Field, field_validator

import constants
from stringnet.core import exact

load_dotenv()


class RunConfig(BaseModel):
    """Settings shared by every command."""

    backend: Optional[str] = Field(default=None, description="Bundled backend id or structure file; overrides the diagram header.")
    winding: int = Field(default=1, description="Framing winding n of the cylinder and of T_n.")
    seed: int = Field(default=constants.DEFAULT_SEED, description="Seed for every randomized choice.")
    field: str = Field(default=constants.DEFAULT_FIELD, description="QQ or GF(p) with p prime, p >= 5.")
    out: Optional[Path] = Field(default=None, description="Report path; stdout when absent.")
    timings: bool = Field(default=False, description="Print phase timings to stderr.")
    log_level: str = Field(default="WARNING", description="Level of the stderr log sink.")
    events_file: Optional[Path] = Field(default=None, description="JSON lines file receiving one EVENTS record per command.")

    @field_validator("field")
    @classmethod
    def _known_field(cls, value: str) -> str:
        exact.parse_field(value)
        return value.strip()

    @field_validator("seed")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("The seed must be non-negative.")
        return value


def add_args(parser):
    """
    Adds the global options to the parser.
    """

    parser.add_argument(
        "--backend",
        type=str,
        help="Bundled backend id (" + ", ".join(b.backend_id for b in constants.BUNDLED_BACKENDS) + ") or a .group/.hopf file.",
        default=None,
    )

    parser.add_argument("--winding", type=int, help="Framing winding n.", default=1)

    parser.add_argument(
        "--seed",
        type=int,
        help="Seed for randomized choices.",
        default=int(os.getenv("STRINGNET_SEED", constants.DEFAULT_SEED)),
    )

    parser.add_argument(
        "--field",
        type=str,
        help="Scalar field, QQ or GF(p).",
        default=os.getenv("STRINGNET_FIELD", constants.DEFAULT_FIELD),
    )

    parser.add_argument("--out", type=str, help="Write the report here instead of stdout.", default=None)

    parser.add_argument(
        "--timings",
        action="store_true",
        help="Print timing summaries of each phase.",
        default=False,
    )

    parser.add_argument(
        "--logging.level",
        type=str,
        help="Level of the stderr log.",
        default=os.getenv("STRINGNET_LOG_LEVEL", "WARNING"),
    )

    parser.add_argument(
        "--logging.events_file",
        type=str,
        help="If set, append one structured event per command to this file.",
        default=None,
    )


def check_config(args) -> RunConfig:
    r"""Validates the parsed namespace and returns the run settings.

    Raises:
        pydantic.ValidationError: If a setting is out of range.
    """
    options = vars(args)
    return RunConfig(
        backend=options.get("backend"),
        winding=options.get("winding", 1),
        seed=options.get("seed", constants.DEFAULT_SEED),
        field=options.get("field", constants.DEFAULT_FIELD),
        out=options.get("out"),
        timings=options.get("timings", False),
        log_level=options.get("logging.level", "WARNING"),
        events_file=options.get("logging.events_file"),
    )


def configure_logging(config: RunConfig) -> None:
    logger.remove()
    logger.add(sys.stderr, level=config.log_level.upper(), format="{time:HH:mm:ss} | {level} | {message}")
    try:
        logger.level(constants.EVENTS_LEVEL)
    except ValueError:
        logger.level(constants.EVENTS_LEVEL, no=constants.EVENTS_LEVEL_NO, icon="📝")
    if config.events_file is not None:
        logger.add(
            str(config.events_file),
            serialize=True,
            backtrace=False,
            diagnose=False,
            level=constants.EVENTS_LEVEL,
            filter=lambda record: record["level"].name == constants.EVENTS_LEVEL,
            format="{time:YYYY-MM-DD at HH:mm:ss} | {level} | {message}",
        )
