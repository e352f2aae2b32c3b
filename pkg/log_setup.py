"""
Logging shared by every package.

Design NOTE on logging:
- One FileHandler on the "rootlift" logger, appending to logs/rootlift.log. Module loggers are named
  "rootlift.<module>" and reach it through propagation, so nothing is written to stdout or stderr.
- The level comes from LOG_LEVEL in lifting.params.
"""

import logging
import os

from dotenv import load_dotenv

from config import LIFTING_PARAMS_PATH, LOG_DIR, LOG_FILE_PATH

load_dotenv(dotenv_path=LIFTING_PARAMS_PATH)
LOG_LEVEL = os.getenv("LOG_LEVEL", "DEBUG")
ROOT_LOGGER_NAME = "rootlift"


def setup_logger() -> logging.Logger:
    """Set up the file logger every module logger propagates to."""
    logger = logging.getLogger(ROOT_LOGGER_NAME)
    if not logger.handlers:  # Avoid adding duplicate handlers
        os.makedirs(LOG_DIR, exist_ok=True)
        file_handler = logging.FileHandler(LOG_FILE_PATH, mode='a', delay=True)
        file_handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))

        logger.setLevel(LOG_LEVEL)
        logger.addHandler(file_handler)
    return logger


def get_logger(name: str) -> logging.Logger:
    setup_logger()
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")
