# logs.py

import os
import logging

import foldsaddle.settings as sts

# --- Package Logger ---
# module loggers (logging.getLogger(__name__)) propagate to this one
logger = logging.getLogger(sts.package_name)


def setup_logging(*args, log_filename: str = None, log_dir: str = None, **kwargs) -> str:
    """Configures the package logger to write to the specified file."""
    log_dir = sts.logs_dir if log_dir is None else log_dir
    log_filename = f"{sts.session_time_stamp}.log" if log_filename is None else log_filename
    os.makedirs(log_dir, exist_ok=True)
    log_file_path = os.path.join(log_dir, log_filename)

    for handler in list(logger.handlers):
        if isinstance(handler, logging.FileHandler):
            logger.removeHandler(handler)
            handler.close()

    handler = logging.FileHandler(log_file_path, mode="w")
    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)
    logger.info(f"--- Logging started for {log_filename} ---")
    return log_file_path
