import logging
import sys

from constants import log_level


class Logger:
    def __init__(self, name: str = "rubbling") -> None:
        self._logger = logging.getLogger(name)
        if not self._logger.handlers:
            # stderr keeps --json output on stdout clean
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
            self._logger.addHandler(handler)
        self._logger.setLevel(log_level)
        self._logger.propagate = False

    def log(self, message: str) -> None:
        self._logger.info(message)

    def debug(self, message: str) -> None:
        self._logger.debug(message)

    def info(self, message: str) -> None:
        self._logger.info(message)

    def warning(self, message: str) -> None:
        self._logger.warning(message)

    def error(self, message: str) -> None:
        self._logger.error(message)

    def set_level(self, level: str) -> None:
        self._logger.setLevel(level.upper())


logger = Logger()
