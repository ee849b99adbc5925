import os
import threading
from typing import Literal

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]
Section = Literal["START", "END", "BOTH"]

_LEVEL_ORDER = {"DEBUG": 10, "INFO": 20, "WARNING": 30, "ERROR": 40}
_SECTION_RULE = "-" * 80


# Logger using print, safe to share between drop workers
class SimulationLogger:
    def __init__(
        self,
        log_level: LogLevel = "INFO",
        verbose: bool = False,
        filepath: str | None = None,
        tag: str | None = None,
    ):
        self.log_level = log_level.upper()
        if self.log_level not in _LEVEL_ORDER:
            raise ValueError(f"Unknown log level '{log_level}'")
        self.verbose_on = verbose
        self.filepath = filepath
        self.tag = tag
        self.file_handler = None
        self._lock = threading.Lock()

        if self.filepath:
            try:
                dir_name = os.path.dirname(self.filepath)
                if dir_name:
                    os.makedirs(dir_name, exist_ok=True)
                self.file_handler = open(self.filepath, "a", encoding="utf-8")
            except OSError as e:
                print(f"[LOGGER_SETUP_ERROR] Could not open log file {self.filepath}: {e}")
                self.filepath = None

    def with_tag(self, tag: str) -> "SimulationLogger":
        """Return a logger sharing this one's output but prefixing every line with a tag."""
        child = SimulationLogger(self.log_level, self.verbose_on, tag=tag)
        child.file_handler = self.file_handler
        child._lock = self._lock
        return child

    def _format_lines(self, prefix: str, message: str) -> list[str]:
        if self.tag:
            prefix = f"{prefix} [{self.tag}]"
        lines = message.split("\n")
        formatted = [f"{prefix} {lines[0]}"]
        padding = " " * len(prefix)
        formatted.extend(f"{padding} {line}" for line in lines[1:])
        return formatted

    def _write(self, lines: list[str]) -> None:
        with self._lock:
            for line in lines:
                print(line)
            if self.file_handler:
                try:
                    self.file_handler.write("\n".join(lines) + "\n")
                    self.file_handler.flush()
                except OSError as e:
                    print(f"[LOGGER_WRITE_ERROR] Could not write to {self.filepath}: {e}")

    def _log(self, level: LogLevel, message: str, section: Section | None) -> None:
        if section in ("START", "BOTH"):
            self._write([_SECTION_RULE])
        if _LEVEL_ORDER[level] >= _LEVEL_ORDER[self.log_level]:
            self._write(self._format_lines(f"[{level}]", message))
        if section in ("END", "BOTH"):
            self._write([_SECTION_RULE])

    def debug(self, message: str, section: Section | None = None) -> None:
        self._log("DEBUG", message, section)

    def info(self, message: str, section: Section | None = None) -> None:
        self._log("INFO", message, section)

    def warning(self, message: str, section: Section | None = None) -> None:
        self._log("WARNING", message, section)

    def error(self, message: str, section: Section | None = None) -> None:
        self._log("ERROR", message, section)

    def verbose(self, log_level: LogLevel, message: str) -> None:
        if self.verbose_on:
            self._log(log_level, "[VERBOSE] " + message, None)

    def close(self) -> None:
        if self.file_handler:
            try:
                self.file_handler.close()
            except OSError as e:
                print(f"[LOGGER_CLEANUP_ERROR] Error closing log file: {e}")
            self.file_handler = None


def create_logger_service(
    log_level: LogLevel = "INFO", verbose: bool = False, filepath: str | None = None
) -> SimulationLogger:
    return SimulationLogger(log_level, verbose, filepath)
