import sys
from enum import IntEnum
from inspect import getframeinfo, stack

from colored import Fore, Style


class LogLevel(IntEnum):
    NONE = 0
    ERROR = 1
    WARNING = 2
    INFO = 3
    CONFIG = 4
    DEBUG = 5
    VERBOSE = 6
    VERY_VERBOSE = 7


LOG_LEVEL_COLORS = [
    "",                        # NONE
    f"{Style.bold}{Fore.red}", # ERROR (bold red)
    f"{Fore.yellow}",          # WARNING
    f"{Fore.green}",           # INFO
    f"{Fore.magenta}",         # CONFIG
    f"{Fore.cyan}",            # DEBUG
    f"{Fore.white}",           # VERBOSE
    f"{Fore.blue}",            # VERY_VERBOSE
]

LOG_LEVEL_LETTERS = [
    "",    # NONE
    "E",   # ERROR
    "W",   # WARNING
    "I",   # INFO
    "C",   # CONFIG
    "D",   # DEBUG
    "V",   # VERBOSE
    "VV",  # VERY_VERBOSE
]

LOG_RESET = Style.reset

_threshold = LogLevel.WARNING


def format_log(level, tag, line_number, message, color=True):
    letter = LOG_LEVEL_LETTERS[level]
    if not color:
        return f"[{letter}][{tag}:{line_number}]: {message}"

    return f"{LOG_LEVEL_COLORS[level]}[{letter}][{tag}:{line_number}]: {message}{LOG_RESET}"


def set_level(level):
    global _threshold
    _threshold = LogLevel(max(LogLevel.NONE, min(LogLevel.VERY_VERBOSE, int(level))))


def get_level():
    return _threshold


def log(level, tag, message, stream=None):
    """Write one record to stderr, tagged with the caller's line number."""
    if level == LogLevel.NONE or level > _threshold:
        return
    stream = stream or sys.stderr
    caller = getframeinfo(stack()[1][0])
    color = hasattr(stream, "isatty") and stream.isatty()
    print(format_log(level, tag, caller.lineno, message, color=color), file=stream)
