import logging as _logging
import sys

from fastmcp.utilities.logging import get_logger
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

# Panels and tables are results, they go to stdout
console = Console()


class Logger:
    """
    Leveled messages go through the fastmcp logger, result panels and
    tables through a rich console. Steppers only ever call debug.
    """

    def __init__(self):
        self.logger = get_logger(__name__)
        self.stream_handler = None
        self.quiet = False

    def set_stream_handler(self, stream_handler):
        if self.stream_handler is not None:
            self.logger.removeHandler(self.stream_handler)
        self.stream_handler = stream_handler
        self.logger.addHandler(stream_handler)

    def set_level(self, level):
        self.logger.setLevel(level)

    def info(self, message):
        if not self.quiet:
            console.print(f"[bold cyan]{message}[/bold cyan]")

    def warning(self, message):
        self.logger.warning(message)

    def debug(self, message):
        self.logger.debug(message)

    def error(self, message):
        self.logger.error(message)

    def progress(self, done: int, total: int, time: float = None):
        """
        One line per reported step: "40 of 400 steps (10%) done t=0.2".
        """
        if self.quiet or not total:
            return
        fraction = done / total
        percent = f"{fraction:.2%}" if fraction < 0.01 else f"{fraction:.0%}"
        suffix = "" if time is None else f" t={time:.6g}"
        self.logger.info(f"{done} of {total} steps ({percent}) done{suffix}")

    def success(self, message):
        self.panel(message, "Success", "green")

    def failure(self, message):
        self.panel(message, "Error", "red")

    def panel(self, message, title, color):
        console.print(
            Panel(f"[bold {color}]{message}[/bold {color}]", title=title, border_style=color)
        )

    def table(self, title, columns, rows):
        """
        Print rows (already formatted as strings) under the given column names.
        """
        if self.quiet:
            return
        table = Table(title=title)
        for column in columns:
            table.add_column(column, justify="right")
        for row in rows:
            table.add_row(*[str(item) for item in row])
        console.print(table)


logger = Logger()


def setup_logger(quiet=False, nocolor=False, stdout=False, debug=False):
    """
    Route leveled messages to stderr (or stdout) through rich, once per process.
    """
    global console
    console = Console(no_color=nocolor)
    stream = Console(file=sys.stdout if stdout else sys.stderr, no_color=nocolor)
    handler = RichHandler(console=stream, show_path=False, markup=False)
    logger.set_stream_handler(handler)
    logger.set_level(_logging.DEBUG if debug else _logging.INFO)
    logger.quiet = quiet
