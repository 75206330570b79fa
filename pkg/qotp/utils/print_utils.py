import time
from typing import Any, Iterable, Sequence

from rich.align import AlignMethod
from rich.panel import Panel
from rich.table import Table
from rich.text import Text


class Timer:
    """Simple timer for measuring elapsed time."""

    def __init__(self):
        self.start_time = None
        self.elapsed = 0.0

    def start(self):
        self.start_time = time.perf_counter()

    def stop(self):
        if self.start_time is not None:
            self.elapsed = time.perf_counter() - self.start_time
            self.start_time = None


def create_panel(
    content: Any,
    title: str,
    border_style: str = "blue",
    title_align: AlignMethod = "center",
) -> Panel:
    return Panel(content, title=title, border_style=border_style, title_align=title_align)


def create_table(title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Table:
    table = Table(title=title, title_justify="left")
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(Text(str(cell)) for cell in row))
    return table
