"""
Copyright (c) 2024 Cisco and/or its affiliates.
This software is licensed to you under the terms of the Cisco Sample
Code License, Version 1.1 (the "License"). You may obtain a copy of the
License at
https://developer.cisco.com/docs/licenses
All use of the material herein must be in accordance with the terms of
the License. All rights not expressly granted by the License are
reserved. Unless required by applicable law or agreed to separately in
writing, software distributed under the License is distributed on an "AS
IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
or implied.
"""

__copyright__ = "Copyright (c) 2024 Cisco and/or its affiliates."
__license__ = "Cisco Sample Code License, Version 1.1"

import atexit
import logging
import logging.handlers
import pathlib
import queue
from threading import Lock
from typing import ClassVar, Iterable, Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from config.config import c
from .custom_themes import ct

# -v count -> console level; anything above 1 shows debug records
VERBOSITY_LEVELS = {0: logging.WARNING, 1: logging.INFO}
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class LoggerManager:
    """
    Singleton owning the diagnostic console (stderr) and the engine logger.

    Records go through a queue to a rich console handler, whose level follows the CLI verbosity, and to a
    daily rotating file under logger/logs when LOG_TO_FILE is set. stdout is left to command results.
    """
    _instance = None
    _lock = Lock()

    LOG_PATH: ClassVar[pathlib.Path] = pathlib.Path(__file__).parent / 'logs'

    def __new__(cls, *args, **kwargs):
        with cls._lock:
            if cls._instance is None:
                cls._instance = super(LoggerManager, cls).__new__(cls)
            return cls._instance

    def __init__(self):
        if getattr(self, "_ready", False):
            return
        self._ready = True
        self.console = Console(theme=ct, stderr=True)
        self.lock = Lock()
        self.log_queue = queue.Queue(-1)
        self.console_handler = RichHandler(console=self.console, show_path=False, level=logging.WARNING)
        self.listener = logging.handlers.QueueListener(self.log_queue, *self._handlers(),
                                                       respect_handler_level=True)
        self.listener.start()
        atexit.register(self.listener.stop)

        self.logger = logging.getLogger("crring")
        self.logger.setLevel(logging.DEBUG)
        self.logger.addHandler(logging.handlers.QueueHandler(self.log_queue))
        self.logger.propagate = False

    def _handlers(self) -> list:
        handlers = [self.console_handler]
        if getattr(c, 'LOG_TO_FILE', False):
            self.LOG_PATH.mkdir(parents=True, exist_ok=True)
            file_handler = logging.handlers.TimedRotatingFileHandler(self.LOG_PATH / 'app.log', when="midnight",
                                                                     interval=1, backupCount=7)
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            handlers.append(file_handler)
        return handlers

    def tsp(self, *args, style="default", **kwargs):
        """Thread safe print."""
        with self.lock:
            self.console.print(*args, style=style, **kwargs)

    def lnp(self, message, level="info"):
        """Log the message at the named level; the console shows it only at a matching verbosity."""
        getattr(self.logger, level.lower(), self.logger.info)(message)

    def set_verbosity(self, verbosity: int):
        """
        Map the CLI -v count onto the console handler level
        :param verbosity: 0 (warnings), 1 (info), 2 or more (debug)
        """
        self.console_handler.setLevel(VERBOSITY_LEVELS.get(verbosity, logging.DEBUG))

    def flush(self):
        """Emit every queued record before the caller prints anything else."""
        self.listener.stop()
        self.listener.start()

    # Rich output (diagnostics only, never results)
    def p_panel(self, *args, **kwargs):
        self.tsp(Panel.fit(*args, **kwargs))

    def print_list_as_rich_table(self, data_list: list, title: str, headers: Optional[Iterable[str]] = None):
        """
        Display a list of dictionaries as a table, one column per key
        """
        if not data_list or not all(isinstance(item, dict) for item in data_list):
            self.lnp(f"Nothing to tabulate for `{title}`", "debug")
            return
        headers = list(headers or data_list[0].keys())
        table = Table(title=title)
        for header in headers:
            table.add_column(header, style="term")
        for item in data_list:
            table.add_row(*(str(item.get(header, '')) for header in headers))
        self.tsp(table)

    def print_config_table(self, settings: dict, title: str = "Settings"):
        """
        Print the active configuration, one row per setting
        """
        table = Table(title=title)
        table.add_column("Setting", justify="left", style="bright_white", width=20)
        table.add_column("Value", style="seed", width=40)
        for name, value in settings.items():
            table.add_row(name, str(value) if value not in [None, ""] else "Not Set")
        self.tsp(table)

    def print_suite_table(self, report):
        """
        Summarise a verification report: one row per relation with its status and sample count
        :param report: SuiteReport
        """
        table = Table(title=f"{report.suite} over {report.ring.label()}")
        table.add_column("Relation", style="term")
        table.add_column("Checked", justify="right")
        table.add_column("Status")
        for result in report.results:
            status = "[success]pass[/success]" if result.passed else "[error]FAIL[/error]"
            table.add_row(result.relation, str(result.checked), status)
        self.tsp(table)

    def print_start_panel(self, app_name: str = "App"):
        self.p_panel(renderable=f'[bold bright_white]{app_name}[/bold bright_white] {c.APP_VERSION}',
                     title='Start', border_style='engine')

    def print_exit_panel(self, message: str = 'Done'):
        self.flush()
        self.p_panel(renderable=message, title='[bright_red]Exit[/bright_red]', border_style='red')


lm = LoggerManager()
