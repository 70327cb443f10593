import asyncio
import csv
import io
import logging
import os
import pathlib
from collections.abc import KeysView
from typing import Any, Dict, List, Optional, Sequence

from jinja2 import Environment, FileSystemLoader

from besselzeta.cli import templates
from besselzeta.core.meta_table import FormatMetaTable, OutputFormat, load_format_table


class FormatCatalog:
    """Output formats packaged with besselzeta.

    Attributes:
        _format_meta_path (str): Path to the format meta table.
        _format_meta_table (FormatMetaTable): Parsed meta table.
    """

    def __init__(self, format_meta_path: Optional[str] = None) -> None:
        self._format_meta_path = format_meta_path or os.path.join(self.template_directory_path(), "formats_meta.yaml")
        self._format_meta_table: FormatMetaTable = load_format_table(self._format_meta_path)

    def template_directory_path(self) -> str:
        """Directory of the packaged templates, for the Jinja2 FileSystemLoader."""
        template_module_file_path = pathlib.Path(os.path.abspath(templates.__file__))
        return str(template_module_file_path.parent)

    @property
    def name(self) -> str:
        return self._format_meta_table.name

    @property
    def formats(self) -> KeysView:
        return self._format_meta_table.template_mapping.keys()

    def __contains__(self, format_name: str) -> bool:
        return format_name in self._format_meta_table

    def __getitem__(self, format_name: str) -> OutputFormat:
        return self._format_meta_table[format_name]


def csv_row(cells: Sequence[Any]) -> str:
    """One csv line, quoting cells that hold commas, quotes or line breaks."""
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="").writerow([str(cell) for cell in cells])
    return buffer.getvalue()


def table_inputs(title: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> Dict[str, Any]:
    """Inputs of the ``table`` format, with every cell as a string and the column widths."""
    string_rows: List[List[str]] = [[str(cell) for cell in row] for row in rows]
    widths = [
        max([len(column)] + [len(row[position]) for row in string_rows]) for position, column in enumerate(columns)
    ]
    return {"title": title, "columns": list(columns), "rows": string_rows, "widths": widths}


class ReportRenderer:
    """Renders text outputs from the packaged Jinja2 templates.

    Args:
        format_lock_timeout (float, optional): Seconds to wait for the environment lock. Defaults to 5.

    Attributes:
        _catalog (FormatCatalog): Registered output formats, shared by all instances.
        _environment (Environment): Async Jinja2 environment, shared by all instances.
        _format_lock (asyncio.Lock): Serializes template access of this renderer.
        _format_lock_timeout (float): Seconds before lock acquisition fails.

    Raises:
        asyncio.TimeoutError: Raises if the environment lock times out.
        KeyError: Raises if a format is not registered.
    """

    _catalog = FormatCatalog()
    _environment = Environment(
        loader=FileSystemLoader(searchpath=_catalog.template_directory_path()), enable_async=True
    )
    _environment.filters["csv_row"] = csv_row

    def __init__(self, format_lock_timeout: float = 5):
        self._format_lock = asyncio.Lock()
        self._format_lock_timeout = format_lock_timeout

    @classmethod
    def list_formats(cls) -> KeysView:
        return cls._catalog.formats

    async def acquire_format_lock(self) -> asyncio.Lock:
        try:
            await asyncio.wait_for(self._format_lock.acquire(), self._format_lock_timeout)
            logging.debug("Format lock acquired, rendering.")
            return self._format_lock
        except asyncio.TimeoutError:
            raise asyncio.TimeoutError(f"Timeout acquiring format lock in {self._format_lock_timeout} seconds.")

    async def render(self, format_name: str, template_inputs: Dict[str, Any]) -> Optional[str]:
        """Render a registered format.

        Args:
            format_name (str): Name of the format.
            template_inputs (Dict[str, Any]): Inputs to the template.

        Returns:
            Optional[str]: Rendered text, None if rendering failed.
        """
        if format_name not in self._catalog:
            raise KeyError(f"{format_name} not a registered output format.")
        missing = self._catalog[format_name].template_inputs - set(template_inputs)
        if missing:
            logging.warning(f"Rendering {format_name} without inputs {sorted(missing)}.")

        format_lock = await self.acquire_format_lock()
        rendered = None
        try:
            template = self._environment.get_template(self._catalog[format_name].template_file_path)
            rendered = await template.render_async(**template_inputs)
        except Exception as e:
            logging.error(f"Error rendering {format_name}: {e}")
        finally:
            if format_lock.locked():
                format_lock.release()
                logging.debug("Released format lock.")
        return rendered

    async def render_to_file(self, output_path: str, template_inputs: Dict[str, Any], format_name: str) -> bool:
        """Render a format into a file whose extension matches the format.

        Returns:
            bool: Whether the file was written.
        """
        expected_extension = self._catalog[format_name].file_extension
        if os.path.splitext(output_path)[1] != expected_extension:
            logging.error(f"Not writing {output_path}, {format_name} output expects a {expected_extension} file.")
            return False
        rendered = await self.render(format_name, template_inputs)
        if rendered is None:
            logging.error("Report failed to render, check logs.")
            return False
        if os.path.exists(output_path):
            logging.warning(f"{output_path} exists, overwriting.")
        with open(output_path, "w+") as open_report_file:
            open_report_file.write(rendered)
        return True

    def render_sync(self, format_name: str, template_inputs: Dict[str, Any]) -> Optional[str]:
        """:meth:`render` for synchronous callers outside an event loop."""
        return asyncio.run(self.render(format_name, template_inputs))
