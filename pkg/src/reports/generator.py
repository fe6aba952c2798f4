"""Render result documents as text, JSON or CSV."""

import csv
import io
import json
from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from utils.logger import log_info

FORMATS = ('text', 'json', 'csv')


class ReportGenerator:
    """Format ResultDocuments for stdout or files."""

    def __init__(self, config):
        """
        Initialize report generator.

        Args:
            config (dict): Configuration dictionary
        """
        self.config = config
        self.template_dir = Path(__file__).parent / 'templates'
        self.env = Environment(
            loader=FileSystemLoader(str(self.template_dir)),
            keep_trailing_newline=True,
            autoescape=False,
        )

    def render(self, document, emit='text'):
        """
        Render a document.

        Args:
            document (ResultDocument): Command result
            emit (str): 'text', 'json' or 'csv'

        Returns:
            str: Rendered document
        """
        if emit == 'json':
            return document.model_dump_json(indent=2) + '\n'
        if emit == 'csv':
            return self._render_csv(document)
        if emit == 'text':
            return self._render_text(document)
        raise ValueError(f"Unknown output format: {emit}")

    def write(self, document, emit, path):
        """Render to a file, creating parent directories."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(document, emit), encoding='utf-8')
        log_info(f"Result written to {path}")
        return str(path)

    def _render_csv(self, document):
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        table = document.table
        if table:
            writer.writerow(table['columns'])
            for row in table['rows']:
                writer.writerow([self._cell(value) for value in row])
        else:
            writer.writerow(['key', 'value'])
            for key, value in document.summary.items():
                writer.writerow([key, self._cell(value)])
        return buffer.getvalue()

    def _render_text(self, document):
        template = self.env.get_template('document.txt.j2')
        table = document.table
        columns, header, rule, lines = [], '', '', []
        if table:
            columns = table['columns']
            cells = [[self._cell(value) for value in row] for row in table['rows']]
            widths = [
                max([len(str(column))] + [len(row[i]) for row in cells])
                for i, column in enumerate(columns)
            ]
            header = '  '.join(str(c).ljust(w) for c, w in zip(columns, widths)).rstrip()
            rule = '  '.join('-' * w for w in widths)
            lines = ['  '.join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]

        details = {
            key: json.dumps(value, indent=2)
            for key, value in document.payload.get('details', {}).items()
        }
        return template.render(
            command=document.command,
            version=document.version,
            inputs=document.inputs,
            columns=columns,
            header=header,
            rule=rule,
            lines=lines,
            summary={k: self._cell(v) for k, v in document.summary.items()},
            details=details,
            digest=document.digest,
        )

    @staticmethod
    def _cell(value):
        if isinstance(value, bool):
            return 'yes' if value else 'no'
        if isinstance(value, (list, dict)):
            return json.dumps(value, separators=(',', ':'))
        return '' if value is None else str(value)
