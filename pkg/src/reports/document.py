"""Serializable result documents shared by every command."""

import hashlib
import json
import math
from fractions import Fraction
from typing import Any, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict

VERSION = '1.0.0'
SIGNIFICANT_DIGITS = 12


def round_value(value, digits=SIGNIFICANT_DIGITS):
    """
    Normalize a payload value for serialization.

    Floats keep 12 significant digits, complex numbers become [re, im],
    fractions become 'p/q' strings, and arrays and tuples become lists.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return value
        rounded = float(f"{value:.{digits}g}")
        return 0.0 if rounded == 0 else rounded
    if isinstance(value, (complex, np.complexfloating)):
        return [round_value(value.real, digits), round_value(value.imag, digits)]
    if isinstance(value, np.ndarray):
        return round_value(value.tolist(), digits)
    if isinstance(value, dict):
        return {str(k): round_value(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_value(v, digits) for v in value]
    raise TypeError(f"Cannot serialize {type(value).__name__} in a result document")


def format_occupation(occupation):
    return ','.join(str(n) for n in occupation)


class ResultDocument(BaseModel):
    """
    Output of one command.

    payload holds an optional 'table' ({'columns': [...], 'rows': [[...]]}),
    a 'summary' mapping, and free-form 'details'.
    """

    model_config = ConfigDict(frozen=True)

    command: str
    inputs: Dict[str, Any]
    payload: Dict[str, Any]
    version: str = VERSION
    digest: str

    @classmethod
    def build(cls, command, inputs, summary=None, table=None, details=None):
        """
        Assemble a document, rounding numbers once so every format agrees.

        Args:
            command (str): Subcommand name
            inputs (dict): Echo of the arguments that determine the result
            summary (dict): Scalar results
            table (tuple): (columns, rows) for tabular results
            details (dict): Nested structured results (matrices, per-class data)

        Returns:
            ResultDocument
        """
        inputs = round_value(dict(inputs))
        payload = {'summary': round_value(dict(summary or {}))}
        if table is not None:
            columns, rows = table
            payload['table'] = {'columns': list(columns), 'rows': round_value([list(r) for r in rows])}
        if details:
            payload['details'] = round_value(dict(details))

        canonical = json.dumps({'command': command, 'inputs': inputs}, sort_keys=True, separators=(',', ':'))
        digest = hashlib.sha256(canonical.encode('utf-8')).hexdigest()
        return cls(command=command, inputs=inputs, payload=payload, digest=digest)

    @property
    def summary(self):
        return self.payload.get('summary', {})

    @property
    def table(self):
        return self.payload.get('table')

    @property
    def status(self):
        return self.summary.get('status')
