"""Python front end for the bhk workbench."""

import json
from dataclasses import dataclass

from ._core import (
    BoundingFunction,
    SchemaError,
    class_contains,
    report_schema,
    schema_version,
    word_length,
)
from . import _core

__all__ = [
    "BoundingFunction",
    "Result",
    "SchemaError",
    "check_complex",
    "class_contains",
    "report_schema",
    "run",
    "schema_version",
    "word_length",
]

EXIT_VERIFIED, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_SCHEMA = 0, 1, 2, 3


@dataclass
class Result:
    exit_code: int
    report: dict | None
    summary: str

    @property
    def verdict(self):
        return self.report["verdict"] if self.report else None


def run(*args):
    """Run a CLI subcommand, e.g. run("obstruction", "--weights", "id,log")."""
    code, out, err = _core.run([str(a) for a in args])
    report = json.loads(out) if out.strip() else None
    return Result(code, report, err)


def check_complex(complex_data):
    """Validate a complex given as a dict or JSON text; raises SchemaError."""
    text = complex_data if isinstance(complex_data, str) else json.dumps(complex_data)
    return json.loads(_core.complex_summary(text))
