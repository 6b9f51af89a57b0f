"""File reading and JSON/YAML document utilities."""

import json
from pathlib import Path
from typing import Any, Union

import yaml

from ..errors import SchemaError

YAML_SUFFIXES = ('.yaml', '.yml')


def file_exists(path: Path) -> bool:
    """Check if file exists.

    Args:
        path: File path to check

    Returns:
        True if file exists, False otherwise
    """
    return path.exists() and path.is_file()


def read_text_file(path: Path, encoding: str = 'utf-8') -> str:
    """Read text file contents.

    Args:
        path: File path
        encoding: Text encoding

    Returns:
        File contents as string

    Raises:
        FileNotFoundError: If file doesn't exist
    """
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")

    with open(path, 'r', encoding=encoding) as f:
        return f.read()


def parse_document(text: str, source: str = "<input>", fmt: str = 'json') -> Any:
    """Parse JSON or YAML text.

    Args:
        text: Document text
        source: Name used in error messages
        fmt: 'json' or 'yaml'

    Returns:
        The parsed document

    Raises:
        SchemaError: With line and column of the syntax error
    """
    if fmt == 'yaml':
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, 'problem_mark', None)
            line = mark.line + 1 if mark is not None else None
            column = mark.column + 1 if mark is not None else None
            raise SchemaError(f"Invalid YAML: {getattr(e, 'problem', e)}", source, line, column) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Invalid JSON: {e.msg}", source, e.lineno, e.colno) from e


def read_structured_file(path: Path) -> Any:
    """Read a JSON file, or a YAML file when the suffix says so.

    Raises:
        SchemaError: If the file is missing, unreadable, not UTF-8 or does not parse
    """
    if not file_exists(path):
        raise SchemaError("File not found", str(path))
    fmt = 'yaml' if path.suffix.lower() in YAML_SUFFIXES else 'json'
    try:
        text = read_text_file(path)
    except UnicodeDecodeError as e:
        raise SchemaError(f"Not UTF-8 text: byte {e.object[e.start]:#04x} at offset {e.start}", str(path)) from None
    except OSError as e:
        raise SchemaError(f"Cannot read file: {e.strerror or e}", str(path)) from None
    return parse_document(text, str(path), fmt)


def load_document(argument: Union[str, Path]) -> Any:
    """Load a document from a path, or parse the argument itself as inline JSON.

    Raises:
        SchemaError: If neither reading nor inline parsing succeeds
    """
    path = Path(argument)
    try:
        is_file = file_exists(path)
    except OSError:
        # Inline documents can be longer than the OS allows for a name
        is_file = False
    if is_file:
        return read_structured_file(path)
    try:
        return parse_document(str(argument), "<inline>")
    except SchemaError:
        raise SchemaError("Not an existing file nor inline JSON", str(argument)) from None


def dump_json(data: Any, indent: int = 2) -> str:
    """Serialize data as JSON, keeping key insertion order.

    Args:
        data: Data to write
        indent: Number of spaces for indentation
    """
    return json.dumps(data, indent=indent, ensure_ascii=False)
