"""
File I/O utilities for trace files, model documents and reports.
"""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

PathLike = Union[str, Path]


def read_text(input_path: PathLike) -> str:
    """
    Read a UTF-8 text file.

    Args:
        input_path: Path to the file

    Returns:
        File contents

    Raises:
        FileNotFoundError: If the file does not exist
    """
    input_path = Path(input_path)

    if not input_path.exists():
        raise FileNotFoundError(f"Input file not found: {input_path}")

    with open(input_path, 'r', encoding='utf-8') as f:
        return f.read()


def write_text(text: str, output_path: PathLike) -> Path:
    """
    Write text to a UTF-8 file, creating parent directories.

    Args:
        text: Content to write
        output_path: Destination path

    Returns:
        The written path
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    # newline='' keeps '\n' byte-exact on every platform
    with open(output_path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)

    return output_path


def save_json(data: Any, output_path: PathLike, indent: int = 2) -> Path:
    """
    Save a JSON document.

    Args:
        data: JSON-serializable object
        output_path: Path to output JSON file
        indent: JSON indentation level

    Returns:
        The written path
    """
    return write_text(json.dumps(data, indent=indent) + "\n", output_path)


def load_json(input_path: PathLike) -> Any:
    """
    Load a JSON document.

    Args:
        input_path: Path to input JSON file

    Returns:
        Parsed document
    """
    return json.loads(read_text(input_path))


def save_jsonl(records: Iterable[Dict[str, Any]], output_path: PathLike) -> Path:
    """
    Save records as JSON lines (one compact object per line).

    Args:
        records: Iterable of JSON-serializable dictionaries
        output_path: Destination path

    Returns:
        The written path
    """
    lines: List[str] = [json.dumps(record, separators=(',', ':')) for record in records]
    return write_text("".join(line + "\n" for line in lines), output_path)
