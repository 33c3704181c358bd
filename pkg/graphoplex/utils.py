"""
Artifact export utilities
"""

import csv
import json
import logging

from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence, Union

from pydantic import BaseModel

from .exceptions import UsageError
from .logging_config import log_artifact_write


class ExportConfig:
    """Artifact export configuration"""
    def __init__(self,
                 output_dir: Union[str, Path] = "graphoplex_out",
                 json_indent: int = 2,
                 csv_delimiter: str = ",",
                 logger_name: str = __name__):
        self.output_dir = Path(output_dir)
        self.json_indent = json_indent
        self.csv_delimiter = csv_delimiter
        self.logger = logging.getLogger(logger_name)


# Default export configuration instance
_export_config = ExportConfig()


def to_json_text(document: Union[BaseModel, dict, list], config: Optional[ExportConfig] = None) -> str:
    """Serialize deterministically: sorted keys, fixed indent, trailing newline"""
    if config is None:
        config = _export_config

    if isinstance(document, BaseModel):
        document = document.model_dump(mode="json", by_alias=True)
    return json.dumps(document, indent=config.json_indent, sort_keys=True) + "\n"


def resolve_output_path(name: Union[str, Path], config: Optional[ExportConfig] = None) -> Path:
    if config is None:
        config = _export_config

    path = Path(name)
    if not path.is_absolute() and path.parent == Path("."):
        path = config.output_dir / path
    return path


def write_json_artifact(document: Union[BaseModel, dict, list], path: Union[str, Path],
                        kind: str = "json", config: Optional[ExportConfig] = None) -> Path:
    if config is None:
        config = _export_config

    target = resolve_output_path(path, config)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(to_json_text(document, config), encoding="utf-8")
    except OSError as e:
        log_artifact_write(kind, str(target), False, error=str(e))
        raise
    log_artifact_write(kind, str(target), True)
    return target


def write_csv_artifact(header: Sequence[str], rows: Iterable[Sequence[Any]], path: Union[str, Path],
                       kind: str = "csv", config: Optional[ExportConfig] = None) -> Path:
    if config is None:
        config = _export_config

    target = resolve_output_path(path, config)
    rows = list(rows)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, delimiter=config.csv_delimiter, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        log_artifact_write(kind, str(target), False, error=str(e))
        raise
    log_artifact_write(kind, str(target), True, rows=len(rows))
    return target


def read_json_file(path: Union[str, Path], config: Optional[ExportConfig] = None) -> Any:
    if config is None:
        config = _export_config

    source = Path(path)
    try:
        with source.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise UsageError(f"file not found: {source}")
    except (OSError, json.JSONDecodeError) as e:
        config.logger.error(f"Failed to read {source}: {e}")
        raise UsageError(f"cannot read JSON from {source}: {e}")
    config.logger.debug(f"Loaded JSON document from {source}")
    return data


def csv_rows_from_models(models: List[BaseModel], columns: Sequence[str]) -> List[List[Any]]:
    rows = []
    for model in models:
        data = model.model_dump(mode="json")
        rows.append([data[column] for column in columns])
    return rows


def get_export_config() -> ExportConfig:
    """Get export configuration instance for dependency injection"""
    return _export_config
