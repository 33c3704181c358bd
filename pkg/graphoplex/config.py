import os
from typing import Optional

from .logging_config import get_logger, get_logging_config
from .utils import get_export_config

DEFAULT_MAX_CELLS = 20000
HARD_MAX_VERTICES = 14
HARD_MAX_EDGES = 16


class GraphConfig:
    """Orientation and canonical search settings"""
    def __init__(self, loop_sign: bool = True, max_leaves: int = 2_000_000):
        # a loop's dart pair is directed and flipping it reverses orientation
        self.loop_sign = loop_sign
        self.max_leaves = max_leaves


class LimitsConfig:
    """Resource limits for enumeration and matrix assembly"""
    def __init__(self,
                 max_cells: Optional[int] = None,
                 max_vertices: int = HARD_MAX_VERTICES,
                 max_edges: int = HARD_MAX_EDGES,
                 jobs: Optional[int] = None):
        if max_cells is None:
            max_cells = int(os.environ.get("GRAPHOPLEX_MAX_CELLS", DEFAULT_MAX_CELLS))
        if jobs is None:
            jobs = int(os.environ.get("GRAPHOPLEX_JOBS", 1))
        self.max_cells = max_cells
        self.max_vertices = max_vertices
        self.max_edges = max_edges
        self.jobs = max(1, jobs)


# Default configuration instances
_graph_config = GraphConfig()
_limits_config = LimitsConfig()


def get_graph_config() -> GraphConfig:
    """Get graph configuration instance for dependency injection"""
    return _graph_config


def get_limits_config() -> LimitsConfig:
    """Get limits configuration instance for dependency injection"""
    return _limits_config


class AppConfig:
    """Bundle of the process-wide configuration objects"""
    def __init__(self):
        self.logging_config = get_logging_config()
        self.limits_config = get_limits_config()
        self.graph_config = get_graph_config()
        self.export_config = get_export_config()

        self.logger = get_logger(__name__)


_app_config = None


def get_app_config() -> AppConfig:
    global _app_config
    if _app_config is None:
        _app_config = AppConfig()
    return _app_config
