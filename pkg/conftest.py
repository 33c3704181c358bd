import logging
import random

import pytest

from graphoplex.complexes import ChainVector
from graphoplex.config import GraphConfig, LimitsConfig
from graphoplex.graphs.canonical import canonical_class
from graphoplex.graphs.enumeration import clear_basis_cache
from graphoplex.graphs.model import graph_from_vertex_pairs, polygon
from graphoplex.logging_config import get_logging_config
from graphoplex.pairing import clear_pairing_cache
from graphoplex.species import AA, CC, group_species


@pytest.fixture(autouse=True)
def isolated_logging(tmp_path, monkeypatch):
    """Keep log files out of the working tree"""
    config = get_logging_config()
    monkeypatch.setattr(config, "file_logging", False)
    monkeypatch.setattr(config, "logs_dir", tmp_path / "logs")
    logging.getLogger("runs").propagate = True
    yield


@pytest.fixture(autouse=True)
def fresh_caches():
    clear_basis_cache()
    clear_pairing_cache()
    yield


@pytest.fixture
def cc():
    return CC


@pytest.fixture
def aa():
    return AA


@pytest.fixture
def trivial_group():
    return group_species("trivial")


@pytest.fixture
def z2():
    return group_species("z2")


@pytest.fixture
def unsigned_loops():
    return GraphConfig(loop_sign=False)


@pytest.fixture
def limits():
    return LimitsConfig(max_cells=20000, jobs=1)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def triangle():
    return polygon(CC, 3)


@pytest.fixture
def theta():
    """Two trivalent vertices joined by three edges"""
    return graph_from_vertex_pairs(CC, [(0, 1), (0, 1), (0, 1)])


def class_chain(graph) -> ChainVector:
    return ChainVector.from_class(canonical_class(graph))
