"""
Graph interchange model.
One JSON document per decorated graph, orientation included.
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, validator

from graphoplex.models.common import Document


class VertexDocument(BaseModel):
    darts: List[int]
    payload: Optional[Any] = None

    @validator('darts')
    def validate_darts(cls, v):
        if len(v) < 2:
            raise ValueError('a vertex needs at least two darts')
        return v

    class Config:
        from_attributes = True


class OrientationDocument(BaseModel):
    vertex_order: List[str]
    directions: List[List[int]] = []

    class Config:
        from_attributes = True


class GraphDocument(Document):
    species: str
    darts: List[int]
    edges: List[List[int]]
    vertices: Dict[str, VertexDocument]
    orientation: Optional[OrientationDocument] = None

    @validator('edges')
    def validate_edges(cls, v):
        if any(len(edge) != 2 for edge in v):
            raise ValueError('every edge is a pair of darts')
        return v
