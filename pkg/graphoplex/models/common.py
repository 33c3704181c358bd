"""
Shared Pydantic models and validators.
Contains the schema tag and reusable field checks for every JSON document.
"""
from typing import List, Optional

from pydantic import BaseModel, Field, validator

SCHEMA_VERSION = "graphoplex/1"


def validate_schema_field(cls, v):
    """Shared validator for schema fields"""
    if v != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {v!r}, expected {SCHEMA_VERSION!r}")
    return v


def validate_nonnegative_field(cls, v):
    """Shared validator for counts and degrees"""
    if v is not None and v < 0:
        raise ValueError('must be nonnegative')
    return v


class Document(BaseModel):
    """Top-level JSON document carrying the schema tag"""
    schema_: str = Field(default=SCHEMA_VERSION, alias="schema")

    @validator('schema_')
    def validate_schema(cls, v):
        return validate_schema_field(cls, v)

    class Config:
        from_attributes = True
        populate_by_name = True


class Window(BaseModel):
    k_min: int = 0
    k_max: int
    r_min: int = 0
    r_max: int = 0
    e_max: Optional[int] = None

    @validator('k_min', 'k_max', 'r_min', 'r_max', 'e_max')
    def validate_bounds(cls, v):
        return validate_nonnegative_field(cls, v)

    class Config:
        from_attributes = True


class ClassEntry(BaseModel):
    encoding: str
    vertices: int
    edges: int
    automorphisms: int

    @validator('vertices', 'edges', 'automorphisms')
    def validate_counts(cls, v):
        return validate_nonnegative_field(cls, v)

    class Config:
        from_attributes = True


class BasisDocument(Document):
    species: str
    filter: str
    k: int
    r: int
    classes: List[ClassEntry] = []


class BasisListing(Document):
    species: str
    filter: str
    window: Window
    bases: List[BasisDocument] = []
