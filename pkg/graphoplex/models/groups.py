"""
Pydantic models for finite group presentations.
Defines the group table file format and the validation report.
"""
from typing import List, Optional

from pydantic import BaseModel, validator


class GroupTableFile(BaseModel):
    elements: List[str]
    unit: int
    mul: List[List[int]]
    star: Optional[List[int]] = None

    @validator('elements')
    def validate_elements(cls, v):
        if not v:
            raise ValueError('at least one element required')
        if len(set(v)) != len(v):
            raise ValueError('element names must be distinct')
        return [name.strip() for name in v]

    @validator('mul')
    def validate_mul_shape(cls, v, values):
        order = len(values.get('elements') or [])
        if len(v) != order or any(len(row) != order for row in v):
            raise ValueError(f'mul must be a {order}x{order} table')
        if any(not 0 <= entry < order for row in v for entry in row):
            raise ValueError('mul entries must be element indices')
        return v

    @validator('unit')
    def validate_unit(cls, v, values):
        order = len(values.get('elements') or [])
        if not 0 <= v < order:
            raise ValueError('unit must be an element index')
        return v

    @validator('star')
    def validate_star_shape(cls, v, values):
        if v is None:
            return v
        order = len(values.get('elements') or [])
        if len(v) != order or any(not 0 <= entry < order for entry in v):
            raise ValueError('star must map every element index to an element index')
        return v

    class Config:
        from_attributes = True


class GroupValidationReport(BaseModel):
    group: str
    order: int
    violations: List[str] = []

    @property
    def valid(self) -> bool:
        return not self.violations

    class Config:
        from_attributes = True
