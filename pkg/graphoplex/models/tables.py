"""
Pydantic models for matrices and homology tables.
"""
from typing import List, Optional

from pydantic import BaseModel, validator

from graphoplex.models.common import Document, validate_nonnegative_field


class MatrixEntry(BaseModel):
    row: int
    col: int
    value: str

    @validator('row', 'col')
    def validate_index(cls, v):
        return validate_nonnegative_field(cls, v)

    class Config:
        from_attributes = True


class MatrixDocument(Document):
    species: str
    filter: str
    kind: str
    n: Optional[str] = None
    k: int
    r: int
    rows: List[str]
    cols: List[str]
    entries: List[MatrixEntry] = []

    @validator('kind')
    def validate_kind(cls, v):
        if v not in ("E", "H", "N"):
            raise ValueError('kind must be E, H or N')
        return v


class BettiRow(BaseModel):
    k: int
    r: int
    dim: int
    rank_out: int
    rank_in: int
    betti: int
    exact: bool = True

    @validator('dim', 'rank_out', 'rank_in', 'betti')
    def validate_counts(cls, v):
        return validate_nonnegative_field(cls, v)

    class Config:
        from_attributes = True


class BettiTable(Document):
    species: str
    filter: str
    kind: str
    n: Optional[str] = None
    rows: List[BettiRow] = []

    def betti(self, k: int, r: Optional[int] = None) -> int:
        """Sum of Betti numbers in degree k, optionally for one r"""
        return sum(row.betti for row in self.rows if row.k == k and (r is None or row.r == r))

    def nonzero_degrees(self) -> List[int]:
        return sorted({row.k for row in self.rows if row.betti})

    def is_exact(self) -> bool:
        return all(row.exact for row in self.rows)


class MatrixListing(Document):
    species: str
    filter: str
    kind: str
    n: Optional[str] = None
    matrices: List[MatrixDocument] = []
