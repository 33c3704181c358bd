"""
Pydantic model for one command-line run.
Validates the (k, r) window against the hard limits and parses --n.
"""
from typing import Optional, Union

from pydantic import BaseModel, validator

from graphoplex.config import HARD_MAX_EDGES, HARD_MAX_VERTICES
from graphoplex.models.common import Window, validate_nonnegative_field

BOUNDARY_FLAGS = {"dE": "E", "dH": "H", "dN": "N"}
FORMATS = ("json", "csv", "both")
STARS = ("id", "inv", "table")


class RunConfig(BaseModel):
    command: str
    species: str = "cc"
    group_table: Optional[str] = None
    star: str = "table"
    complex: str = "full"
    k_min: int = 1
    k_max: int = 4
    r_min: int = 0
    r_max: int = 2
    e_max: Optional[int] = None
    boundary: str = "dE"
    n: Optional[str] = None
    suite: str = "all"
    format: str = "both"
    output: Optional[str] = None
    seed: int = 0
    jobs: int = 1
    max_cells: Optional[int] = None

    @validator('k_min', 'r_min', 'r_max', 'e_max', 'seed', 'max_cells')
    def validate_counts(cls, v):
        return validate_nonnegative_field(cls, v)

    @validator('k_max')
    def validate_k_max(cls, v, values):
        if v < values.get('k_min', 0):
            raise ValueError('--kmax is below --kmin')
        if v > HARD_MAX_VERTICES:
            raise ValueError(f'--kmax above the hard limit {HARD_MAX_VERTICES}')
        return v

    @validator('r_max')
    def validate_r_max(cls, v, values):
        if v < values.get('r_min', 0):
            raise ValueError('--rmax is below --rmin')
        k_max = values.get('k_max')
        if k_max is not None and k_max + v - 1 > HARD_MAX_EDGES:
            raise ValueError(f'window reaches e = {k_max + v - 1}, above the hard limit {HARD_MAX_EDGES}')
        return v

    @validator('star')
    def validate_star(cls, v):
        if v not in STARS:
            raise ValueError(f'--star must be one of {", ".join(STARS)}')
        return v

    @validator('boundary')
    def validate_boundary(cls, v):
        if v not in BOUNDARY_FLAGS:
            raise ValueError(f'--boundary must be one of {", ".join(BOUNDARY_FLAGS)}')
        return v

    @validator('n')
    def validate_n(cls, v):
        if v is None or v == "sym":
            return v
        if not v.isdigit():
            raise ValueError('--n must be "sym" or a nonnegative integer')
        return v

    @validator('format')
    def validate_format(cls, v):
        if v not in FORMATS:
            raise ValueError(f'--format must be one of {", ".join(FORMATS)}')
        return v

    @validator('jobs')
    def validate_jobs(cls, v):
        if v < 1:
            raise ValueError('--jobs must be at least 1')
        return v

    def parsed_n(self) -> Union[int, str, None]:
        """Integer n, "sym", or None"""
        if self.n is None or self.n == "sym":
            return self.n
        return int(self.n)

    def boundary_kind(self) -> str:
        return BOUNDARY_FLAGS[self.boundary]

    def window(self) -> Window:
        return Window(k_min=self.k_min, k_max=self.k_max, r_min=self.r_min, r_max=self.r_max, e_max=self.e_max)

    class Config:
        from_attributes = True
