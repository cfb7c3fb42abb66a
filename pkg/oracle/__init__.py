"""Oracle module: independent verifiers for root counts, by grid scans, resultants and numeric solving."""

from .grid_scan import GridScan, grid_scan
from .resultant import CommonComponent, NonSimple, resultant_count_positive
from .numeric import numeric_solve

__all__ = [
    'GridScan', 'grid_scan', 'CommonComponent', 'NonSimple', 'resultant_count_positive', 'numeric_solve'
]
