"""Fans module: normal fans, Minkowski sums and the alternation flags of a trinomial pair."""

from .normal_fan import (
    NormalFan, DegeneratePolygon, ParallelRays, NotHexagon, angle_cmp, normal_fan, minkowski_sum, is_hexagon,
    alternates, merged_normals, consecutive_translate_check
)
from .theorem3 import Theorem3Report, fan_flags, apply_count, theorem3_check

__all__ = [
    'NormalFan', 'DegeneratePolygon', 'ParallelRays', 'NotHexagon', 'angle_cmp', 'normal_fan', 'minkowski_sum',
    'is_hexagon', 'alternates', 'merged_normals', 'consecutive_translate_check',
    'Theorem3Report', 'fan_flags', 'apply_count', 'theorem3_check'
]
