from fractions import Fraction

import pytest

from bivar.polygon import LatticePolygon
from bivar.sparse_poly import SparsePolyQ2
from fans.normal_fan import (
    DegeneratePolygon,
    NotHexagon,
    ParallelRays,
    alternates,
    consecutive_translate_check,
    is_hexagon,
    minkowski_sum,
    normal_fan,
)
from fans.theorem3 import apply_count, fan_flags, theorem3_check
from rootcount.certified_count import CertifiedCount, CountStatus

TRIANGLE = LatticePolygon.hull_of([(0, 0), (1, 0), (0, 1)])
FLIPPED = LatticePolygon.hull_of([(0, 0), (-1, 0), (0, -1)])


def _rotate(p: LatticePolygon) -> LatticePolygon:
    return LatticePolygon.hull_of([(-y, x) for x, y in p.vertices])


def test_normal_fan_of_normalized_trinomial():
    fan = normal_fan(LatticePolygon.hull_of([(0, 0), (1, 0), (1, 1)]))
    assert set(fan.rays) == {(0, -1), (-1, 1), (1, 0)}


def test_minkowski_sum_vertex_counts():
    assert is_hexagon(minkowski_sum(TRIANGLE, FLIPPED))
    assert len(minkowski_sum(TRIANGLE, TRIANGLE).vertices) == 3
    assert set(minkowski_sum(TRIANGLE, TRIANGLE).vertices) == {(0, 0), (2, 0), (0, 2)}


def test_opposite_triangles_alternate():
    assert alternates(normal_fan(TRIANGLE), normal_fan(FLIPPED))
    assert alternates(normal_fan(_rotate(TRIANGLE)), normal_fan(_rotate(FLIPPED)))
    assert not consecutive_translate_check(TRIANGLE, FLIPPED)


def test_equal_triangles_share_rays():
    with pytest.raises(ParallelRays):
        alternates(normal_fan(TRIANGLE), normal_fan(TRIANGLE))
    with pytest.raises(NotHexagon):
        consecutive_translate_check(TRIANGLE, TRIANGLE)


def test_segment_has_no_fan():
    with pytest.raises(DegeneratePolygon):
        normal_fan(LatticePolygon.hull_of([(0, 0), (2, 1)]))


def test_symmetric_six_flags(symmetric_six, settings):
    report = theorem3_check(symmetric_six.f, symmetric_six.g, settings.precision, settings.max_depth, settings.max_precision)
    assert report.hexagon
    assert report.alternates is False
    assert report.consecutive_translate is True
    assert report.count.count == 5
    assert report.violations == []


def test_mixed_six_flags(mixed_six):
    report = fan_flags(mixed_six.f, mixed_six.g)
    assert report.hexagon
    assert report.alternates is False
    assert report.consecutive_translate is True
    assert report.count is None


def test_five_solutions_with_alternating_fans_is_a_violation():
    f = SparsePolyQ2.from_terms([(1, (0, 0)), (-1, (1, 0)), (1, (0, 1))])
    g = SparsePolyQ2.from_terms([(1, (0, 0)), (-1, (-1, 0)), (1, (0, -1))])
    report = fan_flags(f, g)
    assert report.alternates is True
    fake = CertifiedCount(5, CountStatus.EXACT, [], 64, [])
    assert len(apply_count(report, fake).violations) == 1
    partial = CertifiedCount(5, CountStatus.PARTIAL, [], 64, [])
    assert apply_count(report, partial).violations == []


def test_fan_flags_need_trinomials(line_system):
    f = SparsePolyQ2.from_terms([(1, (0, 0)), (-1, (1, 0)), (1, (0, 1)), (Fraction(1, 2), (1, 1))])
    with pytest.raises(ValueError):
        fan_flags(f, line_system.g)
