import pytest
from hypothesis import given, strategies as st

from syseval.errors import ScaleMismatchError, UnknownScaleError
from syseval.scales import (
    CountPosetScale,
    Estimate,
    INCOMPARABLE,
    MultisetScale,
    OrdinalScale,
    QualityVector,
    QuantScale,
    TIE,
    VectorScale,
    better_of,
    validate_estimate,
)

from helpers import all_count_vectors, has_contiguous_support

SCORE = QuantScale(worst=3.0, best=1.0, id="score")
GRADE = OrdinalScale(3, id="grade")
PAIR = VectorScale((GRADE, GRADE), id="pair")
P34 = MultisetScale(3, 4, id="p34")


class TestScaleConstruction:
    def test_quant_orientation(self):
        assert not SCORE.higher_is_better
        assert QuantScale(0.0, 10.0).higher_is_better

    def test_quant_equal_endpoints_rejected(self):
        with pytest.raises(ValueError):
            QuantScale(2.0, 2.0)

    def test_ordinal_needs_positive_size(self):
        with pytest.raises(ValueError):
            OrdinalScale(0)

    def test_vector_needs_criteria(self):
        with pytest.raises(ValueError):
            VectorScale(())


class TestValidateEstimate:
    def test_ordinal_boundary_ok(self):
        assert validate_estimate(Estimate(GRADE, 1)).ok
        assert validate_estimate(Estimate(GRADE, 3)).ok

    def test_ordinal_out_of_range(self):
        report = validate_estimate(Estimate(GRADE, 5))
        assert not report.ok
        assert "outside 1..3" in report.violations[0]

    def test_noncontiguous_multiset_rejected(self):
        report = validate_estimate(Estimate(P34, (2, 0, 2)))
        assert not report.ok
        assert "non-contiguous" in report.violations[0]

    def test_table4_multiset_ok(self):
        assert validate_estimate(Estimate(P34, (3, 1, 0))).ok

    def test_quant_range(self):
        assert validate_estimate(Estimate(SCORE, 1.5)).ok
        assert not validate_estimate(Estimate(SCORE, 3.1)).ok
        assert not validate_estimate(Estimate(SCORE, 0.9)).ok

    def test_vector_arity(self):
        assert validate_estimate(Estimate(PAIR, (2, 1))).ok
        assert not validate_estimate(Estimate(PAIR, (2, 1, 1))).ok
        assert not validate_estimate(Estimate(PAIR, (2, 9))).ok

    def test_count_vector_sum(self):
        scale = CountPosetScale(3, 4)
        assert validate_estimate(Estimate(scale, (2, 0, 2))).ok  # no contiguity here
        assert not validate_estimate(Estimate(scale, (2, 0, 1))).ok

    def test_dangling_scale_is_distinct_error(self):
        with pytest.raises(UnknownScaleError):
            validate_estimate(Estimate("not-a-scale", 1))

    def test_p34_accepts_exactly_twelve_of_fifteen(self):
        all_vectors = all_count_vectors(3, 4)
        assert len(all_vectors) == 15
        accepted = [v for v in all_vectors if validate_estimate(Estimate(P34, v)).ok]
        rejected = [v for v in all_vectors if not validate_estimate(Estimate(P34, v)).ok]
        assert len(accepted) == 12
        assert sorted(rejected) == [(1, 0, 3), (2, 0, 2), (3, 0, 1)]
        assert all(has_contiguous_support(v) for v in accepted)


class TestBetterOf:
    def test_quant_lower_is_better(self):
        a, b = Estimate(SCORE, 1.5), Estimate(SCORE, 1.8)
        assert better_of(a, b) is a
        assert better_of(b, a) is a

    def test_ordinal_tie(self):
        assert better_of(Estimate(GRADE, 2), Estimate(GRADE, 2)) is TIE

    def test_vector_incomparable(self):
        a, b = Estimate(PAIR, (2, 1)), Estimate(PAIR, (1, 2))
        assert better_of(a, b) is INCOMPARABLE

    def test_counts_compare_by_cumulative_dominance(self):
        scale = CountPosetScale(3, 4)
        a, b = Estimate(scale, (4, 0, 0)), Estimate(scale, (3, 1, 0))
        assert better_of(a, b) is a

    def test_scale_mismatch(self):
        with pytest.raises(ScaleMismatchError):
            better_of(Estimate(GRADE, 1), Estimate(SCORE, 1.5))


quant_values = st.floats(min_value=1.0, max_value=3.0, allow_nan=False)
ordinal_levels = st.integers(min_value=1, max_value=3)
vector_values = st.tuples(ordinal_levels, ordinal_levels)


def _winner_set(a, b):
    r = better_of(a, b)
    return r if r in (TIE, INCOMPARABLE) else r.value


@given(quant_values, quant_values)
def test_quant_never_incomparable(x, y):
    assert better_of(Estimate(SCORE, x), Estimate(SCORE, y)) is not INCOMPARABLE


@given(ordinal_levels, ordinal_levels)
def test_ordinal_never_incomparable(x, y):
    assert better_of(Estimate(GRADE, x), Estimate(GRADE, y)) is not INCOMPARABLE


@given(vector_values, vector_values)
def test_better_of_antisymmetric(x, y):
    a, b = Estimate(PAIR, x), Estimate(PAIR, y)
    if better_of(a, b) is a:
        assert better_of(b, a) is a


@given(vector_values, vector_values, vector_values)
def test_better_of_transitive_on_comparable(x, y, z):
    a, b, c = (Estimate(PAIR, v) for v in (x, y, z))
    if better_of(a, b) is a and better_of(b, c) is b:
        assert better_of(a, c) is a


@given(st.lists(ordinal_levels, min_size=4, max_size=4))
def test_quality_vector_roundtrip_str(levels):
    counts = tuple(levels.count(r) for r in (1, 2, 3))
    q = QualityVector(2, counts, 4)
    assert str(q).startswith("(2;")
