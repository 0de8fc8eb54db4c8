import numpy as np
import pytest

from anovabf.datasets import OneWayDataset, TwoWayDataset, parse_one_way, parse_two_way
from anovabf.errors import BalanceError, DegenerateDesignError, DomainError, ParseError

ONE_WAY_SMALL = "level,value\na,1\na,1\nb,2\nb,2"

TWO_WAY_SMALL = "\n".join(
    ["a,b,value"]
    + [f"{a},{b},{v}" for a, b, v in [
        ("x", "u", 1), ("x", "u", 2),
        ("x", "v", 3), ("x", "v", 4),
        ("y", "u", 5), ("y", "u", 6),
        ("y", "v", 7), ("y", "v", 8),
    ]]
)


class TestParseOneWay:
    def test_direct_transcription(self):
        d = parse_one_way(ONE_WAY_SMALL)
        assert d.p == 2
        assert d.r == 2
        assert d.n == 4
        np.testing.assert_array_equal(d.values, [[1.0, 1.0], [2.0, 2.0]])

    def test_levels_in_first_appearance_order(self):
        d = parse_one_way("level,value\nz,1\nz,2\na,3\na,4\nm,5\nm,6")
        assert d.levels == ("z", "a", "m")

    def test_unbalanced_counts(self):
        with pytest.raises(BalanceError):
            parse_one_way("level,value\na,1\nb,2\nb,2")

    def test_single_level(self):
        with pytest.raises(DegenerateDesignError):
            parse_one_way("level,value\na,1\na,2")

    def test_single_replication(self):
        with pytest.raises(DegenerateDesignError):
            parse_one_way("level,value\na,1\nb,2")

    def test_non_numeric_value(self):
        with pytest.raises(ParseError):
            parse_one_way("level,value\na,1\na,oops\nb,2\nb,2")

    def test_non_finite_value(self):
        with pytest.raises(ParseError):
            parse_one_way("level,value\na,1\na,inf\nb,2\nb,2")

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_one_way("lvl,val\na,1\na,1\nb,2\nb,2")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_one_way("")

    def test_header_only(self):
        with pytest.raises(ParseError):
            parse_one_way("level,value\n")

    def test_wrong_field_count(self):
        with pytest.raises(ParseError):
            parse_one_way("level,value\na,1,extra\na,1\nb,2\nb,2")

    def test_scientific_notation(self):
        d = parse_one_way("level,value\na,1e-3\na,2E2\nb,-3.5e0\nb,4")
        np.testing.assert_allclose(d.values, [[1e-3, 200.0], [-3.5, 4.0]])

    def test_row_order_insensitive(self):
        shuffled = "level,value\nb,2\na,1\nb,2\na,1"
        d1 = parse_one_way(ONE_WAY_SMALL)
        d2 = parse_one_way(shuffled)
        for label in ("a", "b"):
            row1 = sorted(d1.values[d1.levels.index(label)])
            row2 = sorted(d2.values[d2.levels.index(label)])
            assert row1 == row2

    def test_round_trip_exact(self):
        rng = np.random.default_rng(3)
        d = OneWayDataset(values=rng.normal(size=(4, 3)), levels=("a", "b", "c", "d"))
        d2 = parse_one_way(d.to_csv())
        assert d2.levels == d.levels
        np.testing.assert_array_equal(d2.values, d.values)


class TestParseTwoWay:
    def test_full_cross(self):
        d = parse_two_way(TWO_WAY_SMALL)
        assert (d.p, d.q, d.r) == (2, 2, 2)
        assert d.n == 8
        np.testing.assert_array_equal(
            d.values, [[[1, 2], [3, 4]], [[5, 6], [7, 8]]]
        )

    def test_missing_cell(self):
        rows = "a,b,value\nx,u,1\nx,u,2\nx,v,3\nx,v,4\ny,u,5\ny,u,6"
        with pytest.raises(BalanceError):
            parse_two_way(rows)

    def test_unequal_cell_counts(self):
        with pytest.raises(BalanceError):
            parse_two_way(TWO_WAY_SMALL + "\nx,u,9")

    def test_single_replication(self):
        rows = "a,b,value\nx,u,1\nx,v,2\ny,u,3\ny,v,4"
        with pytest.raises(DegenerateDesignError):
            parse_two_way(rows)

    def test_round_trip_exact(self):
        rng = np.random.default_rng(4)
        d = TwoWayDataset(values=rng.normal(size=(2, 3, 2)))
        d2 = parse_two_way(d.to_csv())
        assert (d2.p, d2.q, d2.r) == (d.p, d.q, d.r)
        np.testing.assert_array_equal(d2.values, d.values)
        assert d2.a_levels == d.a_levels
        assert d2.b_levels == d.b_levels


class TestDatasetInvariants:
    def test_one_way_needs_two_levels(self):
        with pytest.raises(DegenerateDesignError):
            OneWayDataset(values=np.ones((1, 3)))

    def test_one_way_needs_two_replications(self):
        with pytest.raises(DegenerateDesignError):
            OneWayDataset(values=np.ones((3, 1)))

    def test_one_way_rejects_non_finite(self):
        with pytest.raises(DomainError):
            OneWayDataset(values=np.array([[1.0, np.nan], [2.0, 2.0]]))

    def test_one_way_rejects_wrong_shape(self):
        with pytest.raises(DegenerateDesignError):
            OneWayDataset(values=np.ones(6))

    def test_label_count_must_match(self):
        with pytest.raises(DomainError):
            OneWayDataset(values=np.ones((2, 2)), levels=("only",))

    def test_two_way_needs_two_levels_per_factor(self):
        with pytest.raises(DegenerateDesignError):
            TwoWayDataset(values=np.ones((1, 2, 2)))
        with pytest.raises(DegenerateDesignError):
            TwoWayDataset(values=np.ones((2, 1, 2)))

    def test_values_are_read_only(self):
        d = OneWayDataset(values=np.ones((2, 2)))
        with pytest.raises(ValueError):
            d.values[0, 0] = 5.0

    def test_defensive_copy(self):
        raw = np.ones((2, 2))
        d = OneWayDataset(values=raw)
        raw[0, 0] = 99.0
        assert d.values[0, 0] == 1.0
