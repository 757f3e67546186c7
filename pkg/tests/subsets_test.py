"""Test for subset tables."""
import pytest  # type: ignore
import logging

import numpy as np

from fh_toolkit.errors import SearchBoundExceeded
from fh_toolkit.subsets import SubsetTable, superset_min

from . import k4, path, triangle

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)


def test_superset_min() -> None:
    """Test superset_min()."""
    values = np.array([3, 1, 2, 5])
    assert superset_min(values, 2).tolist() == [1, 1, 2, 5]


def test_subset_table() -> None:
    """Test SubsetTable on the triangle."""
    table = SubsetTable(triangle())
    assert table.delta_of([]) == 0
    assert table.delta_of(["a"]) == 1
    assert table.delta_of(["a", "b"]) == 1
    assert table.delta_of(["a", "b", "c"]) == 0
    assert table.dim_of(["a"]) == 0
    assert not table.is_self_sufficient(["a", "b"])
    assert table.is_self_sufficient([])
    assert table.closure(["a"]) == {"a", "b", "c"}
    assert table.in_class()
    assert table.sizes.tolist() == [0, 1, 1, 2, 1, 2, 2, 3]


def test_subset_table_path() -> None:
    """Test SubsetTable on two overlapping 3-orbits."""
    table = SubsetTable(path())
    assert table.delta_of(["a", "b", "c", "d"]) == 2
    assert table.dim_of(["b", "c"]) == 2
    assert table.is_self_sufficient(["b", "c"])
    assert table.closure(["a", "b", "c"]) == {"a", "b", "c"}
    assert len(table.minimizers(["a", "b", "c"])) == 2
    assert table.subsets_with_delta_below(1) == [frozenset()]


def test_subset_table_bounds() -> None:
    """Test SubsetTable outside the class and beyond the bound."""
    assert not SubsetTable(k4()).in_class()
    with pytest.raises(SearchBoundExceeded):
        SubsetTable(path(), bound=3)
