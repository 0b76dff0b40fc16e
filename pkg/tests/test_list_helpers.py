import pytest

from hecke_series.core.arith import GaussianRational, ScalarSyntaxError
from hecke_series.utils.list_helpers import Utl


def test_to_list():
    assert Utl.to_list((1, 2)) == [1, 2]
    assert Utl.to_list("2") == ["2"]


def test_split_list():
    assert Utl.split_list(list(range(5)), 2) == [[0, 1], [2, 3], [4]]
    assert Utl.split_list([], 3) == []
    assert Utl.split_list([1], 0) == []


def test_multiset_equal():
    assert Utl.multiset_equal([1, 2, 2], [2, 1, 2])
    assert not Utl.multiset_equal([1, 2], [1, 2, 2])


def test_parse_scalar_list():
    assert Utl.parse_scalar_list("1, 1/2 ,-3/4*i") == [
        GaussianRational.of(1),
        GaussianRational.of("1/2"),
        GaussianRational.of("-3/4*i"),
    ]
    assert Utl.parse_scalar_list("") == []
    assert Utl.parse_scalar_list("   ") == []


def test_parse_scalar_list_rejects_bad_items():
    with pytest.raises(ScalarSyntaxError):
        Utl.parse_scalar_list("1,,2")
