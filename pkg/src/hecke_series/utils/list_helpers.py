import logging
from collections import Counter
from typing import Any, Hashable, Iterable, List, TypeVar

from hecke_series.core.arith import GaussianRational, parse_scalar

log = logging.getLogger(__name__)
T = TypeVar("T")  # Generic type variable for list elements


class Utl:
    """Utility class containing static methods for common list operations."""

    @staticmethod
    def to_list(v: Any) -> list:
        """
        Ensures the input value is a list. If not, wraps it in a list.

        JSON bodies may send a single scalar where a parameter list is expected.
        """
        if isinstance(v, (list, tuple)):
            return list(v)
        return [v]

    @staticmethod
    def split_list(list_to_split: List[T], chunk_size: int) -> List[List[T]]:
        """
        Splits a list into smaller sublists (chunks) of a specified maximum size.

        Args:
            list_to_split: The list to be split.
            chunk_size: The maximum size of each chunk.

        Returns:
            A list of lists, where each inner list is a chunk of the original list.
            Returns an empty list if chunk_size is not positive.
        """
        if chunk_size <= 0:
            log.warning("chunk_size must be positive for split_list.")
            return []
        if not list_to_split:
            return []

        return [
            list_to_split[i : i + chunk_size]
            for i in range(0, len(list_to_split), chunk_size)
        ]

    @staticmethod
    def multiset_equal(first: Iterable[Hashable], second: Iterable[Hashable]) -> bool:
        """True iff both iterables hold the same elements with the same multiplicities."""
        return Counter(first) == Counter(second)

    @staticmethod
    def parse_scalar_list(text: str) -> List[GaussianRational]:
        """
        Parses a comma-separated scalar list such as ``"1,1/2,-3/4*i"``.

        An empty or all-whitespace string is the empty list.

        Raises:
            ScalarSyntaxError: If an item is not a valid scalar.
        """
        if not text or not text.strip():
            return []
        return [parse_scalar(item.strip()) for item in text.split(",")]
