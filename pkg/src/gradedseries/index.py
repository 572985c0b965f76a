"""N-graded small categories of indices.

An index category has a partial associative composition, one neutral
element of order 0 and an additive grading ``ord``.  Composition returns
``None`` when undefined; series multiplication treats that as a zero
product, never as an error.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Hashable, Iterator

from .errors import InfiniteDecomposition


class GradedIndexCategory(ABC):
    """Abstract contract for index categories.

    Concrete categories must be immutable and compare by value.
    """

    #: Largest order for which :meth:`elements` can enumerate, ``None`` if unbounded.
    max_order: int | None = None

    @property
    @abstractmethod
    def name(self) -> str: ...

    @property
    @abstractmethod
    def neutral(self) -> Hashable:
        """The neutral element; it has order 0."""

    @property
    def neutrals(self) -> tuple[Hashable, ...]:
        return (self.neutral,)

    @abstractmethod
    def compose(self, i: Hashable, j: Hashable) -> Hashable | None:
        """Return ``i * j`` or ``None`` when the composite does not exist."""

    @abstractmethod
    def ord(self, i: Hashable) -> int: ...

    @abstractmethod
    def sort_key(self, i: Hashable) -> Any:
        """Total-order key; must begin with ``ord(i)``."""

    @abstractmethod
    def elements(self, max_ord: int) -> Iterator[Hashable]:
        """Enumerate every index of order <= ``max_ord`` in canonical order."""

    def generators(self) -> tuple[Hashable, ...]:
        return ()

    def contains(self, i: Hashable) -> bool:
        return True

    def decompositions(self, k: Hashable, max_ord: int | None = None) -> list[tuple[Hashable, Hashable]]:
        """All ordered pairs ``(i, j)`` with ``i * j == k``.

        The default scans the finite enumeration of indices of order at most
        ``ord(k)``; subclasses override it with a direct construction.
        """
        n = self.ord(k)
        if max_ord is not None and n > max_ord:
            raise ValueError(f"index of order {n} exceeds max_ord={max_ord}")
        self._certify(n)
        by_order: dict[int, list[Hashable]] = {}
        for e in self.elements(n):
            by_order.setdefault(self.ord(e), []).append(e)
        out = []
        for oi in range(n + 1):
            for i in by_order.get(oi, ()):
                for j in by_order.get(n - oi, ()):
                    if self.compose(i, j) == k:
                        out.append((i, j))
        return out

    def _certify(self, n: int) -> None:
        if self.max_order is not None and n > self.max_order:
            raise InfiniteDecomposition(
                f"{self.name} is only enumerated up to order {self.max_order}, asked for {n}"
            )

    @abstractmethod
    def index_to_json(self, i: Hashable) -> Any: ...

    @abstractmethod
    def index_from_json(self, obj: Any) -> Hashable: ...

    def format_index(self, i: Hashable) -> str:
        return str(i)


@dataclass(frozen=True)
class NaturalNumbers(GradedIndexCategory):
    """The monoid (N, +) graded by the identity; indexes powers of a formal parameter."""

    symbol: str = "h"

    @property
    def name(self) -> str:
        return "nat"

    @property
    def neutral(self) -> int:
        return 0

    def compose(self, i: int, j: int) -> int:
        return i + j

    def ord(self, i: int) -> int:
        return i

    def sort_key(self, i: int) -> tuple[int]:
        return (i,)

    def elements(self, max_ord: int) -> Iterator[int]:
        return iter(range(max_ord + 1))

    def generators(self) -> tuple[int]:
        return (1,)

    def contains(self, i: Any) -> bool:
        return isinstance(i, int) and not isinstance(i, bool) and i >= 0

    def decompositions(self, k: int, max_ord: int | None = None) -> list[tuple[int, int]]:
        if max_ord is not None and k > max_ord:
            raise ValueError(f"index of order {k} exceeds max_ord={max_ord}")
        return [(i, k - i) for i in range(k + 1)]

    def index_to_json(self, i: int) -> int:
        return i

    def index_from_json(self, obj: Any) -> int:
        if not self.contains(obj):
            raise ValueError(f"not a natural number index: {obj!r}")
        return obj

    def format_index(self, i: int) -> str:
        if i == 0:
            return "1"
        return self.symbol if i == 1 else f"{self.symbol}^{i}"


_DEFAULT_LETTERS = ("x", "y", "z")


@dataclass(frozen=True)
class FreeMonoid(GradedIndexCategory):
    """Words over the alphabet ``0..d-1``, composed by concatenation.

    Indices are tuples of letter ids; the empty tuple is neutral and the
    order of a word is its length.
    """

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("alphabet must be nonempty")

    @property
    def name(self) -> str:
        return f"word({self.d})"

    @property
    def neutral(self) -> tuple[int, ...]:
        return ()

    def compose(self, i: tuple[int, ...], j: tuple[int, ...]) -> tuple[int, ...]:
        return i + j

    def ord(self, i: tuple[int, ...]) -> int:
        return len(i)

    def sort_key(self, i: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        return (len(i), i)

    def elements(self, max_ord: int) -> Iterator[tuple[int, ...]]:
        for n in range(max_ord + 1):
            yield from itertools.product(range(self.d), repeat=n)

    def generators(self) -> tuple[tuple[int], ...]:
        return tuple((a,) for a in range(self.d))

    def contains(self, i: Any) -> bool:
        return isinstance(i, tuple) and all(isinstance(a, int) and 0 <= a < self.d for a in i)

    def decompositions(self, k, max_ord=None):
        if max_ord is not None and len(k) > max_ord:
            raise ValueError(f"index of order {len(k)} exceeds max_ord={max_ord}")
        return [(k[:s], k[s:]) for s in range(len(k) + 1)]

    def letter_names(self) -> tuple[str, ...]:
        if self.d <= len(_DEFAULT_LETTERS):
            return _DEFAULT_LETTERS[: self.d]
        return tuple(f"x{a + 1}" for a in range(self.d))

    def index_to_json(self, i: tuple[int, ...]) -> list[int]:
        return list(i)

    def index_from_json(self, obj: Any) -> tuple[int, ...]:
        if not isinstance(obj, list):
            raise ValueError(f"word index must be an array, got {obj!r}")
        w = tuple(obj)
        if not self.contains(w) or any(isinstance(a, bool) for a in w):
            raise ValueError(f"letter outside alphabet of size {self.d}: {obj!r}")
        return w

    def format_index(self, i: tuple[int, ...]) -> str:
        if not i:
            return "1"
        names = self.letter_names()
        return "⊗".join(names[a] for a in i)


def category_from_name(name: str) -> GradedIndexCategory:
    """Rebuild a self-describing category from its serialized name."""
    if name == "nat":
        return NaturalNumbers()
    if name.startswith("word(") and name.endswith(")"):
        return FreeMonoid(int(name[5:-1]))
    raise ValueError(f"category {name!r} cannot be rebuilt from its name alone")
