"""Abstract finite graded poset and a bitset index over its elements."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Hashable, Sequence


class GradedPoset(ABC):
    """A finite graded poset with a rank function and a text encoding.

    Concrete posets are immutable and hashable so that derived indexes can
    be cached per poset.
    """

    @property
    @abstractmethod
    def height(self) -> int:
        """Rank of the poset (maximum element rank)."""

    @abstractmethod
    def elements(self) -> list:
        ...

    @abstractmethod
    def rank(self, x) -> int:
        ...

    @abstractmethod
    def leq(self, x, y) -> bool:
        ...

    @abstractmethod
    def encode(self, x) -> str:
        ...

    @abstractmethod
    def decode(self, s: str):
        ...

    @abstractmethod
    def layer_sizes(self) -> list[int]:
        ...

    @abstractmethod
    def describe(self) -> dict[str, Any]:
        """JSON description used by the family file format."""

    def size(self) -> int:
        return sum(self.layer_sizes())

    def layer(self, r: int) -> list:
        return [x for x in self.elements() if self.rank(x) == r]

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return x != y and (self.leq(x, y) or self.leq(y, x))

    def mid_distance(self, r: int) -> float:
        """|r - height/2|, the quantity centeredness is defined by."""
        return abs(r - self.height / 2)


@dataclass(frozen=True, eq=False)
class PosetIndex:
    """Elements sorted by encoding, with strict up/down sets as int bitsets.

    Bit ``i`` of every mask refers to ``elements[i]``.  Used by the
    compression engine and the exhaustive search, where |P| is small.
    """

    poset: GradedPoset
    elements: tuple
    codes: tuple[str, ...]
    position: dict
    ranks: tuple[int, ...]
    up: tuple[int, ...]
    down: tuple[int, ...]

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    def comp_mask(self, i: int) -> int:
        return self.up[i] | self.down[i]

    def mask_of(self, members) -> int:
        m = 0
        for x in members:
            m |= 1 << self.position[x]
        return m

    def members_of(self, mask: int) -> list:
        return [self.elements[i] for i in iter_bits(mask)]

    def layer_mask(self, r: int) -> int:
        m = 0
        for i, ri in enumerate(self.ranks):
            if ri == r:
                m |= 1 << i
        return m

    def comp_of_mask(self, mask: int) -> int:
        return sum((self.up[i] & mask).bit_count() for i in iter_bits(mask))


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=64)
def poset_index(poset: GradedPoset) -> PosetIndex:
    elems = poset.elements()
    codes = [poset.encode(x) for x in elems]
    order = sorted(range(len(elems)), key=lambda i: codes[i])
    elems = tuple(elems[i] for i in order)
    codes = tuple(codes[i] for i in order)
    up, down = _relation_masks(poset, elems)
    return PosetIndex(
        poset=poset,
        elements=elems,
        codes=codes,
        position={x: i for i, x in enumerate(elems)},
        ranks=tuple(poset.rank(x) for x in elems),
        up=tuple(up),
        down=tuple(down),
    )


def _relation_masks(poset: GradedPoset, elems: Sequence[Hashable]):
    fast = getattr(poset, "strict_order_matrix", None)
    if fast is not None:
        lt = fast(elems)
        up = [_bits_to_int(lt[i]) for i in range(len(elems))]
        down = [_bits_to_int(lt[:, i]) for i in range(len(elems))]
        return up, down
    n = len(elems)
    up = [0] * n
    down = [0] * n
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            if i != j and poset.leq(x, y):
                up[i] |= 1 << j
                down[j] |= 1 << i
    return up, down


def _bits_to_int(row) -> int:
    import numpy as np

    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
