"""
Наборы предметов и распределения

Набор хранится как битовая маска int: бит j означает предмет j.
Лексикографический порядок наборов — возрастание маски.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

from FairSmith.errors import InputError

Bundle = int


def full_bundle(m: int) -> Bundle:
    return (1 << m) - 1


def bundle_items(bundle: Bundle) -> Tuple[int, ...]:
    """Отсортированный список индексов предметов набора"""
    items = []
    j = 0
    while bundle:
        if bundle & 1:
            items.append(j)
        bundle >>= 1
        j += 1
    return tuple(items)


def bundle_size(bundle: Bundle) -> int:
    return bin(bundle).count('1')


def bundle_from_items(items: Iterable[int], m: int, location: str = None) -> Bundle:
    """
    Строит маску из списка индексов

    :param items: Индексы предметов
    :param m: Число предметов
    :param location: JSON-путь для сообщения об ошибке
    :return: Битовая маска
    """
    mask = 0
    for item in items:
        if isinstance(item, bool) or not isinstance(item, int) or not 0 <= item < m:
            raise InputError(f"item index {item!r} out of range 0..{m - 1}", location)
        if mask >> item & 1:
            raise InputError(f"item {item} listed twice", location)
        mask |= 1 << item
    return mask


def iter_bundles(m: int) -> range:
    """Все 2^m наборов в лексикографическом порядке"""
    return range(1 << m)


def iter_submasks(mask: Bundle) -> Iterator[Bundle]:
    """Подмножества mask по возрастанию маски"""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@dataclass(frozen=True)
class Allocation:
    """
    Упорядоченное разбиение всех m предметов на n наборов (без выбрасывания)
    """
    bundles: Tuple[Bundle, ...]
    m: int

    def __post_init__(self):
        seen = 0
        for bundle in self.bundles:
            if bundle < 0 or bundle >> self.m:
                raise InputError(f"bundle {bundle_items(bundle)} exceeds {self.m} items")
            if seen & bundle:
                raise InputError("allocation bundles overlap")
            seen |= bundle
        if seen != full_bundle(self.m):
            missing = bundle_items(full_bundle(self.m) & ~seen)
            raise InputError(f"allocation leaves items {list(missing)} unallocated")

    @property
    def n(self) -> int:
        return len(self.bundles)

    def bundle(self, agent: int) -> Bundle:
        return self.bundles[agent]

    def items(self, agent: int) -> Tuple[int, ...]:
        return bundle_items(self.bundles[agent])

    def to_lists(self) -> List[List[int]]:
        return [list(bundle_items(bundle)) for bundle in self.bundles]

    @classmethod
    def from_items(cls, items: Sequence[Iterable[int]], m: int) -> 'Allocation':
        return cls(tuple(bundle_from_items(bundle, m) for bundle in items), m)

    @classmethod
    def two_way(cls, first: Bundle, m: int) -> 'Allocation':
        """Разбиение (first, M \\ first) для двух агентов"""
        return cls((first, full_bundle(m) & ~first), m)

    @classmethod
    def everything_to(cls, agent: int, n: int, m: int) -> 'Allocation':
        bundles = [0] * n
        bundles[agent] = full_bundle(m)
        return cls(tuple(bundles), m)
