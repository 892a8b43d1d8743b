from typing import Any, Dict, Hashable, Optional, Tuple, Callable
import functools


class OutcomeCache:
    """
    Кэш результатов чистых функций механизмов

    Ключ — (имя вызова, аргументы). Механизмы детерминированы, поэтому
    время жизни записей не ограничено; maxsize ограничивает только объём.
    """

    def __init__(self, maxsize: Optional[int] = None):
        self.cache: Dict[Tuple, Any] = {}
        self.maxsize = maxsize
        self.hits = 0
        self.misses = 0

    def _make_key(self, name: str, args: Tuple[Hashable, ...]) -> Tuple:
        return (name, args)

    def get(self, name: str, args: Tuple[Hashable, ...]) -> Tuple[bool, Any]:
        key = self._make_key(name, args)
        if key in self.cache:
            self.hits += 1
            return True, self.cache[key]
        self.misses += 1
        return False, None

    def set(self, name: str, args: Tuple[Hashable, ...], value: Any):
        if self.maxsize is not None and len(self.cache) >= self.maxsize:
            # вытесняем самую старую запись
            self.cache.pop(next(iter(self.cache)))
        self.cache[self._make_key(name, args)] = value

    def clear(self):
        self.cache.clear()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self.cache)


def outcome_cache(owner: Any, name: str) -> Optional[OutcomeCache]:
    """Кэш метода name объекта owner (None, если метод ещё не вызывался)"""
    return owner.__dict__.get('_outcome_caches', {}).get(name)


# Декоратор для кэширования шагов механизма на уровне объекта, свой кэш на каждый метод
def cache_outcome(maxsize: Optional[int] = None):
    def decorator(func: Callable):
        @functools.wraps(func)
        def wrapper(self, *args):
            caches = self.__dict__.setdefault('_outcome_caches', {})
            cache = caches.get(func.__name__)
            if cache is None:
                cache = OutcomeCache(maxsize=maxsize)
                caches[func.__name__] = cache
            found, result = cache.get(func.__name__, args)
            if found:
                return result
            result = func(self, *args)
            cache.set(func.__name__, args, result)
            return result
        return wrapper
    return decorator
