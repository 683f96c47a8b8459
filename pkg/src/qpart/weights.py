"""Partition weights and weighted generating functions.

Weights are exact integers.  Every weight maps the empty partition to 1.
Where a weight is built from half-differences of parts, a factor that is not a
positive integer makes the whole weight 0; this is what lets a sum over a
larger family reproduce the sum over the family the weight was designed for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple

from .partitions import SetPredicate, frequencies, get_set, mu_odd_ge, partitions_of, smallest_missing, stats
from .qseries import QSeries


def delta_even(n: int) -> int:
    """1 if n is even (0 counts as even), else 0."""
    return 1 if n % 2 == 0 else 0


def delta_odd(n: int) -> int:
    return 1 - delta_even(n)


def chi(statement: bool) -> int:
    return 1 if statement else 0


def _half(x: int) -> int:
    if x <= 0 or x % 2:
        return 0
    return x // 2


def _gg_factor(a: int, b: int) -> int:
    return _half(a - b - delta_even(a) - delta_even(b))


def omega(pi) -> int:
    """Smallest part times the product of (gap - 1) over consecutive parts."""
    if not pi:
        return 1
    w = pi[-1]
    for i in range(len(pi) - 1):
        w *= pi[i] - pi[i + 1] - 1
    return w


def omega1(pi) -> int:
    """Number of colorations of a GG1 partition from inserting even-part columns."""
    if not pi:
        return 1
    w = _half(pi[-1] + delta_odd(pi[-1]))
    for i in range(len(pi) - 1):
        if not w:
            return 0
        w *= _gg_factor(pi[i], pi[i + 1])
    return w


def omega2(pi) -> int:
    w = 1
    for i in range(len(pi)):
        nxt = pi[i + 1] if i + 1 < len(pi) else 0
        w *= _gg_factor(pi[i], nxt)
        if not w:
            return 0
    return w


def wt1_tilde(pi) -> int:
    """prod (2*l_i - 2*l_{i+1} - 1) with the part after the last one taken as -1/2."""
    if not pi:
        return 1
    w = 2 * pi[-1]
    for i in range(len(pi) - 1):
        w *= 2 * pi[i] - 2 * pi[i + 1] - 1
    return w


def wt2_tilde(pi) -> int:
    """prod (2*l_i - 2*l_{i+1} - 1) with the part after the last one taken as 0."""
    w = 1
    for i in range(len(pi)):
        nxt = pi[i + 1] if i + 1 < len(pi) else 0
        w *= 2 * pi[i] - 2 * nxt - 1
    return w


def w1_prime(pi) -> int:
    return 2 ** len(set(pi))


def w2_prime(pi) -> int:
    s = stats(pi)
    extra = sum(2 ** mu_odd_ge(pi, v) for v in set(pi) if v % 4 == 3)
    return 2 ** s.nu_de * (1 + extra)


def w2_star(pi) -> int:
    if not pi:
        return 1
    f = frequencies(pi)
    largest = pi[0]

    def fr(i):
        return f.get(i, 0)

    total = (1 - chi(fr(1) >= 2)) * 2 ** sum(1 for n in f if n >= 2)
    for j in range(1, largest + 1):
        if not (fr(2 * j + 1) <= 1 and fr(j) >= 2):
            continue
        term = 2 ** chi(fr(j) >= 3)
        for i in range(1, j):
            if fr(i) < 3:
                term = 0
                break
            term *= 2 ** chi(fr(i) >= 4)
        if not term:
            continue
        term *= 2 ** sum(1 for n in f if n > j and n != 2 * j + 1)
        total += term
    return total


def tau(pi) -> int:
    """Distinct even parts larger than the smallest odd non-part."""
    m = smallest_missing(pi, odd_only=True)
    return sum(1 for v in set(pi) if v % 2 == 0 and v > m)


def two_tau(pi) -> int:
    return 2 ** tau(pi)


def unit(pi) -> int:
    return 1


@dataclass(frozen=True)
class WeightFn:
    name: str
    fn: Callable = field(compare=False, repr=False)
    params: Tuple[int, ...] = ()

    def __call__(self, pi) -> int:
        return self.fn(pi)

    @property
    def key(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({','.join(map(str, self.params))})"


def ab_weight(a: int, b: int) -> WeightFn:
    """a^(number of parts) * b^(number of distinct parts)."""

    def fn(pi):
        return a ** len(pi) * b ** len(set(pi))

    return WeightFn("ab", fn, (a, b))


WEIGHTS: Dict[str, WeightFn] = {
    w.name: w
    for w in [
        WeightFn("omega", omega),
        WeightFn("omega1", omega1),
        WeightFn("omega2", omega2),
        WeightFn("wt1_tilde", wt1_tilde),
        WeightFn("wt2_tilde", wt2_tilde),
        WeightFn("w1_prime", w1_prime),
        WeightFn("w2_prime", w2_prime),
        WeightFn("w2_star", w2_star),
        WeightFn("two_tau", two_tau),
        WeightFn("unit", unit),
    ]
}


def get_weight(name: str) -> WeightFn:
    try:
        return WEIGHTS[name]
    except KeyError:
        raise KeyError(f"unknown weight {name!r}; known: {', '.join(WEIGHTS)}") from None


def _resolve(pred, w):
    if isinstance(pred, str):
        pred = get_set(pred)
    if isinstance(w, str):
        w = get_weight(w)
    return pred, w


_cache: Dict[tuple, int] = {}


def weighted_sum(pred, w, n: int) -> int:
    """Sum of w(pi) over the partitions of n in pred."""
    pred, w = _resolve(pred, w)
    key = (pred.key, w.key, n)
    hit = _cache.get(key)
    if hit is None:
        hit = sum(w(pi) for pi in partitions_of(n) if pred(pi))
        _cache[key] = hit
    return hit


def weighted_series(pred, w, order: int) -> QSeries:
    pred, w = _resolve(pred, w)
    return QSeries([weighted_sum(pred, w, n) for n in range(order + 1)], order)


def clear_cache() -> None:
    _cache.clear()
