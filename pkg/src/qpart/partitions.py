"""Partitions: representation, enumeration, named families and statistics."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, Mapping, Optional, Tuple


class PartitionError(ValueError):
    pass


class InadmissibleError(PartitionError):
    """Raised when a 2-modular conjugate would not be a 2-modular diagram."""


class Partition(tuple):
    """A non-increasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise PartitionError(f"parts must be positive integers, got {p!r}")
            if i and parts[i - 1] < p:
                raise PartitionError(f"parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        """Build from parts in any order."""
        return cls(sorted(parts, reverse=True))

    @property
    def parts(self) -> Tuple[int, ...]:
        return tuple(self)

    @property
    def norm(self) -> int:
        return sum(self)

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")"

    __str__ = __repr__


def frequencies(pi) -> Dict[int, int]:
    """Map part value -> number of occurrences (absent parts omitted)."""
    freq: Dict[int, int] = {}
    for p in pi:
        freq[p] = freq.get(p, 0) + 1
    return freq


def from_frequencies(freq: Mapping[int, int]) -> Partition:
    parts = []
    for v in sorted(freq, reverse=True):
        f = freq[v]
        if f < 0:
            raise PartitionError(f"negative frequency for part {v}")
        parts.extend([v] * f)
    return Partition(parts)


_PAREN_RE = re.compile(r"^\(\s*(\d+(\s*,\s*\d+)*)?\s*,?\s*\)$")
_FREQ_RE = re.compile(r"^(\d+)\^(\d+)$")


def parse_partition(text: str) -> Partition:
    """Parse ``"(8,3,1)"``, ``"()"`` or frequency form ``"1^2 3^1"``."""
    s = text.strip()
    if s.startswith("("):
        if not _PAREN_RE.match(s):
            raise PartitionError(f"malformed partition {text!r}")
        body = s[1:-1].strip().rstrip(",")
        if not body:
            return Partition()
        return Partition.from_parts(int(x) for x in body.split(","))
    if not s:
        return Partition()
    freq: Dict[int, int] = {}
    for tok in s.split():
        m = _FREQ_RE.match(tok)
        if not m:
            raise PartitionError(f"malformed frequency token {tok!r} in {text!r}")
        v, f = int(m.group(1)), int(m.group(2))
        if v < 1:
            raise PartitionError(f"part values must be positive, got {v}")
        freq[v] = freq.get(v, 0) + f
    return from_frequencies(freq)


def enumerate_partitions(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Yield the partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise PartitionError(f"n must be non-negative, got {n}")
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield Partition()
        return
    parts = []

    def rec(remaining, cap):
        if remaining == 0:
            yield tuple.__new__(Partition, parts)
            return
        for first in range(min(cap, remaining), 0, -1):
            parts.append(first)
            yield from rec(remaining - first, first)
            parts.pop()

    yield from rec(n, max_part)


@lru_cache(maxsize=None)
def partitions_of(n: int) -> Tuple[Partition, ...]:
    """Materialized, cached :func:`enumerate_partitions`."""
    return tuple(enumerate_partitions(n))


# --- statistics -----------------------------------------------------------


@dataclass(frozen=True)
class PartitionStats:
    nu: int
    nu_d: int
    nu_de: int
    smallest_missing: int
    smallest_missing_odd: int


def smallest_missing(pi, odd_only: bool = False) -> int:
    present = set(pi)
    m = 1
    step = 2 if odd_only else 1
    while m in present:
        m += step
    return m


def stats(pi) -> PartitionStats:
    distinct = set(pi)
    return PartitionStats(
        nu=len(pi),
        nu_d=len(distinct),
        nu_de=sum(1 for v in distinct if v % 2 == 0),
        smallest_missing=smallest_missing(pi),
        smallest_missing_odd=smallest_missing(pi, odd_only=True),
    )


def mu_odd_ge(pi, n: int) -> int:
    """Number of distinct odd parts that are >= n."""
    if n < 1:
        raise PartitionError(f"n must be >= 1, got {n}")
    return sum(1 for v in set(pi) if v % 2 == 1 and v >= n)


# --- conjugations ---------------------------------------------------------


def conjugate(pi) -> Partition:
    if not pi:
        return Partition()
    return tuple.__new__(
        Partition, [sum(1 for p in pi if p > c) for c in range(pi[0])]
    )


def has_distinct_odd_parts(pi) -> bool:
    seen = set()
    for p in pi:
        if p % 2:
            if p in seen:
                return False
            seen.add(p)
    return True


def mod2_conjugate(pi) -> Partition:
    """Transpose of the 2-modular Ferrers diagram.

    Row i holds ceil(part/2) boxes labelled 2, the last one relabelled 1 for odd
    parts.  Column c then sums to 2*(its length) minus one for the unique row
    ending in a 1 there; uniqueness is exactly the distinct-odd-parts condition.
    """
    if not has_distinct_odd_parts(pi):
        reps = sorted({p for p in pi if p % 2 and list(pi).count(p) > 1}, reverse=True)
        raise InadmissibleError(
            f"{Partition(pi)} repeats odd part(s) {reps}: its 2-modular conjugate "
            "would have a row with two boxes labelled 1"
        )
    if not pi:
        return Partition()
    widths = [(p + 1) // 2 for p in pi]
    odd = set(p for p in pi if p % 2)
    cols = []
    for c in range(1, widths[0] + 1):
        length = sum(1 for w in widths if w >= c)
        cols.append(2 * length - (1 if (2 * c - 1) in odd else 0))
    return Partition(cols)


# --- named families -------------------------------------------------------


def _gaps_at_least(pi, d: int) -> bool:
    return all(pi[i] - pi[i + 1] >= d for i in range(len(pi) - 1))


def is_distinct(pi) -> bool:
    return _gaps_at_least(pi, 1)


def is_rr(pi) -> bool:
    return _gaps_at_least(pi, 2)


def _is_gg(pi, i: int) -> bool:
    if pi and pi[-1] < 2 * i - 1:
        return False
    for k in range(len(pi) - 1):
        gap = pi[k] - pi[k + 1]
        if gap < 2 or (gap == 2 and pi[k] % 2 == 0):
            return False
    return True


def is_gg1(pi) -> bool:
    return _is_gg(pi, 1)


def is_gg2(pi) -> bool:
    return _is_gg(pi, 2)


def is_p_do(pi) -> bool:
    return has_distinct_odd_parts(pi)


def is_p_rdo(pi) -> bool:
    """Distinct odd parts, no 1s, and a prescribed start when 2 is a part.

    With 2 present, either the smallest odd part is 4j-1 and every even below it
    occurs, or 2,4,..,4j all occur while 4j+2 and every odd below 4j+3 are absent.
    """
    if not has_distinct_odd_parts(pi):
        return False
    if pi and pi[-1] == 1:
        return False
    present = set(pi)
    if 2 not in present:
        return True
    odds = [p for p in present if p % 2]
    m = min(odds) if odds else None
    if m is not None and m % 4 == 3 and all(e in present for e in range(2, m, 2)):
        return True
    run = 0
    while 2 * (run + 1) in present:
        run += 1
    top = 2 * run  # 2..top all present, top+2 absent
    return top % 4 == 0 and (m is None or m > top + 2)


def is_in_a(pi) -> bool:
    freq = frequencies(pi)
    m = smallest_missing(pi)
    if m % 2 == 0 or (2 * m) in freq:
        return False
    for v, f in freq.items():
        if v < m:
            if v % 2 == 0 and f < 2:
                return False
            if v % 2 == 1 and f > 2:
                return False
        elif v % 2 == 1 and f != 1:
            return False
    return True


def is_p_dom(pi) -> bool:
    return has_distinct_odd_parts(pi) and smallest_missing(pi) % 2 == 1


def is_u_ic(pi) -> bool:
    freq = frequencies(pi)
    j = (smallest_missing(pi, odd_only=True) - 1) // 2
    for v in range(1, j + 1):
        need = 1 if v % 2 == 0 else 2
        if freq.get(v, 0) < need:
            return False
    return True


def _residues_mod8(residues):
    res = frozenset(r % 8 for r in residues)
    return lambda pi: all(p % 8 in res for p in pi)


@dataclass(frozen=True)
class SetPredicate:
    """A named partition family; call it on a partition to test membership."""

    name: str
    test: Callable = field(compare=False, repr=False)
    param: Optional[int] = None
    description: str = field(default="", compare=False)

    def __call__(self, pi) -> bool:
        return self.test(pi)

    @property
    def key(self) -> str:
        return self.name if self.param is None else f"{self.name}({self.param})"


def U_n(n: int) -> SetPredicate:
    """Partitions with largest part <= n."""
    if n < 0:
        raise PartitionError(f"n must be non-negative, got {n}")
    return SetPredicate("U_n", lambda pi: not pi or pi[0] <= n, n, "largest part <= n")


SETS: Dict[str, SetPredicate] = {
    p.name: p
    for p in [
        SetPredicate("U", lambda pi: True, description="all partitions"),
        SetPredicate("D", is_distinct, description="distinct parts"),
        SetPredicate("RR", is_rr, description="gaps between parts >= 2"),
        SetPredicate("GG1", is_gg1, description="gaps >= 2, no two consecutive evens"),
        SetPredicate("GG2", is_gg2, description="GG1 with all parts >= 3"),
        SetPredicate("P_do", is_p_do, description="distinct odd parts"),
        SetPredicate("P_rdo", is_p_rdo, description="restricted distinct odd parts"),
        SetPredicate("A", is_in_a, description="first missing part odd, conditions on multiplicities"),
        SetPredicate("P_dom", is_p_dom, description="distinct odd parts, first missing part odd"),
        SetPredicate("U_ic", is_u_ic, description="initial conditions below the first missing odd"),
        SetPredicate("C8_1", _residues_mod8([1, 7, 4]), description="parts = 1, 4, 7 (mod 8)"),
        SetPredicate("C8_2", _residues_mod8([3, 5, 4]), description="parts = 3, 4, 5 (mod 8)"),
    ]
}


def get_set(name: str) -> SetPredicate:
    try:
        return SETS[name]
    except KeyError:
        m = re.fullmatch(r"U_n\((\d+)\)", name)
        if m:
            return U_n(int(m.group(1)))
        raise KeyError(f"unknown set {name!r}; known: {', '.join(SETS)}") from None


def is_in(pred, pi) -> bool:
    if isinstance(pred, str):
        pred = get_set(pred)
    return bool(pred(pi))


def members(pred, n: int) -> Iterator[Partition]:
    if isinstance(pred, str):
        pred = get_set(pred)
    return (pi for pi in partitions_of(n) if pred(pi))


def count_in(pred, n: int) -> int:
    return sum(1 for _ in members(pred, n))
