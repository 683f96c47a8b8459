"""Worked examples: published partition lists and weights, and their regeneration.

``regenerate(k)`` rebuilds table k from enumeration and the weight functions
and compares it with the published rows in ``PUBLISHED``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .partitions import Partition, members
from .weights import get_weight


def _p(*parts):
    return Partition(parts)


# published rows per column: (partition, published weight or None for unweighted columns)
PUBLISHED: Dict[int, dict] = {
    3: {
        "title": "GG1 with omega1 against P_do, |pi| = 12",
        "n": 12,
        "columns": [
            ("GG1", "omega1", [
                (_p(12), 6), (_p(11, 1), 5), (_p(10, 2), 3), (_p(9, 3), 6),
                (_p(8, 4), 2), (_p(8, 3, 1), 2), (_p(7, 5), 3), (_p(7, 4, 1), 1),
            ]),
            ("P_do", "unit", [
                (_p(12), None), (_p(11, 1), None), (_p(10, 2), None), (_p(9, 3), None),
                (_p(9, 2, 1), None), (_p(8, 4), None), (_p(8, 3, 1), None), (_p(8, 2, 2), None),
                (_p(7, 5), None), (_p(7, 4, 1), None), (_p(7, 3, 2), None), (_p(7, 2, 2, 1), None),
                (_p(6, 6), None), (_p(6, 5, 1), None), (_p(6, 4, 2), None), (_p(6, 3, 2, 1), None),
                (_p(6, 2, 2, 2), None), (_p(5, 4, 3), None), (_p(5, 4, 2, 1), None),
                (_p(5, 3, 2, 2), None), (_p(5, 2, 2, 2, 1), None), (_p(4, 4, 4), None),
                (_p(4, 4, 3, 1), None), (_p(4, 4, 2, 2), None), (_p(4, 3, 2, 2, 1), None),
                (_p(4, 2, 2, 2, 2), None), (_p(3, 2, 2, 2, 2, 1), None), (_p(2, 2, 2, 2, 2, 2), None),
            ]),
        ],
        "totals": 28,
    },
    4: {
        "title": "GG2 with omega2 against P_rdo and A, |pi| = 12",
        "n": 12,
        "columns": [
            ("GG2", "omega2", [(_p(12), 5), (_p(9, 3), 3), (_p(8, 4), 1), (_p(7, 5), 2)]),
            ("P_rdo", "unit", [
                (_p(12), None), (_p(9, 3), None), (_p(8, 4), None), (_p(7, 5), None),
                (_p(7, 3, 2), None), (_p(6, 6), None), (_p(5, 4, 3), None), (_p(5, 3, 2, 2), None),
                (_p(4, 4, 4), None), (_p(4, 4, 2, 2), None), (_p(4, 2, 2, 2, 2), None),
            ]),
            ("A", "unit", [
                (_p(12), None), (_p(9, 3), None), (_p(8, 4), None), (_p(7, 5), None),
                (_p(7, 2, 2, 1), None), (_p(6, 6), None), (_p(5, 4, 3), None),
                (_p(5, 2, 2, 2, 1), None), (_p(4, 4, 4), None), (_p(4, 2, 2, 2, 1, 1), None),
                (_p(2, 2, 2, 2, 2, 1, 1), None),
            ]),
        ],
        "totals": 11,
    },
    5: {
        "title": "U with w2_prime against D with wt2_tilde, |pi| = 10",
        "n": 10,
        "columns": [
            ("U", "w2_prime", [
                (_p(10), 2), (_p(9, 1), 1), (_p(8, 2), 4), (_p(8, 1, 1), 2), (_p(7, 3), 7),
                (_p(7, 2, 1), 6), (_p(7, 1, 1, 1), 3), (_p(6, 4), 4), (_p(6, 3, 1), 6),
                (_p(6, 2, 2), 4), (_p(6, 2, 1, 1), 4), (_p(6, 1, 1, 1, 1), 2), (_p(5, 5), 1),
                (_p(5, 4, 1), 2), (_p(5, 3, 2), 10), (_p(5, 3, 1, 1), 5), (_p(5, 2, 2, 1), 2),
                (_p(5, 2, 1, 1, 1), 2), (_p(5, 1, 1, 1, 1, 1), 1), (_p(4, 4, 2), 4),
                (_p(4, 4, 1, 1), 2), (_p(4, 3, 3), 6), (_p(4, 3, 2, 1), 12), (_p(4, 3, 1, 1, 1), 6),
                (_p(4, 2, 2, 2), 4), (_p(4, 2, 2, 1, 1), 4), (_p(4, 2, 1, 1, 1, 1), 4),
                (_p(4, 1, 1, 1, 1, 1, 1), 2), (_p(3, 3, 3, 1), 3), (_p(3, 3, 2, 2), 6),
                (_p(3, 3, 2, 1, 1), 6), (_p(3, 3, 1, 1, 1, 1), 3), (_p(3, 2, 2, 2, 1), 6),
                (_p(3, 2, 2, 1, 1, 1), 6), (_p(3, 2, 1, 1, 1, 1, 1), 6), (_p(3, 1, 1, 1, 1, 1, 1, 1), 3),
                (_p(2, 2, 2, 2, 2), 2), (_p(2, 2, 2, 2, 1, 1), 2), (_p(2, 2, 2, 1, 1, 1, 1), 2),
                (_p(2, 2, 1, 1, 1, 1, 1, 1), 2), (_p(2, 1, 1, 1, 1, 1, 1, 1, 1), 2),
                (_p(1, 1, 1, 1, 1, 1, 1, 1, 1, 1), 1),
            ]),
            # the published column lists nine of the ten distinct partitions of 10
            ("D", "wt2_tilde", [
                (_p(10), 19), (_p(9, 1), 15), (_p(8, 2), 33), (_p(7, 3), 35), (_p(6, 4), 21),
                (_p(6, 3, 1), 15), (_p(5, 4, 1), 5), (_p(5, 3, 2), 9), (_p(4, 3, 2, 1), 1),
            ]),
        ],
        "totals": 162,
    },
    6: {
        "title": "U with w2_star, |pi| = 10",
        "n": 10,
        "columns": [
            ("U", "w2_star", [
                (_p(10), 2), (_p(9, 1), 2), (_p(8, 2), 4), (_p(8, 1, 1), 2), (_p(7, 3), 4),
                (_p(7, 2, 1), 4), (_p(7, 1, 1, 1), 4), (_p(6, 4), 4), (_p(6, 3, 1), 4),
                (_p(6, 2, 2), 4), (_p(6, 2, 1, 1), 4), (_p(6, 1, 1, 1, 1), 4), (_p(5, 5), 2),
                (_p(5, 4, 1), 4), (_p(5, 3, 2), 8), (_p(5, 3, 1, 1), 2), (_p(5, 2, 2, 1), 4),
                (_p(5, 2, 1, 1, 1), 8), (_p(5, 1, 1, 1, 1, 1), 4), (_p(4, 4, 2), 4),
                (_p(4, 4, 1, 1), 2), (_p(4, 3, 3), 4), (_p(4, 3, 2, 1), 8), (_p(4, 3, 1, 1, 1), 4),
                (_p(4, 2, 2, 2), 4), (_p(4, 2, 2, 1, 1), 4), (_p(4, 2, 1, 1, 1, 1), 8),
                (_p(4, 1, 1, 1, 1, 1, 1), 4), (_p(3, 3, 3, 1), 2), (_p(3, 3, 2, 2), 4),
                (_p(3, 3, 2, 1, 1), 0), (_p(3, 3, 1, 1, 1, 1), 0), (_p(3, 2, 2, 2, 1), 4),
                (_p(3, 2, 2, 1, 1, 1), 6), (_p(3, 2, 1, 1, 1, 1, 1), 4), (_p(3, 1, 1, 1, 1, 1, 1, 1), 2),
                (_p(2, 2, 2, 2, 2), 2), (_p(2, 2, 2, 2, 1, 1), 2), (_p(2, 2, 2, 1, 1, 1, 1), 8),
                (_p(2, 2, 1, 1, 1, 1, 1, 1), 6), (_p(2, 1, 1, 1, 1, 1, 1, 1, 1), 4),
                (_p(1, 1, 1, 1, 1, 1, 1, 1, 1, 1), 2),
            ]),
        ],
        "totals": 162,
    },
    7: {
        "title": "P_dom with two_tau against U_ic, |pi| = 8",
        "n": 8,
        "columns": [
            ("P_dom", "two_tau", [
                (_p(8), 2), (_p(6, 2), 4), (_p(5, 3), 1), (_p(5, 2, 1), 1), (_p(4, 4), 2),
                (_p(4, 2, 2), 4), (_p(2, 2, 2, 2), 2),
            ]),
            ("U_ic", "unit", [
                (_p(8), None), (_p(6, 2), None), (_p(6, 1, 1), None), (_p(5, 3), None),
                (_p(5, 1, 1, 1), None), (_p(4, 4), None), (_p(4, 2, 2), None), (_p(4, 2, 1, 1), None),
                (_p(4, 1, 1, 1, 1), None), (_p(3, 3, 2), None), (_p(3, 2, 1, 1, 1), None),
                (_p(2, 2, 2, 2), None), (_p(2, 2, 2, 1, 1), None), (_p(2, 2, 1, 1, 1, 1), None),
                (_p(2, 1, 1, 1, 1, 1, 1), None), (_p(1, 1, 1, 1, 1, 1, 1, 1), None),
            ]),
        ],
        "totals": 16,
    },
}


@dataclass
class Row:
    partition: Partition
    weight: int
    published: Optional[int]
    in_published: bool

    @property
    def note(self) -> str:
        if not self.in_published:
            return "missing from published table"
        if self.published is not None and self.published != self.weight:
            return f"published weight {self.published}"
        return ""


@dataclass
class Column:
    set_name: str
    weight_name: str
    rows: List[Row]
    total: int
    extra_published: List[Partition] = field(default_factory=list)

    @property
    def notes(self) -> List[str]:
        out = [f"{r.partition}: {r.note}" for r in self.rows if r.note]
        out += [f"{p}: published but not a member" for p in self.extra_published]
        return out


@dataclass
class Table:
    number: int
    title: str
    n: int
    columns: List[Column]
    expected_total: int

    @property
    def ok(self) -> bool:
        return all(c.total == self.expected_total for c in self.columns)

    def divergences(self) -> List[str]:
        out = []
        for c in self.columns:
            if c.total != self.expected_total:
                out.append(
                    f"{c.set_name}/{c.weight_name}: total {c.total} != expected {self.expected_total}"
                )
        return out


def regenerate(number: int) -> Table:
    if number not in PUBLISHED:
        raise KeyError(f"no such table {number}; available: {sorted(PUBLISHED)}")
    spec = PUBLISHED[number]
    n = spec["n"]
    columns = []
    for set_name, weight_name, rows in spec["columns"]:
        published = dict(rows)
        w = get_weight(weight_name)
        out_rows = []
        for pi in members(set_name, n):
            out_rows.append(Row(pi, w(pi), published.get(pi), pi in published))
        found = {r.partition for r in out_rows}
        extra = [p for p in published if p not in found]
        columns.append(
            Column(set_name, weight_name, out_rows, sum(r.weight for r in out_rows), extra)
        )
    return Table(number, spec["title"], n, columns, spec["totals"])
