"""Registry of weighted partition identities and the verification engine.

Each identity is a list of sides that should agree as formal power series.
A SERIES side is built from q-series arithmetic; an ENUM side is a weighted
count over an enumerated partition family.  The two kinds share no code path
beyond the QSeries container, so one cannot vouch for the other.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from . import partitions as P
from . import weights as W
from .qseries import INFINITE, QSeries, monomial, one, poch, scaled_pochhammer, sum_of_terms

SERIES = "SERIES"
ENUM = "ENUM"

OK = "OK"
MISMATCH = "MISMATCH"

ENUM_DEFAULT_ORDER = 30
SERIES_DEFAULT_ORDER = 80


class SideEvaluationError(RuntimeError):
    pass


@dataclass(frozen=True)
class SideExpr:
    kind: str
    label: str
    fn: Optional[Callable[[int], QSeries]] = field(default=None, compare=False, repr=False)
    pred: Optional[P.SetPredicate] = None
    weight: Optional[W.WeightFn] = None

    def evaluate(self, order: int) -> QSeries:
        if self.kind == ENUM:
            return W.weighted_series(self.pred, self.weight, order)
        return self.fn(order)

    def times(self, factor: Callable[[int], QSeries], label: str) -> "SideExpr":
        """A SERIES side equal to this side multiplied by ``factor(order)``."""
        return SideExpr(
            SERIES, f"{self.label} * {label}", lambda m: self.evaluate(m) * factor(m)
        )


def series(label: str, fn: Callable[[int], QSeries]) -> SideExpr:
    return SideExpr(SERIES, label, fn)


def enum(set_name, weight_name) -> SideExpr:
    pred = P.get_set(set_name) if isinstance(set_name, str) else set_name
    w = W.get_weight(weight_name) if isinstance(weight_name, str) else weight_name
    return SideExpr(ENUM, f"sum over {pred.key} of {w.key}(pi) q^|pi|", pred=pred, weight=w)


@dataclass(frozen=True)
class IdentitySpec:
    name: str
    sides: tuple
    default_order: int
    notes: str = ""

    def __post_init__(self):
        if len(self.sides) < 2:
            raise ValueError(f"identity {self.name!r} needs at least two sides")

    @property
    def has_enum(self) -> bool:
        return any(s.kind == ENUM for s in self.sides)

    def replace_side(self, i: int, side: SideExpr) -> "IdentitySpec":
        sides = list(self.sides)
        sides[i] = side
        return IdentitySpec(self.name, tuple(sides), self.default_order, self.notes)


def make_spec(name, sides, default_order=None, notes="") -> IdentitySpec:
    sides = tuple(sides)
    if default_order is None:
        has_enum = any(s.kind == ENUM for s in sides)
        default_order = ENUM_DEFAULT_ORDER if has_enum else SERIES_DEFAULT_ORDER
    return IdentitySpec(name, sides, default_order, notes)


@dataclass
class SideReport:
    label: str
    coefficient_at_bad: Optional[int] = None


@dataclass
class VerifyReport:
    name: str
    order: int
    verdict: str
    sides: List[SideReport]
    first_bad_exponent: Optional[int] = None
    millis: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict == OK

    def to_dict(self, timing: bool = True) -> dict:
        d = {"name": self.name, "order": self.order, "verdict": self.verdict}
        if self.first_bad_exponent is not None:
            d["first_bad_exponent"] = self.first_bad_exponent
        sides = []
        for s in self.sides:
            sd = {"label": s.label}
            if s.coefficient_at_bad is not None:
                sd["coefficient_at_bad"] = s.coefficient_at_bad
            sides.append(sd)
        d["sides"] = sides
        d["millis"] = round(self.millis, 3) if timing else 0
        return d


def verify(spec: IdentitySpec, order: Optional[int] = None) -> VerifyReport:
    if order is None:
        order = spec.default_order
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    t0 = time.perf_counter()
    values = []
    for side in spec.sides:
        try:
            v = side.evaluate(order)
        except Exception as exc:
            raise SideEvaluationError(f"{spec.name}: side {side.label!r}: {exc}") from exc
        if v.order != order:
            raise SideEvaluationError(
                f"{spec.name}: side {side.label!r} returned order {v.order}, expected {order}"
            )
        values.append(v)
    first_bad = None
    base = values[0].coeffs
    for v in values[1:]:
        for k, (a, b) in enumerate(zip(base, v.coeffs)):
            if a != b:
                if first_bad is None or k < first_bad:
                    first_bad = k
                break
    millis = (time.perf_counter() - t0) * 1000.0
    if first_bad is None:
        return VerifyReport(spec.name, order, OK, [SideReport(s.label) for s in spec.sides], None, millis)
    sides = [SideReport(s.label, v.coeffs[first_bad]) for s, v in zip(spec.sides, values)]
    return VerifyReport(spec.name, order, MISMATCH, sides, first_bad, millis)


def verify_all(
    order: Optional[int] = None,
    parallel: bool = False,
    specs: Optional[Sequence[IdentitySpec]] = None,
    max_workers: Optional[int] = None,
) -> List[VerifyReport]:
    """Verify every spec; ``order=None`` uses each spec's default order.

    Reports come back in registry order.  Exceptions from any spec propagate.
    """
    if specs is None:
        specs = builtin_registry()
    if not parallel:
        return [verify(s, order) for s in specs]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        futures = [pool.submit(verify, s, order) for s in specs]
        return [f.result() for f in futures]


# --- series building blocks -----------------------------------------------


def _q(e, m):
    return monomial(e, m)


def _sign(n):
    return -1 if n % 2 else 1


def _do_over_even(m):
    # (-q;q^2)_inf / (q^2;q^2)_inf
    return poch(-1, 1, 2, INFINITE, m) / poch(1, 2, 2, INFINITE, m)


def _overpartitions(m):
    # (-q;q)_inf / (q;q)_inf
    return poch(-1, 1, 1, INFINITE, m) / poch(1, 1, 1, INFINITE, m)


def _false_theta_3(m):
    return sum_of_terms(lambda j: _q(3 * j * j + 2 * j, m) * (1 - _q(2 * j + 1, m)), m)


def _false_theta_3_2(m):
    return sum_of_terms(lambda j: _q((3 * j * j + j) // 2, m) * (1 - _q(2 * j + 1, m)), m)


def _gg_sum(shift, squared):
    def fn(m):
        def term(n):
            den = poch(1, 2, 2, n, m)
            if squared:
                den = den * den
            return _q(n * n + shift * n, m) * poch(-1, 1, 2, n, m) / den

        return sum_of_terms(term, m)

    return fn


def _gg_product(i):
    def fn(m):
        return one(m) / (
            poch(1, 2 * i - 1, 8, INFINITE, m)
            * poch(1, 4, 8, INFINITE, m)
            * poch(1, 9 - 2 * i, 8, INFINITE, m)
        )

    return fn


def _alt_sum(m):
    # sum (-1)^n q^(n^2+n) / (-q;q^2)_(n+1)
    return sum_of_terms(lambda n: _sign(n) * _q(n * n + n, m) / poch(-1, 1, 2, n + 1, m), m)


def _split_sum(m):
    a = sum_of_terms(
        lambda j: _q(4 * j * j + 2 * j, m) * (1 - _q(4 * j + 2, m)) / poch(-1, 1, 2, 2 * j + 1, m), m
    )
    b = sum_of_terms(lambda j: _q(4 * j * j + 2 * j - 1, m) / poch(-1, 1, 2, 2 * j, m), m, start=1)
    return a + b


def _prdo_expansion(m):
    head = poch(-1, 3, 2, INFINITE, m) / poch(1, 4, 2, INFINITE, m)
    even = poch(1, 2, 2, INFINITE, m)
    b = sum_of_terms(
        lambda j: _q(4 * j * j + 2 * j - 1, m) * poch(-1, 4 * j + 1, 2, INFINITE, m), m, start=1
    )
    c = sum_of_terms(
        lambda j: _q(4 * j * j + 2 * j, m) * poch(-1, 4 * j + 3, 2, INFINITE, m) * (1 - _q(4 * j + 2, m)),
        m,
        start=1,
    )
    return head + (b + c) / even


def _eq_3_14_lhs(m):
    a = sum_of_terms(lambda j: _q(4 * j * j + 2 * j, m) / poch(-1, 1, 2, 2 * j + 1, m), m)
    b = sum_of_terms(lambda j: _q(4 * j * j - 2 * j, m) / poch(-1, 1, 2, 2 * j, m), m, start=1)
    return a - b


def _eq_3_15_lhs(m):
    return sum_of_terms(
        lambda j: _q(4 * j * j - 2 * j, m) * (1 + _q(4 * j - 1, m)) / poch(-1, 1, 2, 2 * j, m), m, start=1
    )


def _eq_3_15_rhs(m):
    return sum_of_terms(lambda j: _q(4 * j * j + 6 * j + 2, m) / poch(-1, 1, 2, 2 * j + 1, m), m)


def _a_product_form(m):
    def term(j):
        return (
            _q(3 * j * j + 2 * j, m)
            * poch(-1, 1, 2, j, m)
            * poch(-1, 2 * j + 3, 2, INFINITE, m)
            / (poch(1, 2, 2, 2 * j, m) * poch(1, 4 * j + 4, 2, INFINITE, m))
        )

    return sum_of_terms(term, m)


def _double_sum(first_offset):
    # sum q^((n^2+n)/2) (-q^first_offset;q)_n / (q;q)_n^2
    def fn(m):
        def term(n):
            d = poch(1, 1, 1, n, m)
            return _q((n * n + n) // 2, m) * poch(-1, first_offset, 1, n, m) / (d * d)

        return sum_of_terms(term, m)

    return fn


def _fine_linear(m):
    # 1 + sum_{n>=1} (-1)^n q^(2n-1) / (-q;q^2)_n
    return 1 + sum_of_terms(
        lambda n: _sign(n) * _q(2 * n - 1, m) / poch(-1, 1, 2, n, m), m, start=1
    )


def _fine_triangular(m):
    return sum_of_terms(lambda n: _sign(n) * _q((n * n + n) // 2, m) / poch(-1, 1, 1, n, m), m)


def _odd_smallest(m):
    return 1 + sum_of_terms(lambda n: _q(2 * n - 1, m) * poch(-1, 2 * n + 1, 2, INFINITE, m), m, start=1)


def _core_middle(m):
    s = sum_of_terms(lambda n: _q(4 * n + 3, m) * poch(-1, 4 * n + 5, 2, INFINITE, m), m)
    return poch(-1, 2, 2, INFINITE, m) / poch(1, 1, 1, INFINITE, m) * (1 + 2 * s)


def _core_right(m):
    def term(n):
        return (
            2
            * _q(4 * n + 3, m)
            * poch(-1, 4 * n + 5, 2, INFINITE, m)
            / (poch(1, 1, 2, 2 * n + 1, m) * (1 - _q(4 * n + 3, m)) * poch(1, 4 * n + 5, 2, INFINITE, m))
        )

    inner = one(m) / poch(1, 1, 2, INFINITE, m) + sum_of_terms(term, m)
    return poch(-1, 2, 2, INFINITE, m) / poch(1, 2, 2, INFINITE, m) * inner


def _w2star_product_form(m):
    def term(j):
        return _q((3 * j * j + j) // 2, m) / (poch(1, 1, 1, 2 * j, m) * poch(1, 2 * j + 2, 1, INFINITE, m))

    return poch(-1, 1, 1, INFINITE, m) * sum_of_terms(term, m)


def _restricted_lhs(m):
    s = sum_of_terms(lambda n: _q((2 * n + 1) * n, m) * poch(-1, 2 * n + 2, 1, INFINITE, m), m)
    return s / poch(1, 2, 2, INFINITE, m)


def _restricted_rhs(m):
    return _false_theta_3_2(m) / poch(1, 1, 1, INFINITE, m)


def _ramanujan_lhs(m):
    return sum_of_terms(lambda n: _q((2 * n + 1) * n, m) / poch(-1, 1, 1, 2 * n + 1, m), m)


def _rewritten_lhs(m):
    def term(n):
        return (
            _q((2 * n + 1) * n, m)
            * poch(-1, 2 * n + 2, 2, INFINITE, m)
            * poch(-1, 2 * n + 3, 2, INFINITE, m)
            / (poch(1, 2, 2, n, m) * poch(1, 2 * n + 2, 2, INFINITE, m))
        )

    return sum_of_terms(term, m)


def _rewritten_rhs(m):
    def term(j):
        return _q((3 * j * j + j) // 2, m) / (poch(1, 1, 1, 2 * j, m) * poch(1, 2 * j + 2, 1, INFINITE, m))

    return sum_of_terms(term, m)


def _alladi_product(a, b, n):
    # (a(1-b)q;q)_n / (aq;q)_n
    def fn(m):
        return scaled_pochhammer(a * (1 - b), 1, 1, n, m) / scaled_pochhammer(a, 1, 1, n, m)

    return fn


THM_1_1_CASES = [(a, b, n) for (a, b) in [(1, 1), (1, 2), (2, 3)] for n in (3, 5, 8)]
THM_1_1_ORDER = 25


def _build_registry() -> List[IdentitySpec]:
    DO_EVEN = "(-q;q^2)_inf/(q^2;q^2)_inf"
    OVER = "(-q;q)_inf/(q;q)_inf"
    F3 = "sum_j q^(3j^2+2j)(1-q^(2j+1))"
    F32 = "sum_j q^((3j^2+j)/2)(1-q^(2j+1))"
    ALT = "sum_n (-1)^n q^(n^2+n)/(-q;q^2)_(n+1)"

    def times(f, g):
        return lambda m: f(m) * g(m)

    specs = [
        make_spec("thm_1_2", [
            enum("RR", "omega"), enum("U", "unit"),
            series("1/(q;q)_inf", lambda m: one(m) / poch(1, 1, 1, INFINITE, m)),
        ], notes="Alladi: RR partitions weighted by omega count all partitions"),
        make_spec("rr_to_d", [enum("RR", "omega"), enum("D", "omega")],
                  notes="omega vanishes on distinct partitions with a gap of 1"),
        make_spec("overpartitions", [series(OVER, _overpartitions), enum("U", "w1_prime")]),
    ]
    for i in (1, 2):
        specs.append(make_spec(f"slater_gg_i{i}", [
            series(f"sum_n q^(n^2+{2 * (i - 1)}n)(-q;q^2)_n/(q^2;q^2)_n", _gg_sum(2 * (i - 1), False)),
            series(f"1/((q^{2 * i - 1};q^8)(q^4;q^8)(q^{9 - 2 * i};q^8))_inf", _gg_product(i)),
        ]))
    for i in (1, 2):
        specs.append(make_spec(f"gg_comb_i{i}", [
            enum(f"GG{i}", "unit"), enum(f"C8_{i}", "unit"),
            series(f"1/((q^{2 * i - 1};q^8)(q^4;q^8)(q^{9 - 2 * i};q^8))_inf", _gg_product(i)),
        ], notes="Goellnitz-Gordon: GG_i counts equal counts with parts in residue classes mod 8"))
    specs += [
        make_spec("thm_3_3_a", [
            series("sum_n q^(n^2)(-q;q^2)_n/(q^2;q^2)_n^2", _gg_sum(0, True)),
            series(DO_EVEN, _do_over_even),
        ]),
        make_spec("thm_3_3_b", [
            series("sum_n q^(n^2+2n)(-q;q^2)_n/(q^2;q^2)_n^2", _gg_sum(2, True)),
            series(f"{DO_EVEN} * {ALT}", times(_do_over_even, _alt_sum)),
            series(f"{DO_EVEN} * {F3}", times(_do_over_even, _false_theta_3)),
        ]),
        make_spec("eq_3_9", [series(ALT, _alt_sum), series(F3, _false_theta_3)]),
        make_spec("evenodd_split", [
            series(f"{DO_EVEN} * {ALT}", times(_do_over_even, _alt_sum)),
            series(f"{DO_EVEN} * (parity-split sums)", times(_do_over_even, _split_sum)),
            series("distributed form of the parity-split sums", _prdo_expansion),
        ]),
        make_spec("eq_3_14", [
            series("sum_j q^(4j^2+2j)/(-q;q^2)_(2j+1) - sum_j q^(4j^2-2j)/(-q;q^2)_(2j)", _eq_3_14_lhs),
            series("parity-split sums", _split_sum),
        ]),
        make_spec("eq_3_15", [
            series("sum_{j>=1} q^(4j^2-2j)(1+q^(4j-1))/(-q;q^2)_(2j)", _eq_3_15_lhs),
            series("sum_j q^(4j^2+6j+2)/(-q;q^2)_(2j+1)", _eq_3_15_rhs),
        ]),
        make_spec("thm_3_4", [
            enum("GG1", "omega1"), enum("P_do", "unit"),
            series("sum_n q^(n^2)(-q;q^2)_n/(q^2;q^2)_n^2", _gg_sum(0, True)),
        ]),
        make_spec("thm_3_7", [
            enum("GG2", "omega2"), enum("P_rdo", "unit"), enum("A", "unit"),
            series("sum_n q^(n^2+2n)(-q;q^2)_n/(q^2;q^2)_n^2", _gg_sum(2, True)),
        ]),
        make_spec("prdo_expansion", [
            series("distributed form of the parity-split sums", _prdo_expansion),
            enum("P_rdo", "unit"),
        ]),
        make_spec("gg2_to_rr", [enum("GG2", "omega2"), enum("GG1", "omega2"), enum("RR", "omega2")],
                  notes="omega2 vanishes on RR partitions outside GG2"),
        make_spec("false_theta_A", [
            series(f"{DO_EVEN} * {F3}", times(_do_over_even, _false_theta_3)),
            series("sum_j q^(3j^2+2j)(-q;q^2)_j (-q^(2j+3);q^2)_inf/((q^2;q^2)_(2j)(q^(4j+4);q^2)_inf)",
                   _a_product_form),
            enum("A", "unit"),
        ]),
        make_spec("thm_4_1_a", [
            series("sum_n q^((n^2+n)/2)(-1;q)_n/(q;q)_n^2", _double_sum(0)),
            series(OVER, _overpartitions),
        ]),
        make_spec("thm_4_1_b", [
            series("sum_n q^((n^2+n)/2)(-q;q)_n/(q;q)_n^2", _double_sum(1)),
            series(f"{OVER} * (1 + sum_n (-1)^n q^(2n-1)/(-q;q^2)_n)", times(_overpartitions, _fine_linear)),
            series(f"{OVER} * {F32}", times(_overpartitions, _false_theta_3_2)),
        ]),
        make_spec("fine_chain", [
            series(F32, _false_theta_3_2),
            series("1 + sum_{n>=1} (-1)^n q^(2n-1)/(-q;q^2)_n", _fine_linear),
            series("sum_n (-1)^n q^((n^2+n)/2)/(-q;q)_n", _fine_triangular),
        ]),
        make_spec("odd_smallest_part", [
            series("(-q;q^2)_inf", lambda m: poch(-1, 1, 2, INFINITE, m)),
            series("1 + sum_{n>=1} q^(2n-1)(-q^(2n+1);q^2)_inf", _odd_smallest),
        ]),
        make_spec("dw_core", [
            series(f"{OVER} * (1 + sum_n (-1)^n q^(2n-1)/(-q;q^2)_n)", times(_overpartitions, _fine_linear)),
            series("(-q^2;q^2)_inf/(q;q)_inf * (1 + 2 sum_n q^(4n+3)(-q^(4n+5);q^2)_inf)", _core_middle),
            series("(-q^2;q^2)_inf/(q^2;q^2)_inf * (odd-part form)", _core_right),
        ]),
        make_spec("dw_identity_1", [
            series("sum_n q^((n^2+n)/2)(-1;q)_n/(q;q)_n^2", _double_sum(0)),
            enum("D", "wt1_tilde"),
        ]),
        make_spec("thm_4_2", [enum("D", "wt1_tilde"), enum("U", "w1_prime")],
                  notes="strictly positive weights on D and U"),
        make_spec("dw_identity_2", [
            series("sum_n q^((n^2+n)/2)(-q;q)_n/(q;q)_n^2", _double_sum(1)),
            enum("D", "wt2_tilde"),
        ]),
        make_spec("big_weight", [
            series(f"{OVER} * (1 + sum_n (-1)^n q^(2n-1)/(-q;q^2)_n)", times(_overpartitions, _fine_linear)),
            enum("U", "w2_prime"),
        ]),
        make_spec("thm_4_4", [enum("D", "wt2_tilde"), enum("U", "w2_prime")]),
        make_spec("w2star_eq", [
            series(f"{OVER} * {F32}", times(_overpartitions, _false_theta_3_2)),
            series("(-q;q)_inf sum_j q^((3j^2+j)/2)/((q;q)_(2j)(q^(2j+2);q)_inf)", _w2star_product_form),
            enum("U", "w2_star"),
        ]),
        make_spec("thm_4_5", [enum("D", "wt2_tilde"), enum("U", "w2_prime"), enum("U", "w2_star")]),
        make_spec("thm_5_1", [
            series("1/(q^2;q^2)_inf sum_n q^((2n+1)n)(-q^(2n+2);q)_inf", _restricted_lhs),
            series(f"1/(q;q)_inf * {F32}", _restricted_rhs),
        ]),
        make_spec("ram_9_4_4", [
            series("sum_n q^((2n+1)n)/(-q;q)_(2n+1)", _ramanujan_lhs),
            series(F32, _false_theta_3_2),
        ]),
        make_spec("eq_5_4", [
            series("sum_n q^((2n+1)n)(-q^(2n+2);q^2)_inf(-q^(2n+3);q^2)_inf/((q^2;q^2)_n(q^(2n+2);q^2)_inf)",
                   _rewritten_lhs),
            series("sum_j q^((3j^2+j)/2)/((q;q)_(2j)(q^(2j+2);q)_inf)", _rewritten_rhs),
            series(f"1/(q;q)_inf * {F32}", _restricted_rhs),
        ]),
        make_spec("pdom_series", [
            series("sum_n q^((2n+1)n)(-q^(2n+2);q^2)_inf(-q^(2n+3);q^2)_inf/((q^2;q^2)_n(q^(2n+2);q^2)_inf)",
                   _rewritten_lhs),
            enum("P_dom", "two_tau"),
        ]),
        make_spec("uic_series", [
            series("sum_j q^((3j^2+j)/2)/((q;q)_(2j)(q^(2j+2);q)_inf)", _rewritten_rhs),
            enum("U_ic", "unit"),
        ]),
        make_spec("thm_5_2", [enum("P_dom", "two_tau"), enum("U_ic", "unit")]),
    ]
    for a, b, n in THM_1_1_CASES:
        specs.append(make_spec(
            f"thm_1_1_spec_a{a}_b{b}_n{n}",
            [
                series(f"({a * (1 - b)}q;q)_{n}/({a}q;q)_{n}", _alladi_product(a, b, n)),
                enum(P.U_n(n), W.ab_weight(a, b)),
            ],
            default_order=THM_1_1_ORDER,
            notes=f"Alladi's product at a={a}, b={b}, n={n}",
        ))
    return specs


_REGISTRY: Optional[List[IdentitySpec]] = None


def builtin_registry() -> List[IdentitySpec]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _build_registry()
    return list(_REGISTRY)


def registry_by_name() -> Dict[str, IdentitySpec]:
    return {s.name: s for s in builtin_registry()}


def get_identity(name: str) -> IdentitySpec:
    reg = registry_by_name()
    try:
        return reg[name]
    except KeyError:
        raise KeyError(name) from None
