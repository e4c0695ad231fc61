"""Finite multiple harmonic q-series and their limits.

Five sum kinds share one nested-sum engine::

    Z_weak    sum_{n>=k1>=...>=km>=1} prod q^kj / [kj]^sj
    W_weak    sum_{n>=k1>=...>=km>=1} prod q^((sj-1)kj) / [kj]^sj
    A_weak    sum_{n>=k1>=...>=km>=1} (-1)^(k1+1) q^(k1(k1+1)/2) [n,k1]_q prod q^((sj-1)kj) / [kj]^sj
    Z_strict  as Z_weak with k1 > ... > km
    A_strict  as A_weak with k1 > ... > km and outer sign (-1)^k1

Empty argument lists give 1 (weak kinds need n >= 1, strict kinds allow
n = 0); any nonempty list at n = 0 gives 0.  Weak kinds at n = 0 with an
empty list also give 0, which keeps the functions total.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import Callable, Sequence

from .qpoly import CycloFraction, QPoly, QRatFun, eval_at, q_binomial, q_integer


class SumKind(enum.Enum):
    Z_weak = "Z_weak"
    A_weak = "A_weak"
    W_weak = "W_weak"
    Z_strict = "Z_strict"
    A_strict = "A_strict"

    @property
    def strict(self) -> bool:
        return self in (SumKind.Z_strict, SumKind.A_strict)

    @property
    def is_a(self) -> bool:
        return self in (SumKind.A_weak, SumKind.A_strict)

    @property
    def is_z(self) -> bool:
        return self in (SumKind.Z_weak, SumKind.Z_strict)

    @classmethod
    def parse(cls, text: str) -> "SumKind":
        aliases = {"Zw": cls.Z_weak, "Aw": cls.A_weak, "Ww": cls.W_weak,
                   "Zs": cls.Z_strict, "As": cls.A_strict}
        if text in aliases:
            return aliases[text]
        return cls(text)


class SumError(ValueError):
    pass


class RouteMismatch(RuntimeError):
    """Two independent computations of the same quantity disagreed."""


@dataclass(frozen=True)
class TruncationResult:
    value: Fraction
    terms_used: int
    tail_bound: Fraction


def _check_args(s: Sequence[int], n: int) -> tuple:
    s = tuple(s)
    if any(x < 0 for x in s):
        raise SumError(f"negative entry in {s}")
    if n < 0:
        raise SumError(f"negative n={n}")
    return s


def _empty_value(kind: SumKind, s: tuple, n: int):
    """Value fixed by convention, or None when the sum must be computed."""
    if not s:
        return 1 if (kind.strict or n > 0) else 0
    if n == 0:
        return 0
    return None


def nested_table(factors: Sequence[Callable[[int], object]], n: int, strict: bool, zero=0) -> list:
    """F[k] = factors[0](k) * (sum of the inner levels constrained by k), k = 1..n.

    ``F[0]`` is unused padding.  Cost is O(len(factors) * n) ring operations:
    each level is a prefix sum over the level below.
    """
    m = len(factors)
    F = [zero] + [factors[m - 1](k) for k in range(1, n + 1)]
    for j in range(m - 2, -1, -1):
        term = factors[j]
        acc = zero
        nxt = [zero]
        for k in range(1, n + 1):
            if strict:
                nxt.append(term(k) * acc)
                acc = acc + F[k]
            else:
                acc = acc + F[k]
                nxt.append(term(k) * acc)
        F = nxt
    return F


def _cyclo_factor(kind: SumKind, s: int):
    if kind.is_z:
        return lambda k: CycloFraction.laurent(1, k) * CycloFraction.q_int_power(k, s)
    return lambda k: CycloFraction.laurent(1, (s - 1) * k) * CycloFraction.q_int_power(k, s)


def _a_outer(kind: SumKind, n: int, k: int) -> CycloFraction:
    sign = -1 if (k % 2 == 0) != kind.strict else 1
    return CycloFraction.from_poly(q_binomial(n, k)) * CycloFraction.laurent(sign, k * (k + 1) // 2)


def _cyclo_values(kind: SumKind, s: tuple, ns: Sequence[int]) -> dict:
    """CycloFraction values of the sum for each n in ns (s nonempty)."""
    n_max = max(ns)
    F = nested_table([_cyclo_factor(kind, x) for x in s], n_max, kind.strict, CycloFraction((), 0))
    out = {}
    if kind.is_a:
        for n in ns:
            total = CycloFraction(())
            for k in range(1, n + 1):
                total = total + _a_outer(kind, n, k) * F[k]
            out[n] = total
        return out
    running = CycloFraction(())
    prefix = [running]
    for k in range(1, n_max + 1):
        running = running + F[k]
        prefix.append(running)
    for n in ns:
        out[n] = prefix[n]
    return out


def eval_sum(kind: SumKind, s: Sequence[int], n: int) -> QRatFun:
    """Exact canonical value of the sum of the given kind."""
    s = _check_args(s, n)
    fixed = _empty_value(kind, s, n)
    if fixed is not None:
        return QRatFun(fixed)
    return _cyclo_values(kind, s, [n])[n].to_ratfun()


def eval_sum_table(kind: SumKind, s: Sequence[int], n_max: int) -> list:
    """[eval_sum(kind, s, n) for n in 0..n_max], sharing the inner work."""
    s = _check_args(s, n_max)
    if not s or n_max == 0:
        return [QRatFun(_empty_value(kind, s, n)) for n in range(n_max + 1)]
    vals = _cyclo_values(kind, s, range(1, n_max + 1))
    return [QRatFun(0)] + [vals[n].to_ratfun() for n in range(1, n_max + 1)]


# -- independent oracle --------------------------------------------------------

ORACLE_LIMIT = 10 ** 6


def _ratfun_factor(kind: SumKind, s: int, k: int) -> QRatFun:
    e = k if kind.is_z else (s - 1) * k
    return QRatFun.laurent(1, e) / QRatFun(q_integer(k) ** s)


def eval_sum_brute(kind: SumKind, s: Sequence[int], n: int) -> QRatFun:
    """Literal loop over every index tuple, in generic QRatFun arithmetic."""
    s = _check_args(s, n)
    fixed = _empty_value(kind, s, n)
    if fixed is not None:
        return QRatFun(fixed)
    m = len(s)
    if n ** m > ORACLE_LIMIT:
        raise SumError("oracle too large")
    total = QRatFun(0)
    for ks in itertools.product(range(1, n + 1), repeat=m):
        if kind.strict:
            ok = all(a > b for a, b in zip(ks, ks[1:]))
        else:
            ok = all(a >= b for a, b in zip(ks, ks[1:]))
        if not ok:
            continue
        term = QRatFun(1)
        for x, k in zip(s, ks):
            term = term * _ratfun_factor(kind, x, k)
        if kind.is_a:
            k1 = ks[0]
            sign = (-1) ** k1 if kind.strict else (-1) ** (k1 + 1)
            term = term * QRatFun.laurent(sign, k1 * (k1 + 1) // 2) * QRatFun(q_binomial(n, k1))
        total = total + term
    return total


# -- recurrences ---------------------------------------------------------------


def _check_recursive_shape(s: tuple) -> None:
    if any(x < 0 for x in s):
        raise SumError(f"negative entry in {s}")
    if any(x < 1 for x in s[1:]):
        raise SumError(f"recurrence needs entries >= 1 after the first, got {s}")


def _q_over_int(r: int) -> CycloFraction:
    return CycloFraction.laurent(1, r) * CycloFraction.q_int_power(r, 1)


def eval_A_recursive(s: Sequence[int], n: int) -> QRatFun:
    """A_n[s] from the two recurrences

        A_n[s1, ...]   = sum_{r=1}^n q^r / [r] * A_r[s1 - 1, ...]
        A_n[0, s2, ...] = A_n[s2 - 1, ...] / [n]

    with A_n[] = A_n[0] = 1 for n >= 1.
    """
    s = tuple(s)
    _check_recursive_shape(s)
    if n < 1:
        raise SumError("eval_A_recursive needs n >= 1")
    memo: dict = {}

    def rec(t: tuple, r: int) -> CycloFraction:
        key = (t, r)
        if key in memo:
            return memo[key]
        if not t or t == (0,):
            val = CycloFraction()
        elif t[0] == 0:
            val = CycloFraction.q_int_power(r, 1) * rec((t[1] - 1,) + t[2:], r)
        else:
            lowered = (t[0] - 1,) + t[1:]
            val = CycloFraction(())
            for rr in range(1, r + 1):
                val = val + _q_over_int(rr) * rec(lowered, rr)
        memo[key] = val
        return val

    return rec(s, n).to_ratfun()


def eval_A_strict_recursive(s: Sequence[int], n: int) -> QRatFun:
    """Strict analogue: the second recurrence becomes A_n[0, s2, ...] = -A_{n-1}[s2, ...]."""
    s = tuple(s)
    _check_recursive_shape(s)
    if n < 0:
        raise SumError("negative n")
    memo: dict = {}

    def rec(t: tuple, r: int) -> CycloFraction:
        if not t:
            return CycloFraction()
        if r == 0:
            return CycloFraction(())
        key = (t, r)
        if key in memo:
            return memo[key]
        if t[0] == 0:
            val = -rec(t[1:], r - 1)
        else:
            lowered = (t[0] - 1,) + t[1:]
            val = CycloFraction(())
            for rr in range(1, r + 1):
                val = val + _q_over_int(rr) * rec(lowered, rr)
        memo[key] = val
        return val

    return rec(s, n).to_ratfun()


# -- numeric evaluation --------------------------------------------------------


def _q_int_at(k: int, q0: Fraction) -> Fraction:
    return sum(q0 ** i for i in range(k)) if q0 != 1 else Fraction(k)


def q_pochhammer_at(k: int, q0: Fraction) -> Fraction:
    """(1 - q)_q^k = prod_{i=1..k} (1 - q^i) at q0."""
    return prod((1 - q0 ** i for i in range(1, k + 1)), start=Fraction(1))


def eval_sum_at(kind: SumKind, s: Sequence[int], n: int, q0) -> Fraction:
    """Exact value of the sum at a rational q0, by the same nested recursion in Fractions."""
    s = _check_args(s, n)
    q0 = Fraction(q0)
    fixed = _empty_value(kind, s, n)
    if fixed is not None:
        return Fraction(fixed)

    def factor(x):
        if kind.is_z:
            return lambda k: q0 ** k / _q_int_at(k, q0) ** x
        return lambda k: q0 ** ((x - 1) * k) / _q_int_at(k, q0) ** x

    F = nested_table([factor(x) for x in s], n, kind.strict, Fraction(0))
    if not kind.is_a:
        return sum(F[1:], Fraction(0))
    total = Fraction(0)
    for k in range(1, n + 1):
        sign = (-1) ** k if kind.strict else (-1) ** (k + 1)
        total += sign * q0 ** (k * (k + 1) // 2) * q_binomial(n, k)(q0) * F[k]
    return total


def _harmonic_direct(kind: SumKind, s: tuple, n: int) -> Fraction:
    fixed = _empty_value(kind, s, n)
    if fixed is not None:
        return Fraction(fixed)
    F = nested_table([(lambda x: lambda k: Fraction(1, k ** x))(x) for x in s], n, kind.strict, Fraction(0))
    if not kind.is_a:
        return sum(F[1:], Fraction(0))
    total = Fraction(0)
    for k in range(1, n + 1):
        sign = (-1) ** k if kind.strict else (-1) ** (k + 1)
        total += sign * comb(n, k) * F[k]
    return total


def eval_q1(kind: SumKind, s: Sequence[int], n: int) -> Fraction:
    """The q -> 1 value, computed symbolically-then-evaluated and directly; both must agree."""
    s = _check_args(s, n)
    via_symbolic = eval_at(eval_sum(kind, s, n), 1)
    direct = _harmonic_direct(kind, s, n)
    if via_symbolic != direct:
        raise RouteMismatch(f"q->1 routes disagree for {kind.value}{list(s)} n={n}: "
                            f"{via_symbolic} != {direct}")
    return direct


# -- n -> infinity -------------------------------------------------------------


def _require_unit_interval(q0: Fraction) -> None:
    if not 0 < q0 < 1:
        raise SumError(f"q0 must lie in (0, 1), got {q0}")


def _geometric_tail(first: Callable[[int], Fraction], ratio: Callable[[int], Fraction],
                    start: int) -> Fraction:
    """Bound sum_{k>=start} b(k), given b(k) <= first(k) and b(j+1)/b(j) <= ratio(k) for j >= k.

    Terms are added one at a time until the ratio bound drops below 1.
    """
    tail = Fraction(0)
    k = start
    while True:
        b = first(k)
        rho = ratio(k)
        if rho is not None and rho < 1:
            return tail + b / (1 - rho)
        tail += b
        k += 1


def truncated_limit(kind: SumKind, s: Sequence[int], q0, N: int) -> TruncationResult:
    """Partial sum over k1 <= N of the n -> infinity series, with a rigorous tail bound.

    For A kinds the outer q-binomial is replaced by its limit 1/(1-q)_q^k1.
    Bounds use [k]_q >= 1 and q^(...) <= 1 on (0, 1):

    * Z kinds: term(k) <= q^k (q/(1-q))^(m-1), tail <= q^(N+1)/(1-q) * (q/(1-q))^(m-1).
    * A kinds: |term(k)| <= q^(k(k+1)/2) k^(m-1) / (1-q)_q^k.
    """
    if kind == SumKind.W_weak:
        raise SumError("W has no limiting series here")
    q0 = Fraction(q0)
    _require_unit_interval(q0)
    s = tuple(s)
    if any(x < 1 for x in s):
        raise SumError("truncated_limit needs entries >= 1")
    if N < 1:
        raise SumError("N must be positive")
    if not s:
        return TruncationResult(Fraction(1), 0, Fraction(0))
    m = len(s)
    if kind.is_z:
        value = eval_sum_at(kind, s, N, q0)
        tail = q0 ** (N + 1) / (1 - q0) * (q0 / (1 - q0)) ** (m - 1)
        return TruncationResult(value, N, tail)

    F = nested_table(
        [(lambda x: lambda k: q0 ** ((x - 1) * k) / _q_int_at(k, q0) ** x)(x) for x in s],
        N, kind.strict, Fraction(0))
    value = Fraction(0)
    poch = Fraction(1)
    for k in range(1, N + 1):
        poch *= 1 - q0 ** k
        sign = (-1) ** k if kind.strict else (-1) ** (k + 1)
        value += sign * q0 ** (k * (k + 1) // 2) / poch * F[k]

    pochs = {N: poch}

    def poch_at(k):
        if k not in pochs:
            pochs[k] = poch_at(k - 1) * (1 - q0 ** k)
        return pochs[k]

    def lower(k):
        # (1-q)_q^j >= (1-q)_q^(k-1) * (1 - sum_{i>=k} q^i) for all j >= k
        return poch_at(k - 1) * (1 - q0 ** k / (1 - q0))

    def first(k):
        low = lower(k)
        b = q0 ** (k * (k + 1) // 2) * Fraction(k) ** (m - 1)
        return b / low if low > 0 else b / poch_at(k)

    def ratio(k):
        if lower(k) <= 0:
            return None
        return q0 ** (k + 1) * Fraction(k + 1, k) ** (m - 1)

    return TruncationResult(value, N, _geometric_tail(first, ratio, N + 1))


def qzeta_series_partial(s: Sequence[int], q0, N: int) -> Fraction:
    """sum_{N >= k1 > ... > km > 0} prod q0^((sj-1)kj) / [kj]^sj."""
    q0 = Fraction(q0)
    F = nested_table([(lambda x: lambda k: q0 ** ((x - 1) * k) / _q_int_at(k, q0) ** x)(x) for x in s],
                     N, True, Fraction(0))
    return sum(F[1:], Fraction(0))


def qzeta_via_strict_z(s: Sequence[int], q0, N: int) -> Fraction:
    """q0^|s| times the strict Z partial sum at parameter 1/q0."""
    q0 = Fraction(q0)
    return q0 ** sum(s) * eval_sum_at(SumKind.Z_strict, s, N, 1 / q0)


def qzeta_truncated(s: Sequence[int], q0, N: int) -> TruncationResult:
    """Partial sum of the multiple q-zeta series, cross-checked against the strict Z route."""
    s = tuple(s)
    q0 = Fraction(q0)
    if not s or any(x < 1 for x in s):
        raise SumError("qzeta needs a nonempty composition with entries >= 1")
    if s[0] < 2:
        raise SumError("divergent: first entry must be >= 2")
    _require_unit_interval(q0)
    if N < 1:
        raise SumError("N must be positive")
    value = qzeta_series_partial(s, q0, N)
    other = qzeta_via_strict_z(s, q0, N)
    if value != other:
        raise RouteMismatch(f"qzeta routes disagree for {list(s)} at q={q0}, N={N}")
    m = len(s)
    # term(k) <= q^k * k^(m-1) since s1 >= 2 and every other factor is <= 1
    tail = _geometric_tail(
        lambda k: q0 ** k * Fraction(k) ** (m - 1),
        lambda k: q0 * Fraction(k + 1, k) ** (m - 1),
        N + 1,
    )
    return TruncationResult(value, N, tail)


__all__ = [
    "SumKind", "SumError", "RouteMismatch", "TruncationResult",
    "eval_sum", "eval_sum_table", "eval_sum_brute", "eval_sum_at",
    "eval_A_recursive", "eval_A_strict_recursive", "eval_q1",
    "truncated_limit", "qzeta_truncated", "qzeta_series_partial", "qzeta_via_strict_z",
    "nested_table", "q_pochhammer_at",
]
