"""Identity checkers returning structured reports.

Every checker builds both sides from the evaluators in :mod:`qharmonic.sums`
and compares them:

* ``symbolic``: canonical :class:`QRatFun` equality (or exact rational
  equality for q -> 1 statements);
* ``sampled``: exact equality at seeded rational parameter points;
* ``truncated``: partial sums of infinite series with rigorous tail
  bounds.  These report ``holds`` only when the residual is within the
  combined bound and ``inconclusive`` otherwise.
"""

from __future__ import annotations

import enum
import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Any, Iterable, Mapping, Optional, Sequence

from . import compositions as C
from .qpoly import CycloFraction, PoleError, QPoly, QRatFun, q_binomial, q_integer, q_shifted_power
from .sums import (
    SumKind,
    eval_q1,
    eval_sum,
    nested_table,
    q_pochhammer_at,
    qzeta_series_partial,
    qzeta_truncated,
    qzeta_via_strict_z,
    truncated_limit,
)

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


class IdentityId(enum.Enum):
    THEOREM1 = "THEOREM1"
    COR_LIMIT_Q1 = "COR_LIMIT_Q1"
    COR_LIMIT_NINF = "COR_LIMIT_NINF"
    DUALITY_AB = "DUALITY_AB"
    QKARL = "QKARL"
    QKARL_DUAL = "QKARL_DUAL"
    GEORGE = "GEORGE"
    KARL = "KARL"
    AN01M = "AN01M"
    LEMMA_QSUM = "LEMMA_QSUM"
    QBINOM_THM = "QBINOM_THM"
    THM2_STRICT_ONES = "THM2_STRICT_ONES"
    COR_STRICT_NINF = "COR_STRICT_NINF"
    COR_STRICT_Q1 = "COR_STRICT_Q1"
    WEAK_STRICT_EXPANSION = "WEAK_STRICT_EXPANSION"
    PRODINGER_PAIR = "PRODINGER_PAIR"
    FULAS = "FULAS"
    UCHIMURA_LIMIT = "UCHIMURA_LIMIT"
    QZETA_RELATION = "QZETA_RELATION"


STATEMENTS = {
    IdentityId.THEOREM1: "Z_n[s] = A_n[dual(s)] and A_n[s] = Z_n[dual(s)]",
    IdentityId.COR_LIMIT_Q1: "Z_n(s) = A_n(dual(s)) at q = 1",
    IdentityId.COR_LIMIT_NINF: "Z[s] = A[dual(s)] as n -> infinity",
    IdentityId.DUALITY_AB: "Z_n[{1}^(a-1), b] = A_n[a, {1}^(b-1)]",
    IdentityId.QKARL: "sum_k (-1)^(k+1) q^(k(k+1)/2+(m-1)k) [n,k]/(1-q^k)^m = nested sum of q^kj/(1-q^kj); Z_n[{1}^m] = A_n[m]",
    IdentityId.QKARL_DUAL: "sum_k q^k/[k]^m = A_n[{1}^m]",
    IdentityId.GEORGE: "sum_k (-1)^(k+1) q^(k(k+1)/2) [n,k]/(1-q^k) = sum_k q^k/(1-q^k)",
    IdentityId.KARL: "sum_k (-1)^(k+1) C(n,k)/k^m = sum_{n>=k1>=...>=km>=1} 1/(k1...km)",
    IdentityId.AN01M: "A_n[0, {1}^m] = [n]^-m",
    IdentityId.LEMMA_QSUM: "sum_{r=k}^n q^r [r-1,k-1] = q^k [n,k]",
    IdentityId.QBINOM_THM: "(x+y)_q^n = sum_m q^(m(m-1)/2) [n,m] x^(n-m) y^m",
    IdentityId.THM2_STRICT_ONES: "(-1)^m Z_n^>[{1}^m] = A_n^>[{1}^m]",
    IdentityId.COR_STRICT_NINF: "(-1)^m Z^>[{1}^m] = A^>[{1}^m] as n -> infinity",
    IdentityId.COR_STRICT_Q1: "(-1)^m Z_n^>({1}^m) = A_n^>({1}^m) at q = 1",
    IdentityId.WEAK_STRICT_EXPANSION: "Z_n[s] = sum over coarsenings t of s of Z_n^>[t]",
    IdentityId.PRODINGER_PAIR: "inverse pair: forward relation for all j <=> reverse relation",
    IdentityId.FULAS: "Fu-Lascoux nested sum of (a-bq^k)/(c-zq^k) at a rational point",
    IdentityId.UCHIMURA_LIMIT: "sum (-1)^(k+1) q^(k(k+1)/2)/((1-q)_q^(k-1)(1-q^k)^2) = sum q^k/(1-q^k)",
    IdentityId.QZETA_RELATION: "zeta[s; q] = q^|s| Z_inf^>[s; 1/q], partial sums",
}


class ParamError(ValueError):
    pass


@dataclass
class Report:
    id: IdentityId
    params: dict
    method: str
    verdict: str
    witness: Optional[dict] = None
    seed: Optional[int] = None
    residual: Optional[Fraction] = None
    tail_bound: Optional[Fraction] = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        out: dict = {
            "id": self.id.value,
            "params": dict(self.params),
            "method": self.method,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.seed is not None:
            out["seed"] = self.seed
        if self.residual is not None:
            out["residual"] = str(self.residual)
        if self.tail_bound is not None:
            out["tail_bound"] = str(self.tail_bound)
        return out


def aggregate_verdict(reports: Iterable[Report]) -> str:
    verdicts = {r.verdict for r in reports}
    if not verdicts:
        raise ParamError("no reports")
    if verdicts == {HOLDS}:
        return HOLDS
    if FAILS in verdicts:
        return FAILS
    return INCONCLUSIVE


# -- parameter handling --------------------------------------------------------

REQUIRED = {
    IdentityId.THEOREM1: ("s", "n"),
    IdentityId.COR_LIMIT_Q1: ("s", "n"),
    IdentityId.COR_LIMIT_NINF: ("s", "q", "N"),
    IdentityId.DUALITY_AB: ("a", "b", "n"),
    IdentityId.QKARL: ("m", "n"),
    IdentityId.QKARL_DUAL: ("m", "n"),
    IdentityId.GEORGE: ("n",),
    IdentityId.KARL: ("m", "n"),
    IdentityId.AN01M: ("m", "n"),
    IdentityId.LEMMA_QSUM: ("n",),
    IdentityId.QBINOM_THM: ("n",),
    IdentityId.THM2_STRICT_ONES: ("m", "n"),
    IdentityId.COR_STRICT_NINF: ("m", "q", "N"),
    IdentityId.COR_STRICT_Q1: ("m", "n"),
    IdentityId.WEAK_STRICT_EXPANSION: ("s", "n"),
    IdentityId.PRODINGER_PAIR: ("n",),
    IdentityId.FULAS: ("n", "m"),
    IdentityId.UCHIMURA_LIMIT: ("q", "N"),
    IdentityId.QZETA_RELATION: ("s", "q", "N"),
}


def _int(params: Mapping, key: str) -> int:
    v = params[key]
    if isinstance(v, bool):
        raise ParamError(f"{key} must be an integer")
    if isinstance(v, int):
        return v
    try:
        return int(str(v).strip())
    except ValueError:
        raise ParamError(f"{key} must be an integer, got {v!r}") from None


def _rat(params: Mapping, key: str) -> Fraction:
    v = params[key]
    try:
        return Fraction(v) if not isinstance(v, str) else Fraction(v.strip())
    except (ValueError, ZeroDivisionError):
        raise ParamError(f"{key} must be a rational p/r, got {v!r}") from None


def _comp(params: Mapping, key: str) -> tuple:
    v = params[key]
    if isinstance(v, str):
        return C.parse_composition(v)
    return tuple(int(x) for x in v)


def _text(v: Any) -> str:
    if isinstance(v, (tuple, list)):
        return C.format_composition(v)
    return str(v)


def _record(**kw) -> dict:
    return {k: _text(v) for k, v in kw.items() if v is not None}


def _require(id_: IdentityId, params: Mapping) -> None:
    missing = [k for k in REQUIRED[id_] if k not in params]
    if missing:
        raise ParamError(f"{id_.value} requires parameters: {', '.join(REQUIRED[id_])} "
                         f"(missing {', '.join(missing)})")


# -- comparison core -----------------------------------------------------------


def _show(v) -> str:
    return str(v)


def compare(id_: IdentityId, params: dict, pairs: Sequence, method: str = "symbolic",
            seed: Optional[int] = None) -> Report:
    """Report on a list of (label, lhs, rhs); the first mismatch becomes the witness."""
    for label, lhs, rhs in pairs:
        if lhs != rhs:
            return Report(id_, params, method, FAILS,
                          witness={"params": dict(params), "relation": label,
                                   "lhs": _show(lhs), "rhs": _show(rhs)},
                          seed=seed)
    return Report(id_, params, method, HOLDS, seed=seed)


def _truncated_report(id_: IdentityId, params: dict, lhs, rhs) -> Report:
    """Compare two TruncationResults; never claims more than consistency within bounds."""
    residual = abs(lhs.value - rhs.value)
    bound = lhs.tail_bound + rhs.tail_bound
    verdict = HOLDS if residual <= bound else INCONCLUSIVE
    return Report(id_, params, "truncated", verdict, residual=residual, tail_bound=bound)


# -- the duality theorem -------------------------------------------------------


def check_theorem1(s: Sequence[int], n: int, partner: Optional[Sequence[int]] = None) -> Report:
    """Check Z_n[s] = A_n[s*] and the reflected A_n[s] = Z_n[s*].

    ``partner`` replaces s* = dual(s); it exists so the checker can be shown
    to fail on a non-dual pair.
    """
    s = tuple(s)
    if n < 1:
        raise ParamError("n must be positive")
    other = tuple(partner) if partner is not None else C.dual(s)
    params = _record(s=s, n=n, against=other if partner is not None else None)
    return compare(IdentityId.THEOREM1, params, [
        ("Z_n[s] = A_n[s*]", eval_sum(SumKind.Z_weak, s, n), eval_sum(SumKind.A_weak, other, n)),
        ("A_n[s] = Z_n[s*]", eval_sum(SumKind.A_weak, s, n), eval_sum(SumKind.Z_weak, other, n)),
    ])


def _literal_dilcher(m: int, n: int):
    """Both sides of the q-Dilcher identity built from (1 - q^k) factors."""
    lhs = CycloFraction(())
    for k in range(1, n + 1):
        sign = 1 if k % 2 else -1
        lhs = lhs + (CycloFraction.laurent(sign, k * (k + 1) // 2 + (m - 1) * k)
                     * CycloFraction.one_minus_q_power(k, m)
                     * CycloFraction.from_poly(q_binomial(n, k)))
    if m == 0:
        rhs = CycloFraction()
    else:
        level = lambda k: CycloFraction.laurent(1, k) * CycloFraction.one_minus_q_power(k, 1)
        F = nested_table([level] * m, n, False, CycloFraction(()))
        rhs = CycloFraction(())
        for k in range(1, n + 1):
            rhs = rhs + F[k]
    return lhs.to_ratfun(), rhs.to_ratfun()


def _check_qkarl(m: int, n: int) -> Report:
    if m < 0 or n < 1:
        raise ParamError("QKARL needs m >= 0, n >= 1")
    lhs, rhs = _literal_dilcher(m, n)
    return compare(IdentityId.QKARL, _record(m=m, n=n), [
        ("Z_n[{1}^m] = A_n[m]", eval_sum(SumKind.Z_weak, (1,) * m, n),
         eval_sum(SumKind.A_weak, (m,), n)),
        ("literal (1-q^k) form", lhs, rhs),
    ])


def _check_qkarl_dual(m: int, n: int) -> Report:
    if m < 1 or n < 1:
        raise ParamError("QKARL_DUAL needs m >= 1, n >= 1")
    lhs = CycloFraction(())
    for k in range(1, n + 1):
        lhs = lhs + CycloFraction.laurent(1, k) * CycloFraction.q_int_power(k, m)
    rhs = eval_sum(SumKind.A_weak, (1,) * m, n)
    return compare(IdentityId.QKARL_DUAL, _record(m=m, n=n), [
        ("sum q^k/[k]^m = A_n[{1}^m]", lhs.to_ratfun(), rhs),
        ("Z_n[m] = A_n[{1}^m]", eval_sum(SumKind.Z_weak, (m,), n), rhs),
    ])


def _check_george(n: int) -> Report:
    if n < 1:
        raise ParamError("GEORGE needs n >= 1")
    lhs = CycloFraction(())
    rhs = CycloFraction(())
    for k in range(1, n + 1):
        sign = 1 if k % 2 else -1
        lhs = lhs + (CycloFraction.laurent(sign, k * (k + 1) // 2)
                     * CycloFraction.one_minus_q_power(k, 1)
                     * CycloFraction.from_poly(q_binomial(n, k)))
        rhs = rhs + CycloFraction.laurent(1, k) * CycloFraction.one_minus_q_power(k, 1)
    return compare(IdentityId.GEORGE, _record(n=n), [("finite analog", lhs.to_ratfun(), rhs.to_ratfun())])


def _check_karl(m: int, n: int) -> Report:
    if m < 0 or n < 1:
        raise ParamError("KARL needs m >= 0, n >= 1")
    lhs = sum((Fraction((-1) ** (k + 1) * comb(n, k), k ** m) for k in range(1, n + 1)), Fraction(0))
    if m == 0:
        rhs = Fraction(1)
    else:
        F = nested_table([lambda k: Fraction(1, k)] * m, n, False, Fraction(0))
        rhs = sum(F[1:], Fraction(0))
    return compare(IdentityId.KARL, _record(m=m, n=n), [
        ("literal harmonic form", lhs, rhs),
        ("A_n(m) = Z_n({1}^m) at q=1", eval_q1(SumKind.A_weak, (m,), n),
         eval_q1(SumKind.Z_weak, (1,) * m, n)),
        ("q=1 value matches literal", eval_q1(SumKind.A_weak, (m,), n), lhs),
    ])


def _check_an01m(m: int, n: int) -> Report:
    if m < 0 or n < 1:
        raise ParamError("AN01M needs m >= 0, n >= 1")
    a = eval_sum(SumKind.A_weak, (0,) + (1,) * m, n)
    return compare(IdentityId.AN01M, _record(m=m, n=n), [
        ("A_n[0,{1}^m] [n]^m = 1", a * QRatFun(q_integer(n) ** m), QRatFun(1)),
    ])


def _check_lemma_qsum(n: int, k: Optional[int]) -> Report:
    if n < 1:
        raise ParamError("LEMMA_QSUM needs n >= 1")
    ks = [k] if k is not None else range(1, n + 1)
    pairs = []
    for kk in ks:
        if not 1 <= kk <= n:
            raise ParamError("LEMMA_QSUM needs 1 <= k <= n")
        lhs = QPoly()
        for r in range(kk, n + 1):
            lhs = lhs + QPoly.monomial(1, r) * q_binomial(r - 1, kk - 1)
        pairs.append((f"k={kk}", lhs, QPoly.monomial(1, kk) * q_binomial(n, kk)))
    return compare(IdentityId.LEMMA_QSUM, _record(n=n, k=k), pairs)


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
        if v or not nonzero:
            return v


def _check_qbinom_thm(n: int, x: Optional[Fraction], y: Optional[Fraction], seed: int) -> Report:
    if n < 0:
        raise ParamError("QBINOM_THM needs n >= 0")
    if x is not None and y is not None:
        points = [(x, y)]
        used_seed = None
    else:
        rng = random.Random(seed)
        points = [(random_rational(rng), random_rational(rng)) for _ in range(3)]
        used_seed = seed
    pairs = []
    for px, py in points:
        rhs = QPoly()
        for m in range(n + 1):
            rhs = rhs + QPoly.monomial(px ** (n - m) * py ** m, m * (m - 1) // 2) * q_binomial(n, m)
        pairs.append((f"x={px}, y={py}", q_shifted_power(px, py, n), rhs))
    return compare(IdentityId.QBINOM_THM, _record(n=n, x=x, y=y), pairs, "sampled", used_seed)


def _check_thm2(m: int, n: int) -> Report:
    if m < 0 or n < 0:
        raise ParamError("THM2_STRICT_ONES needs m, n >= 0")
    ones = (1,) * m
    return compare(IdentityId.THM2_STRICT_ONES, _record(m=m, n=n), [
        ("(-1)^m Z_n^>[{1}^m] = A_n^>[{1}^m]",
         eval_sum(SumKind.Z_strict, ones, n) * (-1) ** m, eval_sum(SumKind.A_strict, ones, n)),
    ])


def _check_cor_strict_q1(m: int, n: int) -> Report:
    if m < 0 or n < 0:
        raise ParamError("COR_STRICT_Q1 needs m, n >= 0")
    ones = (1,) * m
    return compare(IdentityId.COR_STRICT_Q1, _record(m=m, n=n), [
        ("strict harmonic form at q=1",
         (-1) ** m * eval_q1(SumKind.Z_strict, ones, n), eval_q1(SumKind.A_strict, ones, n)),
    ])


def _blocks(s: tuple) -> list:
    """Coarsenings of s as (merged part, number of merged parts) lists, in coarsenings() order."""
    out = []
    for merges in itertools.product((False, True), repeat=len(s) - 1):
        parts = [[s[0], 1]]
        for x, merge in zip(s[1:], merges):
            if merge:
                parts[-1][0] += x
                parts[-1][1] += 1
            else:
                parts.append([x, 1])
        out.append([tuple(p) for p in parts])
    return out


def block_weighted_expansion(s: Sequence[int], n: int) -> QRatFun:
    """sum over coarsenings of strict sums where a block of r merged parts carries q^(r k).

    Merging r adjacent equal indices multiplies r factors q^k, so this is
    the form of the weak-to-strict expansion that holds for q != 1.
    """
    total = CycloFraction(())
    for blocks in _blocks(tuple(s)):
        levels = [(lambda x, r: lambda k: CycloFraction.laurent(1, r * k) * CycloFraction.q_int_power(k, x))(x, r)
                  for x, r in blocks]
        F = nested_table(levels, n, True, CycloFraction(()))
        for k in range(1, n + 1):
            total = total + F[k]
    return total.to_ratfun()


def _check_expansion(s: tuple, n: int) -> Report:
    if not s:
        raise ParamError("WEAK_STRICT_EXPANSION needs a nonempty composition")
    weak = eval_sum(SumKind.Z_weak, s, n)
    total = QRatFun(0)
    for t in C.coarsenings(s):
        total = total + eval_sum(SumKind.Z_strict, t, n)
    report = compare(IdentityId.WEAK_STRICT_EXPANSION, _record(s=s, n=n), [
        ("Z_n[s] = sum Z_n^>[t]", weak, total),
    ])
    if report.witness is not None:
        q1 = eval_q1(SumKind.Z_weak, s, n) == sum(
            (eval_q1(SumKind.Z_strict, t, n) for t in C.coarsenings(s)), Fraction(0))
        report.witness["holds_at_q1"] = q1
        report.witness["holds_with_block_weights_q^(rk)"] = weak == block_weighted_expansion(s, n)
    return report


# -- inverse pairs -------------------------------------------------------------


def _kernel(j: int, k: int, extra: int = 0) -> QRatFun:
    """(-1)^k q^(k(k-1)/2 + extra) [j,k]."""
    return QRatFun.laurent((-1) ** k, k * (k - 1) // 2 + extra) * QRatFun(q_binomial(j, k))


def prodinger_forward(alpha_seq: Sequence[QRatFun], n: int) -> list:
    """The beta sequence making the forward relation hold for every j = 0..n.

    Forward relation: sum_{k<=j} beta_k = sum_{k<=j} (-1)^k q^(k(k-1)/2) [j,k] alpha_k.
    """
    if n < 1:
        raise ParamError("n must be positive")
    if len(alpha_seq) != n + 1:
        raise ParamError(f"alpha sequence must have n+1 = {n + 1} entries, got {len(alpha_seq)}")
    alpha_seq = [QRatFun(a) if not isinstance(a, QRatFun) else a for a in alpha_seq]
    partial = []
    for j in range(n + 1):
        total = QRatFun(0)
        for k in range(j + 1):
            total = total + _kernel(j, k) * alpha_seq[k]
        partial.append(total)
    return [partial[0]] + [partial[j] - partial[j - 1] for j in range(1, n + 1)]


def _reverse_sides(alpha_seq, beta_seq, j: int):
    """Both sides of sum q^-k alpha_k = sum (-1)^k q^(k(k-1)/2 - kj) [j,k] beta_k."""
    lhs = QRatFun(0)
    rhs = QRatFun(0)
    for k in range(j + 1):
        lhs = lhs + QRatFun.laurent(1, -k) * alpha_seq[k]
        rhs = rhs + _kernel(j, k, -k * j) * beta_seq[k]
    return lhs, rhs


def check_prodinger_equivalence(alpha_seq: Sequence[QRatFun], n: int,
                                params: Optional[dict] = None, seed: Optional[int] = None) -> Report:
    """Derive beta from the forward relation, then check the reverse relation for j = 0..n."""
    beta_seq = prodinger_forward(alpha_seq, n)
    alpha_seq = [QRatFun(a) if not isinstance(a, QRatFun) else a for a in alpha_seq]
    pairs = []
    for j in range(n + 1):
        lhs, rhs = _reverse_sides(alpha_seq, beta_seq, j)
        pairs.append((f"reverse relation at j={j}", lhs, rhs))
    if params is None:
        params = _record(n=n)
    return compare(IdentityId.PRODINGER_PAIR, params, pairs, seed=seed)


def theorem1_sequences(s: Sequence[int], n: int):
    """The alpha (from s) and beta (from dual(s)) sequences that turn the
    duality theorem into the forward inverse-pair relation."""
    s = tuple(s)
    t = C.dual(s)
    alpha_seq = [QRatFun(0)]
    beta_seq = [QRatFun(0)]
    for k in range(1, n + 1):
        w = eval_sum(SumKind.W_weak, s[1:], k)
        alpha_seq.append(-(QRatFun.laurent(1, s[0] * k) / QRatFun(q_integer(k) ** s[0])) * w)
        z = eval_sum(SumKind.Z_weak, t[1:], k)
        beta_seq.append(QRatFun.laurent(1, k) / QRatFun(q_integer(k) ** t[0]) * z)
    return alpha_seq, beta_seq


def _check_prodinger_theorem1(s: tuple, n: int) -> Report:
    alpha_seq, beta_seq = theorem1_sequences(s, n)
    params = _record(s=s, n=n)
    forward = prodinger_forward(alpha_seq, n)
    pairs = [(f"forward beta_{k}", forward[k], beta_seq[k]) for k in range(n + 1)]
    lhs, rhs = _reverse_sides(alpha_seq, beta_seq, n)
    pairs.append(("reverse relation at j=n", lhs, rhs))
    # q -> 1/q turns the reverse relation into A_n[s*] = Z_n[s], up to the factor -q^-|s|
    scale = QRatFun.laurent(-1, -sum(s))
    pairs.append(("reverse lhs at 1/q = -q^-|s| Z_n[s]",
                  lhs.reciprocal_argument(), scale * eval_sum(SumKind.Z_weak, s, n)))
    pairs.append(("reverse rhs at 1/q = -q^-|s| A_n[s*]",
                  rhs.reciprocal_argument(), scale * eval_sum(SumKind.A_weak, C.dual(s), n)))
    return compare(IdentityId.PRODINGER_PAIR, params, pairs)


def random_ratfun(rng: random.Random, max_num_deg: int = 3, max_den_deg: int = 2) -> QRatFun:
    num = QPoly([random_rational(rng) for _ in range(rng.randint(0, max_num_deg) + 1)])
    while True:
        den = QPoly([random_rational(rng) for _ in range(rng.randint(0, max_den_deg) + 1)])
        if not den.is_zero():
            return QRatFun(num, den)


def _check_prodinger_random(n: int, seed: int) -> Report:
    rng = random.Random(seed)
    alpha_seq = [random_ratfun(rng) for _ in range(n + 1)]
    return check_prodinger_equivalence(alpha_seq, n, _record(n=n), seed)


# -- Fu-Lascoux ----------------------------------------------------------------


def _fulas_poles(n, a, b, c, z, q0) -> Optional[str]:
    if q0 == 0:
        return "q = 0"
    for k in range(1, n + 1):
        if q0 ** k == 1:
            return f"1 - q^{k}"
        if c - z * q0 ** k == 0:
            return f"c - z q^{k}"
    if a * z - b * c == 0:
        return "az - bc"
    return None


def fulas_sides(n: int, m: int, a, b, c, z, q0):
    """Exact left and right sides of the Fu-Lascoux identity at a rational point."""
    a, b, c, z, q0 = (Fraction(v) for v in (a, b, c, z, q0))
    pole = _fulas_poles(n, a, b, c, z, q0)
    if pole is not None:
        raise PoleError(f"factor {pole} vanishes at the chosen point")
    level = lambda k: (a - b * q0 ** k) / (c - z * q0 ** k)
    F = nested_table([level] * m, n, False, Fraction(0))
    lhs = sum(F[1:], Fraction(0))
    # c^n (1 - zq/c)_q^n = prod_{i=1..n} (c - z q^i)
    front = Fraction(1)
    for i in range(1, n + 1):
        front *= c - z * q0 ** i
    front /= q_pochhammer_at(n, q0) * (a * z - b * c) ** (n - 1)
    total = Fraction(0)
    for k in range(1, n + 1):
        total += (q_binomial(n, k)(q0) * (-1) ** (k - 1) * q0 ** (k * (k + 1) // 2 - n * k)
                  * (1 - q0 ** k) * (a - b * q0 ** k) ** (m + n - 1) / (c - z * q0 ** k) ** (m + 1))
    return lhs, front * total


def _dilcher_at(m: int, n: int, q0: Fraction):
    lhs = sum((Fraction((-1) ** (k + 1)) * q0 ** (k * (k + 1) // 2 + (m - 1) * k) / (1 - q0 ** k) ** m
               * q_binomial(n, k)(q0) for k in range(1, n + 1)), Fraction(0))
    F = nested_table([lambda k: q0 ** k / (1 - q0 ** k)] * m, n, False, Fraction(0))
    return lhs, sum(F[1:], Fraction(0))


def check_fulas(n: int, m: int, a, b, c, z, q0, seed: Optional[int] = None) -> Report:
    if n < 1 or m < 1:
        raise ParamError("FULAS needs n, m >= 1")
    a, b, c, z, q0 = (Fraction(v) for v in (a, b, c, z, q0))
    lhs, rhs = fulas_sides(n, m, a, b, c, z, q0)
    pairs = [("Fu-Lascoux", lhs, rhs)]
    if (a, b, c, z) == (0, -1, 1, 1):
        d_lhs, d_rhs = _dilcher_at(m, n, q0)
        pairs += [("specialization = q-Dilcher lhs", lhs, d_lhs),
                  ("specialization = q-Dilcher rhs", lhs, d_rhs)]
    params = _record(n=n, m=m, a=a, b=b, c=c, z=z, q=q0)
    return compare(IdentityId.FULAS, params, pairs, "sampled", seed)


def random_fulas_point(rng: random.Random, n: int):
    while True:
        a, b, c, z = (random_rational(rng) for _ in range(4))
        q0 = random_rational(rng, nonzero=True)
        if _fulas_poles(n, a, b, c, z, q0) is None:
            return a, b, c, z, q0


# -- limits --------------------------------------------------------------------


def _check_uchimura(q0: Fraction, N: int) -> Report:
    lhs_t = truncated_limit(SumKind.A_weak, (1,), q0, N)
    rhs_t = truncated_limit(SumKind.Z_weak, (1,), q0, N)
    scale = 1 / (1 - q0)
    # literal partial sums of the two series; they equal the scaled truncations term by term
    lit_l = Fraction(0)
    lit_r = Fraction(0)
    for k in range(1, N + 1):
        lit_l += (-1) ** (k + 1) * q0 ** (k * (k + 1) // 2) / (q_pochhammer_at(k - 1, q0) * (1 - q0 ** k) ** 2)
        lit_r += q0 ** k / (1 - q0 ** k)
    params = _record(q=q0, N=N)
    exact = compare(IdentityId.UCHIMURA_LIMIT, params, [
        ("literal lhs partial sum", lit_l, lhs_t.value * scale),
        ("literal rhs partial sum", lit_r, rhs_t.value * scale),
    ], "truncated")
    if not exact.holds:
        return exact
    residual = abs(lit_l - lit_r)
    bound = (lhs_t.tail_bound + rhs_t.tail_bound) * scale
    verdict = HOLDS if residual <= bound else INCONCLUSIVE
    return Report(IdentityId.UCHIMURA_LIMIT, params, "truncated", verdict, residual=residual, tail_bound=bound)


def _check_cor_limit_ninf(s: tuple, q0: Fraction, N: int) -> Report:
    z = truncated_limit(SumKind.Z_weak, s, q0, N)
    a = truncated_limit(SumKind.A_weak, C.dual(s), q0, N)
    return _truncated_report(IdentityId.COR_LIMIT_NINF, _record(s=s, q=q0, N=N), z, a)


def _check_cor_strict_ninf(m: int, q0: Fraction, N: int) -> Report:
    if m < 1:
        raise ParamError("COR_STRICT_NINF needs m >= 1")
    ones = (1,) * m
    z = truncated_limit(SumKind.Z_strict, ones, q0, N)
    a = truncated_limit(SumKind.A_strict, ones, q0, N)
    z = replace(z, value=z.value * (-1) ** m)
    return _truncated_report(IdentityId.COR_STRICT_NINF, _record(m=m, q=q0, N=N), z, a)


def _check_qzeta(s: tuple, q0: Fraction, N: int) -> Report:
    series = qzeta_series_partial(s, q0, N)
    via_z = qzeta_via_strict_z(s, q0, N)
    params = _record(s=s, q=q0, N=N)
    if series != via_z:
        return compare(IdentityId.QZETA_RELATION, params, [("partial sums", series, via_z)], "truncated")
    result = qzeta_truncated(s, q0, N)
    return Report(IdentityId.QZETA_RELATION, params, "truncated", HOLDS,
                  residual=Fraction(0), tail_bound=result.tail_bound)


# -- dispatch ------------------------------------------------------------------


def check_identity(id_, params: Mapping) -> Report:
    """Run one identity check; params are text or Python values keyed by name."""
    id_ = IdentityId(id_) if not isinstance(id_, IdentityId) else id_
    _require(id_, params)
    p = params
    seed = _int(p, "seed") if "seed" in p else 0
    if id_ is IdentityId.THEOREM1:
        partner = _comp(p, "against") if "against" in p else None
        return check_theorem1(_comp(p, "s"), _int(p, "n"), partner)
    if id_ is IdentityId.COR_LIMIT_Q1:
        s, n = _comp(p, "s"), _int(p, "n")
        return compare(id_, _record(s=s, n=n), [
            ("Z_n(s) = A_n(s*)", eval_q1(SumKind.Z_weak, s, n), eval_q1(SumKind.A_weak, C.dual(s), n)),
        ])
    if id_ is IdentityId.COR_LIMIT_NINF:
        return _check_cor_limit_ninf(_comp(p, "s"), _rat(p, "q"), _int(p, "N"))
    if id_ is IdentityId.DUALITY_AB:
        a, b, n = _int(p, "a"), _int(p, "b"), _int(p, "n")
        if a < 1 or b < 1 or n < 1:
            raise ParamError("DUALITY_AB needs a, b, n >= 1")
        left = (1,) * (a - 1) + (b,)
        right = (a,) + (1,) * (b - 1)
        return compare(id_, _record(a=a, b=b, n=n), [
            ("Z_n[{1}^(a-1),b] = A_n[a,{1}^(b-1)]",
             eval_sum(SumKind.Z_weak, left, n), eval_sum(SumKind.A_weak, right, n)),
        ])
    if id_ is IdentityId.QKARL:
        return _check_qkarl(_int(p, "m"), _int(p, "n"))
    if id_ is IdentityId.QKARL_DUAL:
        return _check_qkarl_dual(_int(p, "m"), _int(p, "n"))
    if id_ is IdentityId.GEORGE:
        return _check_george(_int(p, "n"))
    if id_ is IdentityId.KARL:
        return _check_karl(_int(p, "m"), _int(p, "n"))
    if id_ is IdentityId.AN01M:
        return _check_an01m(_int(p, "m"), _int(p, "n"))
    if id_ is IdentityId.LEMMA_QSUM:
        return _check_lemma_qsum(_int(p, "n"), _int(p, "k") if "k" in p else None)
    if id_ is IdentityId.QBINOM_THM:
        x = _rat(p, "x") if "x" in p else None
        y = _rat(p, "y") if "y" in p else None
        return _check_qbinom_thm(_int(p, "n"), x, y, seed)
    if id_ is IdentityId.THM2_STRICT_ONES:
        return _check_thm2(_int(p, "m"), _int(p, "n"))
    if id_ is IdentityId.COR_STRICT_NINF:
        return _check_cor_strict_ninf(_int(p, "m"), _rat(p, "q"), _int(p, "N"))
    if id_ is IdentityId.COR_STRICT_Q1:
        return _check_cor_strict_q1(_int(p, "m"), _int(p, "n"))
    if id_ is IdentityId.WEAK_STRICT_EXPANSION:
        return _check_expansion(_comp(p, "s"), _int(p, "n"))
    if id_ is IdentityId.PRODINGER_PAIR:
        n = _int(p, "n")
        if "s" in p:
            return _check_prodinger_theorem1(_comp(p, "s"), n)
        return _check_prodinger_random(n, seed)
    if id_ is IdentityId.FULAS:
        n, m = _int(p, "n"), _int(p, "m")
        keys = ("a", "b", "c", "z", "q")
        if all(k in p for k in keys):
            return check_fulas(n, m, *(_rat(p, k) for k in keys))
        if any(k in p for k in keys):
            raise ParamError("FULAS needs all of a, b, c, z, q or none (then a seed is used)")
        return check_fulas(n, m, *random_fulas_point(random.Random(seed), n), seed=seed)
    if id_ is IdentityId.UCHIMURA_LIMIT:
        return _check_uchimura(_rat(p, "q"), _int(p, "N"))
    if id_ is IdentityId.QZETA_RELATION:
        return _check_qzeta(_comp(p, "s"), _rat(p, "q"), _int(p, "N"))
    raise ParamError(f"unknown identity {id_}")


# -- sweeps --------------------------------------------------------------------


@dataclass
class Bounds:
    max_weight: int = 4
    max_n: int = 5
    max_m: int = 4
    max_length: Optional[int] = None
    q: Fraction = Fraction(1, 2)
    N: int = 30
    samples: Optional[int] = None
    seed: int = 0
    extra: dict = field(default_factory=dict)


def _grid(id_: IdentityId, b: Bounds) -> list:
    comps = C.compositions_up_to(b.max_weight, b.max_length)
    ns = range(1, b.max_n + 1)
    I = IdentityId
    if id_ in (I.THEOREM1, I.COR_LIMIT_Q1, I.WEAK_STRICT_EXPANSION):
        return [{"s": s, "n": n} for s in comps for n in ns]
    if id_ is I.PRODINGER_PAIR:
        if b.samples:
            rng = random.Random(b.seed)
            return [{"n": rng.randint(1, b.max_n), "seed": b.seed + i} for i in range(b.samples)]
        return [{"s": s, "n": n} for s in comps for n in ns]
    if id_ is I.COR_LIMIT_NINF:
        return [{"s": s, "q": b.q, "N": b.N} for s in comps]
    if id_ is I.QZETA_RELATION:
        return [{"s": s, "q": b.q, "N": N} for s in comps if s[0] >= 2 for N in range(1, b.N + 1)]
    if id_ is I.DUALITY_AB:
        return [{"a": a, "b": bb, "n": n}
                for a in range(1, b.max_weight + 1) for bb in range(1, b.max_weight + 2 - a) for n in ns]
    if id_ in (I.QKARL, I.KARL, I.AN01M):
        return [{"m": m, "n": n} for m in range(0, b.max_m + 1) for n in ns]
    if id_ is I.QKARL_DUAL:
        return [{"m": m, "n": n} for m in range(1, b.max_m + 1) for n in ns]
    if id_ in (I.THM2_STRICT_ONES, I.COR_STRICT_Q1):
        return [{"m": m, "n": n} for m in range(0, b.max_m + 1) for n in range(0, b.max_n + 1)]
    if id_ is I.COR_STRICT_NINF:
        return [{"m": m, "q": b.q, "N": b.N} for m in range(1, b.max_m + 1)]
    if id_ is I.GEORGE:
        return [{"n": n} for n in ns]
    if id_ is I.LEMMA_QSUM:
        return [{"n": n, "k": k} for n in ns for k in range(1, n + 1)]
    if id_ is I.QBINOM_THM:
        return [{"n": n, "seed": b.seed} for n in range(0, b.max_n + 1)]
    if id_ is I.FULAS:
        count = b.samples if b.samples is not None else 25
        rng = random.Random(b.seed)
        return [{"n": rng.randint(1, b.max_n), "m": rng.randint(1, b.max_m), "seed": b.seed + i}
                for i in range(count)]
    if id_ is I.UCHIMURA_LIMIT:
        return [{"q": b.q, "N": N} for N in range(1, b.N + 1)]
    raise ParamError(f"no sweep grid for {id_}")


def _param_key(params: Mapping) -> tuple:
    key = []
    for name in sorted(params):
        v = params[name]
        if "," in v or v == "":
            parts = tuple(Fraction(x) for x in v.split(",") if x)
        else:
            parts = (Fraction(v),)
        key.append((name, parts))
    return tuple(key)


def sweep(id_, bounds: Bounds, threads: int = 1) -> list:
    """Run the checker over a parameter grid; reports come back sorted by parameters."""
    id_ = IdentityId(id_) if not isinstance(id_, IdentityId) else id_
    grid = _grid(id_, bounds)
    if not grid:
        raise ParamError("empty parameter grid")
    run = lambda params: check_identity(id_, params)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run, grid))
    else:
        reports = [run(p) for p in grid]
    return sorted(reports, key=lambda r: _param_key(r.params) + (("seed", (r.seed or 0,)),))
