"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line."""

import random
from fractions import Fraction

from qharmonic import sums
from qharmonic.compositions import compositions_up_to, dual, theorem1_form
from qharmonic.qpoly import eval_at
from qharmonic.sums import SumKind, eval_A_recursive, eval_A_strict_recursive, eval_sum, eval_sum_brute
from qharmonic.verify import (
    HOLDS,
    Bounds,
    IdentityId as I,
    aggregate_verdict,
    check_fulas,
    check_identity,
    check_theorem1,
    sweep,
)


def _all_hold(reports):
    bad = [r for r in reports if r.verdict != HOLDS]
    return not bad, bad


def test_c01_duality_exhaustive(criterion):
    reports = sweep(I.THEOREM1, Bounds(max_weight=6, max_n=8))
    comps = {r.params["s"] for r in reports}
    ok, bad = _all_hold(reports)
    criterion(1, "duality sweep, weight <= 6 x n <= 8", ok and len(comps) == 63 and len(reports) == 504,
              f"{len(reports)} checks over {len(comps)} compositions, {len(bad)} not holding")


def test_c02_worked_examples(criterion):
    reports = [check_theorem1(s, n) for s in [(1, 1, 3, 1), (2, 2)] for n in range(1, 7)]
    forms = (theorem1_form((3, 1), (2, 1)) == ((1, 1, 3, 1), (3, 1, 2))
             and theorem1_form((1, 1), (1, 2)) == ((2, 2), (1, 2, 1)))
    ok, bad = _all_hold(reports)
    criterion(2, "worked examples (1,1,3,1) and (2,2), n <= 6, plus parameter forms", ok and forms,
              f"{len(reports)} checks, parameter forms {'match' if forms else 'differ'}")


def test_c03_classical_q_identities(criterion):
    reports = [check_identity(I.GEORGE, {"n": n}) for n in range(1, 21)]
    reports += [check_identity(I.QKARL, {"m": m, "n": n}) for m in range(0, 5) for n in range(1, 11)]
    reports += [check_identity(I.QKARL_DUAL, {"m": m, "n": n}) for m in range(1, 5) for n in range(1, 11)]
    ok, bad = _all_hold(reports)
    criterion(3, "q-analogs of the Uchimura and Dilcher identities and the dual form", ok,
              f"{len(reports)} symbolic checks, {len(bad)} not holding")


def test_c04_q_to_one_two_routes(criterion):
    agree = 0
    total = 0
    for m in range(1, 5):
        for n in range(1, 11):
            for kind, s in [(SumKind.Z_weak, (1,) * m), (SumKind.A_weak, (m,))]:
                via_canonical = eval_at(eval_sum(kind, s, n), 1)
                direct = sums._harmonic_direct(kind, s, n)
                total += 1
                agree += via_canonical == direct
    reports = [check_identity(I.KARL, {"m": m, "n": n}) for m in range(1, 5) for n in range(1, 11)]
    ok, bad = _all_hold(reports)
    criterion(4, "classical limit at q = 1, both routes", ok and agree == total,
              f"routes agree on {agree}/{total}; {len(reports)} identity checks, {len(bad)} not holding")


def test_c05_zero_first_argument(criterion):
    reports = [check_identity(I.AN01M, {"m": m, "n": n}) for m in range(0, 6) for n in range(1, 9)]
    ok, bad = _all_hold(reports)
    criterion(5, "A_n[0,{1}^m] [n]^m = 1, m <= 5, n <= 8", ok, f"{len(reports)} checks")


def test_c06_strict_unit_arguments(criterion):
    reports = [check_identity(I.THM2_STRICT_ONES, {"m": m, "n": n}) for m in range(0, 6) for n in range(0, 11)]
    ok, bad = _all_hold(reports)
    criterion(6, "(-1)^m Z^>[{1}^m] = A^>[{1}^m], m <= 5, n <= 10 incl. m=0, n=0", ok,
              f"{len(reports)} checks, {len(bad)} not holding")


def test_c07_recurrences_and_oracle(criterion):
    mismatches = []
    checks = 0
    comps5 = [()] + compositions_up_to(5)
    for s in comps5:
        for n in range(0, 7):
            if n:
                checks += 1
                if eval_A_recursive(s, n) != eval_sum(SumKind.A_weak, s, n):
                    mismatches.append(("A", s, n))
            checks += 1
            if eval_A_strict_recursive(s, n) != eval_sum(SumKind.A_strict, s, n):
                mismatches.append(("A>", s, n))
    for kind in SumKind:
        for s in [()] + compositions_up_to(4, 3):
            for n in range(0, 6):
                if n == 0 and not s and not kind.strict:
                    continue  # weak empty sum at n = 0 is left undefined
                checks += 1
                if eval_sum_brute(kind, s, n) != eval_sum(kind, s, n):
                    mismatches.append((kind.name, s, n))
    criterion(7, "recurrences and brute-force oracle agree with the evaluator", not mismatches,
              f"{checks} comparisons, {len(mismatches)} mismatches")


def test_c08_weak_to_strict_expansion(criterion):
    # Checked literally: the strict sums here weight every level by q^k, so a
    # block of r merged indices contributes q^k where the weak sum has q^(rk).
    # The identity therefore holds at q = 1 but not as rational functions in q.
    comps = [s for s in compositions_up_to(6, 4)]
    reports = [check_identity(I.WEAK_STRICT_EXPANSION, {"s": s, "n": n}) for s in comps for n in range(1, 7)]
    ok, bad = _all_hold(reports)
    at_q1 = all(r.witness["holds_at_q1"] for r in bad)
    weighted = all(r.witness["holds_with_block_weights_q^(rk)"] for r in bad)
    detail = f"{len(reports) - len(bad)}/{len(reports)} hold"
    if bad:
        first = bad[0].params
        detail += (f"; first failure s={first['s']} n={first['n']}; every failure holds at q=1: {at_q1}; "
                   f"every failure holds with q^(rk) block weights: {weighted}")
    criterion(8, "weak-to-strict coarsening expansion, length <= 4, weight <= 6, n <= 6", ok, detail)


def test_c09_inverse_pair(criterion):
    rng = random.Random(2024)
    reports = []
    for trial in range(100):
        n = rng.randint(1, 5)  # sequences of length n + 1 <= 6
        reports.append(check_identity(I.PRODINGER_PAIR, {"n": n, "seed": 1000 + trial}))
    reports += [check_identity(I.PRODINGER_PAIR, {"s": s, "n": n}) for s in ["2", "1,1"] for n in range(1, 6)]
    ok, bad = _all_hold(reports)
    criterion(9, "inverse pair: 100 seeded random sequences plus duality sequences", ok,
              f"{len(reports)} checks, {len(bad)} not holding")


def test_c10_fu_lascoux(criterion):
    random_reports = sweep(I.FULAS, Bounds(max_n=5, max_m=5, samples=25, seed=0))
    spec_points = [(3, 2, Fraction(1, 3)), (1, 1, Fraction(1, 2)), (4, 3, Fraction(2, 7)),
                   (5, 1, Fraction(3, 5)), (2, 5, Fraction(-4, 9))]
    special = [check_fulas(n, m, 0, -1, 1, 1, q0) for n, m, q0 in spec_points]
    ok, bad = _all_hold(random_reports + special)
    criterion(10, "Fu-Lascoux at 25 seeded points plus 5 specialization points", ok and len(random_reports) == 25,
              f"{len(random_reports)} random + {len(special)} specialization, {len(bad)} not holding")


def test_c11_limit_with_tail_bounds(criterion):
    r = check_identity(I.UCHIMURA_LIMIT, {"q": "1/2", "N": 40})
    small = r.tail_bound < Fraction(1, 10 ** 9)
    criterion(11, "limiting identity at q = 1/2, N = 40", r.verdict == HOLDS and small,
              f"residual {float(r.residual):.3e} <= combined tail bound {float(r.tail_bound):.3e} < 1e-9")


def test_c12_qzeta_routes(criterion):
    reports = [check_identity(I.QZETA_RELATION, {"s": s, "q": q0, "N": N})
               for s in ["2", "2,1"] for q0 in ["1/3", "1/2"] for N in range(1, 31)]
    exact = all(r.residual == 0 for r in reports)
    ok, bad = _all_hold(reports)
    criterion(12, "q-zeta partial sums by two routes, N <= 30", ok and exact,
              f"{len(reports)} exact comparisons, {len(bad)} not holding")
