"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line and registers it for the end-of-session
summary.  Run standalone with ``python tests/test_acceptance.py``.
"""

import pickle
import time
from contextlib import contextmanager

import pytest

import conftest
from happyladder import ladder as L
from happyladder.errors import RepresentationOverflow
from happyladder.numerics import format_rle, power_sum, value_of
from happyladder.preimage import digit_count_feasible, min_preimage
from happyladder.search import find_cycles, scan
from happyladder.waring import compute_g, min_terms, min_terms_table, thresholds
from oracles import DirectPreimageDP, brute_height, digits, first_preimages_by_scan


@contextmanager
def criterion(number: int, title: str):
    name = f"criterion {number}"
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        conftest.ACCEPTANCE[name] = (False, f"{title}: {type(exc).__name__}: {exc}"[:300])
        print(f"FAIL {name}: {title}")
        raise
    elapsed = time.perf_counter() - start
    conftest.ACCEPTANCE[name] = (True, f"{title} ({elapsed:.2f}s)")
    print(f"PASS {name}: {title} ({elapsed:.2f}s)")


@pytest.fixture(scope="module")
def ladder_e2():
    try:
        lad = L.extend(L.Ladder.start(2, 10, 1), 12, scan_limit=10**5)
    except RepresentationOverflow as exc:
        return L.Ladder(2, 10, 1, exc.entries), exc
    return lad, None


def test_criterion_1_golden_values():
    with criterion(1, "sigma_7 = 78999, tau_7 = 79899, heights 0..7 table"):
        start = time.perf_counter()
        res = scan(1, 2, 10, 10**5)
        elapsed = time.perf_counter() - start
        assert (res.sigma(7), res.tau(7)) == (78999, 79899)
        assert [res.sigma(h) for h in range(8)] == [1, 10, 13, 23, 19, 7, 356, 78999]
        for h in range(8):
            assert brute_height(res.sigma(h), 1, 2, 10) == h
        assert elapsed < 10


def test_criterion_2_sigma_one_is_base():
    with criterion(2, "sigma_1(1) = b for e in 1..5, b in 2..12"):
        for e in range(1, 6):
            for b in range(2, 13):
                res = scan(1, e, b, b * b)
                assert res.sigma(1) == b, (e, b)
                # independent check: nothing in 2..b-1 maps to 1
                assert all(brute_height(x, 1, e, b) != 1 for x in range(2, b))


def test_criterion_3_thresholds():
    def by_hand(e, b):
        g = compute_g(e).g
        p = next(k for k in range(64) if b**k > g)
        num, den = (g + 1) * (b - 1) ** e, (b - 1) ** e - (b - 2) ** e
        return p, -(-(num + (e + p) * den) // den)

    with criterion(3, "thresholds (2,10)->(1,27), (2,2)->(3,10), (1,10)->(1,20)"):
        for (e, b), want in {(2, 10): (1, 27), (2, 2): (3, 10), (1, 10): (1, 20)}.items():
            th = thresholds(e, b)
            assert (th.p, th.d_cor) == want == by_hand(e, b)


def test_criterion_4_min_preimage_oracle():
    configs = [(1, 10), (2, 10), (3, 10), (2, 2), (2, 3)]
    scan_limits = {10: 10**6, 2: 2**20, 3: 3**13}
    with criterion(4, "min_preimage(t) = exhaustive minimum, t <= 5000, 5 configs"):
        start = time.perf_counter()
        for e, b in configs:
            oracle = DirectPreimageDP(5000, e, b)
            scanned = first_preimages_by_scan(scan_limits[b], 5000, e, b)
            for t in range(1, 5001):
                x = min_preimage(t, e, b)
                if t in scanned:
                    assert value_of(x) == scanned[t], (e, b, t)
                else:
                    assert x.digit_count >= len(digits(scan_limits[b], b))
                assert x.digit_count == oracle.best[t], (e, b, t)
                assert power_sum(x, e) == t
                assert x.runs[0][0] == oracle.first_digit(t), (e, b, t)
                rest = t - x.runs[0][0] ** e
                if rest:
                    (d, c), tail = x.runs[0], x.runs[1:]
                    tail_runs = ((d, c - 1),) + tail if c > 1 else tail
                    assert tail_runs == min_preimage(rest, e, b).runs
        assert time.perf_counter() - start < 60


def test_criterion_5_rung_8(ladder_e2):
    lad, _ = ladder_e2
    with criterion(5, "rung 8 = 3788[9^973], WILLMAP(79899), 976 digits infeasible"):
        rung = lad.entries[8]
        assert format_rle(rung.sigma) == "3788[9^973]"
        assert rung.sigma.digit_count == 977
        assert rung.certificate == L.Certificate(L.WILLMAP, 79899)
        assert 78999 + compute_g(2).g * 81 == 79323 <= 79899
        assert L.willmap_holds(78999, 79899, 2, 10)
        assert power_sum(rung.sigma, 2) == 78999
        assert not digit_count_feasible(78999, 2, 10, 976)


def test_criterion_6_rung_9_and_truncation():
    with criterion(6, "rung 9 COROLLARY, conservation, overflow past rung 9"):
        start = time.perf_counter()
        with pytest.raises(RepresentationOverflow) as info:
            L.extend(L.Ladder.start(2, 10, 1), 10, scan_limit=10**5)
        ents = info.value.entries
        assert len(ents) == 10
        r8, r9 = ents[8], ents[9]
        assert r9.certificate == L.Certificate(L.COROLLARY)
        assert r8.sigma.digit_count == 977 >= thresholds(2, 10).d_cor + 1
        assert power_sum(r9.sigma, 2) == value_of(r8.sigma)
        assert time.perf_counter() - start < 60


def test_criterion_7_trailing_run_conformance():
    with criterion(7, "trailing (b-1) runs on every rung, e in {1,2}, b in {2,10}"):
        violations = 0
        checked = 0
        for e in (1, 2):
            for b in (2, 10):
                try:
                    lad = L.extend(L.Ladder.start(e, b, 1), 12, scan_limit=10**5)
                except RepresentationOverflow as exc:
                    lad = L.Ladder(e, b, 1, exc.entries)
                th = thresholds(e, b)
                for r in lad.entries[1:]:
                    top = th.max_trail_delta(r.sigma.digit_count)
                    deltas = list(range(1, min(top, 2000) + 1))
                    if top > 2000:
                        deltas.append(top)
                    for delta in deltas:
                        checked += 1
                        if not (th.meets_trail(r.sigma.digit_count, delta) and L.trailing_run_ok(r.sigma, delta)):
                            violations += 1
        assert checked > 0
        assert violations == 0


def test_criterion_8_waring():
    with criterion(8, "g = (1,4,9,19,37); witnesses 7->4, 23->9, 79->19; r <= 10^4 within g"):
        infos = [compute_g(e) for e in range(1, 6)]
        assert [i.g for i in infos] == [1, 4, 9, 19, 37]
        assert all(i.formula_validated for i in infos)
        assert min_terms(7, 2, 9) == 4
        assert min_terms(23, 3, 9) == 9
        assert min_terms(79, 4, 9) == 19
        for e in range(1, 5):
            assert int(min_terms_table(10**4, e, 10**4).max()) <= compute_g(e).g


def test_criterion_9_cycles():
    with criterion(9, "cycles e=2, b=10: {1} and the 8-cycle"):
        start = time.perf_counter()
        cs = find_cycles(2, 10)
        assert time.perf_counter() - start < 1
        assert {frozenset(c) for c in cs.cycles} == {
            frozenset({1}),
            frozenset({4, 16, 37, 58, 89, 145, 42, 20}),
        }


def test_criterion_10_parallel_determinism():
    with criterion(10, "parallel scans (2,4,8 workers) byte-identical to sequential"):
        ref = pickle.dumps(scan(1, 2, 10, 10**5).by_height)
        for w in (2, 4, 8):
            assert pickle.dumps(scan(1, 2, 10, 10**5, workers=w).by_height) == ref


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
