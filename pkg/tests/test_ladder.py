import pytest

from happyladder import ladder as L
from happyladder.errors import RepresentationOverflow
from happyladder.numerics import RleNumber, from_value, parse_rle, power_sum, value_of
from happyladder.search import height
from happyladder.waring import thresholds
from oracles import brute_height

RUNG8 = parse_rle("3788[9^973]", 10)


@pytest.fixture(scope="module")
def ladder_e2():
    with pytest.raises(RepresentationOverflow) as info:
        L.extend(L.Ladder.start(2, 10, 1), 12, scan_limit=10**5)
    return L.Ladder(2, 10, 1, info.value.entries)


def test_willmap_examples():
    assert L.willmap_holds(78999, 79899, 2, 10)
    t = 5000
    assert L.willmap_holds(t, t + 4 * 81, 2, 10)
    assert not L.willmap_holds(t, t + 4 * 81 - 1, 2, 10)
    assert not L.willmap_holds(10, 13, 2, 10)


def test_trailing_run_examples():
    x = from_value(78999, 10)
    assert L.trailing_run_ok(x, 2)
    assert not L.trailing_run_ok(x, 3)
    assert L.trailing_run_ok(RUNG8, 900)
    with pytest.raises(ValueError):
        L.trailing_run_ok(x, 0)


def test_ninesmap_examples():
    assert L.ninesmap_applicable(RUNG8, 2)
    assert not L.ninesmap_applicable(from_value(78999, 10), 2)
    assert L.ninesmap_applicable(parse_rle("1[9^22]", 10), 1)


def test_ladder_e2_b10(ladder_e2):
    ents = ladder_e2.entries
    assert [value_of(r.sigma) for r in ents[:8]] == [1, 10, 13, 23, 19, 7, 356, 78999]
    assert all(r.certificate.kind == L.EXHAUSTIVE for r in ents[:8])
    assert ents[8].sigma == RUNG8
    assert ents[8].certificate == L.Certificate(L.WILLMAP, 79899)
    assert ents[9].certificate == L.Certificate(L.COROLLARY)
    assert len(ents) == 10


def test_conservation_on_theorem_rungs(ladder_e2):
    for prev, r in zip(ladder_e2.entries, ladder_e2.entries[1:]):
        if r.certificate.kind in (L.WILLMAP, L.COROLLARY):
            assert power_sum(r.sigma, 2) == value_of(prev.sigma)


def test_exhaustive_rungs_have_their_height(ladder_e2):
    for r in ladder_e2.entries:
        if r.certificate.kind == L.EXHAUSTIVE:
            assert brute_height(value_of(r.sigma), 1, 2, 10) == r.h


def test_sigma_not_monotone(ladder_e2):
    vals = [value_of(r.sigma) for r in ladder_e2.entries[:6]]
    assert vals[4] == 19 and vals[5] == 7 and vals[4] > vals[5]


def test_corollary_rungs_factor_through_ninesmap(ladder_e2):
    ents = ladder_e2.entries
    for prev, r in zip(ents, ents[1:]):
        if r.certificate.kind == L.COROLLARY:
            assert L.ninesmap_applicable(prev.sigma, 2)
            assert L.ninesmap_applicable(r.sigma, 2)


def test_e1_ladder():
    lad = L.extend(L.Ladder.start(1, 10, 1), 4, scan_limit=10**5)
    assert [str(r.sigma) for r in lad.entries] == ["1", "10", "19", "199", "1[9^22]"]
    assert lad.entries[4].certificate.kind in (L.WILLMAP, L.COROLLARY)


def test_small_scan_falls_back_to_upper_bound():
    lad = L.extend(L.Ladder.start(2, 10, 1), 5, scan_limit=15)
    certs = [r.certificate.kind for r in lad.entries]
    assert certs[:3] == [L.EXHAUSTIVE] * 3
    assert lad.entries[3].certificate.kind == L.UPPERBOUND  # sigma_3 = 23 lies above the scan
    assert lad.entries[5].certificate == L.Certificate(L.EXHAUSTIVE, 7)
    for r in lad.entries:
        v = value_of(r.sigma)
        assert height(v, 1, 2, 10) == r.h


def test_extend_is_resumable(ladder_e2):
    part = L.Ladder(2, 10, 1, ladder_e2.entries[:5])
    assert L.extend(part, 8, scan_limit=10**5).entries == ladder_e2.entries[:9]
    assert L.extend(ladder_e2, 3).entries == ladder_e2.entries


def test_file_round_trip(ladder_e2, tmp_path):
    text = L.dumps(ladder_e2)
    assert text.splitlines()[0] == "e=2 b=10 u=1"
    assert "h=8 sigma=3788[9^973] cert=WILLMAP:79899" in text.splitlines()
    assert L.loads(text) == ladder_e2
    path = tmp_path / "lad.txt"
    L.save(ladder_e2, path)
    assert L.load(path) == ladder_e2


def test_verify_passes(ladder_e2):
    checks = L.verify(ladder_e2, scan_limit=10**5)
    assert checks and all(c.passed for c in checks), [c for c in checks if not c.passed]
    names = {c.name for c in checks}
    assert {"willmap-inequality", "corollary-threshold", "trailing-run", "conservation"} <= names


def test_verify_catches_corruption(ladder_e2):
    bad = L.Ladder(2, 10, 1, list(ladder_e2.entries[:9]))
    bad.entries[8] = L.LadderEntry(8, parse_rle("3789[9^973]", 10), bad.entries[8].certificate)
    failed = {c.name for c in L.verify(bad, scan_limit=10**5) if not c.passed}
    assert "conservation" in failed and "canonical-preimage" in failed

    bad2 = L.Ladder(2, 10, 1, list(ladder_e2.entries[:8]))
    bad2.entries[7] = L.LadderEntry(7, from_value(79899, 10), bad2.entries[7].certificate)
    failed = {c.name for c in L.verify(bad2, scan_limit=10**5) if not c.passed}
    assert failed == {"exhaustive-minimal", "exhaustive-limit"}


@pytest.mark.parametrize("e, b", [(1, 2), (1, 10), (2, 2), (2, 10)])
def test_trailing_run_conformance(e, b):
    try:
        lad = L.extend(L.Ladder.start(e, b, 1), 12, scan_limit=10**5)
    except RepresentationOverflow as exc:
        lad = L.Ladder(e, b, 1, exc.entries)
    th = thresholds(e, b)
    for r in lad.entries[1:]:
        if not r.certificate.certified:
            continue
        top = th.max_trail_delta(r.sigma.digit_count)
        for delta in list(range(1, min(top, 2000) + 1)) + ([top] if top > 2000 else []):
            assert th.meets_trail(r.sigma.digit_count, delta)
            assert L.trailing_run_ok(r.sigma, delta)
        assert not th.meets_trail(r.sigma.digit_count, max(top, 0) + 1)
