import json

import pytest

from planarlab.bounds import base9_family, exceptions_for, witness_search
from planarlab.scan import (
    CheckpointMismatch,
    ScanConfig,
    conjecture_scan,
    load_checkpoint,
    parse_bases,
    scan_block,
    scan_cells,
)


def test_parse_bases():
    assert parse_bases("prime", 10**4, 2) == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
    assert parse_bases("prime-power", 10**4, 2) == [9, 25, 27, 49, 81]
    assert parse_bases("9,25", 10**4, 2) == [9, 25]
    with pytest.raises(ValueError):
        parse_bases("6", 100, 2)
    with pytest.raises(ValueError):
        parse_bases("4", 100, 2)


def test_scan_cells():
    cells = scan_cells(ScanConfig(cap=1000, bases="prime"))
    assert (3, 6) in cells and (31, 2) in cells and (3, 7) not in cells and (37, 2) not in cells
    assert all(b**n <= 1000 for b, n in cells)
    assert scan_cells(ScanConfig(cap=1000, bases="3", max_n=3)) == [(3, 2), (3, 3)]


@pytest.mark.parametrize("b,n", [(5, 3), (7, 3), (9, 2), (3, 6), (11, 2), (25, 2)])
def test_scan_block_agrees_with_witness_search(b, n):
    q = b**n
    part = scan_block(b, n, 1, q)
    want = []
    for d in range(1, q):
        lab = exceptions_for(b, n, d)
        if (lab is None or lab.kind == "Base9Family") and witness_search(b, n, d) is None:
            want.append([d, str(lab or "")])
    assert part["failures"] == want
    # Base9Family exponents are both labeled and searched
    assert sum(part["labels"].values()) + part["searched"] - part["labels"]["Base9Family"] == q - 1


def test_small_prime_scan_is_clean():
    rep = conjecture_scan(ScanConfig(cap=10**4, bases="prime"))
    assert rep.complete and rep.failures == []


def test_base9_scan_fails_exactly_on_family():
    rep = conjecture_scan(ScanConfig(cap=10**4, bases="9"))
    for c in rep.cells:
        got = sorted(d for d, _ in c.failures)
        assert got == sorted(base9_family(c.n)), (c.n, got)
        assert all(lab.startswith("Base9Family") for _, lab in c.failures)
    n2 = next(c for c in rep.cells if c.n == 2)
    assert [d for d, _ in n2.failures] == [3, 27]
    assert rep.unlabeled_failures == []


def test_five_cells_only_labeled_no_witness():
    rep = conjecture_scan(ScanConfig(cap=10**4, bases="5"))
    assert rep.failures == []
    assert any(c.labels["FiveFamily"] for c in rep.cells if c.n % 2)


def test_thread_and_resume_determinism(tmp_path):
    cfg = ScanConfig(cap=5000, bases="prime-power", block=256)
    serial = conjecture_scan(cfg).as_dict()
    par = conjecture_scan(cfg, threads=3).as_dict()
    assert par == serial

    ck = tmp_path / "ck.json"
    first = conjecture_scan(cfg, ck, max_blocks=5)
    assert not first.complete
    saved_cfg, nxt, _ = load_checkpoint(ck)
    assert saved_cfg == cfg and nxt == 5
    second = conjecture_scan(cfg, ck, resume=True, threads=2, max_blocks=7)
    assert not second.complete
    final = conjecture_scan(cfg, ck, resume=True)
    assert final.complete and final.as_dict() == serial
    # resuming a finished scan is a no-op
    assert conjecture_scan(cfg, ck, resume=True).as_dict() == serial


def test_checkpoint_mismatch(tmp_path):
    cfg = ScanConfig(cap=2000, bases="prime", block=128)
    ck = tmp_path / "ck.json"
    conjecture_scan(cfg, ck, max_blocks=2)
    with pytest.raises(CheckpointMismatch):
        conjecture_scan(ScanConfig(cap=3000, bases="prime", block=128), ck, resume=True)
    state = json.loads(ck.read_text())
    state["config"]["cap"] = 9999
    ck.write_text(json.dumps(state))
    with pytest.raises(CheckpointMismatch):
        load_checkpoint(ck)
    state["version"] = 99
    ck.write_text(json.dumps(state))
    with pytest.raises(CheckpointMismatch):
        load_checkpoint(ck)
    with pytest.raises(FileNotFoundError):
        conjecture_scan(cfg, tmp_path / "missing.json", resume=True)


def test_fingerprint_is_stable():
    assert ScanConfig().fingerprint() == ScanConfig().fingerprint()
    assert ScanConfig(cap=10).fingerprint() != ScanConfig(cap=11).fingerprint()
