"""Exhaustive scan of the digit-sum conjecture over (b, n) cells.

Every d in [1, q-1] outside the exception labels must have a witness e.
Cells are split into contiguous d-blocks; each block is searched
vectorized (candidate e applied to all remaining d at once), and a d is a
failure only once every e in [1, q-1] has been tried.  Results are merged in
block order, so reports do not depend on the worker count or on where a run
was interrupted and resumed.
"""
from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .bounds import (
    LABEL_ORDER,
    VECTOR_Q_CAP,
    _ds_func,
    exception_codes,
    exceptions_for,
    lhs_vec,
    structured_candidates,
)
from .ffield import is_prime, prime_power

CHECKPOINT_VERSION = 1
BLOCK = 2**14
_CELLS = 1 << 20
_BASE9 = LABEL_ORDER.index("Base9Family") + 1


class CheckpointMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ScanConfig:
    cap: int = 10**6
    bases: str = "prime"
    min_n: int = 2
    max_n: Optional[int] = None
    block: int = BLOCK

    def fingerprint(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def parse_bases(spec: str, cap: int, min_n: int) -> list[int]:
    """'prime', 'prime-power' (non-prime), 'all', or a comma list of bases."""
    top = int(round(cap ** (1 / min_n))) + 2
    while top**min_n > cap:
        top -= 1
    if spec in ("prime", "prime-power", "all"):
        out = []
        for b in range(3, top + 1, 2):
            pp = prime_power(b)
            if pp is None:
                continue
            prime = is_prime(b)
            if spec == "all" or (spec == "prime") == prime:
                out.append(b)
        return out
    out = sorted({int(x) for x in spec.split(",") if x.strip()})
    for b in out:
        if b < 3 or b % 2 == 0 or prime_power(b) is None:
            raise ValueError(f"base {b} is not an odd prime power")
    return out


def scan_cells(cfg: ScanConfig) -> list[tuple[int, int]]:
    cells = []
    for b in parse_bases(cfg.bases, cfg.cap, cfg.min_n):
        n = cfg.min_n
        while b**n <= cfg.cap and (cfg.max_n is None or n <= cfg.max_n):
            if b**n > VECTOR_Q_CAP:
                raise ValueError("scan cells need q <= 2^31")
            cells.append((b, n))
            n += 1
    return cells


def _blocks(cells: Sequence[tuple[int, int]], block: int) -> list[tuple[int, int, int, int, int]]:
    """(cell index, b, n, lo, hi) for every d-block in order."""
    out = []
    for ci, (b, n) in enumerate(cells):
        q = b**n
        for lo in range(1, q, block):
            out.append((ci, b, n, lo, min(q, lo + block)))
    return out


def scan_block(b: int, n: int, lo: int, hi: int) -> dict:
    """Search d in [lo, hi) and summarize."""
    q = b**n
    ds = _ds_func(b, n)
    twice = n * (b - 1)
    d = np.arange(lo, hi, dtype=np.int64)
    codes = exception_codes(b, n, d, ds)
    labels = {name: int((codes == k).sum()) for k, name in enumerate(LABEL_ORDER, start=1)}
    rem = d[(codes == 0) | (codes == _BASE9)]
    searched = int(rem.size)

    def keep(e):
        return rem[~(2 * lhs_vec(b, n, rem, e, ds) > twice)]

    for e, _tag in structured_candidates(b, n):
        if not rem.size:
            break
        rem = keep(e)
        if n == 1 and e == 1 and rem.size:
            rem = keep(np.maximum((b - 1) // rem, 1))
    e_lo = 1
    while rem.size and e_lo <= q - 1:
        width = max(1, _CELLS // rem.size)
        es = np.arange(e_lo, min(q - 1, e_lo + width - 1) + 1, dtype=np.int64)
        hit = (2 * lhs_vec(b, n, rem[:, None], es[None, :], ds) > twice).any(axis=1)
        rem = rem[~hit]
        e_lo += es.size
    failures = [[int(x), str(exceptions_for(b, n, int(x)) or "")] for x in rem]
    return {"labels": labels, "searched": searched, "failures": failures}


@dataclass
class CellResult:
    b: int
    n: int
    total: int = 0
    searched: int = 0
    labels: dict = field(default_factory=lambda: {k: 0 for k in LABEL_ORDER})
    failures: list = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.b**self.n

    def merge(self, lo: int, hi: int, part: dict):
        self.total += hi - lo
        self.searched += part["searched"]
        for k, v in part["labels"].items():
            self.labels[k] += v
        self.failures.extend(part["failures"])

    @property
    def unlabeled_failures(self) -> list[int]:
        return [d for d, lab in self.failures if not lab]


@dataclass
class ScanReport:
    config: ScanConfig
    cells: list[CellResult]
    complete: bool

    @property
    def failures(self) -> list[tuple[int, int, int, str]]:
        return [(c.b, c.n, d, lab) for c in self.cells for d, lab in c.failures]

    @property
    def unlabeled_failures(self) -> list[tuple[int, int, int]]:
        return [(b, n, d) for b, n, d, lab in self.failures if not lab]

    def as_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "complete": self.complete,
            "cells": [asdict(c) for c in self.cells],
        }


def _save(path: Path, cfg: ScanConfig, next_block: int, cells: list[CellResult]):
    state = {
        "version": CHECKPOINT_VERSION,
        "fingerprint": cfg.fingerprint(),
        "config": asdict(cfg),
        "next_block": next_block,
        "cells": [asdict(c) for c in cells],
    }
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(state))
    os.replace(tmp, path)


def load_checkpoint(path: Union[str, Path]) -> tuple[ScanConfig, int, list[CellResult]]:
    state = json.loads(Path(path).read_text())
    if state.get("version") != CHECKPOINT_VERSION:
        raise CheckpointMismatch("unsupported checkpoint version")
    cfg = ScanConfig(**state["config"])
    if cfg.fingerprint() != state.get("fingerprint"):
        raise CheckpointMismatch("checkpoint fingerprint does not match its config")
    return cfg, int(state["next_block"]), [CellResult(**c) for c in state["cells"]]


def conjecture_scan(
    cfg: ScanConfig,
    checkpoint: Optional[Union[str, Path]] = None,
    resume: bool = False,
    threads: int = 1,
    max_blocks: Optional[int] = None,
) -> ScanReport:
    """Run (or resume) a scan; ``max_blocks`` stops early, leaving a resumable checkpoint."""
    path = Path(checkpoint) if checkpoint else None
    cells = scan_cells(cfg)
    blocks = _blocks(cells, cfg.block)
    start = 0
    results = [CellResult(b, n) for b, n in cells]
    if resume:
        if path is None or not path.exists():
            raise FileNotFoundError("resume needs an existing checkpoint")
        saved_cfg, start, results = load_checkpoint(path)
        if saved_cfg != cfg:
            raise CheckpointMismatch("checkpoint was written for a different configuration")
    stop = len(blocks) if max_blocks is None else min(len(blocks), start + max_blocks)
    todo = blocks[start:stop]

    def consume(parts: Iterable[dict]):
        for k, ((ci, _b, _n, lo, hi), part) in enumerate(zip(todo, parts)):
            results[ci].merge(lo, hi, part)
            if path is not None:
                _save(path, cfg, start + k + 1, results)

    args = [(b, n, lo, hi) for _ci, b, n, lo, hi in todo]
    if threads <= 1 or len(args) <= 1:
        consume(scan_block(*a) for a in args)
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            consume(pool.map(scan_block, *zip(*args)))
    if path is not None and not todo:
        _save(path, cfg, stop, results)
    for c in results:
        c.failures.sort()
    return ScanReport(cfg, results, complete=stop == len(blocks))
