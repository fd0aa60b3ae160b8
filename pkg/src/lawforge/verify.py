"""Finite verification of laws: exhaustive, sampled and generating-pair checks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .config import CapExceeded, get_caps
from .freeword import Word, enumerate_reduced
from .groups import Group, IndexedGroup, ProductGroup, evaluate

LAW = "law"
LAW_SAMPLED = "law (sampled)"
COUNTEREXAMPLE = "counterexample"
COVERS = "covers-generating-pairs"

DEFAULT_SAMPLES = 100_000
# Pairs evaluated per vectorised chunk.
CHUNK = 1 << 18


@dataclass
class LawCertificate:
    word: str
    group: str
    mode: str
    verdict: str
    pairs_checked: int
    counterexample: tuple | None = None
    counterexample_labels: tuple[str, str] | None = None
    samples: int | None = None
    seed: int | None = None
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict in (LAW, LAW_SAMPLED, COVERS)

    def to_dict(self, with_time: bool = True) -> dict[str, Any]:
        d = {
            "word": self.word,
            "group": self.group,
            "mode": self.mode,
            "verdict": self.verdict,
            "pairs_checked": self.pairs_checked,
        }
        if self.mode == "sampled":
            d["samples"] = self.samples
            d["seed"] = self.seed
        if self.counterexample_labels is not None:
            d["counterexample"] = list(self.counterexample_labels)
        if self.extra:
            d.update(self.extra)
        if with_time:
            d["wall_time"] = round(self.wall_time, 6)
        return d


# -- evaluation kernels ---------------------------------------------------------


def eval_indexed(w: Word, ig: IndexedGroup, gs: np.ndarray, hs: np.ndarray) -> np.ndarray:
    """``w(g_i, h_i)`` for index arrays over an indexed group."""
    acc = np.full(len(gs), ig.id, dtype=np.int32)
    table = ig.table
    for gen, exp in w.blocks:
        src = gs if gen == 0 else hs
        acc = table[acc, ig.power_map(exp)[src]]
    return acc


def eval_batch(w: Word, group: Group, g_arr: np.ndarray, h_arr: np.ndarray) -> np.ndarray:
    """``w(g_i, h_i)`` on element arrays of a batch-capable backend."""
    n = group.order()
    acc = group.batch_identity(len(g_arr))
    for gen, exp in w.blocks:
        src = g_arr if gen == 0 else h_arr
        acc = group.batch_mul(acc, group.batch_pow(src, exp % n))
    return acc


def _reject_empty(w: Word):
    if not isinstance(w, Word):
        raise TypeError(f"expected Word, got {type(w).__name__}")
    if not w:
        raise ValueError("the empty word is not a law candidate")


def _labels(group: Group, ig: IndexedGroup, i: int) -> str:
    return ig.format_element(int(i))


# -- check_law -------------------------------------------------------------------


def check_law(w: Word, group: Group, mode: str = "exhaustive", samples: int | None = None,
              seed: int = 0, fallback: bool = False) -> LawCertificate:
    """Decide whether ``w`` vanishes on ``group x group``.

    ``mode`` is ``"exhaustive"`` or ``"sampled"``.  Exhaustive checks need
    ``|G|`` within the pair cap, except for direct products, which are checked
    factor by factor.  With ``fallback=True`` an over-cap exhaustive request
    is downgraded to sampling instead of raising :class:`CapExceeded`.
    """
    _reject_empty(w)
    start = time.perf_counter()
    if mode == "exhaustive":
        try:
            cert = _check_exhaustive(w, group)
        except CapExceeded:
            if not fallback:
                raise
            cert = _check_sampled(w, group, samples or DEFAULT_SAMPLES, seed)
    elif mode == "sampled":
        cert = _check_sampled(w, group, samples or DEFAULT_SAMPLES, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    cert.wall_time = time.perf_counter() - start
    return cert


def _check_exhaustive(w: Word, group: Group) -> LawCertificate:
    n = group.order()
    cap = get_caps().pairs
    if n > cap:
        if isinstance(group, ProductGroup):
            return _check_product(w, group)
        raise CapExceeded(f"|{group.name}| = {n} exceeds the exhaustive pair cap {cap}")
    ig = group.indexed()
    hit = first_nonvanishing(w, ig)
    if hit is None:
        return LawCertificate(str(w), group.name, "exhaustive", LAW, n * n)
    g, h = hit
    return LawCertificate(str(w), group.name, "exhaustive", COUNTEREXAMPLE, g * n + h + 1,
                          counterexample=(ig.label(g), ig.label(h)),
                          counterexample_labels=(_labels(group, ig, g), _labels(group, ig, h)))


def first_nonvanishing(w: Word, ig: IndexedGroup, rows: np.ndarray | None = None):
    """First ``(g, h)`` in g-major order with ``w(g, h) != 1``, or ``None``."""
    n = ig.n
    rows = np.arange(n) if rows is None else rows
    step = max(1, CHUNK // n)
    hs_row = np.arange(n, dtype=np.int32)
    for s in range(0, len(rows), step):
        block = rows[s:s + step].astype(np.int32)
        gs = np.repeat(block, n)
        hs = np.tile(hs_row, len(block))
        bad = eval_indexed(w, ig, gs, hs) != ig.id
        if bad.any():
            k = int(np.argmax(bad))
            return int(gs[k]), int(hs[k])
    return None


def _check_product(w: Word, group: ProductGroup) -> LawCertificate:
    # w is a law for a direct product iff it is a law for every factor.
    n = group.order()
    for i, f in enumerate(group.factors):
        sub = _check_exhaustive(w, f)
        if sub.verdict == COUNTEREXAMPLE:
            g = tuple(sub.counterexample[0] if j == i else fj.identity() for j, fj in enumerate(group.factors))
            h = tuple(sub.counterexample[1] if j == i else fj.identity() for j, fj in enumerate(group.factors))
            return LawCertificate(str(w), group.name, "exhaustive", COUNTEREXAMPLE, sub.pairs_checked,
                                  counterexample=(g, h),
                                  counterexample_labels=(group.format_element(g), group.format_element(h)),
                                  extra={"factorwise": True})
    return LawCertificate(str(w), group.name, "exhaustive", LAW, n * n, extra={"factorwise": True})


def _check_sampled(w: Word, group: Group, samples: int, seed: int) -> LawCertificate:
    rng = np.random.default_rng(seed)
    n = group.order()
    use_table = n <= get_caps().table
    if use_table:
        ig = group.indexed()
        gs = rng.integers(n, size=samples).astype(np.int32)
        hs = rng.integers(n, size=samples).astype(np.int32)
        bad = eval_indexed(w, ig, gs, hs) != ig.id
        if bad.any():
            k = int(np.argmax(bad))
            g, h = int(gs[k]), int(hs[k])
            return LawCertificate(str(w), group.name, "sampled", COUNTEREXAMPLE, k + 1,
                                  counterexample=(ig.label(g), ig.label(h)),
                                  counterexample_labels=(ig.format_element(g), ig.format_element(h)),
                                  samples=samples, seed=seed)
        return LawCertificate(str(w), group.name, "sampled", LAW_SAMPLED, samples, samples=samples, seed=seed)
    if group.has_batch and n <= get_caps().enumeration:
        arr = group.elements_array()
        gi = rng.integers(n, size=samples)
        hi = rng.integers(n, size=samples)
        step = 4096
        for s in range(0, samples, step):
            vals = eval_batch(w, group, arr[gi[s:s + step]], arr[hi[s:s + step]])
            bad = ~group.batch_is_identity(vals)
            if bad.any():
                k = s + int(np.argmax(bad))
                els = group.elements()
                g, h = els[gi[k]], els[hi[k]]
                return LawCertificate(str(w), group.name, "sampled", COUNTEREXAMPLE, k + 1,
                                      counterexample=(g, h),
                                      counterexample_labels=(group.format_element(g), group.format_element(h)),
                                      samples=samples, seed=seed)
        return LawCertificate(str(w), group.name, "sampled", LAW_SAMPLED, samples, samples=samples, seed=seed)
    for k in range(samples):
        g, h = group.random_element(rng), group.random_element(rng)
        if not group.is_identity(evaluate(w, group, g, h)):
            return LawCertificate(str(w), group.name, "sampled", COUNTEREXAMPLE, k + 1,
                                  counterexample=(g, h),
                                  counterexample_labels=(group.format_element(g), group.format_element(h)),
                                  samples=samples, seed=seed)
    return LawCertificate(str(w), group.name, "sampled", LAW_SAMPLED, samples, samples=samples, seed=seed)


# -- vanishing sets ----------------------------------------------------------------


def vanishing_mask(w: Word, group: Group) -> np.ndarray:
    """Boolean ``|G| x |G|`` matrix, true where ``w(g, h) = 1``."""
    _reject_empty(w)
    n = group.order()
    if n > get_caps().pairs:
        raise CapExceeded(f"|{group.name}| = {n} exceeds the pair cap")
    ig = group.indexed()
    mask = np.empty((n, n), dtype=bool)
    step = max(1, CHUNK // n)
    hs_row = np.arange(n, dtype=np.int32)
    for s in range(0, n, step):
        block = np.arange(s, min(n, s + step), dtype=np.int32)
        gs = np.repeat(block, n)
        hs = np.tile(hs_row, len(block))
        mask[s:s + len(block)] = (eval_indexed(w, ig, gs, hs) == ig.id).reshape(len(block), n)
    return mask


def vanishing_set(w: Word, group: Group) -> set:
    """``Z(G, w)`` as a set of element pairs."""
    mask = vanishing_mask(w, group)
    ig = group.indexed()
    return {(ig.label(int(g)), ig.label(int(h))) for g, h in zip(*np.nonzero(mask))}


# -- generating pairs -----------------------------------------------------------------


def check_on_generating_pairs(w: Word, group: Group) -> LawCertificate:
    """Does ``w`` vanish on every pair that generates ``group``?"""
    _reject_empty(w)
    start = time.perf_counter()
    n = group.order()
    caps = get_caps()
    if n > caps.pairs or n > caps.closure:
        raise CapExceeded(f"|{group.name}| = {n} exceeds the pair or closure cap")
    ig = group.indexed()
    gmask = ig.generating_pair_mask
    gs, hs = np.nonzero(gmask)
    total = len(gs)
    bad = np.zeros(0, dtype=bool)
    for s in range(0, total, CHUNK):
        g_part = gs[s:s + CHUNK].astype(np.int32)
        h_part = hs[s:s + CHUNK].astype(np.int32)
        bad = eval_indexed(w, ig, g_part, h_part) != ig.id
        if bad.any():
            k = int(np.argmax(bad))
            g, h = int(g_part[k]), int(h_part[k])
            cert = LawCertificate(str(w), group.name, "generating-pairs-only", COUNTEREXAMPLE, s + k + 1,
                                  counterexample=(ig.label(g), ig.label(h)),
                                  counterexample_labels=(ig.format_element(g), ig.format_element(h)),
                                  extra={"generating_pairs": total})
            cert.wall_time = time.perf_counter() - start
            return cert
    cert = LawCertificate(str(w), group.name, "generating-pairs-only", COVERS, total,
                          extra={"generating_pairs": total})
    cert.wall_time = time.perf_counter() - start
    return cert


# -- shortest law search ----------------------------------------------------------------


@dataclass
class SearchResult:
    group: str
    max_length: int
    found: Word | None
    frontier: int
    words_checked: int
    wall_time: float = 0.0

    def to_dict(self, with_time: bool = True) -> dict[str, Any]:
        d = {
            "group": self.group,
            "max_length": self.max_length,
            "found": None if self.found is None else str(self.found),
            "frontier": self.frontier,
            "words_checked": self.words_checked,
        }
        if with_time:
            d["wall_time"] = round(self.wall_time, 6)
        return d


def shortest_law_search(group: Group, max_length: int, seed: int = 0, prefilter: int = 64,
                        max_words: int = 2_000_000) -> SearchResult:
    """First reduced word of length ``<= max_length`` that is a law, if any.

    Each candidate is tried on ``prefilter`` seeded random pairs before the
    exhaustive scan; ``frontier`` is the greatest length fully ruled out.
    """
    start = time.perf_counter()
    total = sum(4 * 3 ** (k - 1) for k in range(1, max_length + 1))
    if total > max_words:
        raise CapExceeded(f"{total} candidate words exceed the search budget {max_words}")
    n = group.order()
    if n > get_caps().pairs:
        raise CapExceeded(f"|{group.name}| = {n} exceeds the pair cap")
    ig = group.indexed()
    rng = np.random.default_rng(seed)
    pg = rng.integers(n, size=prefilter).astype(np.int32)
    ph = rng.integers(n, size=prefilter).astype(np.int32)
    checked = 0
    frontier = 0
    for w in enumerate_reduced(max_length):
        if w.length > frontier + 1:
            frontier = w.length - 1
        checked += 1
        if (eval_indexed(w, ig, pg, ph) != ig.id).any():
            continue
        if first_nonvanishing(w, ig) is None:
            return SearchResult(group.name, max_length, w, w.length - 1, checked,
                                time.perf_counter() - start)
    return SearchResult(group.name, max_length, None, max_length, checked, time.perf_counter() - start)
