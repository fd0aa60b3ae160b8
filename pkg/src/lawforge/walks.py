"""Lazy random walks, Cayley-graph diameters and the randomized almost-law search."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .config import CapExceeded, get_caps
from .freeword import ALPHABET, Word, power
from .groups import Group, IndexedGroup
from .lawkit.constructors import union_combine
from .lawkit.tables import torus_exponent
from .verify import COVERS, check_on_generating_pairs, eval_indexed


def make_rng(seed) -> np.random.Generator:
    """PCG64 stream; accepts an int, a ``SeedSequence`` or a generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_walk_word(L: int, seed=0) -> Word:
    """Reduced form of ``L`` steps of the lazy walk on ``{x, x^-1, y, y^-1}``.

    Each step stays put with probability 1/2 and otherwise multiplies by a
    uniformly chosen letter.
    """
    if L < 0:
        raise ValueError("walk length must be nonnegative")
    rng = make_rng(seed)
    move = rng.random(L) >= 0.5
    letters = rng.integers(4, size=L)
    return Word(ALPHABET[i] for i in letters[move])


def sample_nontrivial_word(L: int, rng: np.random.Generator, max_tries: int = 10_000) -> Word:
    for _ in range(max_tries):
        w = sample_walk_word(L, rng)
        if w:
            return w
    raise RuntimeError("walk kept returning the identity")


# -- Cayley graphs ----------------------------------------------------------------


def _symmetrized(ig: IndexedGroup, gens) -> np.ndarray:
    gens = np.asarray(list(gens), dtype=np.int32)
    return np.unique(np.concatenate([gens, ig.inverse[gens]]))


def cayley_diameter(group: Group, gens) -> int:
    """Eccentricity of the identity in the Cayley graph of ``gens`` and inverses.

    ``gens`` are element payloads of ``group``; pass indices when ``group`` is
    already an :class:`IndexedGroup`.
    """
    ig = group.indexed()
    idx = [g if group is ig else ig.index_of(g) for g in gens]
    steps = _symmetrized(ig, idx)
    n = ig.n
    seen = np.zeros(n, dtype=bool)
    seen[ig.id] = True
    frontier = np.array([ig.id], dtype=np.int32)
    radius = 0
    while True:
        nxt = np.unique(ig.table[frontier[:, None], steps[None, :]].ravel())
        nxt = nxt[~seen[nxt]]
        if len(nxt) == 0:
            break
        seen[nxt] = True
        frontier = nxt
        radius += 1
    if not seen.all():
        raise ValueError(f"the given elements do not generate {group.name}")
    return radius


def mixing_length(group_order: int, n_gens: int, diameter: int) -> int:
    """``ceil(2 |S| diam^2 log(2|G|))`` with the natural log."""
    return math.ceil(2 * n_gens * diameter**2 * math.log(2 * group_order))


@dataclass
class MixingReport:
    group: str
    generators: list[str]
    diameter: int
    L: int
    trials: int
    seed: int
    hits: int
    target_size: int
    threshold: float
    hit_rate: float
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return dict(self.__dict__)


def empirical_mixing_check(group: Group, gens, target, L: int | None = None, trials: int = 10_000,
                           seed: int = 0) -> MixingReport:
    """Simulate lazy walks with steps drawn from ``S = gens``.

    ``target`` is a boolean mask over ``group.indexed()`` elements.  The check
    passes when the hit rate is at least ``|E|/(2|G|)`` minus three binomial
    standard errors.  ``L`` defaults to :func:`mixing_length`, using the
    BFS diameter of the symmetrized generating set.
    """
    ig = group.indexed()
    idx = np.asarray([g if group is ig else ig.index_of(g) for g in gens], dtype=np.int32)
    steps = np.unique(idx)
    mask = np.asarray(target, dtype=bool)
    if mask.shape != (ig.n,):
        raise ValueError("target mask must have one entry per element")
    diam = cayley_diameter(ig, steps)
    if L is None:
        L = mixing_length(ig.n, len(steps), diam)
    rng = make_rng(seed)
    state = np.full(trials, ig.id, dtype=np.int32)
    for _ in range(L):
        move = rng.random(trials) >= 0.5
        pick = steps[rng.integers(len(steps), size=trials)]
        state = np.where(move, ig.table[state, pick], state)
    hits = int(mask[state].sum())
    rate = hits / trials
    thr = mask.sum() / (2 * ig.n)
    se = math.sqrt(thr * (1 - thr) / trials)
    return MixingReport(group.name, [ig.format_element(int(s)) for s in steps], diam, L, trials, seed,
                        hits, int(mask.sum()), float(thr), rate, bool(rate >= thr - 3 * se))


def torus_mask(group: Group, family, q: int) -> np.ndarray:
    """Mask of ``E_G``: elements whose order divides ``b(X, q)``."""
    ig = group.indexed()
    b = torus_exponent(family, q)
    return (b % ig.orders) == 0


# -- almost laws -------------------------------------------------------------------


def default_parameters(group_order: int) -> tuple[int, int]:
    """``(m, L) = (ceil(4 ln|G|), ceil(ln(|G|)^2))``."""
    lg = math.log(group_order)
    return math.ceil(4 * lg), math.ceil(lg * lg)


@dataclass
class AlmostLawResult:
    group: str
    family: str
    q: int
    b: int
    m: int
    L: int
    seed: int
    attempts: int
    attempts_used: int
    success: bool
    words: list[str] = field(default_factory=list)
    combined: str | None = None
    combined_length: int | None = None
    verdict: str | None = None
    generating_pairs: int = 0
    wall_time: float = 0.0

    def to_dict(self, with_time: bool = True) -> dict[str, Any]:
        d = dict(self.__dict__)
        if not with_time:
            d.pop("wall_time")
        return d


def almost_law_search(group: Group, family, q: int, m: int | None = None, L: int | None = None,
                      seed: int = 0, attempts: int = 32) -> AlmostLawResult:
    """Find walk words ``u_1..u_m`` so every generating pair sends some ``u_i`` into ``E_G``.

    On success the combined word ``union_combine(u_1^b, ..., u_m^b)`` is
    confirmed by :func:`verify.check_on_generating_pairs`; the search never
    certifies itself.  Attempt ``k`` uses the ``k``-th child of
    ``SeedSequence(seed)``.
    """
    start = time.perf_counter()
    n = group.order()
    caps = get_caps()
    if n > caps.pairs or n > caps.closure:
        raise CapExceeded(f"|{group.name}| = {n} exceeds the pair or closure cap")
    dm, dL = default_parameters(n)
    m = dm if m is None else m
    L = dL if L is None else L
    b = torus_exponent(family, q)
    ig = group.indexed()
    gs, hs = np.nonzero(ig.generating_pair_mask)
    gs, hs = gs.astype(np.int32), hs.astype(np.int32)
    good = (b % ig.orders) == 0
    res = AlmostLawResult(group.name, str(family), q, b, m, L, seed, attempts, 0, False,
                          generating_pairs=len(gs))
    if m == 0:
        res.success = len(gs) == 0
        res.verdict = COVERS if res.success else None
        res.wall_time = time.perf_counter() - start
        return res
    children = np.random.SeedSequence(seed).spawn(attempts)
    for k, child in enumerate(children):
        rng = np.random.default_rng(child)
        words = [sample_nontrivial_word(L, rng) for _ in range(m)]
        covered = np.zeros(len(gs), dtype=bool)
        for u in words:
            covered |= good[eval_indexed(u, ig, gs, hs)]
        res.attempts_used = k + 1
        if not covered.all():
            continue
        combined = union_combine([power(u, b) for u in words])
        cert = check_on_generating_pairs(combined, group)
        res.words = [str(u) for u in words]
        res.combined = str(combined)
        res.combined_length = combined.length
        res.verdict = cert.verdict
        res.success = cert.verdict == COVERS
        if res.success:
            break
    res.wall_time = time.perf_counter() - start
    return res


@dataclass
class CoverageReport:
    group: str
    m: int
    L: int
    seed: int
    samples: int
    c2_hat: float
    bound: float

    def to_dict(self) -> dict[str, Any]:
        return dict(self.__dict__)


def coverage_union_bound_report(group: Group, m: int, L: int, seed: int = 0, family=None,
                                q: int | None = None, samples: int = 200) -> CoverageReport:
    """Estimate ``C2`` and the union bound ``(1 - C2)^m |G|^2``.

    ``C2``-hat is the smallest, over generating pairs, of the fraction of
    ``samples`` walk words sending the pair into ``E_G``.  Diagnostic only.
    """
    if family is None or q is None:
        raise ValueError("family and q are needed to define E_G")
    ig = group.indexed()
    n = ig.n
    gs, hs = np.nonzero(ig.generating_pair_mask)
    gs, hs = gs.astype(np.int32), hs.astype(np.int32)
    good = (torus_exponent(family, q) % ig.orders) == 0
    rng = make_rng(seed)
    if len(gs) == 0:
        c2 = 1.0
    else:
        counts = np.zeros(len(gs), dtype=np.int64)
        for _ in range(samples):
            counts += good[eval_indexed(sample_nontrivial_word(L, rng), ig, gs, hs)]
        c2 = float(counts.min() / samples)
    bound = (1.0 - c2) ** m * n * n
    return CoverageReport(group.name, m, L, seed, samples, c2, bound)
