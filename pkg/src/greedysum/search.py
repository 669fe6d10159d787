"""Candidate generation and batched evaluation machinery for the
constant estimators.

Search semantics: every estimator walks a deterministic candidate stream
derived from (seed, estimator tag, candidate index), so enlarging the
budget extends the stream without disturbing earlier candidates
(nested-trace monotonicity), and worker partitioning cannot change the
result.  In exhaustive mode the stream is a declared finite family:
prefix-window supports, fixed magnitude profiles, all magnitude
assignments and sign patterns up to per-group caps (the caps, seed and
counts are recorded in the budget so the family is reproducible).

The structured candidates (alternating flat vectors, periodic
peak/valley patterns) are always emitted first: they carry the known
extremal instances for the conditional catalog spaces.
"""

from __future__ import annotations

import itertools
import math
import zlib
from dataclasses import dataclass, field, fields
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .errors import BudgetError, InputError
from .greedy import GreedyOrdering, _tie_groups
from .spaces import SpaceSpec, norm_rows
from .vectors import CoefVector


@dataclass(frozen=True)
class SearchConfig:
    """Declarative search budget; serializes into every estimate's budget
    record."""

    seed: int = 20240810
    samples: int = 300              # random candidates per estimator
    max_index: int = 16             # candidate supports live in [1, max_index]
    support_min: int = 1
    support_max: int = 8
    exhaustive: bool = False        # walk the declared finite family instead
    group_cap: int = 256            # vectors per (support, profile) group
    ordering_cap: int = 16          # greedy orderings per candidate
    flat_ordering_cap: int = 64     # orderings for fully tied candidates
    set_cap: int = 512              # greedy sets per candidate
    multiplier_cap: int = 729       # multiplier patterns per candidate
    subset_cap: int = 512           # projection subsets per candidate
    workers: int = 1

    def __post_init__(self):
        if self.samples < 0 or self.max_index < 1:
            raise InputError("invalid search budget")
        if not (1 <= self.support_min <= self.support_max):
            raise InputError("invalid support size range")
        if self.workers < 1:
            raise InputError("workers must be >= 1")

    def to_config(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_config(cls, cfg: dict) -> "SearchConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(cfg) - known
        if unknown:
            raise InputError(f"unknown search config fields: {sorted(unknown)}")
        return cls(**cfg)

    def rng(self, tag: str, index: int) -> np.random.Generator:
        return np.random.default_rng((self.seed, zlib.crc32(tag.encode()), index))


# --------------------------------------------------------------------------
# Magnitude profiles
# --------------------------------------------------------------------------

def profile_magnitudes(tag, k: int) -> Tuple[float, ...]:
    """Decreasing magnitude templates of length k."""
    if tag == "flat":
        return (1.0,) * k
    if isinstance(tag, tuple) and tag[0] == "geometric":
        r = tag[1]
        return tuple(r ** j for j in range(k))
    if tag == "harmonic":
        return tuple(1.0 / (j + 1) for j in range(k))
    if isinstance(tag, tuple) and tag[0] == "block":
        # b large entries followed by k-b entries at level delta
        _, b, delta = tag
        return (1.0,) * min(b, k) + (delta,) * max(k - b, 0)
    raise InputError(f"unknown profile tag {tag!r}")


def _block_profiles(k: int) -> List[tuple]:
    out = []
    for delta in (0.5, 0.25):
        for b in range(1, k):
            out.append(("block", b, delta))
    return out


def default_profiles(k: int) -> List:
    tags = ["flat", ("geometric", 0.5), ("geometric", 0.9), ("geometric", 0.99), "harmonic"]
    if k >= 2:
        tags.extend(_block_profiles(k))
    return tags


# --------------------------------------------------------------------------
# Candidate vectors
# --------------------------------------------------------------------------

def structured_candidates(window: Sequence[int]) -> List[CoefVector]:
    """Deterministic extremal patterns on a window: constant and
    alternating flat vectors, and periodic peak/valley profiles whose
    valleys cancel the peaks' tail sums."""
    window = list(window)
    k = len(window)
    out = []
    if k == 0:
        return out
    out.append(CoefVector({n: 1.0 for n in window}))
    out.append(CoefVector({n: (-1.0) ** i for i, n in enumerate(window)}))
    out.append(CoefVector({n: -((-1.0) ** i) for i, n in enumerate(window)}))
    for period in (2, 3):
        for delta in (0.5, 0.25):
            for phase in range(period):
                if k < period:
                    continue
                coefs = {}
                for i, n in enumerate(window):
                    peak = (i % period) == phase
                    coefs[n] = 1.0 if peak else -delta
                out.append(CoefVector(coefs))
                out.append(-1.0 * CoefVector(coefs))
    # geometric ramps in both index directions
    for r in (0.5, 0.9):
        out.append(CoefVector({n: r ** i for i, n in enumerate(window)}))
        out.append(CoefVector({n: r ** (k - 1 - i) for i, n in enumerate(window)}))
        out.append(CoefVector({n: ((-1.0) ** i) * r ** i for i, n in enumerate(window)}))
    return out


def _assignments(magnitudes: Tuple[float, ...], cap: int, rng) -> List[Tuple[float, ...]]:
    """Distinct arrangements of the magnitude multiset over positions,
    exhaustive up to cap, then deterministically sampled."""
    distinct_count = math.factorial(len(magnitudes))
    for m in set(magnitudes):
        distinct_count //= math.factorial(magnitudes.count(m))
    if distinct_count <= cap:
        return sorted(set(itertools.permutations(magnitudes)))
    out = {tuple(magnitudes), tuple(reversed(magnitudes))}
    while len(out) < cap:
        out.add(tuple(rng.permutation(magnitudes)))
    return sorted(out)


def _signed_group(window, magnitudes_list, cap: int, rng) -> List[CoefVector]:
    """Cross assignments with sign patterns under a joint cap; the full
    product is kept whenever it fits."""
    k = len(window)
    total = len(magnitudes_list) * (2 ** k)
    out = []
    if total <= cap:
        for mags in magnitudes_list:
            for signs in itertools.product((1.0, -1.0), repeat=k):
                out.append(CoefVector({n: s * m for n, s, m in zip(window, signs, mags)}))
        return out
    # canonical assignment with every sign pattern first, then samples
    base = magnitudes_list[0]
    n_signs = min(2 ** k, cap)
    for signs in itertools.islice(itertools.product((1.0, -1.0), repeat=k), n_signs):
        out.append(CoefVector({n: s * m for n, s, m in zip(window, signs, base)}))
    while len(out) < cap:
        mags = magnitudes_list[int(rng.integers(len(magnitudes_list)))]
        signs = rng.choice([-1.0, 1.0], size=k)
        out.append(CoefVector({n: float(s) * m for n, s, m in zip(window, signs, mags)}))
    return out


def exhaustive_vectors(cfg: SearchConfig, tag: str) -> List[CoefVector]:
    """The declared finite family: prefix windows [1..k], default
    profiles, assignments and signs capped per group."""
    out = []
    seen = set()
    top = cfg.max_index
    for k in range(max(cfg.support_min, 1), min(cfg.support_max, top) + 1):
        window = list(range(1, k + 1))
        group = list(structured_candidates(window))
        for p_idx, profile in enumerate(default_profiles(k)):
            rng = cfg.rng(f"{tag}/exh/{k}/{p_idx}", 0)
            mags = profile_magnitudes(profile, k)
            arrangements = _assignments(mags, max(cfg.group_cap // (2 ** min(k, 8)), 1), rng)
            group.extend(_signed_group(window, arrangements, cfg.group_cap, rng))
        for x in group:
            key = tuple(sorted(x.items()))
            if key not in seen:
                seen.add(key)
                out.append(x)
    return out


def random_vector_stream(cfg: SearchConfig, tag: str) -> Iterator[CoefVector]:
    """Structured candidates on the full window first, then the seeded
    random stream (profile + placement + assignment + sign flips)."""
    window = list(range(1, cfg.max_index + 1))
    yield from structured_candidates(window)
    i = 0
    emitted = 0
    while emitted < cfg.samples:
        rng = cfg.rng(tag, i)
        i += 1
        k = int(rng.integers(cfg.support_min, min(cfg.support_max, cfg.max_index) + 1))
        profiles = default_profiles(k) + ["gaussian"]
        profile = profiles[int(rng.integers(len(profiles)))]
        if bool(rng.integers(2)) or k > cfg.max_index // 2:
            start = int(rng.integers(1, cfg.max_index - k + 2))
            support = list(range(start, start + k))
        else:
            support = sorted(int(n) for n in
                             rng.choice(np.arange(1, cfg.max_index + 1), size=k, replace=False))
        if profile == "gaussian":
            coefs = {}
            for n in support:
                c = 0.0
                while c == 0.0:
                    c = float(rng.normal())
                coefs[n] = c
            yield CoefVector(coefs)
            emitted += 1
            continue
        mags = list(profile_magnitudes(profile, k))
        if bool(rng.integers(2)):
            mags = [mags[j] for j in rng.permutation(k)]
        signs = rng.choice([-1.0, 1.0], size=k)
        yield CoefVector({n: float(s) * m for n, s, m in zip(support, signs, mags)})
        emitted += 1


def candidate_vectors(space: SpaceSpec, cfg: SearchConfig, tag: str,
                      extra: Sequence[CoefVector] = ()) -> List[CoefVector]:
    """The full candidate list an estimator walks for this space."""
    cfg = clamp_to_space(cfg, space)
    out = list(extra)
    if cfg.exhaustive:
        out.extend(exhaustive_vectors(cfg, tag))
    else:
        out.extend(random_vector_stream(cfg, tag))
    return out


def clamp_to_space(cfg: SearchConfig, space: SpaceSpec) -> SearchConfig:
    top = min(cfg.max_index, space.dimension_cap)
    if top == cfg.max_index and cfg.support_max <= top:
        return cfg
    d = cfg.to_config()
    d["max_index"] = top
    d["support_max"] = min(cfg.support_max, top)
    d["support_min"] = min(cfg.support_min, d["support_max"])
    return SearchConfig.from_config(d)


# --------------------------------------------------------------------------
# Ordering enumeration for search
# --------------------------------------------------------------------------

def orderings_for_search(x: CoefVector, cfg: SearchConfig, rng) -> List[Tuple[int, ...]]:
    """Greedy orderings of the support: full tie enumeration when it fits
    the cap, else the canonical ordering plus seeded tie shuffles."""
    groups = _tie_groups(x)
    cap = cfg.flat_ordering_cap if len(groups) == 1 and len(x) > 1 else cfg.ordering_cap
    total = 1
    for g in groups:
        total *= math.factorial(len(g))
        if total > cap:
            break
    if total <= cap:
        return [tuple(n for g in arr for n in g)
                for arr in itertools.product(*[itertools.permutations(g) for g in groups])]
    out = {tuple(n for g in groups for n in g)}
    while len(out) < cap:
        out.add(tuple(n for g in groups for n in rng.permutation(g).tolist()))
    return sorted(out)


def greedy_set_pool(x: CoefVector, cfg: SearchConfig) -> List[frozenset]:
    """Greedy sets of every cardinality 1..|supp|, deduplicated, capped."""
    from .greedy import greedy_sets

    out = []
    seen = set()
    for m in range(1, len(x) + 1):
        try:
            sets_m = greedy_sets(x, m, cap=cfg.set_cap)
        except BudgetError:
            # tie block too wide: keep the lowest-index canonical set
            groups = _tie_groups(x)
            flat = [n for g in groups for n in g]
            sets_m = [frozenset(flat[:m])]
        for s in sets_m:
            if s not in seen:
                seen.add(s)
                out.append(s)
                if len(out) >= cfg.set_cap:
                    return out
    return out


# --------------------------------------------------------------------------
# Batched evaluation helpers
# --------------------------------------------------------------------------

class WindowEvaluator:
    """Norm evaluation for row batches living on one support window."""

    def __init__(self, space: SpaceSpec, cols: Sequence[int]):
        self.space = space
        self.cols = np.asarray(sorted(int(c) for c in cols), dtype=int)
        self.pos = {int(n): j for j, n in enumerate(self.cols)}

    def dense(self, x: CoefVector) -> np.ndarray:
        row = np.zeros(len(self.cols))
        for n, c in x.items():
            row[self.pos[n]] = c
        return row

    def norms(self, rows: np.ndarray) -> np.ndarray:
        if len(rows) == 0:
            return np.zeros(0)
        return norm_rows(self.space, np.asarray(rows), self.cols)

    def norm_one(self, x: CoefVector) -> float:
        return float(self.norms(self.dense(x)[None, :])[0])


def subset_mask_matrix(k: int) -> np.ndarray:
    """All subsets of k positions as a 0/1 matrix (2^k rows)."""
    idx = np.arange(2 ** k, dtype=np.uint32)
    return ((idx[:, None] >> np.arange(k)) & 1).astype(float)


@lru_cache(maxsize=128)
def sign_matrix(k: int) -> np.ndarray:
    """All sign patterns of length k as a +-1 matrix (2^k rows)."""
    return 1.0 - 2.0 * subset_mask_matrix(k)


@lru_cache(maxsize=128)
def ternary_matrix(k: int) -> np.ndarray:
    """All {-1,0,+1} patterns of length k (3^k rows)."""
    idx = np.arange(3 ** k, dtype=np.int64)
    digits = (idx[:, None] // (3 ** np.arange(k))) % 3
    return digits.astype(float) - 1.0


@lru_cache(maxsize=1024)
def indicator_sign_norms(space: SpaceSpec, window: Tuple[int, ...]) -> np.ndarray:
    """Norms of 1_{eps,A} for every A inside the window and every sign
    pattern, encoded by the ternary matrix over the window."""
    ev = WindowEvaluator(space, window)
    return ev.norms(ternary_matrix(len(window)))


def ternary_code(values: Sequence[int], window: Sequence[int]) -> int:
    """Index of a ternary pattern (by window position) into the ternary
    matrix / indicator_sign_norms tables."""
    code = 0
    lookup = {int(n): j for j, n in enumerate(window)}
    for n, v in values:
        code += (int(v) + 1) * (3 ** lookup[int(n)])
    # positions not mentioned carry digit 1 (= value 0)
    mentioned = {int(n) for n, _ in values}
    for j, n in enumerate(window):
        if int(n) not in mentioned:
            code += 3 ** j
    return code
