"""Norm oracles for a catalog of Banach sequence-space norms.

Every space is described by an immutable :class:`SpaceSpec` and evaluates
norms of finitely supported vectors with indices in ``[1, dimension_cap]``.
Families:

``lp(p)``
    ``(sum |c_n|^p)^(1/p)``, ``max |c_n|`` for ``p = inf``.
``summing_c0``
    The norm of ``x = sum c_n s_n`` where ``s_n = e_1 + ... + e_n`` is the
    summing basis of c0: ``max_k |sum_{n>=k} c_n|`` (max over tail sums).
``lorentz(w)``
    ``sum_n c*_n w_n`` with ``c*`` the non-increasing rearrangement of
    ``|c|`` and ``w`` positive non-increasing.
``weighted_l1(w)``
    ``sum_n w_n |c_n|`` with ``w`` positive.
``max_functionals(f_1..f_k)``
    ``max(max_n |c_n|, max_i |<f_i, x>|)``; the sup-norm term keeps this a
    genuine norm for degenerate functional lists.
``circ_renorm(inner)``
    ``max(||x||_inner / a1, max_n |c_n|)`` where ``a1`` is the largest
    basis-vector norm of the inner space; both the basis and its dual
    basis are normalized under this renorming.

Two evaluation paths are provided: a scalar path on sparse
:class:`~greedysum.vectors.CoefVector` inputs (the public contract) and a
batched dense path (:func:`norm_rows`) used by the search engines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError, InputError
from .vectors import CoefVector

DEFAULT_DIMENSION_CAP = 512

_FAMILIES = ("lp", "summing_c0", "lorentz", "weighted_l1", "max_functionals", "circ_renorm")


# --------------------------------------------------------------------------
# Weight descriptors
# --------------------------------------------------------------------------

def _normalize_weight(descriptor) -> tuple:
    """Canonical hashable form: ("harmonic",), ("geometric", r) with
    w_n = r^n, or ("explicit", (w1, w2, ...))."""
    if isinstance(descriptor, str):
        if descriptor == "harmonic":
            return ("harmonic",)
        raise InputError(f"unknown weight tag {descriptor!r}")
    if isinstance(descriptor, dict):
        kind = descriptor.get("kind")
        if kind == "harmonic":
            return ("harmonic",)
        if kind == "geometric":
            r = float(descriptor["r"])
            if not (0.0 < r < 1.0):
                raise InputError(f"geometric ratio must lie in (0,1), got {r}")
            return ("geometric", r)
        if kind == "explicit":
            return ("explicit", tuple(float(w) for w in descriptor["values"]))
        raise InputError(f"unknown weight descriptor {descriptor!r}")
    if isinstance(descriptor, tuple) and descriptor and descriptor[0] in ("harmonic", "geometric", "explicit"):
        if descriptor[0] == "geometric":
            return ("geometric", float(descriptor[1]))
        if descriptor[0] == "explicit":
            return ("explicit", tuple(float(w) for w in descriptor[1]))
        return ("harmonic",)
    try:
        values = tuple(float(w) for w in descriptor)
    except TypeError:
        raise InputError(f"cannot interpret weight descriptor {descriptor!r}") from None
    return ("explicit", values)


def _weight_config(descriptor: tuple):
    if descriptor[0] == "harmonic":
        return "harmonic"
    if descriptor[0] == "geometric":
        return {"kind": "geometric", "r": descriptor[1]}
    return list(descriptor[1])


def resolve_weight(descriptor: tuple, cap: int) -> np.ndarray:
    """1-indexed weight array w[1..cap] (w[0] is unused)."""
    kind = descriptor[0]
    n = np.arange(cap + 1, dtype=float)
    if kind == "harmonic":
        w = np.empty(cap + 1)
        w[0] = np.nan
        w[1:] = 1.0 / n[1:]
        return w
    if kind == "geometric":
        r = descriptor[1]
        w = np.empty(cap + 1)
        w[0] = np.nan
        w[1:] = r ** n[1:]
        return w
    values = descriptor[1]
    if len(values) < cap:
        raise InputError(f"explicit weight has {len(values)} terms, dimension cap is {cap}")
    w = np.empty(cap + 1)
    w[0] = np.nan
    w[1:] = values[:cap]
    return w


# --------------------------------------------------------------------------
# SpaceSpec
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpaceSpec:
    """Immutable description of one norm oracle; use the factory
    classmethods rather than positional construction."""

    family: str
    dimension_cap: int = DEFAULT_DIMENSION_CAP
    p: Optional[float] = None
    weight: Optional[tuple] = None
    functionals: Optional[Tuple[CoefVector, ...]] = None
    inner: Optional["SpaceSpec"] = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise InputError(f"unknown space family {self.family!r}")
        if not isinstance(self.dimension_cap, int) or self.dimension_cap < 1:
            raise InputError(f"dimension cap must be a positive integer, got {self.dimension_cap!r}")
        if self.family == "lp":
            if self.p is None or (self.p != math.inf and self.p < 1.0):
                raise InputError(f"lp requires p >= 1 or inf, got {self.p!r}")
        if self.family in ("lorentz", "weighted_l1"):
            w = resolve_weight(self.weight, self.dimension_cap)[1:]
            if np.any(w <= 0.0) or not np.all(np.isfinite(w)):
                raise InputError("weight must be positive and finite")
            if self.family == "lorentz" and np.any(np.diff(w) > 0.0):
                raise InputError("lorentz weight must be non-increasing")
        if self.family == "max_functionals":
            if not self.functionals:
                raise InputError("max_functionals requires a nonempty functional list")
            for f in self.functionals:
                if f.support and max(f.support) > self.dimension_cap:
                    raise InputError("functional support exceeds the dimension cap")
        if self.family == "circ_renorm" and self.inner is None:
            raise InputError("circ_renorm requires an inner space")

    # -- factories ------------------------------------------------------

    @classmethod
    def lp(cls, p, dimension_cap: int = DEFAULT_DIMENSION_CAP) -> "SpaceSpec":
        return cls(family="lp", p=math.inf if p in ("inf", math.inf) else float(p),
                   dimension_cap=dimension_cap)

    @classmethod
    def summing_c0(cls, dimension_cap: int = DEFAULT_DIMENSION_CAP) -> "SpaceSpec":
        return cls(family="summing_c0", dimension_cap=dimension_cap)

    @classmethod
    def lorentz(cls, weight="harmonic", dimension_cap: int = DEFAULT_DIMENSION_CAP) -> "SpaceSpec":
        return cls(family="lorentz", weight=_normalize_weight(weight), dimension_cap=dimension_cap)

    @classmethod
    def weighted_l1(cls, weight, dimension_cap: int = DEFAULT_DIMENSION_CAP) -> "SpaceSpec":
        return cls(family="weighted_l1", weight=_normalize_weight(weight), dimension_cap=dimension_cap)

    @classmethod
    def max_functionals(cls, functionals, dimension_cap: int = DEFAULT_DIMENSION_CAP) -> "SpaceSpec":
        return cls(family="max_functionals",
                   functionals=tuple(f if isinstance(f, CoefVector) else CoefVector(f) for f in functionals),
                   dimension_cap=dimension_cap)

    @classmethod
    def circ_renorm(cls, inner: "SpaceSpec") -> "SpaceSpec":
        return cls(family="circ_renorm", inner=inner, dimension_cap=inner.dimension_cap)

    def with_dimension_cap(self, cap: int) -> "SpaceSpec":
        if self.family == "circ_renorm":
            return SpaceSpec.circ_renorm(self.inner.with_dimension_cap(cap))
        return SpaceSpec(family=self.family, dimension_cap=cap, p=self.p,
                         weight=self.weight, functionals=self.functionals, inner=None)

    # -- config wire format ----------------------------------------------

    def to_config(self) -> dict:
        cfg = {"family": self.family, "dim": self.dimension_cap}
        if self.family == "lp":
            cfg["p"] = "inf" if self.p == math.inf else self.p
        elif self.family in ("lorentz", "weighted_l1"):
            cfg["weight"] = _weight_config(self.weight)
        elif self.family == "max_functionals":
            cfg["functionals"] = [f.to_pairs() for f in self.functionals]
        elif self.family == "circ_renorm":
            cfg["inner"] = self.inner.to_config()
            del cfg["dim"]
        return cfg

    @classmethod
    def from_config(cls, cfg: dict) -> "SpaceSpec":
        try:
            family = cfg["family"]
        except (KeyError, TypeError):
            raise InputError(f"space config needs a 'family' field: {cfg!r}") from None
        dim = int(cfg.get("dim", DEFAULT_DIMENSION_CAP))
        if family == "lp":
            return cls.lp(cfg["p"], dim)
        if family == "summing_c0":
            return cls.summing_c0(dim)
        if family == "lorentz":
            return cls.lorentz(cfg.get("weight", "harmonic"), dim)
        if family == "weighted_l1":
            return cls.weighted_l1(cfg["weight"], dim)
        if family == "max_functionals":
            return cls.max_functionals([CoefVector.from_pairs(p) for p in cfg["functionals"]], dim)
        if family == "circ_renorm":
            return cls.circ_renorm(cls.from_config(cfg["inner"]))
        raise InputError(f"unknown space family {family!r}")

    def label(self) -> str:
        if self.family == "lp":
            return "lp(inf)" if self.p == math.inf else f"lp({self.p:g})"
        if self.family == "summing_c0":
            return "summing_c0"
        if self.family in ("lorentz", "weighted_l1"):
            w = self.weight
            tag = w[0] if w[0] != "geometric" else f"geometric({w[1]:g})"
            return f"{self.family}({tag})"
        if self.family == "max_functionals":
            return f"max_functionals[{len(self.functionals)}]"
        return f"circ_renorm({self.inner.label()})"


@dataclass(frozen=True)
class AlphaConstants:
    """Exact maxima over indices 1..dimension_cap of basis-vector norms,
    dual-functional norms, and their per-index products."""

    alpha1: float
    alpha2: float
    alpha3: float
    dual_method: str  # "analytic" or "linear-program"

    def to_config(self) -> dict:
        return {"alpha1": self.alpha1, "alpha2": self.alpha2,
                "alpha3": self.alpha3, "dual_method": self.dual_method}


# --------------------------------------------------------------------------
# Scalar norms
# --------------------------------------------------------------------------

def _check_support(space: SpaceSpec, x: CoefVector):
    if x.support and max(x.support) > space.dimension_cap:
        raise DomainError(
            f"support reaches index {max(x.support)}, beyond the dimension cap {space.dimension_cap}")


def norm(space: SpaceSpec, x: CoefVector) -> float:
    """The norm of x in the given space; exact per-family formula."""
    _check_support(space, x)
    fam = space.family
    if fam == "lp":
        if space.p == math.inf:
            return x.ell_inf()
        if space.p == 1.0:
            return x.ell_1()
        return float(sum(abs(c) ** space.p for _, c in x.items()) ** (1.0 / space.p))
    if fam == "summing_c0":
        best = 0.0
        tail = 0.0
        for n in sorted(x.support, reverse=True):
            tail += x.coef(n)
            best = max(best, abs(tail))
        return best
    if fam == "lorentz":
        w = _resolved_weight(space)
        mods = sorted((abs(c) for _, c in x.items()), reverse=True)
        return float(sum(m * w[j + 1] for j, m in enumerate(mods)))
    if fam == "weighted_l1":
        w = _resolved_weight(space)
        return float(sum(w[n] * abs(c) for n, c in x.items()))
    if fam == "max_functionals":
        best = x.ell_inf()
        for f in space.functionals:
            pairing = sum(f.coef(n) * c for n, c in x.items())
            best = max(best, abs(pairing))
        return best
    # circ_renorm
    a1 = alpha_constants(space.inner).alpha1
    return max(norm(space.inner, x) / a1, x.ell_inf())


@lru_cache(maxsize=None)
def _resolved_weight(space: SpaceSpec) -> np.ndarray:
    return resolve_weight(space.weight, space.dimension_cap)


def dual_norm(space: SpaceSpec, n: int) -> float:
    """||e*_n|| = sup { |c_n| : ||x|| <= 1 }, analytic per family except
    max_functionals (exact linear program)."""
    value, _ = _dual_norm_detail(space, n)
    return value


def dual_norm_method(space: SpaceSpec) -> str:
    """Which path dual_norm takes for this family."""
    return "linear-program" if space.family == "max_functionals" else "analytic"


def _dual_norm_detail(space: SpaceSpec, n: int):
    if not (1 <= n <= space.dimension_cap):
        raise DomainError(f"index {n} outside [1, {space.dimension_cap}]")
    fam = space.family
    if fam == "lp":
        return 1.0, "analytic"
    if fam == "summing_c0":
        # c_n = tail_n - tail_{n+1}; both tails bounded by the norm, and
        # the bound 2 is attained by tails (.., 0, 1, -1, 0, ..).  This is
        # the value in the full space; only at n == dimension_cap does the
        # truncated model fall short of it.
        return 2.0, "analytic"
    if fam == "lorentz":
        return float(1.0 / _resolved_weight(space)[1]), "analytic"
    if fam == "weighted_l1":
        return float(1.0 / _resolved_weight(space)[n]), "analytic"
    if fam == "circ_renorm":
        # Remark on the renorming: sup-norm constraint gives |c_n| <= 1 on
        # the ball, attained at e_n which has circ norm exactly 1.
        return 1.0, "analytic"
    return _dual_norm_lp_exact(space, n), "linear-program"


def _dual_norm_lp_exact(space: SpaceSpec, n: int) -> float:
    """Maximize c_n over the max_functionals unit ball: a linear program
    over the coordinates that actually appear in a constraint."""
    from scipy.optimize import linprog

    indices = {n}
    for f in space.functionals:
        indices |= f.support
    cols = sorted(indices)
    col_of = {m: j for j, m in enumerate(cols)}
    c = np.zeros(len(cols))
    c[col_of[n]] = -1.0
    rows = []
    for f in space.functionals:
        row = np.zeros(len(cols))
        for m, v in f.items():
            row[col_of[m]] = v
        rows.append(row)
        rows.append(-row)
    a_ub = np.array(rows) if rows else None
    b_ub = np.ones(len(rows)) if rows else None
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(-1.0, 1.0)] * len(cols), method="highs")
    if not res.success:
        raise RuntimeError(f"dual norm LP failed: {res.message}")
    return float(-res.fun)


@lru_cache(maxsize=None)
def alpha_constants(space: SpaceSpec) -> AlphaConstants:
    """Exact alpha maxima over 1..dimension_cap via norm and dual_norm."""
    a1 = a2 = a3 = 0.0
    method = dual_norm_method(space)
    for n in range(1, space.dimension_cap + 1):
        bn = norm(space, CoefVector({n: 1.0}))
        dn = dual_norm(space, n)
        a1 = max(a1, bn)
        a2 = max(a2, dn)
        a3 = max(a3, bn * dn)
    return AlphaConstants(alpha1=a1, alpha2=a2, alpha3=a3, dual_method=method)


# --------------------------------------------------------------------------
# Batched dense norms (search-engine path)
# --------------------------------------------------------------------------

def norm_rows(space: SpaceSpec, m: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Row-wise norms of a dense matrix whose column j holds the
    coefficient at index cols[j] (cols strictly increasing)."""
    m = np.atleast_2d(np.asarray(m, dtype=float))
    cols = np.asarray(cols, dtype=int)
    if m.shape[1] != len(cols):
        raise InputError(f"matrix has {m.shape[1]} columns, cols has {len(cols)}")
    if len(cols) == 0:
        return np.zeros(m.shape[0])
    if np.any(np.diff(cols) <= 0):
        raise InputError("cols must be strictly increasing")
    if cols[0] < 1 or cols[-1] > space.dimension_cap:
        raise DomainError(f"cols outside [1, {space.dimension_cap}]")
    fam = space.family
    if fam == "lp":
        if space.p == math.inf:
            return np.abs(m).max(axis=1)
        if space.p == 1.0:
            return np.abs(m).sum(axis=1)
        return (np.abs(m) ** space.p).sum(axis=1) ** (1.0 / space.p)
    if fam == "summing_c0":
        # Tail sums only change value at support columns.
        tails = np.cumsum(m[:, ::-1], axis=1)
        return np.abs(tails).max(axis=1)
    if fam == "lorentz":
        w = _resolved_weight(space)[1:len(cols) + 1]
        mods = np.sort(np.abs(m), axis=1)[:, ::-1]
        return mods @ w
    if fam == "weighted_l1":
        w = _resolved_weight(space)[cols]
        return np.abs(m) @ w
    if fam == "max_functionals":
        best = np.abs(m).max(axis=1)
        for f in space.functionals:
            fvec = np.array([f.coef(int(n)) for n in cols])
            best = np.maximum(best, np.abs(m @ fvec))
        return best
    a1 = alpha_constants(space.inner).alpha1
    return np.maximum(norm_rows(space.inner, m, cols) / a1, np.abs(m).max(axis=1))


def dense_row(x: CoefVector, cols: np.ndarray) -> np.ndarray:
    """Dense coefficients of x along the given columns; raises if x has
    support off the column set."""
    lookup = {int(n): j for j, n in enumerate(cols)}
    row = np.zeros(len(cols))
    for n, c in x.items():
        try:
            row[lookup[n]] = c
        except KeyError:
            raise DomainError(f"support index {n} not covered by the column set") from None
    return row


# --------------------------------------------------------------------------
# Catalog
# --------------------------------------------------------------------------

def default_catalog(dimension_cap: int = DEFAULT_DIMENSION_CAP):
    """The named spaces exercised by the test and acceptance suites."""
    return {
        "lp1": SpaceSpec.lp(1, dimension_cap),
        "lp2": SpaceSpec.lp(2, dimension_cap),
        "lpinf": SpaceSpec.lp("inf", dimension_cap),
        "summing_c0": SpaceSpec.summing_c0(dimension_cap),
        "lorentz_harmonic": SpaceSpec.lorentz("harmonic", dimension_cap),
        "weighted_l1_geometric": SpaceSpec.weighted_l1({"kind": "geometric", "r": 0.5}, dimension_cap),
    }
