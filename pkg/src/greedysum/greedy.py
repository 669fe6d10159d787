"""Greedy sets and orderings, greedy / Cesaro / de la Vallee-Poussin sums,
thresholds, oscillation, indicator sums, and the domination relation.

A greedy ordering for x is a sequence of distinct indices whose every
prefix set is a greedy set: minimum |coefficient| inside the prefix at
least the maximum outside.  Ties between equal moduli are resolved by
policy; magnitude comparisons are exact on the stored floats (two
coefficients are tied only if bit-equal after abs).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import BudgetError, DomainError, InputError
from .vectors import CoefVector, SignPattern

IDENTITY_RTOL = 1e-12
ENUMERATION_CAP = 10_000

LOWEST_INDEX_FIRST = "lowest_index_first"
ENUMERATE = "enumerate"


@dataclass(frozen=True)
class GreedyOrdering:
    """A finite greedy ordering (k_1, ..., k_L) for a fixed vector.

    Invariants (checked at construction): indices distinct, |coefficient|
    non-increasing along the sequence, the whole support appears before
    any zero-coefficient padding index.
    """

    indices: Tuple[int, ...]
    vector: CoefVector

    def __post_init__(self):
        ks = self.indices
        if len(set(ks)) != len(ks):
            raise InputError("ordering indices must be distinct")
        if any(k < 1 for k in ks):
            raise InputError("ordering indices must be positive")
        mods = [abs(self.vector.coef(k)) for k in ks]
        if any(mods[j] < mods[j + 1] for j in range(len(mods) - 1)):
            raise InputError("|coefficient| must be non-increasing along the ordering")
        if not self.vector.support <= set(ks):
            raise InputError("ordering must cover the support")
        # non-increasing moduli with the support covered already forces the
        # zero padding to the end; nothing more to check.

    def __len__(self) -> int:
        return len(self.indices)

    def prefix(self, n: int) -> Tuple[int, ...]:
        return self.indices[:n]

    def coef_at(self, j: int) -> float:
        """Coefficient of the vector at ordering position j (1-based)."""
        return self.vector.coef(self.indices[j - 1])


def _tie_groups(x: CoefVector) -> List[List[int]]:
    """Support indices grouped by exact |coefficient|, groups in
    decreasing modulus order, each group sorted ascending."""
    by_mod = {}
    for n, c in x.items():
        by_mod.setdefault(abs(c), []).append(n)
    return [sorted(by_mod[m]) for m in sorted(by_mod, reverse=True)]


def _padding(x: CoefVector, count: int) -> List[int]:
    out = []
    n = 1
    supp = x.support
    while len(out) < count:
        if n not in supp:
            out.append(n)
        n += 1
    return out


def greedy_orderings(x: CoefVector, length: int, tie_policy: str = LOWEST_INDEX_FIRST,
                     cap: int = ENUMERATION_CAP) -> List[GreedyOrdering]:
    """All greedy orderings of the requested length under the tie policy.

    ``lowest_index_first`` returns the single stable ordering (smaller
    index first among tied moduli).  ``enumerate`` returns every ordering
    of the support (product of tie-group permutations), each padded
    canonically with the lowest unused indices: zero-coefficient positions
    contribute nothing to any greedy-type sum, so their order is not
    enumerated.
    """
    if length < len(x):
        raise DomainError(f"length {length} is below the support size {len(x)}")
    groups = _tie_groups(x)
    pad = _padding(x, length - len(x))
    if tie_policy == LOWEST_INDEX_FIRST:
        seq = [n for g in groups for n in g] + pad
        return [GreedyOrdering(tuple(seq), x)]
    if tie_policy != ENUMERATE:
        raise InputError(f"unknown tie policy {tie_policy!r}")
    total = 1
    for g in groups:
        total *= math.factorial(len(g))
        if total > cap:
            raise BudgetError(
                f"tie enumeration needs {total}+ orderings, cap is {cap}",
                partial_count=total)
    out = []
    for arrangement in itertools.product(*[itertools.permutations(g) for g in groups]):
        seq = [n for g in arrangement for n in g] + pad
        out.append(GreedyOrdering(tuple(seq), x))
    return out


def greedy_sets(x: CoefVector, m: int, cap: int = ENUMERATION_CAP) -> List[frozenset]:
    """All greedy sets of cardinality m <= |supp(x)| for x.

    A greedy set of size m consists of every index whose modulus exceeds
    the m-th largest, plus any completion from the tie group at that
    modulus.
    """
    if m < 0 or m > len(x):
        raise DomainError(f"greedy-set size {m} outside [0, {len(x)}]")
    if m == 0:
        return [frozenset()]
    groups = _tie_groups(x)
    fixed: List[int] = []
    for g in groups:
        if len(fixed) + len(g) <= m:
            fixed.extend(g)
            if len(fixed) == m:
                return [frozenset(fixed)]
        else:
            need = m - len(fixed)
            count = math.comb(len(g), need)
            if count > cap:
                raise BudgetError(f"{count} greedy sets exceed cap {cap}", partial_count=count)
            return [frozenset(fixed) | frozenset(c) for c in itertools.combinations(g, need)]
    raise AssertionError("unreachable: m <= |supp| guaranteed above")


def _check_same_vector(x: CoefVector, ordering: GreedyOrdering):
    if x != ordering.vector:
        raise InputError("ordering was built for a different vector")


def greedy_sum(x: CoefVector, ordering: GreedyOrdering, n: int) -> CoefVector:
    """G_n(x): the sum of the first n ordered coefficient terms."""
    _check_same_vector(x, ordering)
    if n < 0 or n > len(ordering):
        raise DomainError(f"n={n} outside [0, {len(ordering)}]")
    return CoefVector({k: x.coef(k) for k in ordering.prefix(n) if x.coef(k) != 0.0})


def cesaro_sum(x: CoefVector, ordering: GreedyOrdering, n: int) -> CoefVector:
    """C_n(x): greedy terms with the triangular weights (n+1-j)/n."""
    _check_same_vector(x, ordering)
    if n < 1:
        raise DomainError("Cesaro sum needs n >= 1 (weights undefined at n=0)")
    if n > len(ordering):
        raise DomainError(f"n={n} beyond the ordering length {len(ordering)}")
    out = {}
    for j, k in enumerate(ordering.prefix(n), start=1):
        c = x.coef(k)
        if c != 0.0:
            out[k] = ((n + 1 - j) / n) * c
    return CoefVector(out)


def vp_sum(x: CoefVector, ordering: GreedyOrdering, n: int) -> CoefVector:
    """The de la Vallee-Poussin sum 2*C_{2n} - C_n.

    Coefficientwise this equals G_n(x) plus the weighted tail
    sum_{j=1..n} ((n+1-j)/n) * coef(k_{n+j}) * e_{k_{n+j}}; the identity
    is asserted internally to 1e-12 relative.
    """
    if n < 1:
        raise DomainError("VP sum needs n >= 1")
    if 2 * n > len(ordering):
        raise DomainError(f"VP sum needs 2n={2 * n} within the ordering length {len(ordering)}")
    lhs = 2.0 * cesaro_sum(x, ordering, 2 * n) - cesaro_sum(x, ordering, n)
    tail = {}
    for j in range(1, n + 1):
        k = ordering.indices[n + j - 1]
        c = x.coef(k)
        if c != 0.0:
            tail[k] = ((n + 1 - j) / n) * c
    rhs = greedy_sum(x, ordering, n) + CoefVector(tail)
    err = coefficientwise_rel_diff(lhs, rhs)
    if err > IDENTITY_RTOL:
        raise RuntimeError(f"internal VP identity violated: relative discrepancy {err:g}")
    return lhs


def shifted_ordering(ordering: GreedyOrdering, m: int) -> GreedyOrdering:
    """The ordering (k_{j+m}) attached to the residual x - G_m(x)."""
    if m < 0 or m >= len(ordering):
        raise DomainError(f"shift m={m} outside [0, {len(ordering)})")
    residual = ordering.vector - greedy_sum(ordering.vector, ordering, m)
    return GreedyOrdering(ordering.indices[m:], residual)


def osc(x: CoefVector, indices) -> float:
    """Oscillation: largest over smallest |coefficient| on the set;
    1 on the empty set by convention."""
    a = set(indices)
    if not a:
        return 1.0
    if not a <= x.support:
        raise DomainError("oscillation set must lie inside the support")
    mods = [abs(x.coef(n)) for n in a]
    return max(mods) / min(mods)


def indicator_sum(eps: SignPattern, indices) -> CoefVector:
    """1_{eps,B} = sum_{n in B} eps_n e_n; zero for empty B."""
    b = set(indices)
    if not b <= eps.domain:
        raise DomainError("indicator set must lie inside the sign pattern's domain")
    return CoefVector({n: float(eps.sign(n)) for n in b})


def threshold_set(x: CoefVector, t: float) -> frozenset:
    """A(x,t) = {n : |coefficient| >= t} for x in Q and t in (0,1]."""
    if not x.in_q():
        raise DomainError("threshold set requires x in Q (all |coefficients| <= 1)")
    if not (0.0 < t <= 1.0):
        raise DomainError(f"threshold t must lie in (0,1], got {t}")
    return frozenset(n for n, c in x.items() if abs(c) >= t)


def dominates(x: CoefVector, y: CoefVector) -> bool:
    """x dominates y: min |coefficient| over supp(x) at least the largest
    |coefficient| of y; vacuously true for empty supp(x)."""
    if not x:
        return True
    return min(abs(c) for _, c in x.items()) >= y.ell_inf()


def projection(x: CoefVector, indices) -> CoefVector:
    """P_A(x); the complement projection is x - projection(x, A)."""
    return x.restrict(indices)


def coefficientwise_rel_diff(a: CoefVector, b: CoefVector) -> float:
    """max over indices of |a_n - b_n| / max(|a_n|, |b_n|), zero when both
    vanish; the comparison used by the exact-identity checks."""
    worst = 0.0
    for n in a.support | b.support:
        ca, cb = a.coef(n), b.coef(n)
        scale = max(abs(ca), abs(cb))
        if scale == 0.0:
            continue
        worst = max(worst, abs(ca - cb) / scale)
    return worst
