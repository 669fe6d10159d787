"""Finitely supported coefficient vectors and sign patterns.

A vector is identified with its dual coefficients: ``x = sum_n c_n e_n``
is stored as the map ``n -> c_n`` over its support.  All algebra here is
exact float arithmetic on the stored coefficients; norms live in
:mod:`greedysum.spaces`.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .errors import DomainError, InputError

Pairs = Iterable[Tuple[int, float]]


def _check_index(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InputError(f"index must be a positive integer, got {n!r}")
    if n < 1:
        raise InputError(f"index must be >= 1, got {n}")
    return n


class CoefVector:
    """Finitely supported map index -> nonzero real coefficient.

    The stored key set *is* the support: zero coefficients are dropped at
    construction (so that differences like ``x - proj(x, A)`` keep the
    invariant), non-finite coefficients are rejected.
    """

    __slots__ = ("_coef",)

    def __init__(self, entries: Mapping[int, float] | Pairs = ()):
        coef: Dict[int, float] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for n, c in items:
            n = _check_index(n)
            c = float(c)
            if not math.isfinite(c):
                raise InputError(f"coefficient at index {n} is not finite: {c!r}")
            if n in coef:
                raise InputError(f"duplicate index {n}")
            if c != 0.0:
                coef[n] = c
        self._coef = coef

    # -- basic queries -------------------------------------------------

    @property
    def support(self) -> frozenset:
        return frozenset(self._coef)

    def coef(self, n: int) -> float:
        """Dual coefficient x*_n(x); zero off the support."""
        return self._coef.get(n, 0.0)

    def items(self):
        return self._coef.items()

    def __len__(self) -> int:
        return len(self._coef)

    def __iter__(self) -> Iterator[int]:
        return iter(self._coef)

    def __bool__(self) -> bool:
        return bool(self._coef)

    def __eq__(self, other) -> bool:
        return isinstance(other, CoefVector) and self._coef == other._coef

    def __hash__(self):
        return hash(frozenset(self._coef.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}: {c!r}" for n, c in sorted(self._coef.items()))
        return f"CoefVector({{{inner}}})"

    # -- algebra (exact on stored floats) ------------------------------

    def __add__(self, other: "CoefVector") -> "CoefVector":
        out = dict(self._coef)
        for n, c in other._coef.items():
            s = out.get(n, 0.0) + c
            if s == 0.0:
                out.pop(n, None)
            else:
                out[n] = s
        return CoefVector(out)

    def __sub__(self, other: "CoefVector") -> "CoefVector":
        return self + (-other)

    def __neg__(self) -> "CoefVector":
        return CoefVector({n: -c for n, c in self._coef.items()})

    def __mul__(self, scalar: float) -> "CoefVector":
        scalar = float(scalar)
        if not math.isfinite(scalar):
            raise InputError(f"scalar is not finite: {scalar!r}")
        return CoefVector({n: scalar * c for n, c in self._coef.items()})

    __rmul__ = __mul__

    # -- derived quantities --------------------------------------------

    def ell_inf(self) -> float:
        return max((abs(c) for c in self._coef.values()), default=0.0)

    def ell_1(self) -> float:
        return sum(abs(c) for c in self._coef.values())

    def in_q(self) -> bool:
        """Membership in Q: every |coefficient| <= 1."""
        return all(abs(c) <= 1.0 for c in self._coef.values())

    def in_q0(self) -> bool:
        """Membership in Q0: in Q with pairwise distinct |coefficients|."""
        mods = [abs(c) for c in self._coef.values()]
        return self.in_q() and len(set(mods)) == len(mods)

    def natural_signs(self) -> "SignPattern":
        """The sign pattern eps(x) restricted to supp(x); sgn(0)=1 never
        arises because stored coefficients are nonzero."""
        return SignPattern({n: 1 if c > 0 else -1 for n, c in self._coef.items()})

    def restrict(self, indices) -> "CoefVector":
        return CoefVector({n: c for n, c in self._coef.items() if n in set(indices)})

    # -- wire format ----------------------------------------------------

    def to_pairs(self):
        """Sorted list of (index, coefficient) pairs; the wire format."""
        return [[n, self._coef[n]] for n in sorted(self._coef)]

    @classmethod
    def from_pairs(cls, pairs: Pairs) -> "CoefVector":
        return cls(pairs)


class SignPattern:
    """Map index -> {-1,+1} over a declared finite index set."""

    __slots__ = ("_signs",)

    def __init__(self, signs: Mapping[int, int] | Pairs):
        out: Dict[int, int] = {}
        items = signs.items() if isinstance(signs, Mapping) else signs
        for n, s in items:
            n = _check_index(n)
            s = int(s)
            if s not in (-1, 1):
                raise InputError(f"sign at index {n} must be -1 or +1, got {s}")
            out[n] = s
        self._signs = out

    @property
    def domain(self) -> frozenset:
        return frozenset(self._signs)

    def sign(self, n: int) -> int:
        try:
            return self._signs[n]
        except KeyError:
            raise DomainError(f"index {n} outside the sign pattern's domain") from None

    def items(self):
        return self._signs.items()

    def __len__(self):
        return len(self._signs)

    def __eq__(self, other):
        return isinstance(other, SignPattern) and self._signs == other._signs

    def __repr__(self):
        inner = ", ".join(f"{n}: {'+1' if s > 0 else '-1'}" for n, s in sorted(self._signs.items()))
        return f"SignPattern({{{inner}}})"

    def to_pairs(self):
        return [[n, self._signs[n]] for n in sorted(self._signs)]

    @classmethod
    def from_pairs(cls, pairs: Pairs) -> "SignPattern":
        return cls(pairs)
