"""Max-plus evaluation of landscape values as tropical rational functions.

The max-plus semiring has ⊕ = max with identity -∞ and ⊙ = + with
identity 0; ⊙-inversion is negation.  A landscape value λ_k(t) equals
σ_k ⊙ σ_{k-1}^{-1} of the tent values at t, where σ_k is the elementary
symmetric max-plus polynomial (the sum of the k largest arguments).
Everything here is evaluation, not symbolic algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .diagram import PersistenceDiagram
from .rational import Rational, RationalLike, to_rational

_ZERO = Rational(0)


@dataclass(frozen=True)
class TropicalValue:
    """An element of the max-plus semiring: a rational, or -∞ (``None``).

    ``a + b`` is ⊕ (max), ``a * b`` is ⊙ (plus), ``a.inverse()`` is the
    ⊙-inverse (negation); ``-∞`` absorbs ⊙ and is the identity of ⊕.
    """

    value: Optional[Rational]

    def __post_init__(self) -> None:
        if self.value is not None:
            object.__setattr__(self, "value", to_rational(self.value))

    @property
    def is_minus_inf(self) -> bool:
        return self.value is None

    def __add__(self, other: "TropicalValue") -> "TropicalValue":
        if self.value is None:
            return other
        if other.value is None:
            return self
        return TropicalValue(max(self.value, other.value))

    def __mul__(self, other: "TropicalValue") -> "TropicalValue":
        if self.value is None or other.value is None:
            return TROPICAL_ZERO
        return TropicalValue(self.value + other.value)

    def inverse(self) -> "TropicalValue":
        if self.value is None:
            raise ZeroDivisionError("-inf has no ⊙-inverse")
        return TropicalValue(-self.value)

    def __le__(self, other: "TropicalValue") -> bool:
        if self.value is None:
            return True
        if other.value is None:
            return False
        return self.value <= other.value

    def __lt__(self, other: "TropicalValue") -> bool:
        return self <= other and self != other

    def __str__(self) -> str:
        return "-inf" if self.value is None else str(self.value)


TROPICAL_ZERO = TropicalValue(None)  # identity of ⊕, absorbing for ⊙
TROPICAL_ONE = TropicalValue(_ZERO)  # identity of ⊙


def tropical_tent(t: RationalLike, a: RationalLike, b: RationalLike) -> TropicalValue:
    """Tent value at t computed purely with ⊕, ⊙ and inversion.

    Evaluates 0 ⊕ t ⊙ b ⊙ (a ⊙ b ⊕ t²)^{-1}, which unfolds to
    max(0, t + b - max(a + b, 2t)) = max(0, min(t - a, b - t)).
    """
    a, b = to_rational(a), to_rational(b)
    if not a < b:
        raise ValueError(f"tent requires a < b, got ({a}, {b})")
    tv = TropicalValue(to_rational(t))
    av, bv = TropicalValue(a), TropicalValue(b)
    return TROPICAL_ONE + tv * bv * (av * bv + tv * tv).inverse()


def sigma_k(values: Sequence[TropicalValue], k: int) -> TropicalValue:
    """Elementary symmetric max-plus polynomial: ⊙-sum of the k largest.

    σ_0 is the ⊙-identity 0; σ_k for k beyond the arity is -∞.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return TROPICAL_ONE
    if k > len(values):
        return TROPICAL_ZERO
    ordered = sorted(values, reverse=True)
    acc = TROPICAL_ONE
    for v in ordered[:k]:
        acc = acc * v
    return acc


@lru_cache(maxsize=8192)
def _sigma_prefixes(t: Rational, d: PersistenceDiagram) -> tuple[TropicalValue, ...]:
    """(σ_0, σ_1, ..., σ_n) of the tent values of ``d`` at ``t``."""
    values = sorted((tropical_tent(t, a, b) for a, b in d.points), reverse=True)
    prefixes = [TROPICAL_ONE]
    for v in values:
        prefixes.append(prefixes[-1] * v)
    return tuple(prefixes)


def lambda_kt(k: int, t: RationalLike, d: PersistenceDiagram) -> TropicalValue:
    """σ_k ⊙ σ_{k-1}^{-1} of the tent values of ``d`` at ``t``.

    Equals the landscape value λ_k(t) for k up to |d|, and -∞ (the
    tropical zero, read as landscape value 0) beyond.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    prefixes = _sigma_prefixes(to_rational(t), d)
    if k >= len(prefixes):
        return TROPICAL_ZERO
    return prefixes[k] * prefixes[k - 1].inverse()


def feature_grid(d: PersistenceDiagram, k_max: int, a: RationalLike,
                 eps: RationalLike, m: int) -> list[list[Rational]]:
    """(k_max x 2m+1) matrix of λ_{k,t} over t = a, a+eps, ..., a+2m·eps.

    -∞ entries are rendered as 0 to match landscape semantics.  With k_max
    at least the maximal overlap depth and the grid covering all
    coordinates, the matrix determines the diagram.
    """
    a, eps = to_rational(a), to_rational(eps)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if not eps > 0:
        raise ValueError("eps must be positive")
    if m < 1:
        raise ValueError("m must be at least 1")
    out = []
    for k in range(1, k_max + 1):
        row = []
        for i in range(2 * m + 1):
            v = lambda_kt(k, a + i * eps, d)
            row.append(_ZERO if v.is_minus_inf else v.value)
        out.append(row)
    return out
