"""Embedding-count analysis: expected occurrence counts of a fixed pattern
and the balance and threshold equations they lead to.

The balance function ``g(x) = 2**x * x**x * (1-x)**(1-x)`` measures the
exponential rate of the expected number of embeddings of a pattern of
length x*n in a fair binary string of length n, normalised against a target
rate; sub-unit targets are hit twice in (0, 1). The threshold where the
expected embedding count itself drops below one solves ``H(x) = x`` with H
the base-2 binary entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .models import IIDModel
from .strings import LetterString

__all__ = [
    "BRACKET_TOL",
    "RESIDUAL_TOL",
    "RootResult",
    "BalanceRoots",
    "binary_entropy",
    "balance_value",
    "balance_minimum",
    "solve_balance",
    "occurrence_threshold",
    "expected_occurrences",
]

BRACKET_TOL = 1e-13
RESIDUAL_TOL = 1e-12
_EDGE = 1e-15


@dataclass(frozen=True)
class RootResult:
    """A bracketed root: location, defect against the target, final bracket."""

    x: float
    residual: float
    bracket: tuple[float, float]
    iterations: int


@dataclass(frozen=True)
class BalanceRoots:
    """Both solutions of ``g(x) = target``. ``lower`` is None when only the
    increasing branch reaches the target (target at or near 1)."""

    lower: RootResult | None
    upper: RootResult


def binary_entropy(x: float) -> float:
    """Base-2 entropy ``-x log2 x - (1-x) log2 (1-x)``, zero at the endpoints."""
    if not 0 <= x <= 1:
        raise ValueError(f"entropy argument must lie in [0, 1], got {x!r}")
    if x == 0 or x == 1:
        return 0.0
    return -(x * math.log2(x) + (1 - x) * math.log2(1 - x))


def balance_value(x: float) -> float:
    """``g(x) = 2**x * x**x * (1-x)**(1-x)``, extended continuously to [0, 1].

    ``x**x -> 1`` as x -> 0, and likewise for the mirrored factor at x = 1,
    so g(0) = 1 and g(1) = 2.
    """
    if not 0 <= x <= 1:
        raise ValueError(f"balance argument must lie in [0, 1], got {x!r}")

    def self_power(v: float) -> float:
        return 1.0 if v == 0 else v**v

    return 2.0**x * self_power(x) * self_power(1.0 - x)


def _bisect(f, lo: float, hi: float, target: float = 0.0, xtol: float = BRACKET_TOL) -> RootResult:
    """Bisection for ``f(x) = target`` on [lo, hi]; endpoints must straddle."""
    f_lo = f(lo) - target
    f_hi = f(hi) - target
    if f_lo == 0.0:
        return RootResult(lo, 0.0, (lo, hi), 0)
    if f_hi == 0.0:
        return RootResult(hi, 0.0, (lo, hi), 0)
    if (f_lo > 0) == (f_hi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    iterations = 0
    while hi - lo > xtol:
        mid = (lo + hi) / 2.0
        if mid <= lo or mid >= hi:
            break  # float resolution floor
        f_mid = f(mid) - target
        iterations += 1
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    x = (lo + hi) / 2.0
    return RootResult(x, f(x) - target, (lo, hi), iterations)


def _golden_min(f, lo: float, hi: float, tol: float = 1e-9) -> float:
    """Golden-section minimiser of a unimodal f on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def balance_minimum() -> tuple[float, float]:
    """Location and value of the interior minimum of the balance function.

    Found by golden-section search; analytically the minimiser solves
    ``x / (1 - x) = 1/2``, i.e. x = 1/3 with g(1/3) = 2/3.
    """
    x_min = _golden_min(balance_value, _EDGE, 1.0 - _EDGE)
    return x_min, balance_value(x_min)


def solve_balance(target: float) -> BalanceRoots:
    """Both roots of ``2**x * x**x * (1-x)**(1-x) = target`` inside (0, 1).

    g decreases from 1 (its limit at 0) to the interior minimum 2/3 at
    x = 1/3, then increases to 2 at x = 1, so each target in (2/3, 1) is hit
    once per branch. The minimiser is located by golden-section search and
    each monotone branch is bisected to a 1e-13 bracket. target = 1 is
    reached only on the increasing branch (lower is None); targets below
    the minimum have no root and raise.
    """
    if not 0.0 < target <= 1.0:
        raise ValueError(f"target must lie in (0, 1], got {target!r}")
    x_min, g_min = balance_minimum()
    if target < g_min - RESIDUAL_TOL:
        raise ValueError(
            f"no real roots: target {target} lies below the minimum "
            f"{g_min:.15f} of the balance function"
        )
    if target <= g_min:
        # grazing the minimum: double root
        grazing = RootResult(
            x_min, g_min - target, (x_min - 1e-9, x_min + 1e-9), 0
        )
        return BalanceRoots(grazing, grazing)
    upper = _bisect(balance_value, x_min, 1.0 - _EDGE, target=target)
    if balance_value(_EDGE) <= target:
        return BalanceRoots(None, upper)
    lower = _bisect(balance_value, _EDGE, x_min, target=target)
    return BalanceRoots(lower, upper)


def occurrence_threshold() -> RootResult:
    """Root of ``H(x) = x`` on (1/2, 1): the pattern-length fraction above
    which a fair binary string is expected to contain less than one
    embedding of a typical pattern. Equivalent to the balance function
    hitting 1 on its increasing branch."""
    return _bisect(lambda x: binary_entropy(x) - x, 0.5, 1.0 - _EDGE)


def expected_occurrences(
    n: int, pattern: LetterString, model: IIDModel, log_space: bool = False
) -> float:
    """Expected number of index-set embeddings of ``pattern`` in an IID
    random string of length n.

    Equals ``C(n, k)`` times the product of the pattern's letter
    probabilities, with k the pattern length. Computed with exact
    big-integer binomials (and exact rational weights for exact models),
    then converted to float. ``log_space=True`` returns the natural log
    instead, with -inf for zero-probability patterns; use it once the plain
    value overflows floats.
    """
    k = len(pattern)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k > n:
        raise ValueError(f"pattern length {k} exceeds n = {n}")
    for letter in pattern:
        if letter >= model.d:
            raise ValueError(
                f"pattern letter {letter} is outside the model's alphabet of size {model.d}"
            )
    if log_space:
        total = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        for letter in pattern:
            p = float(model.probs[letter])
            if p == 0.0:
                return -math.inf
            total += math.log(p)
        return total
    comb = math.comb(n, k)
    try:
        if model.is_exact:
            weight = Fraction(1)
            for letter in pattern:
                weight *= Fraction(model.probs[letter])
            return float(comb * weight)
        weight_f = 1.0
        for letter in pattern:
            weight_f *= float(model.probs[letter])
        return float(comb) * weight_f
    except OverflowError:
        raise ValueError(
            "expected count overflows a float; call with log_space=True"
        ) from None
