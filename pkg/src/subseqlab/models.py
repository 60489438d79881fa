"""Random letter-generation models: IID letters and a two-state Markov chain.

Models carry their probabilities either as exact rationals (Fractions or
ints) or as floats. Exact models feed the exact expectation engines and the
exhaustive oracle; float models feed the floating engines and the samplers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

FLOAT_SUM_TOL = 1e-12


def is_exact_number(value) -> bool:
    """True for values usable in exact rational arithmetic."""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def parse_probability(text: str, exact: bool = False):
    """Parse "0.3" or "3/10". Exact mode returns a Fraction (decimals stay exact)."""
    text = text.strip()
    try:
        if exact:
            return Fraction(text)
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse probability {text!r}") from None


def _check_unit_interval(p, name: str) -> None:
    if not 0 <= p <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")


@dataclass(frozen=True)
class IIDModel:
    """Independent letters: letter j is drawn with probability ``probs[j]``."""

    probs: tuple

    def __post_init__(self) -> None:
        if len(self.probs) < 1:
            raise ValueError("need at least one letter probability")
        for p in self.probs:
            _check_unit_interval(p, "letter probability")
        total = sum(self.probs)
        if self.is_exact:
            if total != 1:
                raise ValueError(f"probabilities must sum to 1, got {total}")
        elif abs(total - 1) > FLOAT_SUM_TOL:
            raise ValueError(
                f"probabilities must sum to 1 within {FLOAT_SUM_TOL}, got {total!r}"
            )

    @property
    def d(self) -> int:
        return len(self.probs)

    @property
    def is_exact(self) -> bool:
        return all(is_exact_number(p) for p in self.probs)

    @classmethod
    def binary(cls, alpha) -> "IIDModel":
        """Binary model with ``Pr[letter 1] = alpha``."""
        _check_unit_interval(alpha, "alpha")
        return cls((1 - alpha, alpha))

    @classmethod
    def uniform(cls, d: int) -> "IIDModel":
        return cls(tuple(Fraction(1, d) for _ in range(d)))

    def as_floats(self) -> "IIDModel":
        return IIDModel(tuple(float(p) for p in self.probs))

    def as_fractions(self) -> "IIDModel":
        if not self.is_exact:
            raise ValueError("model probabilities are not exact rationals")
        return IIDModel(tuple(Fraction(p) for p in self.probs))

    def describe(self) -> str:
        return "iid(" + ",".join(str(p) for p in self.probs) + ")"


@dataclass(frozen=True)
class MarkovModel:
    """Two-state binary chain: ``Pr[1 after 1] = alpha``, ``Pr[1 after 0] = beta``.

    The first letter is drawn with the stationary probability of a one,
    ``gamma = beta / (1 + beta - alpha)``, which is what a phantom letter in
    front of the string (contributing no subsequences) produces.
    """

    alpha: object
    beta: object

    def __post_init__(self) -> None:
        _check_unit_interval(self.alpha, "alpha")
        _check_unit_interval(self.beta, "beta")
        if self.alpha == 1 and self.beta == 0:
            raise ValueError(
                "alpha=1, beta=0 has no stationary start (both states absorbing)"
            )

    @property
    def is_exact(self) -> bool:
        return is_exact_number(self.alpha) and is_exact_number(self.beta)

    @property
    def is_interior(self) -> bool:
        """True when both transition probabilities are strictly inside (0, 1)."""
        return 0 < self.alpha < 1 and 0 < self.beta < 1

    @property
    def gamma(self):
        """Stationary probability that a letter is 1."""
        if self.is_exact:
            return Fraction(self.beta) / (1 + Fraction(self.beta) - Fraction(self.alpha))
        return float(self.beta) / (1 + float(self.beta) - float(self.alpha))

    def as_floats(self) -> "MarkovModel":
        return MarkovModel(float(self.alpha), float(self.beta))

    def describe(self) -> str:
        return f"markov(alpha={self.alpha},beta={self.beta})"
