"""Brute-force ground truth for the fast counters and expectation engines.

Everything here trades time for transparency: subsequence sets are built
explicitly, expectations sum over every possible string in exact rational
arithmetic, and structural identities are checked row by row. Size guards
keep the exponential enumerations inside a sane budget and raise
:class:`SizeGuardError` beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .expectation import ExpectationSeries
from .models import IIDModel, MarkovModel
from .strings import Alphabet, IncrementalCounter, LetterString

__all__ = [
    "ENUMERATION_MAX",
    "EXHAUSTIVE_GUARD",
    "SizeGuardError",
    "TreeRow",
    "enumerate_distinct",
    "exhaustive_expectation",
    "tree_row",
    "check_pair_structure",
    "check_submultiplicativity",
    "is_subsequence",
    "superpattern_k_bruteforce",
]

ENUMERATION_MAX = 22
EXHAUSTIVE_GUARD = 2**20


class SizeGuardError(RuntimeError):
    """An exhaustive computation would exceed the configured size guard."""


def _guard_power(d: int, n: int) -> None:
    if d**n > EXHAUSTIVE_GUARD:
        raise SizeGuardError(
            f"{d}**{n} strings exceed the exhaustive guard of {EXHAUSTIVE_GUARD}"
        )


def enumerate_distinct(s: LetterString) -> set[tuple[int, ...]]:
    """All distinct nonempty subsequences of ``s``, as tuples of letters.

    Built letter by letter: each letter extends every subsequence seen so
    far and starts its own singleton. Guarded to length 22 since the result
    can hold up to ``2**n - 1`` elements.
    """
    if len(s) > ENUMERATION_MAX:
        raise SizeGuardError(
            f"refusing to enumerate subsequences of a length-{len(s)} string "
            f"(max {ENUMERATION_MAX})"
        )
    subs: set[tuple[int, ...]] = set()
    for letter in s:
        subs |= {prev + (letter,) for prev in subs}
        subs.add((letter,))
    return subs


@dataclass(frozen=True)
class TreeRow:
    """One row of the complete d-ary prefix tree of new-subsequence counts.

    ``values[m]`` is the new count at the final letter of the m-th length-n
    string, in the tree's left-to-right order: children are appended in
    decreasing letter order, so the leftmost branch is the all-(d-1) string.
    For binary rows that reads 11..1 first and 00..0 last.
    """

    d: int
    n: int
    values: tuple[int, ...]


def tree_row(d: int, n: int) -> TreeRow:
    """Row ``n`` of new-subsequence counts over alphabet size ``d``.

    Row 0 is the empty string with value 0. The walk shares prefix state
    through counter snapshots, so the row costs O(d**n) pushes total.
    """
    if d < 1:
        raise ValueError("alphabet size must be at least 1")
    if n < 0:
        raise ValueError("row index must be nonnegative")
    _guard_power(d, n)
    values: list[int] = []
    counter = IncrementalCounter(Alphabet(d))

    def walk(depth: int, nu: int) -> None:
        if depth == n:
            values.append(nu)
            return
        for letter in range(d - 1, -1, -1):
            state = counter.snapshot()
            child_nu, _ = counter.push(letter)
            walk(depth + 1, child_nu)
            counter.restore(state)

    walk(0, 0)
    return TreeRow(d, n, tuple(values))


def _require_exact(model) -> None:
    if not model.is_exact:
        raise ValueError(
            "exhaustive expectation runs in exact arithmetic; "
            "build the model from Fractions"
        )


def exhaustive_expectation(model, n: int) -> ExpectationSeries:
    """Exact ``E[count(S_i)]`` for i = 1..n by enumerating every string.

    Sums ``phi(T) * Pr[T]`` over all strings T of each length, sharing
    prefix work through a depth-first walk that accumulates per-length new
    weight. IID strings multiply per-letter probabilities; Markov strings
    start from the stationary distribution and multiply transition
    probabilities. Zero-probability branches are pruned, so degenerate
    models cost only their support.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    # Validate before the cache: a float model compares equal to its exact
    # twin, so a cache hit would otherwise skip the exactness check.
    _require_exact(model)
    return _exhaustive_expectation_cached(model, n)


@lru_cache(maxsize=128)
def _exhaustive_expectation_cached(model, n: int) -> ExpectationSeries:
    new_weight = [Fraction(0)] * (n + 1)

    if isinstance(model, IIDModel):
        probs = model.as_fractions().probs
        d = len(probs)
        _guard_power(d, n)
        counter = IncrementalCounter(Alphabet(d))

        def walk(depth: int, prob: Fraction) -> None:
            if depth == n:
                return
            for letter in range(d):
                p = prob * probs[letter]
                if p == 0:
                    continue
                state = counter.snapshot()
                nu, _ = counter.push(letter)
                new_weight[depth + 1] += nu * p
                walk(depth + 1, p)
                counter.restore(state)

        walk(0, Fraction(1))

    elif isinstance(model, MarkovModel):
        _guard_power(2, n)
        alpha = Fraction(model.alpha)
        beta = Fraction(model.beta)
        gamma = model.gamma
        counter = IncrementalCounter(Alphabet(2))

        def letter_prob(prev: int | None, letter: int) -> Fraction:
            if prev is None:
                return gamma if letter == 1 else 1 - gamma
            if prev == 1:
                return alpha if letter == 1 else 1 - alpha
            return beta if letter == 1 else 1 - beta

        def walk_markov(depth: int, prob: Fraction, prev: int | None) -> None:
            if depth == n:
                return
            for letter in (1, 0):
                p = prob * letter_prob(prev, letter)
                if p == 0:
                    continue
                state = counter.snapshot()
                nu, _ = counter.push(letter)
                new_weight[depth + 1] += nu * p
                walk_markov(depth + 1, p, letter)
                counter.restore(state)

        walk_markov(0, Fraction(1), None)

    else:
        raise TypeError(f"unsupported model type {type(model).__name__}")

    values = []
    acc = Fraction(0)
    for i in range(1, n + 1):
        acc += new_weight[i]
        values.append(acc)
    return ExpectationSeries(tuple(values), mode="exact")


def check_pair_structure(n: int) -> bool:
    """Verify the paired structure of consecutive binary tree rows.

    Indexing row entries 1..2**n: the equal pair at positions (m, m+1) with
    m = 2 mod 4 sums its two parents in row n-1, while the equal pair with
    m = 0 mod 4 (excluding m = 2**n) repeats its parents, which also match
    each other. Needs n >= 2 so both row levels exist.
    """
    if n < 2:
        raise ValueError("pair structure checks need n >= 2")
    _guard_power(2, n)
    row = tree_row(2, n).values
    parent = tree_row(2, n - 1).values
    for m in range(2, 2**n, 2):
        first, second = row[m - 1], row[m]
        if first != second:
            return False
        left, right = parent[m // 2 - 1], parent[m // 2]
        if m % 4 == 2:
            if first != left + right:
                return False
        else:
            if left != right or first != left:
                return False
    return True


def check_submultiplicativity(model: IIDModel, n: int, m: int) -> bool:
    """Exact check that empty-inclusive expected counts are submultiplicative.

    With ``psi(i) = E[count(S_i)] + 1`` (the empty subsequence included),
    checks ``psi(n + m) <= psi(n) * psi(m)``. The inclusion matters: the
    nonempty-only version already fails for fair binary strings at
    n = m = 2, where E[count] values (1, 5/2, 19/4, 65/8) give
    65/8 > (5/2)**2. Splitting a string into a prefix and a suffix maps
    each subsequence to a pair of possibly-empty halves, which is where the
    inequality (and the need for the empty subsequence) comes from.
    """
    if not isinstance(model, IIDModel):
        raise TypeError("submultiplicativity checks apply to IID models")
    if n < 1 or m < 1:
        raise ValueError("both lengths must be at least 1")
    series = exhaustive_expectation(model, n + m)

    def psi(i: int) -> Fraction:
        return series.value_at(i) + 1

    return psi(n + m) <= psi(n) * psi(m)


def is_subsequence(pattern, letters) -> bool:
    """Two-pointer containment check on plain int sequences."""
    it = iter(letters)
    return all(p in it for p in pattern)


def superpattern_k_bruteforce(s: LetterString) -> int:
    """Largest k with every length-k pattern embedded, by direct enumeration.

    Walks pattern space level by level, tracking for every pattern the end
    position of its leftmost embedding via a next-occurrence table; level
    k + 1 is reachable only while every pattern of length k + 1 embeds.
    Exponential in the answer, so guarded by the exhaustive budget.
    """
    d = s.alphabet.size
    n = len(s)
    # next_at[i][c] = least j >= i with letters[j] == c, else n
    next_at = [[n] * d for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        row = next_at[i]
        row[:] = next_at[i + 1]
        row[s.letters[i]] = i

    ends = [0]
    k = 0
    while True:
        if d ** (k + 1) > EXHAUSTIVE_GUARD:
            raise SizeGuardError(
                f"pattern space {d}**{k + 1} exceeds the exhaustive guard"
            )
        nxt: list[int] = []
        complete = True
        for pos in ends:
            for c in range(d):
                q = next_at[pos][c] + 1
                if q > n:
                    complete = False
                    break
                nxt.append(q)
            if not complete:
                break
        if not complete:
            return k
        k += 1
        ends = nxt
