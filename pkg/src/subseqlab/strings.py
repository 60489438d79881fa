"""Counting distinct subsequences of strings over finite alphabets.

A subsequence is obtained by deleting letters at any positions; each
distinct value is counted once no matter how many ways it embeds. Counts
follow the nonempty convention: :func:`count_distinct` excludes the empty
subsequence, :func:`count_distinct_with_empty` adds one for it.

Letters are integers ``0..d-1``. Counts are plain Python ints, which are
arbitrary precision; a length-n binary string can reach ``2**n - 1``
distinct subsequences, far past any fixed-width integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "Alphabet",
    "BINARY",
    "LetterString",
    "NewCountProfile",
    "IncrementalCounter",
    "new_subseq_counts",
    "count_distinct",
    "count_distinct_with_empty",
]


@dataclass(frozen=True)
class Alphabet:
    """Finite alphabet whose letters are the integers ``0..size-1``."""

    size: int

    def __post_init__(self) -> None:
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"alphabet size must be a positive int, got {self.size!r}")

    def check_letter(self, letter: int) -> None:
        if not 0 <= letter < self.size:
            raise ValueError(
                f"letter {letter} out of range for alphabet of size {self.size}"
            )


BINARY = Alphabet(2)


@dataclass(frozen=True)
class LetterString:
    """Immutable string of letters over a fixed alphabet."""

    alphabet: Alphabet
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        for letter in self.letters:
            self.alphabet.check_letter(letter)

    @classmethod
    def from_letters(
        cls, letters: Iterable[int], alphabet: Alphabet | None = None
    ) -> "LetterString":
        """Build from an iterable of ints; infers the alphabet if not given."""
        seq = tuple(int(x) for x in letters)
        if alphabet is None:
            alphabet = Alphabet(max(seq) + 1 if seq else 1)
        return cls(alphabet, seq)

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet | None = None) -> "LetterString":
        """Parse a digit string ("0110") or comma-separated letters ("2,1,0").

        The empty string parses to the empty LetterString. Digit form covers
        alphabets up to size 10; the comma form covers any size. Without an
        explicit alphabet the size is inferred as the largest letter plus one.
        """
        text = text.strip()
        if not text:
            return cls(alphabet if alphabet is not None else Alphabet(1), ())
        if "," in text:
            try:
                seq = tuple(int(tok.strip()) for tok in text.split(","))
            except ValueError:
                raise ValueError(f"cannot parse letters from {text!r}") from None
        elif text.isascii() and text.isdigit():
            seq = tuple(int(ch) for ch in text)
        else:
            raise ValueError(
                f"cannot parse {text!r}: expected digits or comma-separated integers"
            )
        if any(x < 0 for x in seq):
            raise ValueError(f"negative letter in {text!r}")
        if alphabet is None:
            alphabet = Alphabet(max(seq) + 1)
        return cls(alphabet, seq)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def extended(self, letter: int) -> "LetterString":
        """Copy with one letter appended."""
        return LetterString(self.alphabet, self.letters + (letter,))

    def relabeled(self, permutation) -> "LetterString":
        """Apply an alphabet permutation (``permutation[old] = new``) letterwise."""
        return LetterString(self.alphabet, tuple(permutation[x] for x in self.letters))

    def as_text(self) -> str:
        if self.alphabet.size <= 10:
            return "".join(str(x) for x in self.letters)
        return ",".join(str(x) for x in self.letters)


@dataclass(frozen=True)
class NewCountProfile:
    """Per-letter counts of subsequences that are new at each prefix.

    ``counts[i]`` is the number of distinct subsequences of the length-(i+1)
    prefix that are not subsequences of the length-i prefix. Every entry is
    at least 1 (the prefix itself is always new), and the running totals are
    the distinct-subsequence counts of the prefixes.
    """

    counts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    @property
    def total(self) -> int:
        """Distinct nonempty subsequences of the whole string."""
        return sum(self.counts)

    def running_totals(self) -> tuple[int, ...]:
        out: list[int] = []
        acc = 0
        for c in self.counts:
            acc += c
            out.append(acc)
        return tuple(out)


class IncrementalCounter:
    """Streaming counter of new and total distinct subsequences.

    Feeding letters in order yields, per letter, how many subsequences first
    appear with that letter and the running total of distinct nonempty
    subsequences.

    The recurrence, for letter c arriving after i-1 earlier letters: the new
    count equals the sum of the new counts since c's previous occurrence when
    c occurred before, and the running total plus one otherwise. Keeping, for
    each letter, the running total just before its last occurrence makes each
    push O(1) big-integer additions.

    Single writer only; use :meth:`snapshot` / :meth:`restore` to backtrack
    during tree walks instead of copying the counter.
    """

    __slots__ = ("alphabet", "_total", "_before_last", "_length")

    def __init__(self, alphabet: Alphabet) -> None:
        self.alphabet = alphabet
        self._total = 0
        self._before_last: dict[int, int] = {}
        self._length = 0

    @property
    def length(self) -> int:
        return self._length

    @property
    def total(self) -> int:
        """Distinct nonempty subsequences of everything pushed so far."""
        return self._total

    def push(self, letter: int) -> tuple[int, int]:
        """Append one letter; returns ``(new_count, running_total)``."""
        self.alphabet.check_letter(letter)
        base = self._before_last.get(letter)
        nu = self._total + 1 if base is None else self._total - base
        self._before_last[letter] = self._total
        self._total += nu
        self._length += 1
        return nu, self._total

    def snapshot(self):
        """Opaque state token; pass back to :meth:`restore` to rewind."""
        return self._total, self._length, dict(self._before_last)

    def restore(self, state) -> None:
        total, length, before = state
        self._total = total
        self._length = length
        self._before_last = dict(before)


def new_subseq_counts(s: LetterString) -> NewCountProfile:
    """New-subsequence count contributed by each letter of ``s``, in order."""
    counter = IncrementalCounter(s.alphabet)
    return NewCountProfile(tuple(counter.push(x)[0] for x in s))


def count_distinct(s: LetterString) -> int:
    """Number of distinct nonempty subsequences of ``s`` (0 for the empty string)."""
    counter = IncrementalCounter(s.alphabet)
    for x in s:
        counter.push(x)
    return counter.total


def count_distinct_with_empty(s: LetterString) -> int:
    """Distinct subsequences of ``s`` including the empty subsequence."""
    return count_distinct(s) + 1
