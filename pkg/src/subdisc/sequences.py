"""Parameter sequences, the letter substitution, supertiles, and exact counting.

A sequence (a_0, ..., a_{k-1}, a, a, ...) defines the substitution
0 -> 0^(a_0) 1 and i -> 0^(a_i) (i-1) (i+1). The infinite substitution
matrix is never materialised; only its column action on count vectors
(`abelian_step`) and, in the twist module, its row action exist.
"""

from __future__ import annotations

from dataclasses import dataclass

LetterWord = list  # letters are plain non-negative integer indices

DEFAULT_SUPERTILE_CAP = 1_000_000


@dataclass(frozen=True)
class EventuallyConstantSeq:
    """The parameters (a_0, ..., a_{k-1}, a, a, ...); prefix is minimal."""

    prefix: tuple[int, ...]
    tail: int

    @property
    def k(self) -> int:
        """Index from which the sequence is constant."""
        return len(self.prefix)

    def a(self, j: int) -> int:
        return self.prefix[j] if j < len(self.prefix) else self.tail

    def label(self) -> str:
        entries = ", ".join(str(v) for v in (*self.prefix, self.tail))
        return f"({entries}, {self.tail}, ...)" if self.prefix else f"({self.tail}, {self.tail}, ...)"

    def is_constant_length(self) -> bool:
        """True iff every letter image has the same length (a_i = a_0 - 1, i >= 1)."""
        return self.prefix != () and len(self.prefix) == 1 and self.tail == self.prefix[0] - 1


def build_sequence(prefix, tail) -> EventuallyConstantSeq:
    """Validate and normalise a parameter sequence (minimal prefix)."""
    prefix = [int(v) for v in prefix]
    tail = int(tail)
    if tail < 1:
        raise ValueError("tail value must be positive")
    if any(v < 0 for v in prefix):
        raise ValueError("sequence entries must be non-negative")
    a0 = prefix[0] if prefix else tail
    if a0 == 0:
        raise ValueError("a0 must be positive")
    while prefix and prefix[-1] == tail:
        prefix.pop()
    return EventuallyConstantSeq(tuple(prefix), tail)


def substitute(seq: EventuallyConstantSeq, i: int) -> LetterWord:
    """Image of the letter [i] under the substitution."""
    if i < 0:
        raise ValueError("letter index must be non-negative")
    if i == 0:
        return [0] * seq.a(0) + [1]
    return [0] * seq.a(i) + [i - 1, i + 1]


def supertile(seq: EventuallyConstantSeq, n: int, cap: int = DEFAULT_SUPERTILE_CAP) -> LetterWord:
    """The literal word rho^n([0]), expanded left to right.

    Raises ValueError once the output would exceed ``cap`` letters (the
    length grows like lambda^n).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    word = [0]
    for _ in range(n):
        out: LetterWord = []
        for letter in word:
            out.extend(substitute(seq, letter))
            if len(out) > cap:
                raise ValueError("supertile too large")
        word = out
    return word


@dataclass(frozen=True)
class CountVector:
    """Letter multiplicities; entries beyond support_bound are zero."""

    entries: tuple

    @property
    def support_bound(self) -> int:
        return len(self.entries) - 1

    def total(self) -> int:
        return sum(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i] if 0 <= i < len(self.entries) else 0

    @staticmethod
    def unit() -> "CountVector":
        return CountVector((1,))


def abelian_step(seq: EventuallyConstantSeq, v: CountVector) -> CountVector:
    """One application of the substitution matrix to a count vector."""
    ent = v.entries
    m = len(ent)
    k = seq.k
    head = sum(seq.a(j) * ent[j] for j in range(min(k, m)))
    if m > k:
        head += seq.tail * sum(ent[k:])
    new0 = head + (ent[1] if m > 1 else 0)
    out = [new0]
    for j in range(1, m + 1):
        out.append(ent[j - 1] + (ent[j + 1] if j + 1 < m else 0))
    return CountVector(tuple(out))


def tile_count(seq: EventuallyConstantSeq, n: int) -> int:
    """Total number of letters in rho^n([0]), computed exactly."""
    if n < 0:
        raise ValueError("n must be non-negative")
    v = CountVector.unit()
    for _ in range(n):
        v = abelian_step(seq, v)
    return v.total()


def count_series(seq: EventuallyConstantSeq, n_max: int) -> list:
    """Exact tile counts for n = 0..n_max in one sweep."""
    counts = []
    v = CountVector.unit()
    for _ in range(n_max + 1):
        counts.append(v.total())
        v = abelian_step(seq, v)
    return counts


def letter_histogram(word: LetterWord) -> CountVector:
    """Multiplicity vector of a literal word (test oracle for abelian_step)."""
    if not word:
        return CountVector(())
    top = max(word)
    ent = [0] * (top + 1)
    for letter in word:
        ent[letter] += 1
    return CountVector(tuple(ent))
