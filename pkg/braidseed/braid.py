from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .logger import LogLevel, log

TAG = "braid"


def _tokens(text):
    text = (text or "").strip()
    if not text:
        return []
    tokens = [t for t in re.split(r"[\s,]+", text) if t]
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise InvalidInput(f"not an integer sequence: {text!r}") from exc


def _check_n(n):
    if not isinstance(n, int) or n < 2:
        raise InvalidInput(f"strand count must be an integer >= 2, got {n!r}")


def _check_letter(i, n):
    if not 1 <= i <= n - 1:
        raise InvalidInput(f"letter {i} out of range 1..{n - 1}")


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InvalidInput(f"not a permutation in one-line notation: {self.images}")

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n):
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def from_oneline(cls, text, n=None):
        images = tuple(_tokens(text)) if isinstance(text, str) else tuple(text)
        if n is not None and len(images) != n:
            raise InvalidInput(f"one-line permutation has {len(images)} entries, expected {n}")
        perm = cls(images)
        _check_n(perm.n)
        return perm

    @classmethod
    def from_word(cls, word, n=None, require_reduced=True):
        """Product s_{w_1} s_{w_2} ... of simple reflections, read left to right."""
        if isinstance(word, BraidWord):
            n, letters = word.n, word.letters
        else:
            _check_n(n)
            letters = tuple(_tokens(word)) if isinstance(word, str) else tuple(word)
        perm = cls.identity(n)
        for i in letters:
            _check_letter(i, n)
            if require_reduced and perm.has_right_descent(i):
                raise InvalidInput(f"word {' '.join(map(str, letters))} is not reduced")
            perm = perm.right_multiply(i)
        return perm

    @property
    def n(self):
        return len(self.images)

    def right_multiply(self, i):
        """v·s_i: swap the entries in positions i and i+1."""
        images = list(self.images)
        images[i - 1], images[i] = images[i], images[i - 1]
        return Permutation(tuple(images))

    def left_multiply(self, i):
        """s_i·v: swap the values i and i+1."""
        swap = {i: i + 1, i + 1: i}
        return Permutation(tuple(swap.get(v, v) for v in self.images))

    def has_right_descent(self, i):
        return self.images[i - 1] > self.images[i]

    def has_left_descent(self, i):
        return self.images.index(i) > self.images.index(i + 1)

    def inverse(self):
        images = [0] * self.n
        for position, value in enumerate(self.images, start=1):
            images[value - 1] = position
        return Permutation(tuple(images))

    def compose(self, other):
        """(self·other)(j) = self(other(j))."""
        return Permutation(tuple(self.images[v - 1] for v in other.images))

    def length(self):
        images = self.images
        return sum(
            1
            for a in range(len(images))
            for b in range(a + 1, len(images))
            if images[a] > images[b]
        )

    def is_identity(self):
        return self.images == tuple(range(1, self.n + 1))

    def __str__(self):
        return f"[{', '.join(str(v) for v in self.images)}]"


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        _check_n(self.n)
        for i in self.letters:
            _check_letter(i, self.n)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def suffix(self, start):
        """The word i_start ... i_k for a 1-based start position."""
        return BraidWord(self.n, self.letters[start - 1:])

    def concat(self, other):
        return BraidWord(self.n, self.letters + other.letters)

    def distinct_letters(self):
        return len(set(self.letters))

    def text(self):
        return " ".join(str(i) for i in self.letters)

    def __str__(self):
        return f"({','.join(str(i) for i in self.letters)})"


@dataclass(frozen=True)
class DemazureTrace:
    u_seq: tuple[Permutation, ...]
    J: frozenset[int]

    @property
    def k(self):
        return len(self.u_seq) - 1

    def u_at(self, j):
        """u_j for 0 <= j <= k."""
        return self.u_seq[j]

    @property
    def nonempty(self):
        return self.u_seq[0].is_identity()

    def bridge_positions(self):
        return sorted(self.J)

    def crossing_positions(self):
        return [j for j in range(1, self.k + 1) if j not in self.J]


def parse_word(text, n):
    _check_n(n)
    return BraidWord(n, tuple(_tokens(text)))


def demazure_quotient(v, i):
    if not 1 <= i <= v.n - 1:
        raise InvalidInput(f"letter {i} out of range 1..{v.n - 1}")
    if v.has_right_descent(i):
        return v.right_multiply(i)
    return v


def demazure_trace(u, beta):
    if u.n != beta.n:
        raise InvalidInput(f"u lives in S_{u.n} but beta has {beta.n} strands")
    k = len(beta)
    u_seq = [None] * (k + 1)
    u_seq[k] = u
    J = set()
    for j in range(k, 0, -1):
        u_seq[j - 1] = demazure_quotient(u_seq[j], beta.letters[j - 1])
        if u_seq[j - 1] == u_seq[j]:
            J.add(j)
    trace = DemazureTrace(tuple(u_seq), frozenset(J))
    log(LogLevel.VERBOSE, TAG, f"u={u} beta={beta} J={sorted(J)} u_0={u_seq[0]}")
    return trace


def is_nonempty(u, beta):
    return demazure_trace(u, beta).nonempty


def reflect(i, v, n=None):
    """R_i on a boundary vector; when n is given, v must have length n - 1."""
    v = list(v)
    if n is not None and len(v) != n - 1:
        raise InvalidInput(f"length mismatch: {len(v)} != {n - 1} for {n} strands")
    if not 1 <= i <= len(v):
        raise InvalidInput(f"reflection index {i} out of range 1..{len(v)}")
    below = v[i - 2] if i >= 2 else 0
    above = v[i] if i < len(v) else 0
    v[i - 1] = -v[i - 1] + below + above
    return tuple(v)


def boundary_form(a, b):
    if len(a) != len(b):
        raise InvalidInput(f"length mismatch: {len(a)} != {len(b)}")
    total = Fraction(0)
    for l in range(len(a)):
        total -= a[l] * b[l]
        if l + 1 < len(a):
            total += Fraction(a[l] * b[l + 1] + a[l + 1] * b[l], 2)
    return total


def unit_vector(i, size):
    return tuple(1 if l == i - 1 else 0 for l in range(size))


def reduced_word(p):
    """Lexicographically smallest reduced word, peeling the smallest left descent."""
    letters = []
    while not p.is_identity():
        i = next(i for i in range(1, p.n) if p.has_left_descent(i))
        letters.append(i)
        p = p.left_multiply(i)
    return BraidWord(p.n, tuple(letters))
