"""Subshifts of finite type, words, dyadic resolutions and block potentials.

Everything downstream relies on the exact dictionary between Bowen balls and
cylinders that holds for the metric d(x, y) = 2^{-min{i >= 0 : x_i != y_i}}
on one-sided sequence space:

* open ball  B_n(x, 2^{-m})  = cylinder of the length-(n+m)   prefix of x,
* closed ball B̄_n(x, 2^{-m}) = cylinder of the length-(n+m-1) prefix of x,
* two points are (n, 2^{-m})-separated iff their length-(n+m-1) prefixes
  differ.

Potentials are locally constant (a real table on blocks of a fixed length r),
so Birkhoff sums are finite exact sums and every ball weight used by the
pressure constructions is computable from a finite word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np
from scipy.sparse.csgraph import connected_components

Word = tuple  # tuple of small ints; helpers below convert from/to strings


class PrecisionError(ValueError):
    """A word is too short to determine the requested ball or Birkhoff sum."""


def parse_word(w) -> Word:
    """Coerce a word given as a tuple/list/str of digits to a tuple of ints."""
    if isinstance(w, str):
        return tuple(int(c) for c in w)
    return tuple(int(c) for c in w)


def word_str(w: Word) -> str:
    return "".join(str(c) for c in w)


@dataclass(frozen=True)
class Subshift:
    """A one-sided subshift of finite type on symbols 0..k-1.

    ``transitions[a][b] == 1`` means the two-letter word ``ab`` is allowed.
    Every symbol must have at least one outgoing and one incoming allowed
    transition, so the language is factorial and every word extends.
    """

    alphabet_size: int
    transitions: tuple

    def __post_init__(self):
        k = self.alphabet_size
        if k < 2:
            raise ValueError("alphabet_size must be >= 2")
        t = tuple(tuple(int(bool(x)) for x in row) for row in self.transitions)
        if len(t) != k or any(len(row) != k for row in t):
            raise ValueError("transitions must be a k x k 0/1 matrix")
        object.__setattr__(self, "transitions", t)
        for a in range(k):
            if not any(t[a][b] for b in range(k)):
                raise ValueError(f"symbol {a} has no outgoing transition")
            if not any(t[b][a] for b in range(k)):
                raise ValueError(f"symbol {a} has no incoming transition")

    @classmethod
    def full(cls, k: int) -> "Subshift":
        return cls(k, tuple(tuple(1 for _ in range(k)) for _ in range(k)))

    @classmethod
    def golden_mean(cls) -> "Subshift":
        """The two-symbol shift forbidding the word 11."""
        return cls(2, ((1, 1), (1, 0)))

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.transitions, dtype=np.int64)

    @cached_property
    def irreducible(self) -> bool:
        n, _ = connected_components(self.matrix, directed=True, connection="strong")
        return n == 1

    def allows(self, a: int, b: int) -> bool:
        return bool(self.transitions[a][b])

    def successors(self, a: int) -> tuple:
        return tuple(b for b in range(self.alphabet_size) if self.transitions[a][b])

    def is_allowed_word(self, w: Word) -> bool:
        k = self.alphabet_size
        if any(not (0 <= c < k) for c in w):
            return False
        return all(self.transitions[a][b] for a, b in zip(w, w[1:]))


def words_of_length(sys: Subshift, n: int, budget: int = 1 << 22):
    """All allowed words of length n, lexicographic, no duplicates."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if sys.alphabet_size ** n > budget:
        raise ValueError(f"enumeration of {sys.alphabet_size}**{n} words exceeds budget")
    words = [(a,) for a in range(sys.alphabet_size)]
    for _ in range(n - 1):
        words = [w + (b,) for w in words for b in sys.successors(w[-1])]
    return words


@dataclass(frozen=True)
class Resolution:
    """A dyadic scale epsilon = 2^{-m}, m >= 1.

    Balls on sequence space only change when epsilon crosses a power of two,
    so restricting to this grid loses nothing; limits epsilon -> 0 become
    limits m -> infinity.
    """

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("resolution exponent m must be >= 1")

    @property
    def epsilon(self) -> float:
        return 2.0 ** (-self.m)

    @classmethod
    def from_epsilon(cls, eps: float) -> "Resolution":
        mant, e = math.frexp(eps)
        if mant != 0.5 or e > 0:
            raise ValueError(f"epsilon {eps} is not of the form 2^-m with m >= 1")
        return cls(-e + 1)


def metric(x: Word, y: Word) -> float:
    """d(x, y) = 2^{-first disagreement} on (truncations of) sequences."""
    for i, (a, b) in enumerate(zip(x, y)):
        if a != b:
            return 2.0 ** (-i)
    return 0.0


def bowen_metric(x: Word, y: Word, n: int) -> float:
    return max(metric(x[i:], y[i:]) for i in range(n))


def open_ball_cylinder(center_prefix: Word, n: int, res: Resolution) -> Word:
    """The word w with [w] = B_n(x, 2^{-m}) for any x starting with the prefix.

    d_n(x, y) < 2^{-m} holds exactly when x and y agree on coordinates
    0..n+m-1, so the ball is the cylinder of the length-(n+m) prefix.
    """
    if n < 1:
        raise ValueError("ball order n must be >= 1")
    need = n + res.m
    if len(center_prefix) < need:
        raise PrecisionError(
            f"center prefix of length {len(center_prefix)} cannot determine an "
            f"order-{n} open ball at m={res.m}; need {need} symbols"
        )
    return tuple(center_prefix[:need])


def closed_ball_cylinder(center_prefix: Word, n: int, res: Resolution) -> Word:
    """The word w with [w] = B̄_n(x, 2^{-m}); agreement on 0..n+m-2 suffices."""
    if n < 1:
        raise ValueError("ball order n must be >= 1")
    need = n + res.m - 1
    if len(center_prefix) < need:
        raise PrecisionError(
            f"center prefix of length {len(center_prefix)} cannot determine an "
            f"order-{n} closed ball at m={res.m}; need {need} symbols"
        )
    return tuple(center_prefix[:need])


@dataclass(frozen=True)
class BlockPotential:
    """A locally constant potential: one real value per allowed r-block.

    ``table`` maps length-r words to floats.  Birkhoff sums over a word are
    sums of table lookups on its sliding r-windows, hence exact.
    """

    subshift: Subshift
    range: int
    table: dict

    def __post_init__(self):
        if self.range < 1:
            raise ValueError("potential range must be >= 1")
        tbl = {parse_word(k): float(v) for k, v in self.table.items()}
        object.__setattr__(self, "table", tbl)
        for w in words_of_length(self.subshift, self.range):
            if w not in tbl:
                raise ValueError(f"potential table missing allowed block {word_str(w)}")

    @classmethod
    def zero(cls, sys: Subshift) -> "BlockPotential":
        return cls.constant(sys, 0.0)

    @classmethod
    def constant(cls, sys: Subshift, c: float) -> "BlockPotential":
        return cls(sys, 1, {(a,): c for a in range(sys.alphabet_size)})

    @classmethod
    def single_site(cls, sys: Subshift, values) -> "BlockPotential":
        """Range-1 potential from a sequence of per-symbol values."""
        return cls(sys, 1, {(a,): values[a] for a in range(sys.alphabet_size)})

    def value(self, block: Word) -> float:
        return self.table[tuple(block)]

    @cached_property
    def sup_norm(self) -> float:
        return max(abs(v) for w, v in self.table.items()
                   if self.subshift.is_allowed_word(w))

    @cached_property
    def min_value(self) -> float:
        return min(v for w, v in self.table.items() if self.subshift.is_allowed_word(w))

    @cached_property
    def max_value(self) -> float:
        return max(v for w, v in self.table.items() if self.subshift.is_allowed_word(w))

    def shifted(self, c: float) -> "BlockPotential":
        """The potential f + c."""
        return BlockPotential(self.subshift, self.range,
                              {w: v + c for w, v in self.table.items()})


def birkhoff_sum(f: BlockPotential, w: Word, n: int) -> float:
    """Sum of f over the first n shifts, f_n = f(x) + f(Tx) + ... + f(T^{n-1}x).

    Constant on the cylinder [w] as soon as w covers every window, i.e.
    len(w) >= n + r - 1.  math.fsum keeps the result order-independent.
    """
    w = tuple(w)
    r = f.range
    if n < 0:
        raise ValueError("n must be >= 0")
    if len(w) < n + r - 1:
        raise PrecisionError(
            f"word of length {len(w)} too short for a Birkhoff sum of order {n} "
            f"with range-{r} blocks"
        )
    return math.fsum(f.table[w[i:i + r]] for i in range(n))


def birkhoff_sum_sup(f: BlockPotential, w: Word, n: int) -> float:
    """sup of f_n over the cylinder [w]; allows one window to overhang the end.

    Used for closed-ball weights where the last window may stick out one
    symbol (r = m+1); the exposed window contributes its maximum over allowed
    continuations.
    """
    w = tuple(w)
    r = f.range
    if len(w) < n + r - 2 or len(w) < n:
        raise PrecisionError("word too short even with a one-symbol overhang")
    total = math.fsum(f.table[w[i:i + r]] for i in range(n) if i + r <= len(w))
    if n + r - 1 > len(w):
        stub = w[n - 1:]
        sys = f.subshift
        completions = [f.table[stub + (b,)] for b in sys.successors(w[-1])
                       if sys.is_allowed_word(stub + (b,))]
        if not completions:
            raise PrecisionError("no allowed completion for the exposed window")
        total += max(completions)
    return total


def f_variation(f: BlockPotential, res: Resolution) -> float:
    """Largest |f(x)-f(y)| over pairs with d(x, y) < 2^{-(m-1)}.

    Agreement on the first min(r, m) coordinates decides such a pair for a
    range-r table; identically 0 once m >= r.
    """
    r, m = f.range, res.m
    if m >= r:
        return 0.0
    blocks = [w for w in words_of_length(f.subshift, r)]
    best = 0.0
    j = min(r, m)
    for u in blocks:
        for v in blocks:
            if u[:j] == v[:j]:
                best = max(best, abs(f.table[u] - f.table[v]))
    return best


def separated_set_size(sys: Subshift, zset, n: int, res: Resolution) -> int:
    """Maximal cardinality of an (n, 2^{-m})-separated subset of Z.

    Two points are separated iff their length-(n+m-1) prefixes differ, so the
    maximum equals the number of such words whose cylinder meets Z.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    from .sets import Status  # local import to avoid a cycle

    length = n + res.m - 1
    count = 0
    stack = [(a,) for a in range(sys.alphabet_size)]
    while stack:
        w = stack.pop()
        if zset.classify(w) == Status.EMPTY:
            continue
        if len(w) == length:
            count += 1
            continue
        stack.extend(w + (b,) for b in sys.successors(w[-1]))
    return count


def enumerate_blocks(sys: Subshift, length: int):
    """All words of given length over the alphabet (not transition-filtered)."""
    return list(product(range(sys.alphabet_size), repeat=length))
