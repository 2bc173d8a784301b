"""One-sided shift spaces: admissible words, the maximal-entropy Markov
measure, and entropy estimators.

Words are plain tuples of symbols from 1..n.  The empty tuple is the empty
word and is always admissible, as are single letters.  Probabilities and
entropies are floating point; natural logarithms throughout, with the
convention 0 log 0 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .matrix import (
    MatrixError,
    NotIrreducibleError,
    TransitionMatrix,
    spectral_radius,
    word_count,
)

__all__ = [
    "Word",
    "WORD_CAP",
    "SymbolOutOfRangeError",
    "TooManyWordsError",
    "ParryData",
    "ConvergenceRow",
    "ConvergenceReport",
    "is_admissible",
    "enumerate_words",
    "parry_measure",
    "cylinder_probability",
    "markov_entropy",
    "partition_entropy",
    "entropy_estimates",
]

Word = tuple[int, ...]

WORD_CAP = 10_000_000


class SymbolOutOfRangeError(ValueError):
    def __init__(self, symbol, n: int):
        super().__init__(f"symbol {symbol!r} outside alphabet 1..{n}")
        self.symbol = symbol


class TooManyWordsError(ValueError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} words exceed the enumeration cap of {cap}")
        self.count = count
        self.cap = cap


def _check_word(word, n: int) -> Word:
    w = tuple(word)
    for sym in w:
        if not isinstance(sym, int) or isinstance(sym, bool) or not 1 <= sym <= n:
            raise SymbolOutOfRangeError(sym, n)
    return w


def is_admissible(mat: TransitionMatrix, word) -> bool:
    """True iff every consecutive transition of the word is allowed.

    Empty and single-letter words are admissible by convention.
    """
    w = _check_word(word, mat.n)
    return all(mat.entry(a, b) for a, b in zip(w, w[1:]))


def enumerate_words(mat: TransitionMatrix, k: int, cap: int = WORD_CAP) -> list[Word]:
    """All admissible words of length k, lexicographically sorted.

    Raises TooManyWordsError when the count (known exactly in advance from
    the matrix power) would exceed ``cap``.
    """
    if k < 1:
        raise ValueError("word length must be >= 1")
    count = word_count(mat, k)
    if count > cap:
        raise TooManyWordsError(count, cap)
    succ = mat.successors
    out: list[Word] = []

    def extend(prefix: Word):
        if len(prefix) == k:
            out.append(prefix)
            return
        for j in succ[prefix[-1] - 1]:
            extend(prefix + (j,))

    for i in range(1, mat.n + 1):
        extend((i,))
    return out


@dataclass(frozen=True)
class ParryData:
    """Maximal-entropy Markov measure of an irreducible transition matrix.

    ``stochastic`` is the row-stochastic matrix P with P(i,j) positive
    exactly where the transition matrix is 1, and ``stationary`` is its
    stationary probability vector.  The measure of the cylinder of a word
    is stationary[first] times the product of the transition probabilities
    along it.
    """

    radius: float
    stochastic: tuple[tuple[float, ...], ...]
    stationary: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.stationary)

    def transition(self, i: int, j: int) -> float:
        return self.stochastic[i - 1][j - 1]


def parry_measure(mat: TransitionMatrix, tol: float = 1e-12) -> ParryData:
    """Build the maximal-entropy Markov measure from the Perron eigendata.

    P(i,j) = A(i,j) u_j / (lambda u_i) for the right Perron vector u, rows
    renormalized to sum exactly 1; the stationary vector is proportional to
    the componentwise product of the two Perron vectors.  Raises
    NotIrreducibleError for reducible matrices.
    """
    perron = spectral_radius(mat, tol)
    n = mat.n
    lam = perron.radius
    u = perron.right
    v = perron.left
    rows = []
    for i in range(n):
        raw = [mat.entries[i][j] * u[j] / (lam * u[i]) for j in range(n)]
        total = sum(raw)
        rows.append(tuple(x / total for x in raw))
    weights = [u[i] * v[i] for i in range(n)]
    z = sum(weights)
    stationary = tuple(w / z for w in weights)
    # stationarity is implied by the eigenvector equations; check it landed
    err = max(
        abs(sum(stationary[i] * rows[i][j] for i in range(n)) - stationary[j])
        for j in range(n)
    )
    if err > 1e-10:
        raise MatrixError(f"stationary vector check failed (error {err:.3e})")
    return ParryData(radius=lam, stochastic=tuple(rows), stationary=stationary)


def cylinder_probability(pd: ParryData, word) -> float:
    """Measure of the cylinder set of a word: 1 for the empty word, 0 for
    inadmissible words."""
    w = _check_word(word, pd.n)
    if not w:
        return 1.0
    prob = pd.stationary[w[0] - 1]
    for a, b in zip(w, w[1:]):
        prob *= pd.transition(a, b)
        if prob == 0.0:
            return 0.0
    return prob


def markov_entropy(pd: ParryData) -> float:
    """Entropy rate of the Markov measure, -sum_i pi_i sum_j P(i,j) log P(i,j)."""
    total = 0.0
    for i, pi in enumerate(pd.stationary):
        for p in pd.stochastic[i]:
            if p > 0.0:
                total -= pi * p * math.log(p)
    return total


def _support(pd: ParryData) -> TransitionMatrix:
    rows = [[1 if p > 0.0 else 0 for p in row] for row in pd.stochastic]
    return TransitionMatrix(tuple(tuple(r) for r in rows))


def partition_entropy(pd: ParryData, n: int, cap: int = WORD_CAP) -> float:
    """Shannon entropy of the measure over the depth-n cylinder partition,
    i.e. over all admissible words of length n."""
    if n < 1:
        raise ValueError("partition depth must be >= 1")
    support = _support(pd)
    count = word_count(support, n)
    if count > cap:
        raise TooManyWordsError(count, cap)
    succ = support.successors
    total = 0.0

    def descend(sym: int, prob: float, depth: int):
        nonlocal total
        if depth == n:
            total -= prob * math.log(prob)
            return
        for j in succ[sym - 1]:
            descend(j, prob * pd.transition(sym, j), depth + 1)

    for i in range(1, pd.n + 1):
        descend(i, pd.stationary[i - 1], 1)
    return total


def _fmt(x: float) -> str:
    return format(float(x), ".15g")


@dataclass(frozen=True)
class ConvergenceRow:
    k: int
    count: int
    growth: float
    ratio: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Table of word-growth entropy estimates.

    ``growth`` is log w(k) / k, the direct growth-rate estimator; ``ratio``
    is log(w(k+1) / w(k)), which converges much faster.  ``target`` is
    log of the spectral radius when the matrix is irreducible, else None.
    """

    rows: tuple[ConvergenceRow, ...]
    target: float | None

    def to_csv(self) -> str:
        lines = ["k,w_k,eq3,ratio"]
        for r in self.rows:
            lines.append(f"{r.k},{r.count},{_fmt(r.growth)},{_fmt(r.ratio)}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "target": None if self.target is None else _fmt(self.target),
            "rows": [
                {
                    "k": r.k,
                    "w_k": str(r.count),
                    "eq3": _fmt(r.growth),
                    "ratio": _fmt(r.ratio),
                }
                for r in self.rows
            ],
        }


def entropy_estimates(mat: TransitionMatrix, k_max: int) -> ConvergenceReport:
    """Entropy estimates from word counts for k = 1..k_max.

    Both estimators converge to log of the spectral radius; the growth form
    only at rate O(log k / k), the ratio form geometrically for primitive
    matrices.  Counts are exact integers, so arbitrarily large k is safe.
    """
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    counts = []
    n = mat.n
    power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [list(r) for r in mat.entries]
    for _ in range(k_max + 1):
        counts.append(sum(sum(row) for row in power))
        power = _incr_mul(power, base)
    rows = []
    for k in range(1, k_max + 1):
        wk = counts[k - 1]
        wk1 = counts[k]
        rows.append(
            ConvergenceRow(
                k=k,
                count=wk,
                growth=math.log(wk) / k,
                ratio=math.log(wk1) - math.log(wk),
            )
        )
    try:
        target = math.log(spectral_radius(mat).radius)
    except NotIrreducibleError:
        target = None
    return ConvergenceReport(rows=tuple(rows), target=target)


def _incr_mul(a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for k in range(n):
            v = arow[k]
            if v:
                brow = b[k]
                for j in range(n):
                    orow[j] += v * brow[j]
    return out
