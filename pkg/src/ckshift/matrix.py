"""Transition matrices: validation, graph structure, exact counting, Perron data.

A transition matrix is a square 0/1 matrix with no zero row and no zero
column.  Symbols are numbered 1..n in every public interface; the entry
grid itself is stored 0-indexed.  Everything combinatorial (matrix powers,
word counts) is computed in exact arbitrary-precision integer arithmetic;
floating point is confined to the power iteration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "MatrixError",
    "NotSquareError",
    "EntryOutOfRangeError",
    "ZeroRowError",
    "ZeroColumnError",
    "NotIrreducibleError",
    "NoConvergenceError",
    "TransitionMatrix",
    "IntMatrix",
    "PerronData",
    "DualDecomposition",
    "validate",
    "validate_int",
    "is_irreducible",
    "is_permutation",
    "matrix_power",
    "word_count",
    "spectral_radius",
    "dual_matrix",
    "witness_dimension",
    "parse_matrix",
    "load_matrix",
    "load_int_matrix",
]


class MatrixError(ValueError):
    """Base class for matrix validation and computation failures."""


class NotSquareError(MatrixError):
    pass


class EntryOutOfRangeError(MatrixError):
    def __init__(self, row: int, col: int, value, expected: str = "0 or 1"):
        super().__init__(f"entry ({row},{col}) is {value!r}, expected {expected}")
        self.row = row
        self.col = col
        self.value = value


class ZeroRowError(MatrixError):
    def __init__(self, row: int):
        super().__init__(f"row {row} is zero")
        self.row = row


class ZeroColumnError(MatrixError):
    def __init__(self, col: int):
        super().__init__(f"column {col} is zero")
        self.col = col


class NotIrreducibleError(MatrixError):
    pass


class NoConvergenceError(MatrixError):
    def __init__(self, iterations: int):
        super().__init__(f"power iteration did not converge within {iterations} iterations")
        self.iterations = iterations


@dataclass(frozen=True)
class TransitionMatrix:
    """Validated square 0/1 matrix with no zero row or column."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        """Entry at 1-based symbol pair (i, j)."""
        return self.entries[i - 1][j - 1]

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        """successors[i-1] lists the symbols j with entry (i, j) = 1."""
        return tuple(
            tuple(j + 1 for j, v in enumerate(row) if v) for row in self.entries
        )

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        """predecessors[j-1] lists the symbols i with entry (i, j) = 1."""
        n = self.n
        return tuple(
            tuple(i + 1 for i in range(n) if self.entries[i][j]) for j in range(n)
        )

    def __repr__(self) -> str:
        return f"TransitionMatrix({[list(r) for r in self.entries]})"


@dataclass(frozen=True)
class IntMatrix:
    """Validated square nonnegative integer matrix with no zero row or column."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i - 1][j - 1]

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.entries]})"


@dataclass(frozen=True)
class PerronData:
    """Spectral radius and both Perron eigenvectors of a transition matrix.

    Vectors are normalized to sum 1.  ``residual`` is the achieved value of
    max(inf-norm of A u - radius u, inf-norm of A^T v - radius v).
    """

    radius: float
    right: tuple[float, ...]
    left: tuple[float, ...]
    residual: float
    iterations: int


@dataclass(frozen=True)
class DualDecomposition:
    """Edge-matrix factorization of a nonnegative integer matrix.

    For the input matrix M, ``s_factor @ t_factor == M`` and
    ``t_factor @ s_factor == a_prime`` hold exactly over the integers, so
    M and the 0/1 matrix ``a_prime`` share their spectral radius.  Edge k
    of the new alphabet is labelled ``edge_labels[k] = (i, j, t)``, the
    t-th parallel edge from symbol i to symbol j.
    """

    a_prime: TransitionMatrix
    s_factor: tuple[tuple[int, ...], ...]
    t_factor: tuple[tuple[int, ...], ...]
    edge_labels: tuple[tuple[int, int, int], ...]


def _check_grid(rows, *, zero_one: bool) -> tuple[tuple[int, ...], ...]:
    grid = [list(r) for r in rows]
    n = len(grid)
    if n == 0:
        raise NotSquareError("matrix has no rows")
    for r in grid:
        if len(r) != n:
            raise NotSquareError(f"matrix is {n}x{len(r)}, expected square")
    expected = "0 or 1" if zero_one else "a nonnegative integer"
    for i, row in enumerate(grid, start=1):
        for j, v in enumerate(row, start=1):
            if not isinstance(v, int) or isinstance(v, bool):
                raise EntryOutOfRangeError(i, j, v, expected)
            if zero_one and v not in (0, 1):
                raise EntryOutOfRangeError(i, j, v, expected)
            if not zero_one and v < 0:
                raise EntryOutOfRangeError(i, j, v, expected)
    for i, row in enumerate(grid, start=1):
        if not any(row):
            raise ZeroRowError(i)
    for j in range(n):
        if not any(grid[i][j] for i in range(n)):
            raise ZeroColumnError(j + 1)
    return tuple(tuple(r) for r in grid)


def validate(rows) -> TransitionMatrix:
    """Validate a raw integer grid as a transition matrix.

    Raises NotSquareError, EntryOutOfRangeError, ZeroRowError or
    ZeroColumnError on the first violation found (rows before columns).
    """
    return TransitionMatrix(_check_grid(rows, zero_one=True))


def validate_int(rows) -> IntMatrix:
    """Validate a raw grid as a nonnegative integer matrix without zero rows/columns."""
    return IntMatrix(_check_grid(rows, zero_one=False))


def _reachable(succ: tuple[tuple[int, ...], ...], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for j in succ[i - 1]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def is_irreducible(mat: TransitionMatrix) -> bool:
    """True iff the digraph with an edge i -> j whenever entry (i, j) = 1
    is strongly connected."""
    n = mat.n
    if len(_reachable(mat.successors, 1)) != n:
        return False
    return len(_reachable(mat.predecessors, 1)) == n


def is_permutation(mat: TransitionMatrix) -> bool:
    """True iff every row and every column contains exactly one 1."""
    n = mat.n
    if any(sum(row) != 1 for row in mat.entries):
        return False
    return all(sum(mat.entries[i][j] for i in range(n)) == 1 for j in range(n))


def _matmul(a, b):
    """Exact integer product of two list-of-list matrices (shapes must agree)."""
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        arow = a[i]
        orow = out[i]
        for k in range(inner):
            v = arow[k]
            if v:
                brow = b[k]
                for j in range(cols):
                    orow[j] += v * brow[j]
    return out


def matrix_power(mat: TransitionMatrix | IntMatrix, k: int) -> tuple[tuple[int, ...], ...]:
    """Exact k-th power by repeated squaring over Python integers (A^0 = I)."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    n = mat.n
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [list(r) for r in mat.entries]
    e = k
    while e:
        if e & 1:
            result = _matmul(result, base)
        e >>= 1
        if e:
            base = _matmul(base, base)
    return tuple(tuple(r) for r in result)


def word_count(mat: TransitionMatrix, k: int) -> int:
    """Number of admissible words of length k, exactly (sum of entries of A^(k-1))."""
    if k < 1:
        raise ValueError("word length must be >= 1")
    power = matrix_power(mat, k - 1)
    return sum(sum(row) for row in power)


def _perron_iterate(m: np.ndarray, tol: float, max_iterations: int):
    """Power iteration for a nonnegative irreducible matrix with positive diagonal.

    Returns (eigenvalue, vector summing to 1, residual, iterations).  The
    eigenvalue estimate is the midpoint of the componentwise ratio bounds,
    which bracket the true Perron root at every step.
    """
    n = m.shape[0]
    v = np.full(n, 1.0 / n)
    for it in range(1, max_iterations + 1):
        w = m @ v
        ratios = w / v
        lam = 0.5 * (float(ratios.min()) + float(ratios.max()))
        v = w / w.sum()
        residual = float(np.abs(m @ v - lam * v).max())
        if float(ratios.max() - ratios.min()) <= tol and residual <= tol:
            return lam, v, residual, it
    raise NoConvergenceError(max_iterations)


def spectral_radius(
    mat: TransitionMatrix, tol: float = 1e-12, max_iterations: int = 1_000_000
) -> PerronData:
    """Spectral radius and Perron eigenvectors of an irreducible transition matrix.

    Power iteration is applied to A + I; the positive diagonal of the shift
    makes the iteration converge even for periodic irreducible matrices, and
    the radius of A is recovered as (shifted radius) - 1.  The left vector
    comes from the same iteration on the transpose.  Both vectors are
    normalized to sum 1 and are strictly positive.

    Raises NotIrreducibleError when the matrix is reducible (positivity of
    the eigenvectors would not be guaranteed) and NoConvergenceError when
    the iteration budget is exhausted.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if not is_irreducible(mat):
        raise NotIrreducibleError("matrix is not irreducible")
    base = np.array(mat.entries, dtype=float)
    shifted = base + np.eye(mat.n)
    inner = tol / 4.0
    lam, right, _, it_right = _perron_iterate(shifted, inner, max_iterations)
    _, left, _, it_left = _perron_iterate(shifted.T, inner, max_iterations)
    radius = lam - 1.0
    resid_right = float(np.abs(base @ right - radius * right).max())
    resid_left = float(np.abs(base.T @ left - radius * left).max())
    residual = max(resid_right, resid_left)
    if residual > tol:
        raise NoConvergenceError(it_right + it_left)
    return PerronData(
        radius=radius,
        right=tuple(float(x) for x in right),
        left=tuple(float(x) for x in left),
        residual=residual,
        iterations=it_right + it_left,
    )


def dual_matrix(mat: IntMatrix) -> DualDecomposition:
    """Edge construction for a nonnegative integer matrix M.

    The edge alphabet has one symbol (i, j, t) per unit of M(i, j); two
    edges are composable exactly when the first ends where the second
    starts.  The returned factors satisfy S T = M and T S = A' exactly.
    """
    n = mat.n
    labels = [
        (i, j, t)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        for t in range(1, mat.entry(i, j) + 1)
    ]
    ecount = len(labels)
    a_prime_rows = [
        [1 if labels[r][1] == labels[c][0] else 0 for c in range(ecount)]
        for r in range(ecount)
    ]
    s_rows = [
        [1 if i == labels[c][0] else 0 for c in range(ecount)] for i in range(1, n + 1)
    ]
    t_rows = [
        [1 if labels[r][1] == k else 0 for k in range(1, n + 1)] for r in range(ecount)
    ]
    a_prime = validate(a_prime_rows)
    if _matmul(s_rows, t_rows) != [list(r) for r in mat.entries]:
        raise MatrixError("internal error: S T does not reproduce the input matrix")
    if _matmul(t_rows, s_rows) != a_prime_rows:
        raise MatrixError("internal error: T S does not reproduce the edge matrix")
    return DualDecomposition(
        a_prime=a_prime,
        s_factor=tuple(tuple(r) for r in s_rows),
        t_factor=tuple(tuple(r) for r in t_rows),
        edge_labels=tuple(labels),
    )


def witness_dimension(mat: TransitionMatrix, n: int, n0: int) -> int:
    """Matrix-dimension factor w(n + n0) of the finite-dimensional
    approximation witness; log of it over n converges to log r(A)."""
    if n < 1 or n0 < 1:
        raise ValueError("n and n0 must be >= 1")
    return word_count(mat, n + n0)


def parse_matrix(text: str) -> list[list[int]]:
    """Parse a matrix file body.

    Two formats are accepted: a JSON object {"n": <int>, "rows": [[...], ...]}
    or plain text with one row per line, entries separated by whitespace.
    """
    body = text.strip()
    if not body:
        raise MatrixError("matrix file is empty")
    if body.startswith("{"):
        try:
            obj = json.loads(body)
        except json.JSONDecodeError as exc:
            raise MatrixError(f"invalid JSON matrix file: {exc}") from exc
        if "rows" not in obj:
            raise MatrixError('JSON matrix file must contain a "rows" key')
        rows = obj["rows"]
        if "n" in obj and obj["n"] != len(rows):
            raise MatrixError(
                f'JSON matrix file declares n={obj["n"]} but has {len(rows)} rows'
            )
        return rows
    rows = []
    for line in body.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise MatrixError(f"invalid matrix row {line!r}") from exc
    return rows


def load_matrix(path: str) -> TransitionMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return validate(parse_matrix(fh.read()))


def load_int_matrix(path: str) -> IntMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return validate_int(parse_matrix(fh.read()))
