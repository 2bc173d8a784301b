"""Exact symbolic calculus for the generator algebra of a transition matrix.

The algebra is generated by one partial isometry per symbol, subject to the
usual relations: the range projections P_i = S_i S_i* are orthogonal, and
the support projections satisfy S_i* S_i = sum_j A(i,j) P_j.  Elements are
finite linear combinations of monomials S_mu S_nu* over admissible words,
with exact rational coefficients, so equality of elements is decidable.

A monomial is identified with zero at construction time when either word is
inadmissible, or when the two words end in symbols with no common successor
(in that case S_mu S_nu* = S_mu Q_t(mu) Q_t(nu) S_nu* vanishes because the
two support projections are orthogonal).  Every stored monomial is therefore
a nonzero element, and monomials whose right words share a common length are
linearly independent, which is what makes the equality decision procedure
(split by gauge degree, refine to a common right depth, compare coefficient
maps) sound.

Zero-one witness blocks for the embedding identities are plain numpy integer
arrays; the finite-dimensional block picture of the degree-zero part uses
exact Fractions.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from .matrix import TransitionMatrix
from .sft import (
    WORD_CAP,
    SymbolOutOfRangeError,
    TooManyWordsError,
    Word,
    enumerate_words,
)

__all__ = [
    "InadmissibleWordError",
    "DepthTooSmallError",
    "NonZeroDegreeError",
    "DepthExceededError",
    "WitnessPreconditionError",
    "Monomial",
    "CKElement",
    "CuntzKriegerAlgebra",
    "BlockMatrix",
    "BlockDiagonal",
    "VerificationReport",
    "verify_relations",
    "verify_witness_decomposition",
]


class InadmissibleWordError(ValueError):
    pass


class DepthTooSmallError(ValueError):
    pass


class NonZeroDegreeError(ValueError):
    pass


class DepthExceededError(ValueError):
    pass


class WitnessPreconditionError(ValueError):
    pass


class Monomial(NamedTuple):
    """The pair of words (mu, nu) denoting S_mu S_nu*."""

    left: Word
    right: Word

    @property
    def degree(self) -> int:
        return len(self.left) - len(self.right)

    def __str__(self) -> str:
        if not self.left and not self.right:
            return "1"
        out = []
        if self.left:
            out.append("S(" + ",".join(map(str, self.left)) + ")")
        if self.right:
            out.append("S(" + ",".join(map(str, self.right)) + ")*")
        return "".join(out)


class CKElement:
    """Immutable finite rational combination of monomials.

    ``==`` is structural (same stored terms); use ``algebra.equal`` for
    equality in the algebra, which is invariant under refinement.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "CuntzKriegerAlgebra", terms: dict):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> list[int]:
        return sorted({m.degree for m in self.terms})

    def _check_partner(self, other: "CKElement"):
        if self.algebra is not other.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, CKElement):
            return NotImplemented
        self._check_partner(other)
        merged = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged.get(m, 0) + c
        return CKElement(self.algebra, merged)

    def __neg__(self):
        return CKElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CKElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CKElement):
            self._check_partner(other)
            return self.algebra._multiply(self, other)
        if isinstance(other, numbers.Rational):
            c = Fraction(other)
            return CKElement(self.algebra, {m: v * c for m, v in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Rational):
            return self.__mul__(other)
        return NotImplemented

    def adjoint(self) -> "CKElement":
        """The *-operation: S_mu S_nu* maps to S_nu S_mu*, coefficients
        unchanged (they are rational)."""
        return CKElement(
            self.algebra,
            {Monomial(m.right, m.left): c for m, c in self.terms.items()},
        )

    def refined(self, depth: int) -> "CKElement":
        """Rewrite so every term's right word has length exactly ``depth``.

        The value in the algebra and the gauge degree of every term are
        unchanged.  Raises DepthTooSmallError if some term is already deeper.
        """
        for m in self.terms:
            if len(m.right) > depth:
                raise DepthTooSmallError(
                    f"term {m} has right depth {len(m.right)} > {depth}"
                )
        return CKElement(self.algebra, self.algebra._refine_terms(self.terms, depth))

    def __eq__(self, other):
        if not isinstance(other, CKElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            parts.append(f"{c}*{m}" if c != 1 or str(m) == "1" else str(m))
        return " + ".join(parts)


class CuntzKriegerAlgebra:
    """Symbolic generator algebra attached to a transition matrix."""

    def __init__(self, matrix: TransitionMatrix):
        self.matrix = matrix
        self.n = matrix.n
        self._rows = matrix.entries
        self._succ = matrix.successors
        self._succ_mask = tuple(
            sum(1 << (j - 1) for j in row) for row in matrix.successors
        )
        self._word_cache: dict[int, tuple[Word, ...]] = {0: ((),)}
        self.zero = CKElement(self, {})
        self.identity = CKElement(self, {Monomial((), ()): Fraction(1)})

    # -- words ------------------------------------------------------------

    def words(self, k: int, cap: int = WORD_CAP) -> tuple[Word, ...]:
        """Admissible words of length k (k = 0 gives the empty word)."""
        if k not in self._word_cache:
            self._word_cache[k] = tuple(enumerate_words(self.matrix, k, cap=cap))
        found = self._word_cache[k]
        if len(found) > cap:
            raise TooManyWordsError(len(found), cap)
        return found

    def _check_word(self, word) -> Word:
        w = tuple(word)
        for sym in w:
            if not isinstance(sym, int) or isinstance(sym, bool) or not 1 <= sym <= self.n:
                raise SymbolOutOfRangeError(sym, self.n)
        return w

    def _admissible(self, word: Word) -> bool:
        rows = self._rows
        return all(rows[a - 1][b - 1] for a, b in zip(word, word[1:]))

    def _mono(self, left: Word, right: Word) -> Monomial | None:
        """Monomial under the construction-time zero identification, or None."""
        if not self._admissible(left) or not self._admissible(right):
            return None
        if left and right and not (
            self._succ_mask[left[-1] - 1] & self._succ_mask[right[-1] - 1]
        ):
            return None
        return Monomial(left, right)

    # -- constructors ------------------------------------------------------

    def element(self, terms: dict) -> CKElement:
        return CKElement(self, {m: Fraction(c) for m, c in terms.items()})

    def monomial(self, left, right, coeff=1) -> CKElement:
        """coeff * S_left S_right*; the zero element when the monomial
        vanishes in the algebra."""
        m = self._mono(self._check_word(left), self._check_word(right))
        if m is None:
            return self.zero
        return CKElement(self, {m: Fraction(coeff)})

    def s(self, word) -> CKElement:
        """S_word (the identity for the empty word, zero if inadmissible)."""
        return self.monomial(word, ())

    def s_star(self, word) -> CKElement:
        return self.monomial((), word)

    def p(self, i: int) -> CKElement:
        """Range projection P_i = S_i S_i*."""
        return self.monomial((i,), (i,))

    def q(self, i: int) -> CKElement:
        """Support projection S_i* S_i, expanded as sum_j A(i,j) P_j."""
        self._check_word((i,))
        return CKElement(
            self, {Monomial((j,), (j,)): Fraction(1) for j in self._succ[i - 1]}
        )

    def generator(self, alpha, i: int, beta) -> CKElement:
        """S_alpha P_i S_beta*.

        Raises InadmissibleWordError when alpha or beta is inadmissible;
        returns the zero element when an adjacency factor vanishes.
        """
        a = self._check_word(alpha)
        b = self._check_word(beta)
        self._check_word((i,))
        if not self._admissible(a):
            raise InadmissibleWordError(f"alpha {a} is not admissible")
        if not self._admissible(b):
            raise InadmissibleWordError(f"beta {b} is not admissible")
        if a and not self._rows[a[-1] - 1][i - 1]:
            return self.zero
        if b and not self._rows[b[-1] - 1][i - 1]:
            return self.zero
        return CKElement(self, {Monomial(a + (i,), b + (i,)): Fraction(1)})

    # -- multiplication ----------------------------------------------------

    def _pair_products(self, m1: Monomial, m2: Monomial) -> Iterator[Monomial]:
        """Monomials of (S_mu S_nu*)(S_al S_be*), each with coefficient 1.

        If al extends nu the inner isometries collapse onto the surplus; if
        nu extends al symmetrically; if nu = al the support projection in the
        middle is expanded as a sum over common successor symbols.  All other
        shapes annihilate.
        """
        mu, nu = m1
        al, be = m2
        if nu == al:
            if not nu or (mu and mu[-1] == nu[-1]) or (be and be[-1] == nu[-1]):
                # empty middle, or the support projection in the middle is
                # absorbed by an adjacent word with the same terminus
                m = self._mono(mu, be)
                if m is not None:
                    yield m
                return
            rows = self._rows
            lt = mu[-1] - 1 if mu else None
            rt = be[-1] - 1 if be else None
            for j in self._succ[nu[-1] - 1]:
                if lt is not None and not rows[lt][j - 1]:
                    continue
                if rt is not None and not rows[rt][j - 1]:
                    continue
                yield Monomial(mu + (j,), be + (j,))
        elif len(al) > len(nu) and al[: len(nu)] == nu:
            m = self._mono(mu + al[len(nu) :], be)
            if m is not None:
                yield m
        elif len(nu) > len(al) and nu[: len(al)] == al:
            m = self._mono(mu, be + nu[len(al) :])
            if m is not None:
                yield m

    def _multiply(self, x: CKElement, y: CKElement) -> CKElement:
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                c = c1 * c2
                for m in self._pair_products(m1, m2):
                    acc[m] = acc.get(m, 0) + c
        return CKElement(self, acc)

    # -- refinement and equality -------------------------------------------

    def _refine_step(self, mono: Monomial) -> Iterator[Monomial]:
        mu, nu = mono
        rows = self._rows
        lt = mu[-1] - 1 if mu else None
        rt = nu[-1] - 1 if nu else None
        for j in range(1, self.n + 1):
            if lt is not None and not rows[lt][j - 1]:
                continue
            if rt is not None and not rows[rt][j - 1]:
                continue
            yield Monomial(mu + (j,), nu + (j,))

    def _refine_terms(self, terms: dict, depth: int) -> dict:
        acc: dict[Monomial, Fraction] = {}
        stack = list(terms.items())
        while stack:
            mono, coeff = stack.pop()
            if len(mono.right) == depth:
                acc[mono] = acc.get(mono, 0) + coeff
            else:
                for deeper in self._refine_step(mono):
                    stack.append((deeper, coeff))
        return {m: c for m, c in acc.items() if c}

    def equal(self, x: CKElement, y: CKElement) -> bool:
        """Decide x = y in the algebra.

        The difference is split by gauge degree; within each degree all terms
        are refined to the maximal right depth present and the coefficient
        maps compared.  Sound because stored monomials are nonzero and, at a
        common right depth, linearly independent.
        """
        x._check_partner(y)
        diff = dict(x.terms)
        for m, c in y.terms.items():
            diff[m] = diff.get(m, 0) - c
        sectors: dict[int, dict] = {}
        for m, c in diff.items():
            if c:
                sectors.setdefault(m.degree, {})[m] = c
        for sector in sectors.values():
            depth = max(len(m.right) for m in sector)
            if self._refine_terms(sector, depth):
                return False
        return True

    # -- the canonical shift and the block embedding ------------------------

    def shift(self, x: CKElement, power: int = 1) -> CKElement:
        """The canonical shift map, sum over words eta of length ``power`` of
        S_eta x S_eta* (the identity map for power 0)."""
        if power < 0:
            raise ValueError("power must be nonnegative")
        if power == 0:
            return x
        acc: dict[Monomial, Fraction] = {}
        for eta in self.words(power):
            left = self.s(eta)
            piece = left * x * left.adjoint()
            for m, c in piece.terms.items():
                acc[m] = acc.get(m, 0) + c
        return CKElement(self, acc)

    def block_embedding(self, m: int, x: CKElement, cap: int = WORD_CAP) -> "BlockMatrix":
        """The w(m) x w(m) block-matrix embedding with entry (mu, nu) equal
        to S_mu* x S_nu; a *-homomorphism into the block algebra."""
        if m < 1:
            raise ValueError("block depth must be >= 1")
        index = self.words(m, cap=cap)
        rights = [self.s(wd) for wd in index]
        zero_row = (self.zero,) * len(index)
        entries = []
        for wd in index:
            left = self.s_star(wd) * x
            if left.is_zero:
                entries.append(zero_row)
            else:
                entries.append(tuple(left * r for r in rights))
        return BlockMatrix(self, m, index, tuple(entries))

    # -- witness blocks for the embedding identities -------------------------

    def _words_from(self, origin: int, length: int) -> list[Word]:
        out: list[Word] = []

        def extend(prefix: Word):
            if len(prefix) == length:
                out.append(prefix)
                return
            for j in self._succ[prefix[-1] - 1]:
                extend(prefix + (j,))

        extend((origin,))
        return out

    def _cat_admissible(self, *parts: Word) -> bool:
        prev: Word = ()
        for part in parts:
            if not part:
                continue
            if prev and not self._rows[prev[-1] - 1][part[0] - 1]:
                return False
            prev = part
        return True

    def witness_blocks(self, alpha, beta, i: int, l: int, m: int, cap: int = WORD_CAP):
        """Explicit 0/1 witness blocks for the shifted-generator image under
        the block embedding.

        For |alpha| > |beta| the result maps each admissible word mu of
        length |alpha| - |beta| to the sum of matrix units
        e_{eta alpha mid, eta beta mid mu} over |eta| = l and mid of length
        m - l - |alpha| starting at i; the image of the shifted generator is
        then sum_mu block(mu) (x) S_mu.  For |alpha| = |beta| the result maps
        each symbol j to the analogous sum with mid additionally ending at j,
        and the image is sum_j block(j) (x) Q_j.  Every block is a partial
        isometry (B B^T B = B over the integers).
        """
        a = self._check_word(alpha)
        b = self._check_word(beta)
        self._check_word((i,))
        if not self._admissible(a):
            raise InadmissibleWordError(f"alpha {a} is not admissible")
        if not self._admissible(b):
            raise InadmissibleWordError(f"beta {b} is not admissible")
        if len(b) > len(a):
            raise WitnessPreconditionError(
                f"|beta| = {len(b)} exceeds |alpha| = {len(a)}"
            )
        if l < 0:
            raise WitnessPreconditionError("shift power l must be nonnegative")
        if m < l + 1 + len(a):
            raise WitnessPreconditionError(
                f"block depth m = {m} is below l + 1 + |alpha| = {l + 1 + len(a)}"
            )
        index = self.words(m, cap=cap)
        pos = {wd: r for r, wd in enumerate(index)}
        w = len(index)
        mid_len = m - l - len(a)
        etas = self.words(l)
        mids = self._words_from(i, mid_len)
        if len(a) > len(b):
            out = {
                mu: np.zeros((w, w), dtype=np.int64)
                for mu in self.words(len(a) - len(b))
            }
            for eta in etas:
                for mid in mids:
                    if not self._cat_admissible(eta, a, mid):
                        continue
                    row = pos[eta + a + mid]
                    for mu, block in out.items():
                        if self._cat_admissible(eta, b, mid, mu):
                            block[row, pos[eta + b + mid + mu]] = 1
            return out
        out = {j: np.zeros((w, w), dtype=np.int64) for j in range(1, self.n + 1)}
        for eta in etas:
            for mid in mids:
                if not self._cat_admissible(eta, a, mid):
                    continue
                if not self._cat_admissible(eta, b, mid):
                    continue
                out[mid[-1]][pos[eta + a + mid], pos[eta + b + mid]] = 1
        return out

    # -- finite-dimensional picture of the degree-zero part ------------------

    def af_blocks(self, x: CKElement, depth: int, cap: int = WORD_CAP) -> "BlockDiagonal":
        """Map a degree-zero element of right depth <= depth to the
        block-diagonal matrix algebra indexed by word terminus.

        After refinement every term S_mu S_nu* with t(mu) = t(nu) = t becomes
        the matrix unit E_{mu nu} of the block of terminus t, whose size is
        the number of depth-``depth`` words ending at t.  Raises
        NonZeroDegreeError or DepthExceededError when the element does not
        live in this picture.
        """
        if depth < 1:
            raise ValueError("depth must be >= 1")
        for m in x.terms:
            if m.degree != 0:
                raise NonZeroDegreeError(f"term {m} has degree {m.degree}")
            if len(m.right) > depth:
                raise DepthExceededError(
                    f"term {m} has right depth {len(m.right)} > {depth}"
                )
        refined = self._refine_terms(x.terms, depth)
        index = self.words(depth, cap=cap)
        by_terminus: dict[int, list[Word]] = {t: [] for t in range(1, self.n + 1)}
        pos: dict[Word, tuple[int, int]] = {}
        for wd in index:
            t = wd[-1]
            pos[wd] = (t, len(by_terminus[t]))
            by_terminus[t].append(wd)
        grids = {
            t: [[Fraction(0)] * len(words) for _ in words]
            for t, words in by_terminus.items()
        }
        for m, c in refined.items():
            if m.left[-1] != m.right[-1]:
                raise DepthExceededError(
                    f"term {m} mixes termini at depth {depth}; it only embeds "
                    f"at depth {depth + 1}"
                )
            t, r = pos[m.left]
            _, col = pos[m.right]
            grids[t][r][col] = c
        return BlockDiagonal(
            depth,
            {t: tuple(tuple(row) for row in grid) for t, grid in grids.items()},
        )


class BlockMatrix:
    """Square matrix over the symbolic algebra, indexed by the admissible
    words of a fixed length."""

    __slots__ = ("algebra", "depth", "index", "entries")

    def __init__(self, algebra, depth, index, entries):
        self.algebra = algebra
        self.depth = depth
        self.index = index
        self.entries = entries

    def entry(self, row_word, col_word) -> CKElement:
        r = self.index.index(tuple(row_word))
        c = self.index.index(tuple(col_word))
        return self.entries[r][c]

    def __mul__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        if self.algebra is not other.algebra or self.index != other.index:
            raise ValueError("block matrices are not over the same index")
        w = len(self.index)
        alg = self.algebra
        out = []
        for i in range(w):
            acc_row = [dict() for _ in range(w)]
            for k in range(w):
                a = self.entries[i][k]
                if not a.terms:
                    continue
                for j in range(w):
                    b = other.entries[k][j]
                    if not b.terms:
                        continue
                    prod = alg._multiply(a, b)
                    acc = acc_row[j]
                    for mono, c in prod.terms.items():
                        acc[mono] = acc.get(mono, 0) + c
            out.append(tuple(CKElement(alg, acc) for acc in acc_row))
        return BlockMatrix(self.algebra, self.depth, self.index, tuple(out))

    def adjoint(self) -> "BlockMatrix":
        w = len(self.index)
        out = tuple(
            tuple(self.entries[c][r].adjoint() for c in range(w)) for r in range(w)
        )
        return BlockMatrix(self.algebra, self.depth, self.index, out)

    def equals(self, other: "BlockMatrix") -> bool:
        """Entrywise equality in the algebra."""
        if self.algebra is not other.algebra or self.index != other.index:
            return False
        alg = self.algebra
        return all(
            alg.equal(a, b)
            for row_a, row_b in zip(self.entries, other.entries)
            for a, b in zip(row_a, row_b)
        )


class BlockDiagonal:
    """Block-diagonal rational matrix, one block per word terminus."""

    __slots__ = ("depth", "blocks")

    def __init__(self, depth: int, blocks: dict):
        self.depth = depth
        self.blocks = blocks

    def __eq__(self, other):
        if not isinstance(other, BlockDiagonal):
            return NotImplemented
        return self.depth == other.depth and self.blocks == other.blocks

    __hash__ = None

    def __mul__(self, other):
        if not isinstance(other, BlockDiagonal):
            return NotImplemented
        if self.depth != other.depth or self.blocks.keys() != other.blocks.keys():
            raise ValueError("block shapes differ")
        out = {}
        for t, a in self.blocks.items():
            b = other.blocks[t]
            size = len(a)
            out[t] = tuple(
                tuple(
                    sum(a[r][k] * b[k][c] for k in range(size)) for c in range(size)
                )
                for r in range(size)
            )
        return BlockDiagonal(self.depth, out)


@dataclass
class VerificationReport:
    """Outcome of a symbolic verification run."""

    cases: int
    passed: int
    failures: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.passed == self.cases

    def to_json_dict(self) -> dict:
        return {
            "cases": self.cases,
            "passed": self.passed,
            "failures": self.failures,
            "params": self.params,
        }


def verify_relations(
    alg: CuntzKriegerAlgebra,
    max_word_len: int = 4,
    max_state_len: int = 3,
    inject_fault: bool = False,
) -> VerificationReport:
    """Check the defining relations of the algebra by exact computation.

    Covers orthogonality of the range projections, the unit decomposition
    sum_j P_j = 1, the collapse rule S_mu* S_nu = delta_{mu nu} Q_t(mu) for
    words of equal length, absorption Q_eta S_alpha = A(eta o(alpha)) S_alpha,
    and the depth resolutions sum over length-m words of S_mu S_mu* = 1.

    ``inject_fault`` corrupts one coefficient of the unit decomposition, to
    exercise the failure reporting path.
    """
    n = alg.n
    failures: list[dict] = []
    cases = 0

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            cases += 1
            lhs = alg.p(i) * alg.p(j)
            rhs = alg.p(i) if i == j else alg.zero
            if not alg.equal(lhs, rhs):
                failures.append(
                    {"relation": "range_projection_orthogonality", "i": i, "j": j}
                )

    cases += 1
    total = alg.zero
    for j in range(1, n + 1):
        total = total + alg.p(j)
    if inject_fault:
        total = total + alg.p(1) * Fraction(1, 2)
    if not alg.equal(total, alg.identity):
        failures.append({"relation": "unit_decomposition"})

    for k in range(1, max_word_len + 1):
        level = alg.words(k)
        for mu in level:
            star = alg.s_star(mu)
            for nu in level:
                cases += 1
                lhs = star * alg.s(nu)
                rhs = alg.q(mu[-1]) if mu == nu else alg.zero
                if not alg.equal(lhs, rhs):
                    failures.append(
                        {"relation": "word_collapse", "mu": list(mu), "nu": list(nu)}
                    )

    for ke in range(1, max_state_len + 1):
        for eta in alg.words(ke):
            q_eta = alg.s_star(eta) * alg.s(eta)
            for ka in range(1, max_state_len + 1):
                for a in alg.words(ka):
                    cases += 1
                    lhs = q_eta * alg.s(a)
                    factor = alg.matrix.entry(eta[-1], a[0])
                    rhs = alg.s(a) if factor else alg.zero
                    if not alg.equal(lhs, rhs):
                        failures.append(
                            {
                                "relation": "support_absorption",
                                "eta": list(eta),
                                "alpha": list(a),
                            }
                        )

    for m in range(1, max_word_len + 1):
        cases += 1
        acc = {Monomial(wd, wd): Fraction(1) for wd in alg.words(m)}
        if not alg.equal(CKElement(alg, acc), alg.identity):
            failures.append({"relation": "depth_resolution", "m": m})

    return VerificationReport(
        cases=cases,
        passed=cases - len(failures),
        failures=failures,
        params={"max_word_len": max_word_len, "max_state_len": max_state_len},
    )


def verify_witness_decomposition(
    alg: CuntzKriegerAlgebra,
    n0: int,
    n: int,
    cap: int = WORD_CAP,
    inject_fault: bool = False,
) -> VerificationReport:
    """Verify, generator by generator, that the block embedding of every
    shifted generator equals its witness-block decomposition.

    For every generator S_alpha P_i S_beta* with |beta| <= |alpha| <= n0 and
    every shift power l < n, the left side is computed symbolically through
    the embedding at depth m = n + n0 and compared entrywise with the sum of
    witness blocks tensored with S_mu (or with Q_j); every witness block is
    additionally checked to be a partial isometry.  Failures are reported in
    deterministic generator-then-power order.

    ``inject_fault`` removes one matrix unit from the first nonzero witness
    block encountered, to exercise the failure reporting path.
    """
    if n0 < 1 or n < 1:
        raise ValueError("n0 and n must be >= 1")
    m = n0 + n
    index = alg.words(m, cap=cap)
    w = len(index)
    failures: list[dict] = []
    cases = 0
    failed_cases = 0
    injected = False

    alphas: list[Word] = [()]
    for k in range(1, n0 + 1):
        alphas.extend(alg.words(k))
    for alpha in alphas:
        betas: list[Word] = [()]
        for k in range(1, len(alpha) + 1):
            betas.extend(alg.words(k))
        for beta in betas:
            for i in range(1, alg.n + 1):
                gen = alg.generator(alpha, i, beta)
                for l in range(n):
                    cases += 1
                    case_failures = len(failures)
                    blocks = alg.witness_blocks(alpha, beta, i, l, m, cap=cap)
                    if inject_fault and not injected:
                        for key in blocks:
                            nz = np.argwhere(blocks[key])
                            if len(nz):
                                blocks[key][nz[0][0], nz[0][1]] = 0
                                injected = True
                                break
                    lhs = alg.block_embedding(m, alg.shift(gen, l), cap=cap)
                    rhs_terms = [[None] * w for _ in range(w)]
                    for key, block in blocks.items():
                        piece = (
                            alg.s(key) if isinstance(key, tuple) else alg.q(key)
                        )
                        for r, c in np.argwhere(block):
                            cell = rhs_terms[r][c]
                            if cell is None:
                                cell = rhs_terms[r][c] = {}
                            for mono, coeff in piece.terms.items():
                                cell[mono] = cell.get(mono, 0) + coeff
                    for r in range(w):
                        for c in range(w):
                            rhs = (
                                alg.zero
                                if rhs_terms[r][c] is None
                                else CKElement(alg, rhs_terms[r][c])
                            )
                            if not alg.equal(lhs.entries[r][c], rhs):
                                failures.append(
                                    {
                                        "alpha": list(alpha),
                                        "beta": list(beta),
                                        "i": i,
                                        "l": l,
                                        "kind": "entry_mismatch",
                                        "row": list(index[r]),
                                        "col": list(index[c]),
                                    }
                                )
                    for key, block in blocks.items():
                        if not np.array_equal(block @ block.T @ block, block):
                            failures.append(
                                {
                                    "alpha": list(alpha),
                                    "beta": list(beta),
                                    "i": i,
                                    "l": l,
                                    "kind": "not_partial_isometry",
                                    "block": list(key) if isinstance(key, tuple) else key,
                                }
                            )
                    if len(failures) > case_failures:
                        failed_cases += 1

    return VerificationReport(
        cases=cases,
        passed=cases - failed_cases,
        failures=failures,
        params={"n0": n0, "n": n, "m": m},
    )
