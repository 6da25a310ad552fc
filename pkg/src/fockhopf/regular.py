"""Truncated left/right regular representations and Fourier analysis.

Truncation semantics: generators are compressions of the shifts to the
depth-N span, so ``left_shift`` maps a length-N word basis vector to zero.
Shift identities of total degree d therefore hold exactly on the depth-(N-d)
safe zone, and compositions satisfy ``L_u L_v = L_{uv}`` entrywise.

Convention worth flagging once: composing right generators appends letters
one at a time, so the word operator ``R_w`` appends the REVERSAL of w:
``R_w xi_u = xi_{u w~}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping

import numpy as np

from .spaces import FockSpace, Operator, SafeZone, max_entry_diff, tensor_op
from .words import Alphabet, Word


@lru_cache(maxsize=None)
def left_shift(space: FockSpace, letter: int) -> Operator:
    """L_i: xi_w -> xi_{iw}, compressed to the truncation."""
    return word_shift(space, Word((letter,)), side="left")


@lru_cache(maxsize=None)
def right_shift(space: FockSpace, letter: int) -> Operator:
    """R_i: xi_w -> xi_{wi}, compressed to the truncation."""
    return word_shift(space, Word((letter,)), side="right")


@lru_cache(maxsize=None)
def word_shift(space: FockSpace, w: Word, side: str = "left") -> Operator:
    """The compressed word operator: composition of generators in word order.

    ``side="left"`` gives L_w with L_w xi_u = xi_{wu}; ``side="right"`` gives
    R_w with R_w xi_u = xi_{u w~} (generators append letters, hence the
    reversal).  Both agree entrywise with composing single-letter shifts.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if len(w) > space.depth:
        raise ValueError(f"word of length {len(w)} exceeds depth {space.depth}")
    suffix = w if side == "left" else w.reverse()
    rows, cols = [], []
    for j, u in enumerate(space.words):
        if len(u) + len(w) > space.depth:
            break  # length-lex order: all later words are at least as long
        target = suffix.concat(u) if side == "left" else u.concat(suffix)
        rows.append(space.index_of(target))
        cols.append(j)
    vals = np.ones(len(rows), dtype=np.complex128)
    return Operator.from_entries(space, space, rows, cols, vals)


@lru_cache(maxsize=None)
def shift_index_table(space: FockSpace, w: Word) -> np.ndarray:
    """Index map u -> wu over the words u with |wu| <= depth.

    By the length-lexicographic order those words occupy the leading basis
    indices, so the table's length doubles as the admissibility bound.
    """
    rows = []
    for u in space.words:
        if len(u) + len(w) > space.depth:
            break
        rows.append(space.index_of(w.concat(u)))
    return np.asarray(rows, dtype=np.int64)


def length_projection(space: FockSpace, max_len: int) -> Operator:
    """Orthogonal projection onto the words of length <= max_len."""
    idx = np.flatnonzero(space.lengths <= max_len)
    vals = np.ones(idx.size, dtype=np.complex128)
    return Operator.from_entries(space, space, idx, idx, vals)


@dataclass
class FourierSeries:
    """Finitely supported word-indexed coefficients, a_w for w -> a_w L_w.

    Zero coefficients are never stored, which makes equality structural.
    """

    alphabet: Alphabet
    coeffs: dict[Word, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[Word, complex] = {}
        for w, c in self.coeffs.items():
            if len(w) and max(w.letters) > self.alphabet.n:
                raise ValueError(f"word {w} uses letters beyond alphabet size {self.alphabet.n}")
            c = complex(c)
            if c != 0:
                clean[w] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "FourierSeries":
        return cls(alphabet, {})

    @classmethod
    def unit(cls, alphabet: Alphabet) -> "FourierSeries":
        return cls(alphabet, {Word(): 1.0})

    @classmethod
    def indicator(cls, alphabet: Alphabet, w: Word) -> "FourierSeries":
        return cls(alphabet, {w: 1.0})

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.coeffs), default=0)

    @property
    def support(self) -> tuple[Word, ...]:
        return tuple(sorted(self.coeffs, key=lambda w: (len(w), w.letters)))

    def coefficient(self, w: Word) -> complex:
        return self.coeffs.get(w, 0j)

    def items(self) -> Iterator[tuple[Word, complex]]:
        return iter(self.coeffs.items())

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0j) + c
        return FourierSeries(self.alphabet, out)

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        return self + (-1.0) * other

    def __mul__(self, other: "FourierSeries | complex") -> "FourierSeries":
        if isinstance(other, FourierSeries):
            self._check(other)
            out: dict[Word, complex] = {}
            for u, a in self.coeffs.items():
                for v, b in other.coeffs.items():
                    w = u.concat(v)
                    out[w] = out.get(w, 0j) + a * b
            return FourierSeries(self.alphabet, out)
        return FourierSeries(self.alphabet, {w: c * other for w, c in self.coeffs.items()})

    def __rmul__(self, scalar: complex) -> "FourierSeries":
        return self * scalar

    def _check(self, other: "FourierSeries") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("series alphabets differ")


def realize(series: FourierSeries, space: FockSpace) -> Operator:
    """The operator sum a_w L_w on the truncated space."""
    if series.alphabet != space.alphabet:
        raise ValueError("series alphabet does not match the space")
    if series.degree > space.depth:
        raise ValueError(f"series degree {series.degree} exceeds depth {space.depth}")
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    vals: list[np.ndarray] = []
    for w, c in series.items():
        table = shift_index_table(space, w)
        rows.append(table)
        cols.append(np.arange(table.size, dtype=np.int64))
        vals.append(np.full(table.size, c, dtype=np.complex128))
    if not rows:
        return Operator.zero(space)
    return Operator.from_entries(
        space, space, np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
    )


def fourier_coefficients(t: Operator) -> FourierSeries:
    """Read the coefficients a_w = (T xi_e, xi_w) off the vacuum column."""
    space = t.domain
    if t.codomain != space or not isinstance(space, FockSpace):
        raise ValueError("fourier_coefficients expects a square operator on a Fock space")
    col = t.matrix.getcol(0).tocoo()
    return FourierSeries(space.alphabet, {space.word_at(int(i)): v for i, v in zip(col.row, col.data)})


def cesaro_sum(series: FourierSeries, k: int) -> FourierSeries:
    """Degree-weighted partial sum: coefficient (1 - |w|/k) a_w for |w| < k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return FourierSeries(
        series.alphabet,
        {w: (1.0 - len(w) / k) * c for w, c in series.items() if len(w) < k},
    )


def cesaro_error_bound(series: FourierSeries, k: int) -> float:
    """Triangle-inequality bound sum_w (|w|/k) |a_w| on the safe-zone error."""
    return sum(min(len(w) / k, 1.0) * abs(c) for w, c in series.items())


@lru_cache(maxsize=None)
def _pattern_tables(space: FockSpace) -> tuple[np.ndarray, np.ndarray]:
    # structured[i, j] is True when word_at(i) = u . word_at(j) for some u;
    # prefix_index[i, j] is then the basis index of u.
    dim = space.dim
    structured = np.zeros((dim, dim), dtype=bool)
    prefix_index = np.full((dim, dim), -1, dtype=np.int32)
    for j, w in enumerate(space.words):
        lw = len(w)
        for i, v in enumerate(space.words):
            if len(v) >= lw and v.letters[len(v) - lw :] == w.letters:
                structured[i, j] = True
                prefix_index[i, j] = space.index_of(Word(v.letters[: len(v) - lw]))
    return structured, prefix_index


def membership_defect(t: Operator) -> float:
    """Distance of T from the left-pattern algebra {sum a_w L_w}.

    The defect is the largest mismatch on structured entries (T xi_w, xi_{uw})
    against the vacuum-column coefficient a_u, plus the largest stray entry at
    unstructured positions.  It vanishes exactly on realized series.
    """
    space = t.domain
    if t.codomain != space or not isinstance(space, FockSpace):
        raise ValueError("membership_defect expects a square operator on a Fock space")
    structured, prefix_index = _pattern_tables(space)
    dense = t.matrix.toarray()
    coeff = dense[:, 0]
    expected = np.zeros_like(dense)
    expected[structured] = coeff[prefix_index[structured]]
    diff = np.abs(dense - expected)
    on_pattern = float(diff[structured].max(initial=0.0))
    off_pattern = float(diff[~structured].max(initial=0.0))
    return on_pattern + off_pattern


def isometry_defect(space: FockSpace) -> float:
    """Max entrywise defect of L_i* L_j = delta_ij P_{N-1}; contract: 0."""
    proj = length_projection(space, space.depth - 1) if space.depth >= 1 else Operator.zero(space)
    worst = 0.0
    for i in space.alphabet.letters:
        for j in space.alphabet.letters:
            product = left_shift(space, i).adjoint() @ left_shift(space, j)
            target = proj if i == j else Operator.zero(space)
            worst = max(worst, max_entry_diff(product, target))
    return worst


def row_contraction_defect(space: FockSpace) -> float:
    """Max entrywise defect of sum_i L_i L_i* = I - (vacuum projection)."""
    total = Operator.zero(space)
    for i in space.alphabet.letters:
        gen = left_shift(space, i)
        total = total + gen @ gen.adjoint()
    target = Operator.identity(space) - Operator.from_entries(space, space, [0], [0], [1.0])
    return max_entry_diff(total, target)


def left_right_commutation_defect(space: FockSpace) -> float:
    """Max defect of L_i R_j = R_j L_i on the slack-2 safe zone; contract: 0."""
    cols = SafeZone(space, 2).indices
    worst = 0.0
    for i in space.alphabet.letters:
        for j in space.alphabet.letters:
            li, rj = left_shift(space, i), right_shift(space, j)
            worst = max(worst, max_entry_diff(li @ rj, rj @ li, cols))
    return worst


def tensor_commutation_defect(
    space: FockSpace,
    left_words: tuple[Word, Word],
    right_words: tuple[Word, Word],
) -> float:
    """Defect of (L_u (x) L_v)(R_a (x) R_b) = (R_a (x) R_b)(L_u (x) L_v).

    Checked on the two-factor safe zone whose slack covers the per-factor
    shift totals.
    """
    u, v = left_words
    a, b = right_words
    lw = tensor_op(word_shift(space, u, "left"), word_shift(space, v, "left"))
    rw = tensor_op(word_shift(space, a, "right"), word_shift(space, b, "right"))
    slack = max(len(u) + len(a), len(v) + len(b))
    cols = SafeZone(lw.domain, slack).indices
    return max_entry_diff(lw @ rw, rw @ lw, cols)


def shift_composition_defect(space: FockSpace, u: Word, v: Word, side: str = "left") -> float:
    """Defect of S_u S_v = S_{uv} on the slack-(|u|+|v|) safe zone."""
    cols = SafeZone(space, len(u) + len(v)).indices
    composed = word_shift(space, u, side) @ word_shift(space, v, side)
    direct = word_shift(space, u.concat(v), side)
    return max_entry_diff(composed, direct, cols)


def series_pairing(series: FourierSeries, values: Mapping[Word, complex]) -> complex:
    """Bilinear pairing sum_w a_w values[w] used by duality checks."""
    return sum(c * complex(values.get(w, 0j)) for w, c in series.items())
