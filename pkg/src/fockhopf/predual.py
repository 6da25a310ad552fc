"""The truncated predual as a convolution algebra.

A functional is coordinatized by its value array (phi(L_w))_{|w| <= N}; that
array is a faithful coordinate system because the truncated algebra is
spanned by the realized word indicators.  Convolution then becomes exact
pointwise multiplication of value arrays, which the slice-map oracle in the
test-suite confirms against the tensor-comultiplication definition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .spaces import FockSpace, Vector, basis_vector, inner
from .words import Word

RankOnePair = tuple[Vector, Vector]


def _rank_one_values(space: FockSpace, pairs: Sequence[RankOnePair]) -> np.ndarray:
    values = np.zeros(space.dim, dtype=np.complex128)
    for xi, eta in pairs:
        if xi.space != space or eta.space != space:
            raise ValueError("rank-one pair vectors must live on the functional's space")
        for jw, w in enumerate(space.words):
            lw = len(w)
            total = 0j
            for ju, u in enumerate(space.words):
                if lw + len(u) > space.depth:
                    break
                total += xi.data[ju] * np.conj(eta.data[space.index_of(w.concat(u))])
            values[jw] += total
    return values


@dataclass(frozen=True, eq=False)
class Functional:
    """Element of the truncated predual: the value array (phi(L_w))_w.

    ``provenance`` optionally records the rank-one pairs the functional was
    built from; the value array remains the canonical representation, and a
    stored provenance must reproduce it (checked on construction).
    """

    space: FockSpace
    values: np.ndarray
    provenance: tuple[RankOnePair, ...] | None = None

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.complex128, copy=True).ravel()
        if arr.size != self.space.dim:
            raise ValueError(f"value array length {arr.size} does not match dim {self.space.dim}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        if self.provenance is not None:
            if not np.array_equal(arr, _rank_one_values(self.space, self.provenance)):
                raise ValueError("provenance pairs do not reproduce the value array")

    def value(self, w: Word) -> complex:
        return complex(self.values[self.space.index_of(w)])

    def value_map(self) -> dict[Word, complex]:
        return {w: complex(v) for w, v in zip(self.space.words, self.values)}

    def to_json_dict(self) -> dict[str, list[float]]:
        n = self.space.n
        return {
            w.text(n): [float(v.real), float(v.imag)]
            for w, v in zip(self.space.words, self.values)
        }


def from_rank_one(space: FockSpace, pairs: Sequence[RankOnePair]) -> Functional:
    """The functional sum_j [xi_j eta_j*] with values (L_w xi_j, eta_j)."""
    pairs = tuple((xi, eta) for xi, eta in pairs)
    return Functional(space, _rank_one_values(space, pairs), provenance=pairs)


def vacuum_functional(space: FockSpace) -> Functional:
    """The vacuum rank-one state; its value array is the unit-word indicator."""
    vac = basis_vector(space, Word())
    return from_rank_one(space, [(vac, vac)])


def indicator_functional(space: FockSpace, w: Word) -> Functional:
    """[xi_e xi_w*]: the functional whose value array is the indicator of w."""
    return from_rank_one(space, [(basis_vector(space, Word()), basis_vector(space, w))])


def convolve(f: Functional, g: Functional) -> Functional:
    """Convolution of value arrays: pointwise multiplication, entry by entry."""
    if f.space != g.space:
        raise ValueError("functionals live on different spaces")
    return Functional(f.space, f.values * g.values)


def dagger(f: Functional) -> Functional:
    """Entrywise conjugation of the value array; an involution."""
    return Functional(f.space, np.conj(f.values))


def counit_defect(f: Functional) -> float:
    """Distance of a functional from the counit equations.

    A convolution unit must take the value 1 on the identity and on every
    generator; the defect is the largest miss among those constraints.
    """
    space = f.space
    worst = abs(f.value(Word()) - 1.0)
    for i in space.alphabet.letters:
        worst = max(worst, abs(f.value(Word((i,))) - 1.0))
    return float(worst)


def is_all_ones(f: Functional) -> bool:
    return bool(np.all(f.values == 1.0))


@dataclass(frozen=True, eq=False)
class TensorFunctional:
    """Functional on the two-leg tensor algebra, supported on admissible pairs."""

    space: FockSpace
    values: dict[tuple[Word, Word], complex]

    def value(self, u: Word, v: Word) -> complex:
        return self.values.get((u, v), 0j)


def predual_comult(f: Functional) -> TensorFunctional:
    """Pull the value array back through multiplication: (u, v) -> phi(L_{uv})."""
    space = f.space
    out: dict[tuple[Word, Word], complex] = {}
    for u in space.words:
        for v in space.words:  # length-sorted, admissible pairs form a prefix
            if len(u) + len(v) > space.depth:
                break
            out[(u, v)] = complex(f.values[space.index_of(u.concat(v))])
    return TensorFunctional(space, out)


def tensor_convolve(a: TensorFunctional, b: TensorFunctional) -> TensorFunctional:
    if a.space != b.space:
        raise ValueError("tensor functionals live on different spaces")
    keys = set(a.values) | set(b.values)
    return TensorFunctional(a.space, {k: a.value(*k) * b.value(*k) for k in keys})


def predual_coassociativity_defect(f: Functional) -> float:
    """Both iterates of the predual comultiplication agree on triples exactly."""
    space = f.space
    split = predual_comult(f)
    worst = 0.0
    words = space.words  # length-sorted, so the inner loops can break early
    for u in words:
        for v in words:
            if len(u) + len(v) > space.depth:
                break
            for w in words:
                if len(u) + len(v) + len(w) > space.depth:
                    break
                direct = f.values[space.index_of(u.concat(v).concat(w))]
                first = split.value(u.concat(v), w)
                second = split.value(u, v.concat(w))
                worst = max(worst, abs(first - direct), abs(second - direct))
    return worst


def predual_homomorphism_defect(f: Functional, g: Functional) -> float:
    """Defect of comult(f * g) = comult(f) * comult(g), componentwise."""
    lhs = predual_comult(convolve(f, g))
    rhs = tensor_convolve(predual_comult(f), predual_comult(g))
    keys = set(lhs.values) | set(rhs.values)
    return max((abs(lhs.value(*k) - rhs.value(*k)) for k in keys), default=0.0)


@dataclass(frozen=True, eq=False)
class PointFunctional:
    """Evaluation at a point of the open unit ball.

    ``functional`` carries the exact monomial values w -> w(point); ``vector``
    is the normalized truncation of sum_w conj(w(point)) xi_w, whose rank-one
    functional reproduces the monomial values up to a geometric tail:

        |[nu nu*](L_w) - w(point)| <= t^(N - |w| + 1) / (1 - t),  t = ||point||^2.

    The exact values are canonical; the vector exists to witness the rank-one
    form and its convergence rate.
    """

    space: FockSpace
    point: tuple[complex, ...]
    functional: Functional
    vector: Vector

    @property
    def ball_norm_sq(self) -> float:
        return float(sum(abs(z) ** 2 for z in self.point))

    def rank_one_functional(self) -> Functional:
        return from_rank_one(self.space, [(self.vector, self.vector)])

    def reconstruction_tail_bound(self, w: Word) -> float:
        t = self.ball_norm_sq
        if t == 0.0:
            return 0.0
        return t ** (self.space.depth - len(w) + 1) / (1.0 - t)


def point_functional(space: FockSpace, point: Sequence[complex]) -> PointFunctional:
    point = tuple(complex(z) for z in point)
    if len(point) != space.n:
        raise ValueError(f"point must have {space.n} coordinates, got {len(point)}")
    if sum(abs(z) ** 2 for z in point) >= 1.0:
        raise ValueError("point must lie in the open unit ball")
    values = np.array([w.evaluate(point) for w in space.words], dtype=np.complex128)
    weights = np.conj(values)
    norm = math.sqrt(float(np.sum(np.abs(weights) ** 2)))
    vec = Vector(space, weights / norm)
    return PointFunctional(space, point, Functional(space, values), vec)


def pointwise_product(lam: Sequence[complex], mu: Sequence[complex]) -> tuple[complex, ...]:
    """Componentwise product of ball points; stays in the open ball."""
    if len(lam) != len(mu):
        raise ValueError("points must have the same length")
    return tuple(complex(a) * complex(b) for a, b in zip(lam, mu))


def point_convolution_defect(
    space: FockSpace, lam: Sequence[complex], mu: Sequence[complex]
) -> float:
    """Largest value-array miss of convolve(phi_lam, phi_mu) = phi_{lam*mu}.

    Also folds in the involution identities: dagger(phi_lam) must equal the
    evaluation at the conjugate point, and dagger twice must be the identity.
    """
    pl = point_functional(space, lam)
    pm = point_functional(space, mu)
    conv = convolve(pl.functional, pm.functional)
    target = point_functional(space, pointwise_product(lam, mu)).functional
    worst = float(np.abs(conv.values - target.values).max(initial=0.0))
    conj = point_functional(space, tuple(z.conjugate() for z in pl.point)).functional
    dag = dagger(pl.functional)
    worst = max(worst, float(np.abs(dag.values - conj.values).max(initial=0.0)))
    worst = max(worst, float(np.abs(dagger(dag).values - pl.functional.values).max(initial=0.0)))
    return worst
