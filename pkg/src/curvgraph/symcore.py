"""Canonical storage and symmetry algebra for rank-4 curvature-type components.

In four dimensions a curvature-type tensor is fixed by the symmetric 6x6
matrix of its antisymmetric-pair components: every one of the 256 raw
components routes to a (slot, slot) entry with a sign given by pair
orientation. This module owns that storage, the cyclic-identity machinery on
top of it, seeded fixture generators, and the counting formulas together with
their brute-force rational-rank oracle.

Indices are plain ints under the fixed identification i,k,l,m -> 0,1,2,3;
quads are 4-tuples of them. All values are immutable after construction and
every operation here is a pure function.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Optional, Sequence

import numpy as np

from .ratlinalg import nullspace_dense, rank_sparse

#: Diagonal frame metric used for every index raising; inverse equals itself.
METRIC_SIGNATURE = (-1, 1, 1, 1)

DIMENSION = 4


class PairBasis(Enum):
    """The two orderings of the six antisymmetric index pairs."""

    LEX = "lex"    # 01, 02, 03, 12, 13, 23
    DUAD = "duad"  # 01, 02, 03, 23, 31, 12


LEX_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
DUAD_PAIRS = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))

_PAIRS = {PairBasis.LEX: LEX_PAIRS, PairBasis.DUAD: DUAD_PAIRS}

NUM_SLOTS = len(LEX_PAIRS)

#: The three cyclic-permutation quads of (0,1,2,3); their component sum is the
#: one independent first-Bianchi constraint in four dimensions.
CYCLIC_QUADS = ((0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2))


def _slot_table(pairs):
    table = {}
    for slot, (a, b) in enumerate(pairs):
        table[(a, b)] = (slot, 1)
        table[(b, a)] = (slot, -1)
    return table


_SLOTS = {basis: _slot_table(pairs) for basis, pairs in _PAIRS.items()}


def basis_pairs(basis: PairBasis):
    """Oriented index pairs of the six slots, in slot order."""
    return _PAIRS[PairBasis(basis)]


def check_index(value, n: int = DIMENSION) -> int:
    try:
        v = operator.index(value)
    except TypeError:
        raise ValueError(f"index must be an integer, got {value!r}") from None
    if not 0 <= v < n:
        raise ValueError(f"index must lie in [0, {n}), got {v}")
    return v


def check_quad(quad, n: int = DIMENSION) -> tuple[int, int, int, int]:
    if len(quad) != 4:
        raise ValueError(f"quad must have 4 indices, got {quad!r}")
    a, b, c, d = (check_index(v, n) for v in quad)
    return (a, b, c, d)


@dataclass(frozen=True)
class PairSlot:
    """Slot number plus orientation sign of an ordered index pair."""

    slot: int
    sign: int
    basis: PairBasis


def pair_slot(a: int, b: int, basis: PairBasis = PairBasis.LEX) -> Optional[PairSlot]:
    """Slot and sign of the pair (a, b), or None when a == b.

    A degenerate pair addresses an antisymmetric component that is
    identically zero, so it carries no slot.
    """
    a = check_index(a)
    b = check_index(b)
    if a == b:
        return None
    slot, sign = _SLOTS[PairBasis(basis)][(a, b)]
    return PairSlot(slot, sign, PairBasis(basis))


@dataclass(frozen=True, eq=False)
class RiemannComponents:
    """Pair-slot component store of a curvature-type tensor (n = 4).

    ``matrix`` is the symmetric 6x6 array of pair components in ``basis``
    order; symmetry is validated exactly on construction and the array is
    frozen. ``bianchi_enforced`` records whether the cyclic identity holds.
    """

    matrix: np.ndarray
    basis: PairBasis = PairBasis.LEX
    bianchi_enforced: bool = False
    n: int = DIMENSION

    def __post_init__(self):
        if self.n != DIMENSION:
            raise ValueError(f"component storage is fixed to n = {DIMENSION}")
        m = np.array(self.matrix, dtype=float)
        if m.shape != (NUM_SLOTS, NUM_SLOTS):
            raise ValueError(f"matrix must be {NUM_SLOTS}x{NUM_SLOTS}, got {m.shape}")
        if not np.array_equal(m, m.T):
            raise ValueError("pair-component matrix must be exactly symmetric")
        if not np.all(np.isfinite(m)):
            raise ValueError("pair-component matrix must be finite")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "basis", PairBasis(self.basis))

    def component(self, a, b, c, d) -> float:
        return get_component(self, (a, b, c, d))


def zero_riemann(basis: PairBasis = PairBasis.LEX) -> RiemannComponents:
    return RiemannComponents(np.zeros((NUM_SLOTS, NUM_SLOTS)), basis, bianchi_enforced=True)


def get_component(R: RiemannComponents, quad) -> float:
    """Raw lowered component R_abcd, reconstructed through pair-slot signs.

    Exactly zero when either pair is degenerate; otherwise the same stored
    float up to sign, so the skew and block symmetries hold exactly.
    """
    a, b, c, d = check_quad(quad)
    p = pair_slot(a, b, R.basis)
    q = pair_slot(c, d, R.basis)
    if p is None or q is None:
        return 0.0
    return p.sign * q.sign * float(R.matrix[p.slot, q.slot])


class ConflictingEntry(ValueError):
    """Two ingested entries imply different values for one slot pair."""


class DegenerateNonzero(ValueError):
    """An ingested entry has a repeated pair index but a nonzero value."""


def from_component_list(
    n: int,
    entries: Iterable[tuple[Sequence[int], float]],
    tol: float = 1e-12,
    basis: PairBasis = PairBasis.LEX,
) -> RiemannComponents:
    """Build component storage from (quad, value) records.

    Each record is routed through pair-slot signs; unspecified components
    default to zero. Records that address the same slot pair must agree
    within ``tol`` after sign mapping. The ``bianchi_enforced`` flag is set
    from the measured cyclic residual of the result.
    """
    if n != DIMENSION:
        raise ValueError(f"component storage is fixed to n = {DIMENSION}, got {n}")
    basis = PairBasis(basis)
    M = np.zeros((NUM_SLOTS, NUM_SLOTS))
    seen: dict[tuple[int, int], float] = {}
    for quad, value in entries:
        quad = check_quad(quad)
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"component value for {quad} is not finite")
        p = pair_slot(quad[0], quad[1], basis)
        q = pair_slot(quad[2], quad[3], basis)
        if p is None or q is None:
            if abs(value) > tol:
                raise DegenerateNonzero(
                    f"quad {quad} repeats an index within a pair but has value {value}"
                )
            continue
        slot_value = p.sign * q.sign * value
        key = (min(p.slot, q.slot), max(p.slot, q.slot))
        if key in seen:
            if abs(seen[key] - slot_value) > tol:
                raise ConflictingEntry(
                    f"quad {quad} implies slot value {slot_value} but "
                    f"{seen[key]} was already recorded"
                )
            continue
        seen[key] = slot_value
        M[key[0], key[1]] = slot_value
        M[key[1], key[0]] = slot_value
    R = RiemannComponents(M, basis)
    residual = abs(cyclic_sum(R, CYCLIC_QUADS[0]))
    enforced = residual <= tol * max(1.0, float(np.abs(M).max()))
    return RiemannComponents(M, basis, bianchi_enforced=enforced)


def pair_matrix(R: RiemannComponents, basis: Optional[PairBasis] = None) -> np.ndarray:
    """Covariant pair-component matrix in the requested basis.

    The two slot orderings differ by a signed permutation, so this is exact:
    every entry is a stored value up to sign.
    """
    basis = R.basis if basis is None else PairBasis(basis)
    if basis == R.basis:
        return R.matrix.copy()
    pairs = _PAIRS[basis]
    return np.array(
        [
            [get_component(R, (*pairs[s], *pairs[t])) for t in range(NUM_SLOTS)]
            for s in range(NUM_SLOTS)
        ]
    )


def cyclic_quads(quad):
    """The three quads whose components enter the cyclic sum of ``quad``."""
    a, b, c, d = check_quad(quad)
    return ((a, b, c, d), (a, c, d, b), (a, d, b, c))


def cyclic_sum(R: RiemannComponents, quad) -> float:
    """R_abcd + R_acdb + R_adbc; vanishes on Bianchi-enforced storage."""
    return sum(get_component(R, q) for q in cyclic_quads(quad))


def antisym_pair(R: RiemannComponents, quad) -> float:
    """Antisymmetrisation over the second pair, (R_abcd - R_abdc) / 2.

    Equal to R_abcd itself because of the stored skew symmetry; kept as an
    explicit operation so the identity can be exercised directly.
    """
    a, b, c, d = check_quad(quad)
    return (get_component(R, (a, b, c, d)) - get_component(R, (a, b, d, c))) / 2.0


def cyclic_symmetrization(R: RiemannComponents, quad) -> float:
    """Cyclic symmetrisation over the last three indices: cyclic_sum / 3!."""
    return cyclic_sum(R, quad) / 6.0


def _cyclic_constraint_terms(basis: PairBasis):
    # (slot_row, slot_col, orientation sign) of the three entries that make
    # up the single Bianchi constraint at n = 4.
    terms = []
    for a, b, c, d in CYCLIC_QUADS:
        p = pair_slot(a, b, basis)
        q = pair_slot(c, d, basis)
        terms.append((p.slot, q.slot, p.sign * q.sign))
    return terms


def project_bianchi(R: RiemannComponents) -> RiemannComponents:
    """Orthogonal projection onto the subspace where the cyclic sum vanishes.

    Euclidean projection on the 21 upper-triangle slot entries: the single
    constraint touches three off-diagonal entries, so the residual is spread
    equally over them. Idempotent; a tensor with exactly zero residual is
    returned unchanged entry for entry.
    """
    M = R.matrix.copy()
    terms = _cyclic_constraint_terms(R.basis)
    residual = sum(sign * M[s, t] for s, t, sign in terms)
    correction = residual / 3.0
    for s, t, sign in terms:
        M[s, t] -= sign * correction
        M[t, s] = M[s, t]
    return RiemannComponents(M, R.basis, bianchi_enforced=True)


def ricci(R: RiemannComponents, X: int, Y: int) -> float:
    """Contraction sum_a eta^aa R_aXaY with the fixed frame metric."""
    X = check_index(X)
    Y = check_index(Y)
    return sum(
        METRIC_SIGNATURE[a] * get_component(R, (a, X, a, Y)) for a in range(DIMENSION)
    )


def ricci_matrix(R: RiemannComponents) -> np.ndarray:
    return np.array([[ricci(R, x, y) for y in range(DIMENSION)] for x in range(DIMENSION)])


def _upper_coords():
    return [(s, t) for s in range(NUM_SLOTS) for t in range(s, NUM_SLOTS)]


def _bianchi_row(coords, basis: PairBasis):
    index = {c: i for i, c in enumerate(coords)}
    row = [0] * len(coords)
    for s, t, sign in _cyclic_constraint_terms(basis):
        row[index[(min(s, t), max(s, t))]] += sign
    return row


def _ricci_rows(coords, basis: PairBasis):
    # One row per unordered (X, Y): the contraction is linear in the 21
    # upper-triangle slot entries.
    index = {c: i for i, c in enumerate(coords)}
    rows = []
    for X in range(DIMENSION):
        for Y in range(X, DIMENSION):
            row = [0] * len(coords)
            for a in range(DIMENSION):
                p = pair_slot(a, X, basis)
                q = pair_slot(a, Y, basis)
                if p is None or q is None:
                    continue
                key = (min(p.slot, q.slot), max(p.slot, q.slot))
                row[index[key]] += METRIC_SIGNATURE[a] * p.sign * q.sign
            rows.append(row)
    return rows


_WEYL_BASIS_CACHE: dict[PairBasis, np.ndarray] = {}


def _weyl_sector_basis(basis: PairBasis) -> np.ndarray:
    """Float basis of the Bianchi-and-Ricci-flat sector, from an exact
    rational nullspace. 10-dimensional at n = 4."""
    cached = _WEYL_BASIS_CACHE.get(basis)
    if cached is not None:
        return cached
    coords = _upper_coords()
    rows = [_bianchi_row(coords, basis)] + _ricci_rows(coords, basis)
    null = nullspace_dense(rows, len(coords))
    mat = np.array([[float(x) for x in vec] for vec in null])
    _WEYL_BASIS_CACHE[basis] = mat
    return mat


def random_riemann(seed: int, ricci_flat: bool = False) -> RiemannComponents:
    """Deterministic Bianchi-enforced test tensor for the given seed.

    With ``ricci_flat`` the 21 slot entries are sampled from the sector where
    every contraction vanishes (the 10 remaining curvature degrees of
    freedom); otherwise 21 uniform entries are projected onto the cyclic
    constraint.
    """
    rng = np.random.default_rng(seed)
    coords = _upper_coords()
    M = np.zeros((NUM_SLOTS, NUM_SLOTS))
    if ricci_flat:
        sector = _weyl_sector_basis(PairBasis.LEX)
        values = rng.uniform(-1.0, 1.0, size=sector.shape[0]) @ sector
        for (s, t), v in zip(coords, values):
            M[s, t] = v
            M[t, s] = v
        return RiemannComponents(M, PairBasis.LEX, bianchi_enforced=True)
    values = rng.uniform(-1.0, 1.0, size=len(coords))
    for (s, t), v in zip(coords, values):
        M[s, t] = v
        M[t, s] = v
    return project_bianchi(RiemannComponents(M, PairBasis.LEX))


# --- counting -------------------------------------------------------------

def pair_count(n: int) -> int:
    """Number of independent antisymmetric index pairs, n(n-1)/2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * (n - 1) // 2


def independent_component_count(n: int) -> int:
    """Independent components after all symmetries: n^2(n^2 - 1)/12."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * n * (n * n - 1) // 12


def generalized_count(n: int, r: int) -> int:
    """P(P+1)/2 - C(n, r) with P = n(n-1)/2, for r cyclically permuting indices."""
    if not 0 <= r <= n:
        raise ValueError("r must satisfy 0 <= r <= n")
    P = pair_count(n)
    return P * (P + 1) // 2 - math.comb(n, r)


# --- brute-force verification oracle ---------------------------------------

def _flat_index(quad, n):
    a, b, c, d = quad
    return ((a * n + b) * n + c) * n + d


def symmetry_constraint_rows(n: int):
    """Sparse constraint rows over all n**4 raw components.

    One row per quad and symmetry rule: both skew symmetries, the block
    symmetry, and the cyclic identity. Entirely independent of the pair-slot
    storage above; used only for exact-rank verification.
    """
    rows = []
    for quad in product(range(n), repeat=4):
        a, b, c, d = quad
        for group in (
            ((quad, 1), ((b, a, c, d), 1)),
            ((quad, 1), ((a, b, d, c), 1)),
            ((quad, 1), ((c, d, a, b), -1)),
            ((quad, 1), ((a, c, d, b), 1), ((a, d, b, c), 1)),
        ):
            row: dict[int, int] = {}
            for q, coeff in group:
                col = _flat_index(q, n)
                row[col] = row.get(col, 0) + coeff
            row = {c: v for c, v in row.items() if v != 0}
            if row:
                rows.append(row)
    return rows


def ricci_constraint_rows(n: int):
    """Sparse rows of the flatness conditions eta^aa R_aXaY = 0 on raw components."""
    if n != DIMENSION:
        raise ValueError("the frame metric is four-dimensional")
    rows = []
    for X in range(n):
        for Y in range(X, n):
            row: dict[int, int] = {}
            for a in range(n):
                col = _flat_index((a, X, a, Y), n)
                row[col] = row.get(col, 0) + METRIC_SIGNATURE[a]
            row = {c: v for c, v in row.items() if v != 0}
            if row:
                rows.append(row)
    return rows


def symmetry_space_dimension_oracle(n: int) -> int:
    """Nullity of the full constraint system, by exact rational elimination.

    Builds all n**4 coefficients and imposes every symmetry row exactly;
    the result must agree with ``independent_component_count``. Cost grows
    as n**4 rows, hence the small-n guard.
    """
    if not 1 <= n <= 5:
        raise ValueError("oracle is restricted to 1 <= n <= 5")
    rows = symmetry_constraint_rows(n)
    return n**4 - rank_sparse(rows)
