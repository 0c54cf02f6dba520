"""Six-basis curvature matrix, its blocks, the three 3x3 contractions, and
eigenstructure-based classification of the complex symmetric matrix built
from them.

Classification decision table, on the traceless complex 3x3 matrix W:

  three distinct eigenvalues                    -> I
  repeated nonzero eigenvalue, diagonalisable   -> D   (rank(W - lambda I) == 1)
  repeated nonzero eigenvalue, defective        -> II  (rank(W - lambda I) == 2)
  all eigenvalues zero, W^2 == 0, W != 0        -> N
  all eigenvalues zero, W^2 != 0                -> III (W^3 == 0 by tracelessness)
  W == 0                                        -> O

Eigenvalues come from the closed-form cubic (trace, second invariant,
determinant, complex Cardano); ranks from modulus-pivoted elimination.

Coincidence decisions in ``classify`` respect root conditioning: a double
root of a float cubic is only determined to ~sqrt(eps) and a triple root to
~cbrt(eps) relative accuracy, so candidate repeats are detected with floors
at those levels and then confirmed by rank tests, which are well conditioned.
The repeated-root location itself is recomputed from the smooth closed form
-3q/(2p) of the near-degenerate cubic rather than from the scattered roots.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from .fuzzy import levi_civita
from .symcore import (
    PairBasis,
    RiemannComponents,
    basis_pairs,
    cyclic_sum,
    get_component,
    pair_matrix,
    ricci_matrix,
)

DEFAULT_TOL = 1e-9

SPATIAL = (1, 2, 3)


class PetrovType(Enum):
    I = "I"
    II = "II"
    D = "D"
    III = "III"
    N = "N"
    O = "O"


class BlockInconsistency(ValueError):
    """Lower-left block is not minus the transpose of the upper-right one."""


class NotSymmetric(ValueError):
    pass


class NotTraceless(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SixMatrix:
    """6x6 pair matrix in duad order.

    ``entries`` has the first duad raised with the frame metric (duads
    containing index 0 pick up a factor -1); ``covariant`` is the all-lowered
    symmetric form.
    """

    entries: np.ndarray
    covariant: np.ndarray


@dataclass(frozen=True, eq=False)
class Blocks:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray


def assemble_six_matrix(R: RiemannComponents) -> SixMatrix:
    duads = basis_pairs(PairBasis.DUAD)
    cov = pair_matrix(R, PairBasis.DUAD)
    raising = np.array([-1.0 if 0 in duads[i] else 1.0 for i in range(6)])
    return SixMatrix(entries=raising[:, None] * cov, covariant=cov)


def _entries(S: Union[SixMatrix, np.ndarray]) -> np.ndarray:
    return S.entries if isinstance(S, SixMatrix) else np.asarray(S, dtype=float)


def blocks(S: Union[SixMatrix, np.ndarray], tol: float = 1e-12) -> Blocks:
    """Split a 6x6 matrix into its 3x3 quarters, checking the block relation."""
    E = _entries(S)
    if E.shape != (6, 6):
        raise ValueError("expected a 6x6 matrix")
    b = E[:3, 3:]
    if float(np.abs(E[3:, :3] + b.T).max()) > tol:
        raise BlockInconsistency("lower-left block deviates from -B^T")
    return Blocks(E[:3, :3].copy(), b.copy(), E[3:, 3:].copy())


def trace_b(S: Union[SixMatrix, np.ndarray]) -> float:
    """Trace of the upper-right block; the cyclic identity makes it vanish."""
    E = _entries(S)
    return float(E[0, 3] + E[1, 4] + E[2, 5])


def psi(R: RiemannComponents) -> np.ndarray:
    """3x3 matrix of the doubly-temporal components R_0a0b; symmetric by the
    block symmetry."""
    return np.array(
        [[get_component(R, (0, a, 0, b)) for b in SPATIAL] for a in SPATIAL]
    )


def sigma(R: RiemannComponents) -> np.ndarray:
    """Half the antisymmetric-triple contraction of the mixed components
    R^{gd}_{0b} over the spatial indices; full double sum, the two oriented
    terms per entry being equal."""
    out = np.zeros((3, 3))
    for i, a in enumerate(SPATIAL):
        for j, b in enumerate(SPATIAL):
            total = 0.0
            for g in SPATIAL:
                for d in SPATIAL:
                    eps = levi_civita(a, g, d)
                    if eps:
                        # spatial raising is trivial with this metric
                        total += eps * get_component(R, (g, d, 0, b))
            out[i, j] = total / 2.0
    return out


def lambda_mat(R: RiemannComponents) -> np.ndarray:
    """Quarter of the double antisymmetric-triple contraction of the all-raised
    spatial components; collapses to the double-duad matrix."""
    out = np.zeros((3, 3))
    for i, a in enumerate(SPATIAL):
        for j, b in enumerate(SPATIAL):
            total = 0.0
            for g in SPATIAL:
                for d in SPATIAL:
                    e1 = levi_civita(a, g, d)
                    if not e1:
                        continue
                    for m in SPATIAL:
                        for n in SPATIAL:
                            e2 = levi_civita(b, m, n)
                            if e2:
                                total += e1 * e2 * get_component(R, (g, d, m, n))
            out[i, j] = total / 4.0
    return out


def omega(R: RiemannComponents) -> np.ndarray:
    """Complex combination psi + i*sigma; symmetric and traceless for
    Bianchi-enforced, contraction-free input."""
    return psi(R) + 1j * sigma(R)


@dataclass(frozen=True)
class DistinctEigenvalue:
    value: complex
    algebraic: int
    geometric: int


@dataclass(frozen=True)
class EigenSolution:
    """Cubic eigenvalues plus the multiplicity data classification needs.

    ``nilpotency_degree`` is set only when all eigenvalues vanish: 1 for the
    zero matrix, otherwise the least power annihilating the matrix.
    """

    eigenvalues: tuple[complex, complex, complex]
    distinct: tuple[DistinctEigenvalue, ...]
    nilpotency_degree: Optional[int]


def _depressed(a: complex, b: complex, c: complex) -> tuple[complex, complex]:
    # x = t - a/3 turns x^3 + a x^2 + b x + c into t^3 + p t + q
    p = b - a * a / 3.0
    q = 2.0 * a**3 / 27.0 - a * b / 3.0 + c
    return p, q


def _cubic_roots(a: complex, b: complex, c: complex) -> tuple[complex, complex, complex]:
    # roots of x^3 + a x^2 + b x + c, complex Cardano
    shift = a / 3.0
    p, q = _depressed(a, b, c)
    s = cmath.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
    u3 = -q / 2.0 + s
    if abs(-q / 2.0 - s) > abs(u3):
        u3 = -q / 2.0 - s
    if u3 == 0:
        # p == q == 0: triple root
        r = -shift
        return (r, r, r)
    u = u3 ** (1.0 / 3.0)
    w = complex(-0.5, math.sqrt(3.0) / 2.0)
    roots = []
    for k in range(3):
        uk = u * w**k
        roots.append(uk - p / (3.0 * uk) - shift)
    return tuple(roots)


def _rank_modulus_pivot(A: np.ndarray, thresh: float) -> int:
    # full modulus pivoting; fine at 3x3
    M = np.array(A, dtype=complex)
    rows = list(range(M.shape[0]))
    cols = list(range(M.shape[1]))
    rank = 0
    while rows and cols:
        i_best, j_best, best = rows[0], cols[0], -1.0
        for i in rows:
            for j in cols:
                if abs(M[i, j]) > best:
                    i_best, j_best, best = i, j, abs(M[i, j])
        if best <= thresh:
            break
        rank += 1
        for i in rows:
            if i != i_best:
                M[i, :] -= (M[i, j_best] / M[i_best, j_best]) * M[i_best, :]
        rows.remove(i_best)
        cols.remove(j_best)
    return rank


def _cluster(values, thresh):
    groups: list[list[complex]] = []
    for v in sorted(values, key=lambda z: (z.real, z.imag)):
        for grp in groups:
            if any(abs(v - w) <= thresh for w in grp):
                grp.append(v)
                break
        else:
            groups.append([v])
    return groups


def _validated(W, tol: float) -> tuple[np.ndarray, float]:
    W = np.asarray(W, dtype=complex)
    if W.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    scale = float(np.abs(W).max())
    if scale > 0.0:
        if float(np.abs(W - W.T).max()) > tol * scale:
            raise NotSymmetric("matrix is not symmetric within tolerance")
        if abs(W.trace()) > tol * scale:
            raise NotTraceless("matrix trace exceeds tolerance")
    return W, scale


def _char_coeffs(W: np.ndarray) -> tuple[complex, complex, complex]:
    """Monic characteristic coefficients (a, b, c) of x^3 + a x^2 + b x + c,
    from trace, second invariant and determinant."""
    e1 = complex(W.trace())
    e2 = (e1 * e1 - complex((W @ W).trace())) / 2.0
    e3 = (
        W[0, 0] * (W[1, 1] * W[2, 2] - W[1, 2] * W[2, 1])
        - W[0, 1] * (W[1, 0] * W[2, 2] - W[1, 2] * W[2, 0])
        + W[0, 2] * (W[1, 0] * W[2, 1] - W[1, 1] * W[2, 0])
    )
    return -e1, e2, -e3


def eigen(W, tol: float = DEFAULT_TOL) -> EigenSolution:
    """Closed-form eigenstructure of a symmetric traceless complex 3x3 matrix.

    Eigenvalues closer than tol times the matrix max-norm are merged into one
    cluster; each cluster's geometric multiplicity comes from the rank of
    (W - lambda I) at the same relative threshold.
    """
    W, scale = _validated(W, tol)
    roots = _cubic_roots(*_char_coeffs(W))
    thresh = tol * scale
    groups = _cluster(roots, thresh)
    distinct = []
    for grp in groups:
        value = sum(grp) / len(grp)
        rank = _rank_modulus_pivot(W - value * np.eye(3), thresh)
        distinct.append(DistinctEigenvalue(value, len(grp), 3 - rank))
    nilpotency: Optional[int] = None
    if all(abs(r) <= thresh for r in roots):
        if scale == 0.0:
            nilpotency = 1
        elif float(np.abs(W @ W).max()) <= tol * scale * scale:
            nilpotency = 2
        else:
            nilpotency = 3
    return EigenSolution(tuple(roots), tuple(distinct), nilpotency)


# Relative accuracy floors for eigenvalue-coincidence decisions: a float cubic
# determines a double root to ~sqrt(eps) and a triple root to ~cbrt(eps), so
# sharper coincidence tests would misread exact repeated structure as distinct.
# Measured worst cases for conjugated repeated-root fixtures: 5e-8 and 8e-6.
_PAIR_FLOOR = 5e-7
_ZERO_FLOOR = 1e-4


def classify(W, tol: float = DEFAULT_TOL) -> PetrovType:
    """Petrov type of the complex matrix, per the module decision table.

    Candidate repeated roots are detected at conditioning-aware thresholds and
    confirmed by rank; a candidate that fails the rank test falls back to
    distinct eigenvalues.
    """
    W, scale = _validated(W, tol)
    if scale == 0.0:
        return PetrovType.O
    a, b, c = _char_coeffs(W)
    roots = _cubic_roots(a, b, c)
    if max(abs(r) for r in roots) <= max(tol, _ZERO_FLOOR) * scale:
        # all eigenvalues vanish: nilpotent structure decides
        if float(np.abs(W @ W).max()) <= max(tol, 1e-13) * scale * scale:
            return PetrovType.N
        return PetrovType.III
    pairs = [(abs(roots[i] - roots[j]), i, j) for i in range(3) for j in range(i + 1, 3)]
    dmin, i, j = min(pairs)
    if dmin > max(tol, _PAIR_FLOOR) * scale:
        return PetrovType.I
    p, q = _depressed(a, b, c)
    if abs(p) > 1e-12 * scale * scale:
        repeated = -3.0 * q / (2.0 * p) - a / 3.0
    else:
        repeated = (roots[i] + roots[j]) / 2.0
    rank = _rank_modulus_pivot(W - repeated * np.eye(3), tol * scale)
    if rank == 1:
        return PetrovType.D
    if rank == 2:
        return PetrovType.II
    return PetrovType.I


def classification_report(R: RiemannComponents, tol: float = DEFAULT_TOL) -> dict:
    """Everything the classify command reports: eigen data, type, and the
    residuals of the contraction-free relations."""
    p = psi(R)
    s = sigma(R)
    lam = lambda_mat(R)
    W = p + 1j * s
    sol = eigen(W, tol)
    ptype = classify(W, tol)
    ric = ricci_matrix(R)
    return {
        "petrov_type": ptype.value,
        "eigenvalues": [{"re": z.real, "im": z.imag} for z in sol.eigenvalues],
        "multiplicities": [
            {
                "eigenvalue": {"re": d.value.real, "im": d.value.imag},
                "algebraic": d.algebraic,
                "geometric": d.geometric,
            }
            for d in sol.distinct
        ],
        "nilpotency_degree": sol.nilpotency_degree,
        "residuals": {
            "trace_psi": abs(float(np.trace(p))),
            "sigma_asymmetry": float(np.abs(s - s.T).max()),
            "psi_plus_lambda": float(np.abs(p + lam).max()),
            "trace_omega": abs(complex(np.trace(W))),
            "bianchi": abs(cyclic_sum(R, (0, 1, 2, 3))),
            "ricci_max": float(np.abs(ric).max()),
        },
    }
