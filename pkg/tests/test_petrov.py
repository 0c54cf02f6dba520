import numpy as np
import pytest

import curvgraph as cg
from curvgraph.petrov import DEFAULT_TOL

I = 1j

# fixtures with Jordan structure pinned by the rank/eigenvalue oracle below
FIX_D = np.diag([-2.0, 1.0, 1.0]).astype(complex)
FIX_I = np.diag([1.0, 2.0, -3.0]).astype(complex)
FIX_N = np.array([[1, I, 0], [I, -1, 0], [0, 0, 0]], dtype=complex)
FIX_II = np.array([[2, I, 0], [I, 0, 0], [0, 0, -2]], dtype=complex)
FIX_III = np.array([[0, 0, 1], [0, 0, I], [1, I, 0]], dtype=complex)


def char_roots_oracle(W):
    """Characteristic polynomial roots through numpy, independent of the
    closed-form path under test."""
    e1 = np.trace(W)
    e2 = (e1 * e1 - np.trace(W @ W)) / 2.0
    e3 = np.linalg.det(W)
    return np.roots([1.0, -e1, e2, -e3])


def assert_same_multiset(a, b, tol=1e-8):
    a = sorted(a, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    b = sorted(b, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    for x, y in zip(a, b):
        assert abs(x - y) <= tol


def test_fixture_jordan_structures():
    # the pre-build oracle facts the fixtures rely on
    assert np.abs(FIX_N @ FIX_N).max() == 0.0
    assert np.linalg.matrix_rank(FIX_D - np.eye(3)) == 1
    assert np.linalg.matrix_rank(FIX_II - np.eye(3)) == 2
    assert_same_multiset(np.linalg.eigvals(FIX_II), [1, 1, -2], tol=1e-7)
    assert np.linalg.matrix_rank(FIX_III) == 2
    assert np.linalg.matrix_rank(FIX_III @ FIX_III) == 1
    assert np.abs(FIX_III @ FIX_III @ FIX_III).max() == 0.0
    for W in (FIX_D, FIX_I, FIX_N, FIX_II, FIX_III):
        assert np.abs(W - W.T).max() == 0.0
        assert abs(np.trace(W)) == 0.0


def test_assemble_six_matrix():
    assert np.all(cg.assemble_six_matrix(cg.zero_riemann()).entries == 0.0)

    c = 2.5
    R = cg.from_component_list(4, [((0, 1, 0, 1), c)])
    S = cg.assemble_six_matrix(R)
    assert S.entries[0, 0] == -c  # first duad raised against the time axis
    assert S.covariant[0, 0] == c

    R = cg.random_riemann(0)
    S = cg.assemble_six_matrix(R)
    assert np.array_equal(S.covariant, S.covariant.T)
    # raising flips exactly the three temporal-duad rows
    assert np.array_equal(S.entries[:3], -S.covariant[:3])
    assert np.array_equal(S.entries[3:], S.covariant[3:])


def test_blocks():
    zero = cg.blocks(np.zeros((6, 6)))
    assert np.all(zero.a == 0.0) and np.all(zero.b == 0.0) and np.all(zero.c == 0.0)

    S = cg.assemble_six_matrix(cg.random_riemann(5))
    blk = cg.blocks(S)
    assert np.abs(blk.a - blk.a.T).max() <= 1e-12
    assert np.abs(blk.c - blk.c.T).max() <= 1e-12
    assert np.array_equal(S.entries[3:, :3], -blk.b.T)

    bad = np.zeros((6, 6))
    bad[3, 0] = 1.0
    with pytest.raises(cg.BlockInconsistency):
        cg.blocks(bad)


def test_trace_b():
    assert cg.trace_b(np.zeros((6, 6))) == 0.0
    # hand value: only the 01,23 slot entry set, so the three raised duad
    # components sum to -1
    R = cg.from_component_list(4, [((0, 1, 2, 3), 1.0)])
    assert cg.trace_b(cg.assemble_six_matrix(R)) == pytest.approx(-1.0, abs=0)
    for seed in range(10):
        S = cg.assemble_six_matrix(cg.random_riemann(seed))
        assert abs(cg.trace_b(S)) <= 1e-12


def test_psi():
    assert np.all(cg.psi(cg.zero_riemann()) == 0.0)
    R = cg.random_riemann(7)
    P = cg.psi(R)
    S = cg.assemble_six_matrix(R)
    assert np.array_equal(P, S.covariant[:3, :3])
    assert np.array_equal(P, P.T)
    flat = cg.random_riemann(7, ricci_flat=True)
    assert abs(np.trace(cg.psi(flat))) <= 1e-10


def test_sigma():
    R = cg.random_riemann(11)
    S = cg.assemble_six_matrix(R)
    Sg = cg.sigma(R)
    assert Sg[0, 0] == S.entries[3, 0]  # Sigma_11 reads the raised 23,01 entry
    assert np.array_equal(Sg, S.entries[3:, :3])
    assert np.all(cg.sigma(cg.zero_riemann()) == 0.0)
    flat = cg.random_riemann(21, ricci_flat=True)
    Sf = cg.sigma(flat)
    assert np.abs(Sf - Sf.T).max() <= 1e-10


def test_lambda_mat():
    R = cg.random_riemann(13)
    L = cg.lambda_mat(R)
    assert L[0, 0] == cg.get_component(R, (2, 3, 2, 3))
    S = cg.assemble_six_matrix(R)
    assert np.array_equal(L, S.entries[3:, 3:])
    assert np.array_equal(L, L.T)
    assert np.all(cg.lambda_mat(cg.zero_riemann()) == 0.0)
    flat = cg.random_riemann(33, ricci_flat=True)
    assert np.abs(cg.psi(flat) + cg.lambda_mat(flat)).max() <= 1e-10


def test_omega():
    assert np.all(cg.omega(cg.zero_riemann()) == 0.0)
    flat = cg.random_riemann(44, ricci_flat=True)
    W = cg.omega(flat)
    assert np.array_equal(W.real, cg.psi(flat))
    assert abs(np.trace(W)) <= 1e-10
    assert np.abs(W - W.T).max() <= 1e-10


def test_eigen_zero_and_diag():
    sol = cg.eigen(np.zeros((3, 3), dtype=complex))
    assert sol.eigenvalues == (0, 0, 0)
    assert sol.distinct[0].algebraic == 3
    assert sol.distinct[0].geometric == 3
    assert sol.nilpotency_degree == 1

    sol = cg.eigen(FIX_D)
    assert_same_multiset(sol.eigenvalues, [-2, 1, 1])
    mults = {round(d.value.real): (d.algebraic, d.geometric) for d in sol.distinct}
    assert mults == {-2: (1, 1), 1: (2, 2)}
    assert sol.nilpotency_degree is None


def test_eigen_nilpotent():
    sol = cg.eigen(FIX_N)
    assert max(abs(z) for z in sol.eigenvalues) <= 1e-9
    assert sol.nilpotency_degree == 2
    sol = cg.eigen(FIX_III)
    assert sol.nilpotency_degree == 3


def test_eigen_validation():
    with pytest.raises(cg.NotSymmetric):
        cg.eigen(np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], dtype=complex))
    with pytest.raises(cg.NotTraceless):
        cg.eigen(np.eye(3, dtype=complex))


def test_eigen_against_char_poly_oracle():
    rng = np.random.default_rng(0)
    for _ in range(25):
        A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        W = A + A.T
        W = W - np.trace(W) / 3.0 * np.eye(3)
        sol = cg.eigen(W)
        assert_same_multiset(sol.eigenvalues, char_roots_oracle(W))
        norm = np.abs(W).max()
        assert abs(sum(sol.eigenvalues)) <= 10 * DEFAULT_TOL
        e1 = np.trace(W)
        e2 = (e1 * e1 - np.trace(W @ W)) / 2.0
        e3 = np.linalg.det(W)
        for z in sol.eigenvalues:
            residual = abs(z**3 - e1 * z**2 + e2 * z - e3)
            assert residual <= 100 * DEFAULT_TOL * norm


def test_classify_fixtures():
    assert cg.classify(np.zeros((3, 3))) is cg.PetrovType.O
    assert cg.classify(FIX_D) is cg.PetrovType.D
    assert cg.classify(FIX_I) is cg.PetrovType.I
    assert cg.classify(FIX_N) is cg.PetrovType.N
    assert cg.classify(FIX_II) is cg.PetrovType.II
    assert cg.classify(FIX_III) is cg.PetrovType.III


def test_classify_scale_invariance():
    rng = np.random.default_rng(1)
    for W in (FIX_D, FIX_I, FIX_N, FIX_II, FIX_III):
        expected = cg.classify(W)
        for _ in range(5):
            c = complex(rng.normal(), rng.normal())
            if abs(c) < 1e-3:
                continue
            assert cg.classify(c * W) is expected


def test_classify_orthogonal_conjugation_invariance():
    rng = np.random.default_rng(2)
    for W in (FIX_D, FIX_I, FIX_N, FIX_II, FIX_III, np.zeros((3, 3), dtype=complex)):
        expected = cg.classify(W)
        for _ in range(5):
            Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
            assert cg.classify(Q.T @ W @ Q) is expected


def test_classify_ricci_flat_samples_never_error():
    for seed in range(30):
        tag = cg.classify(cg.omega(cg.random_riemann(seed, ricci_flat=True)))
        assert isinstance(tag, cg.PetrovType)


def test_classification_report():
    flat = cg.random_riemann(3, ricci_flat=True)
    rep = cg.classification_report(flat)
    assert rep["petrov_type"] in {t.value for t in cg.PetrovType}
    assert len(rep["eigenvalues"]) == 3
    assert sum(m["algebraic"] for m in rep["multiplicities"]) == 3
    for key in ("trace_psi", "sigma_asymmetry", "psi_plus_lambda", "trace_omega"):
        assert rep["residuals"][key] <= 1e-10


def test_generic_tensor_violates_flat_relations():
    # negative control: a generic enforced tensor breaks the contraction-free
    # relations, and its combination matrix is not even symmetric, so the
    # eigenproblem refuses it
    generic = cg.random_riemann(3)
    violations = (
        abs(np.trace(cg.psi(generic))),
        float(np.abs(cg.sigma(generic) - cg.sigma(generic).T).max()),
        float(np.abs(cg.psi(generic) + cg.lambda_mat(generic)).max()),
    )
    assert max(violations) > 1e-6
    with pytest.raises(cg.NotSymmetric):
        cg.classification_report(generic)
