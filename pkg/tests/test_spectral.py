import numpy as np
import pytest

from brute import brute_conceptor, brute_correlation, brute_loss, random_spd
from conftest import make_embedding
from vecgate import (
    ConvergenceFailure,
    CorrelationMatrix,
    DimensionMismatch,
    Embedding,
    EmptySubset,
    InvalidAperture,
    SpectralGate,
    conceptor,
    conceptor_loss,
    correlation_matrix,
    negate,
    sym_eigen,
)


class TestEmbedding:
    def test_basic_properties(self):
        emb = Embedding(("a", "b"), np.eye(2))
        assert len(emb) == 2
        assert emb.dim == 2
        assert emb.lookup("a") == 0
        assert emb.lookup("missing") is None

    def test_duplicate_vocab_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            Embedding(("a", "a"), np.eye(2))

    def test_row_count_mismatch_rejected(self):
        with pytest.raises(ValueError, match="tokens but"):
            Embedding(("a",), np.eye(2))

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            Embedding(("a", "b"), np.array([[1.0, np.nan], [0.0, 1.0]]))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Embedding((), np.empty((0, 3)))
        with pytest.raises(ValueError):
            Embedding(("a",), np.empty((1, 0)))

    def test_not_2d_rejected(self):
        with pytest.raises(ValueError, match="2-D"):
            Embedding(("a",), np.ones(3))

    def test_lowercase_fallback(self):
        emb = Embedding(("Cat", "dog", "DOG"), np.eye(3))
        assert emb.lookup("cat") is None
        assert emb.lookup("cat", lowercase_fallback=True) == 0
        # first occurrence wins among case-colliding tokens
        assert emb.lookup("Dog", lowercase_fallback=True) == 1
        assert emb.lookup("dog", lowercase_fallback=True) == 1

    def test_meta_excluded_from_equality(self):
        a = Embedding(("a",), np.ones((1, 2)), {"k": 1})
        b = Embedding(("a",), np.ones((1, 2)), {"k": 2})
        assert a.vocab == b.vocab

    def test_replace_vectors_merges_meta(self):
        emb = Embedding(("a",), np.ones((1, 2)), {"origin": "x"})
        out = emb.replace_vectors(np.zeros((1, 2)), centered=True)
        assert out.meta == {"origin": "x", "centered": True}
        assert out.vocab == emb.vocab


class TestCorrelationMatrix:
    def test_single_vector_uncentered(self):
        emb = Embedding(("a",), np.array([[1.0, 0.0]]))
        corr = correlation_matrix(emb, center=False)
        np.testing.assert_array_equal(corr.matrix, [[1.0, 0.0], [0.0, 0.0]])
        assert corr.sample_count == 1
        assert corr.centered is False

    def test_opposite_pair_centered(self):
        emb = Embedding(("a", "b"), np.array([[1.0, 0.0], [-1.0, 0.0]]))
        corr = correlation_matrix(emb, center=True)
        np.testing.assert_allclose(corr.matrix, [[1.0, 0.0], [0.0, 0.0]], atol=0)
        assert corr.centered is True

    def test_matches_brute_force(self, rng):
        emb = make_embedding(rng, 10, 4)
        for center in (False, True):
            got = correlation_matrix(emb, center=center).matrix
            want = brute_correlation(emb.vectors, center=center)
            np.testing.assert_allclose(got, want, atol=1e-12)

    def test_subset_selects_rows(self, rng):
        emb = make_embedding(rng, 12, 3)
        subset = ["w3", "w7", "w11", "not-in-vocab"]
        got = correlation_matrix(emb, subset=subset)
        manual = Embedding(("a", "b", "c"), emb.vectors[[3, 7, 11]])
        want = correlation_matrix(manual)
        np.testing.assert_allclose(got.matrix, want.matrix, atol=0)
        assert got.sample_count == 3

    def test_subset_duplicates_collapse(self, rng):
        emb = make_embedding(rng, 5, 3)
        corr = correlation_matrix(emb, subset=["w1", "w1", "w2"])
        assert corr.sample_count == 2

    def test_empty_subset_raises(self, rng):
        emb = make_embedding(rng, 5, 3)
        with pytest.raises(EmptySubset):
            correlation_matrix(emb, subset=["nope"])

    def test_block_size_invariance(self, rng):
        emb = make_embedding(rng, 100, 6)
        full = correlation_matrix(emb, block_size=4096).matrix
        for bs in (1, 3, 7, 100):
            blocked = correlation_matrix(emb, block_size=bs).matrix
            np.testing.assert_allclose(blocked, full, atol=1e-13)

    def test_same_block_size_bitwise_deterministic(self, rng):
        emb = make_embedding(rng, 200, 5)
        a = correlation_matrix(emb, block_size=17).matrix
        b = correlation_matrix(emb, block_size=17).matrix
        np.testing.assert_array_equal(a, b)

    def test_asymmetric_matrix_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            CorrelationMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]), 1, False)

    def test_float32_rows_accumulate_in_double(self, rng):
        emb32 = make_embedding(rng, 400, 4, dtype=np.float32)
        got = correlation_matrix(emb32).matrix
        assert got.dtype == np.float64
        want = brute_correlation(emb32.vectors.astype(np.float64))
        np.testing.assert_allclose(got, want, atol=1e-12)


class TestSymEigen:
    def test_diagonal_input(self):
        eig = sym_eigen(CorrelationMatrix(np.diag([3.0, 1.0]), 1, False))
        np.testing.assert_array_equal(eig.sigma, [3.0, 1.0])
        np.testing.assert_array_equal(eig.basis, np.eye(2))

    def test_hand_2x2(self):
        eig = sym_eigen(CorrelationMatrix(np.array([[2.0, 1.0], [1.0, 2.0]]), 1, False))
        np.testing.assert_allclose(eig.sigma, [3.0, 1.0], atol=1e-12)
        s = 1 / np.sqrt(2)
        np.testing.assert_allclose(eig.basis[:, 0], [s, s], atol=1e-12)
        np.testing.assert_allclose(np.abs(eig.basis[:, 1]), [s, s], atol=1e-12)

    def test_reconstruction_and_orthonormality(self, rng):
        R = random_spd(rng, 8)
        eig = sym_eigen(CorrelationMatrix(R, 8, False))
        np.testing.assert_allclose(eig.basis.T @ eig.basis, np.eye(8), atol=1e-10)
        recon = (eig.basis * eig.sigma) @ eig.basis.T
        assert np.linalg.norm(recon - R) <= 1e-8 * np.linalg.norm(R)

    def test_descending_order(self, rng):
        R = random_spd(rng, 6)
        eig = sym_eigen(CorrelationMatrix(R, 6, False))
        assert np.all(np.diff(eig.sigma) <= 0)

    def test_tiny_negative_eigenvalues_clamped(self):
        U = np.linalg.qr(np.random.default_rng(7).normal(size=(4, 4)))[0]
        R = (U * np.array([1.0, 0.5, 1e-14, -1e-14])) @ U.T
        R = (R + R.T) / 2
        eig = sym_eigen(CorrelationMatrix(R, 4, False))
        assert eig.sigma[2] == 0.0
        assert eig.sigma[3] == 0.0

    def test_sign_convention(self, rng):
        R = random_spd(rng, 5)
        eig = sym_eigen(CorrelationMatrix(R, 5, False))
        for j in range(5):
            col = eig.basis[:, j]
            assert col[np.argmax(np.abs(col))] >= 0

    def test_convergence_failure_on_nan(self):
        bad = CorrelationMatrix.__new__(CorrelationMatrix)
        object.__setattr__(bad, "matrix", np.full((3, 3), np.nan))
        object.__setattr__(bad, "sample_count", 1)
        object.__setattr__(bad, "centered", False)
        with pytest.raises(ConvergenceFailure):
            sym_eigen(bad)


class TestConceptor:
    def test_identity_input(self):
        c = conceptor(CorrelationMatrix(np.eye(2), 1, False), aperture=1.0)
        np.testing.assert_allclose(c.matrix, 0.5 * np.eye(2), atol=1e-15)
        assert c.aperture == 1.0

    def test_rank_deficient_diagonal(self):
        c = conceptor(CorrelationMatrix(np.diag([3.0, 0.0]), 1, False), aperture=1.0)
        np.testing.assert_allclose(c.matrix, np.diag([0.75, 0.0]), atol=1e-15)

    def test_matches_dense_inversion(self, rng):
        R = random_spd(rng, 6)
        got = conceptor(CorrelationMatrix(R, 6, False), aperture=2.0).matrix
        np.testing.assert_allclose(got, brute_conceptor(R, 2.0), atol=1e-9)

    def test_spectrum_in_unit_interval(self, rng):
        R = random_spd(rng, 8)
        c = conceptor(CorrelationMatrix(R, 8, False), aperture=3.0)
        vals = np.linalg.eigvalsh(c.matrix)
        assert vals.min() >= -1e-12
        assert vals.max() < 1.0

    def test_commutes_with_source(self, rng):
        R = random_spd(rng, 7)
        C = conceptor(CorrelationMatrix(R, 7, False), aperture=2.0).matrix
        assert np.linalg.norm(C @ R - R @ C) < 1e-8

    def test_aperture_monotonicity(self, rng):
        R = random_spd(rng, 6)
        corr = CorrelationMatrix(R, 6, False)
        prev = np.sort(np.linalg.eigvalsh(conceptor(corr, 0.5).matrix))
        for alpha in (1.0, 2.0, 8.0):
            cur = np.sort(np.linalg.eigvalsh(conceptor(corr, alpha).matrix))
            assert np.all(cur >= prev - 1e-12)
            prev = cur

    @pytest.mark.parametrize("alpha", [0.0, -1.0, np.inf, np.nan])
    def test_invalid_aperture(self, alpha):
        corr = CorrelationMatrix(np.eye(2), 1, False)
        with pytest.raises(InvalidAperture):
            conceptor(corr, alpha)

    def test_identity_limit_small_aperture(self, rng):
        R = random_spd(rng, 5)
        neg = negate(conceptor(CorrelationMatrix(R, 5, False), 1e-8))
        assert np.linalg.norm(neg.matrix - np.eye(5)) < 1e-6 * 5

    def test_zero_limit_large_aperture(self, rng):
        R = random_spd(rng, 5, jitter=0.1)
        neg = negate(conceptor(CorrelationMatrix(R, 5, False), 1e8))
        assert np.linalg.norm(neg.matrix) < 1e-6 * 5


class TestNegate:
    def test_half_identity_is_self_complementary(self):
        c = conceptor(CorrelationMatrix(np.eye(2), 1, False), 1.0)
        np.testing.assert_allclose(negate(c).matrix, 0.5 * np.eye(2), atol=1e-15)

    def test_hand_diagonal(self):
        c = conceptor(CorrelationMatrix(np.diag([3.0, 0.0]), 1, False), 1.0)
        np.testing.assert_allclose(negate(c).matrix, np.diag([0.25, 1.0]), atol=1e-15)

    def test_involution_exact_on_dyadic_spectrum(self):
        # diagonal entries 0.75 and 0 are dyadic, so 1 - (1 - c) == c exactly
        c = conceptor(CorrelationMatrix(np.diag([3.0, 0.0]), 1, False), 1.0)
        np.testing.assert_array_equal(negate(negate(c)).matrix, c.matrix)

    def test_involution_within_one_ulp_generally(self, rng):
        R = random_spd(rng, 6)
        c = conceptor(CorrelationMatrix(R, 6, False), 2.0)
        back = negate(negate(c)).matrix
        # 1 - (1 - x) rounds at most once for x in [0, 1]
        assert np.abs(back - c.matrix).max() <= np.finfo(np.float64).eps

    def test_preserves_aperture(self):
        c = conceptor(CorrelationMatrix(np.eye(3), 1, False), 2.5)
        assert negate(c).aperture == 2.5

    def test_spectrum_flips(self, rng):
        R = random_spd(rng, 6)
        c = conceptor(CorrelationMatrix(R, 6, False), 2.0)
        vals = np.linalg.eigvalsh(negate(c).matrix)
        assert vals.min() > 0.0
        assert vals.max() <= 1.0 + 1e-12


class TestConceptorLoss:
    def test_zero_matrix_gives_mean_square_norm(self, rng):
        X = rng.normal(size=(10, 4))
        want = float(np.mean([x @ x for x in X]))
        got = conceptor_loss(np.zeros((4, 4)), X, aperture=1.0)
        assert got == pytest.approx(want, abs=1e-12)

    def test_identity_matrix_costs_frobenius_only(self, rng):
        X = rng.normal(size=(6, 3))
        assert conceptor_loss(np.eye(3), X, aperture=1.0) == pytest.approx(3.0)

    def test_matches_brute_force(self, rng):
        X = rng.normal(size=(12, 5))
        C = brute_conceptor(brute_correlation(X), 2.0)
        got = conceptor_loss(C, X, aperture=2.0)
        assert got == pytest.approx(brute_loss(C, X, 2.0), rel=1e-12)

    def test_closed_form_beats_perturbations(self, rng):
        X = rng.normal(size=(20, 4))
        emb = Embedding(tuple(f"w{i}" for i in range(20)), X)
        corr = correlation_matrix(emb)
        C = conceptor(corr, 2.0)
        base = conceptor_loss(C, X, 2.0)
        for _ in range(25):
            delta = rng.normal(size=(4, 4))
            delta *= 1e-3 / np.linalg.norm(delta)
            assert base <= conceptor_loss(C.matrix + delta, X, 2.0)

    def test_dimension_mismatch(self, rng):
        with pytest.raises(DimensionMismatch):
            conceptor_loss(np.eye(3), rng.normal(size=(5, 4)), 1.0)
        with pytest.raises(DimensionMismatch):
            conceptor_loss(np.ones((2, 3)), rng.normal(size=(5, 3)), 1.0)


class TestSpectralGateType:
    def test_gain_range_validated(self):
        with pytest.raises(ValueError, match="gains"):
            SpectralGate(np.eye(2), np.array([0.5, 1.5]))
        with pytest.raises(ValueError, match="gains"):
            SpectralGate(np.eye(2), np.array([-0.5, 0.5]))

    def test_gain_length_validated(self):
        with pytest.raises(ValueError, match="one gain"):
            SpectralGate(np.eye(3), np.ones(2))

    def test_rounding_slop_clipped(self):
        gate = SpectralGate(np.eye(2), np.array([1.0 + 5e-13, -5e-13]))
        assert gate.gains[0] == 1.0
        assert gate.gains[1] == 0.0
