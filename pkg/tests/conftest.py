import numpy as np
import pytest

from vecgate import Embedding, kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Run every dispatched kernel once before any test.

    When the accelerated path is active this triggers (or loads from disk
    cache) the JIT compilation, so tests that assert wall-clock budgets
    measure the algorithms rather than the compiler.
    """
    rng = np.random.default_rng(0)
    X = np.ascontiguousarray(rng.normal(size=(8, 4)))
    kernels.correlation_sum(X, np.zeros(4))
    U, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    kernels.apply_gate(X, np.ascontiguousarray(U), np.full(4, 0.5))
    kernels.assign_nearest(X, np.ascontiguousarray(X[:2]))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def make_embedding(rng, vocab_size, dim, prefix="w", dtype=np.float64):
    vectors = rng.normal(size=(vocab_size, dim)).astype(dtype)
    return Embedding(tuple(f"{prefix}{i}" for i in range(vocab_size)), vectors)


@pytest.fixture
def small_embedding(rng):
    return make_embedding(rng, 50, 8)
