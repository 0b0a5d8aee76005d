"""Numba availability probe and the switch for the pure-numpy fallback path.

Set ``VECGATE_NO_NUMBA=1`` in the environment to force the numpy path even
when numba is installed. The flag is read at call time so tests can flip it.
"""
import os

DISABLE_ENV = "VECGATE_NO_NUMBA"

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def numba_enabled() -> bool:
    """True when the jitted kernels should be dispatched to."""
    flag = os.environ.get(DISABLE_ENV, "").strip().lower()
    if flag not in ("", "0", "false"):
        return False
    return HAS_NUMBA


def set_threads(n: int) -> None:
    """Pin the thread count used by the jitted kernels. No-op without numba."""
    if HAS_NUMBA:
        import numba

        numba.set_num_threads(n)
