"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba versions are used when numba imports cleanly and the environment
variable ``HP3FLAT_DISABLE_NUMBA`` is unset (or ``0``).  Both versions are
always importable under explicit names (``*_numpy`` / ``*_numba``) so that
tests and the benchmark can compare them directly.
"""
import os

import numpy as np

_FLAG = os.environ.get("HP3FLAT_DISABLE_NUMBA", "").strip().lower()
DISABLE_NUMBA = _FLAG not in ("", "0", "false", "no")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not DISABLE_NUMBA


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def lift_batch_numpy(freqs, amps, zs, p, q):
    """Evaluate d^p/dz^p d^q/dzbar^q of s(z) = amps @ exp(a z - conj(a) conj(z)).

    freqs: (F,) complex, amps: (8, F) complex, zs: (n,) complex.
    Returns an (n, 8) complex array.
    """
    zs = np.asarray(zs, dtype=np.complex128)
    phase = np.exp(np.outer(zs, freqs) - np.outer(np.conj(zs), np.conj(freqs)))
    factor = freqs ** p * (-np.conj(freqs)) ** q
    return (phase * factor) @ amps.T


def pairing_batch_numpy(x, y):
    """Row-wise bilinear form x^T J y with J = diag of [[0, -1], [1, 0]] blocks."""
    return np.sum(x[:, 1::2] * y[:, 0::2] - x[:, 0::2] * y[:, 1::2], axis=1)


def hermitian_batch_numpy(x, y):
    """Row-wise <x, y> = sum x_i conj(y_i)."""
    return np.sum(x * np.conj(y), axis=1)


def gamma3_mask_numpy(theta, r):
    s = np.sin(theta)
    return (theta > np.pi / 3) & (theta < np.pi / 2) & (r > 0.0) & (4.0 * s * s * r < 1.0)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def lift_batch_numba(freqs, amps, zs, p, q):
        n = zs.shape[0]
        nf = freqs.shape[0]
        dim = amps.shape[0]
        out = np.zeros((n, dim), dtype=np.complex128)
        factor = np.empty(nf, dtype=np.complex128)
        for f in range(nf):
            factor[f] = freqs[f] ** p * (-np.conj(freqs[f])) ** q
        for i in range(n):
            z = zs[i]
            for f in range(nf):
                a = freqs[f]
                e = np.exp(a * z - np.conj(a) * np.conj(z)) * factor[f]
                for k in range(dim):
                    out[i, k] += amps[k, f] * e
        return out

    @njit(cache=True)
    def pairing_batch_numba(x, y):
        n = x.shape[0]
        out = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            acc = 0j
            for b in range(x.shape[1] // 2):
                acc += x[i, 2 * b + 1] * y[i, 2 * b] - x[i, 2 * b] * y[i, 2 * b + 1]
            out[i] = acc
        return out

    @njit(cache=True)
    def hermitian_batch_numba(x, y):
        n = x.shape[0]
        out = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            acc = 0j
            for k in range(x.shape[1]):
                acc += x[i, k] * np.conj(y[i, k])
            out[i] = acc
        return out

    @njit(cache=True)
    def gamma3_mask_numba(theta, r):
        n = theta.shape[0]
        out = np.zeros(n, dtype=np.bool_)
        lo = np.pi / 3
        hi = np.pi / 2
        for i in range(n):
            t = theta[i]
            if t > lo and t < hi and r[i] > 0.0:
                s = np.sin(t)
                out[i] = 4.0 * s * s * r[i] < 1.0
        return out

else:  # pragma: no cover
    lift_batch_numba = lift_batch_numpy
    pairing_batch_numba = pairing_batch_numpy
    hermitian_batch_numba = hermitian_batch_numpy
    gamma3_mask_numba = gamma3_mask_numpy


if USE_NUMBA:
    _lift = lift_batch_numba
    _pairing = pairing_batch_numba
    _hermitian = hermitian_batch_numba
    _gamma3 = gamma3_mask_numba
else:
    _lift = lift_batch_numpy
    _pairing = pairing_batch_numpy
    _hermitian = hermitian_batch_numpy
    _gamma3 = gamma3_mask_numpy


def lift_batch(freqs, amps, zs, p=0, q=0):
    return _lift(
        np.ascontiguousarray(freqs, dtype=np.complex128),
        np.ascontiguousarray(amps, dtype=np.complex128),
        np.ascontiguousarray(np.atleast_1d(zs), dtype=np.complex128),
        int(p),
        int(q),
    )


def pairing_batch(x, y):
    return _pairing(np.ascontiguousarray(x, dtype=np.complex128),
                    np.ascontiguousarray(y, dtype=np.complex128))


def hermitian_batch(x, y):
    return _hermitian(np.ascontiguousarray(x, dtype=np.complex128),
                      np.ascontiguousarray(y, dtype=np.complex128))


def gamma3_mask(theta, r):
    return _gamma3(np.ascontiguousarray(theta, dtype=np.float64),
                   np.ascontiguousarray(r, dtype=np.float64))


def backend():
    """Name of the active kernel backend."""
    return "numba" if USE_NUMBA else "numpy"
