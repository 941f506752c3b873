"""Complex and quaternionic linear algebra on C^8 = H^4.

Quaternions are stored as complex pairs ``(alpha, beta)`` meaning
``alpha + beta*j``.  A quaternionic 4-vector is therefore a ``(4, 2)``
complex array.  The complex structure of C^8 is left multiplication by
complex scalars, and ``j`` acts on the left as well, so the quaternionic
line through ``v`` is ``span_C{v, j v}``.
"""
from dataclasses import dataclass

import numpy as np

DIM = 8
DEFAULT_TOL = 1e-10

J = np.zeros((DIM, DIM))
for _i in range(DIM // 2):
    J[2 * _i, 2 * _i + 1] = -1.0
    J[2 * _i + 1, 2 * _i] = 1.0
J.setflags(write=False)


def _as_c8(v):
    v = np.asarray(v, dtype=np.complex128)
    if v.shape[-1] != DIM:
        raise ValueError(f"expected a vector of length {DIM}, got shape {v.shape}")
    return v


def j_map(v):
    """Left multiplication by the quaternion j, as a conjugate-linear map on C^8.

    Works on a single vector or on a stack of row vectors.
    """
    v = _as_c8(v)
    out = np.empty_like(v)
    out[..., 0::2] = -np.conj(v[..., 1::2])
    out[..., 1::2] = np.conj(v[..., 0::2])
    return out


def herm_inner(z, w):
    """Standard Hermitian product sum z_i conj(w_i)."""
    z = _as_c8(z)
    w = _as_c8(w)
    return complex(np.sum(z * np.conj(w)))


def pairing(x, y):
    """Bilinear form x^T J y.  Equals <x, j y>."""
    return complex(_as_c8(x) @ J @ _as_c8(y))


# ---------------------------------------------------------------------------
# quaternions as complex pairs
# ---------------------------------------------------------------------------

def quat_mul(p, q):
    """Product of quaternions given as (..., 2) complex arrays."""
    p = np.asarray(p, dtype=np.complex128)
    q = np.asarray(q, dtype=np.complex128)
    a1, b1 = p[..., 0], p[..., 1]
    a2, b2 = q[..., 0], q[..., 1]
    return np.stack([a1 * a2 - b1 * np.conj(b2), a1 * b2 + b1 * np.conj(a2)], axis=-1)


def quat_conj(q):
    q = np.asarray(q, dtype=np.complex128)
    return np.stack([np.conj(q[..., 0]), -q[..., 1]], axis=-1)


def quat_norm(q):
    q = np.asarray(q, dtype=np.complex128)
    return np.sqrt(np.abs(q[..., 0]) ** 2 + np.abs(q[..., 1]) ** 2)


def quat_inv(q):
    n2 = quat_norm(q) ** 2
    if np.any(n2 == 0):
        raise ZeroDivisionError("zero quaternion has no inverse")
    return quat_conj(q) / n2[..., None]


QUAT_ONE = np.array([1.0, 0.0], dtype=np.complex128)
QUAT_J = np.array([0.0, 1.0], dtype=np.complex128)


def c8_to_h4(v):
    """Entry i of the result is v[2i] + v[2i+1] j."""
    v = _as_c8(v)
    return v.reshape(v.shape[:-1] + (4, 2)).copy()


def h4_to_c8(q):
    q = np.asarray(q, dtype=np.complex128)
    if q.shape[-2:] != (4, 2):
        raise ValueError(f"expected a (4, 2) quaternionic vector, got shape {q.shape}")
    return q.reshape(q.shape[:-2] + (DIM,)).copy()


# ---------------------------------------------------------------------------
# matrix classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixClass:
    unitary: bool
    antisymmetric: bool
    symplectic: bool
    unitary_residual: float
    antisymmetric_residual: float
    symplectic_residual: float


def matrix_class(M, tol=DEFAULT_TOL):
    """Classify an 8x8 complex matrix against U(8), antisymmetry and Sp(4).

    Residuals are max-norms; ``symplectic`` means unitary and M^T J M = J.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.asarray(M, dtype=np.complex128)
    if M.shape != (DIM, DIM):
        raise ValueError(f"expected an {DIM}x{DIM} matrix, got {M.shape}")
    ru = float(np.max(np.abs(M @ M.conj().T - np.eye(DIM))))
    ra = float(np.max(np.abs(M.T + M)))
    rs = float(np.max(np.abs(M.T @ J @ M - J)))
    unitary = ru <= tol
    return MatrixClass(
        unitary=unitary,
        antisymmetric=ra <= tol,
        symplectic=unitary and rs <= tol,
        unitary_residual=ru,
        antisymmetric_residual=ra,
        symplectic_residual=rs,
    )


def random_symplectic(seed):
    """Random element of Sp(4) inside U(8), deterministic per seed.

    Four random vectors are orthonormalized quaternionically: each new u is
    made orthogonal to every earlier u and j u, twice for stability.  The
    columns of the result are u_1, j u_1, ..., u_4, j u_4, which maps the
    standard pairs (e_{2i}, e_{2i+1} = j e_{2i}) to quaternionic pairs.
    """
    rng = np.random.default_rng(seed)
    cols = []
    while len(cols) < DIM:
        v = rng.standard_normal(DIM) + 1j * rng.standard_normal(DIM)
        for _ in range(2):
            for c in cols:
                v = v - np.vdot(c, v) * c
        nrm = np.linalg.norm(v)
        if nrm < 1e-8:
            continue
        u = v / nrm
        cols.extend([u, j_map(u)])
    return np.column_stack(cols)
