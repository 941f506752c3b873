"""Harmonic sequence of a lift, computed with bivariate Taylor jets.

A jet of a matrix-valued function X(z, zbar) at a base point is the array
X[p, q] = d^p/dz^p d^q/dzbar^q X / (p! q!), truncated at total degree N.
Products, adjoints, inverses and the derivative d/dz all act on jets, so
the projected derivatives phi_{i+1} = (I - P_i) d/dz phi_i can be carried
out exactly (to float rounding) at the base point.
"""
from math import factorial

import numpy as np

from .algebra import DIM, J

JET_DEGREE = 3
RANK_RTOL = 1e-8


class RankCollapse(ArithmeticError):
    """A bundle of the harmonic sequence dropped rank at a sample point."""


def _index(n):
    return [(p, q) for p in range(n + 1) for q in range(n + 1 - p)]


def base_jet(spec, z, n=JET_DEGREE):
    """Jet of the frame [s, j s] (8 x 2) at z."""
    a = spec.freqs
    e = np.exp(a * z - np.conj(a) * np.conj(z))
    X = np.zeros((n + 1, n + 1, DIM, 2), dtype=np.complex128)
    for p, q in _index(n):
        X[p, q, :, 0] = spec.amps @ (a ** p * (-np.conj(a)) ** q * e) / (factorial(p) * factorial(q))
    # j s = J conj(s); conjugation swaps the roles of z and zbar
    for p, q in _index(n):
        X[p, q, :, 1] = J @ np.conj(X[q, p, :, 0])
    return X


def jet_mul(A, B):
    n = A.shape[0] - 1
    out = np.zeros((n + 1, n + 1, A.shape[2], B.shape[3]), dtype=np.complex128)
    for p, q in _index(n):
        acc = out[p, q]
        for p1 in range(p + 1):
            for q1 in range(q + 1):
                acc += A[p1, q1] @ B[p - p1, q - q1]
    return out


def jet_adjoint(A):
    """Jet of the conjugate transpose."""
    return np.conj(np.transpose(A, (1, 0, 3, 2)))


def jet_dz(A):
    out = np.zeros_like(A)
    n = A.shape[0] - 1
    for p, q in _index(n - 1):
        out[p, q] = (p + 1) * A[p + 1, q]
    return out


def jet_inv(G):
    n = G.shape[0] - 1
    out = np.zeros_like(G)
    g0 = np.linalg.inv(G[0, 0])
    eye = np.eye(G.shape[2])
    for p, q in sorted(_index(n), key=sum):
        acc = eye.copy() if (p, q) == (0, 0) else np.zeros_like(eye, dtype=np.complex128)
        for p1 in range(p + 1):
            for q1 in range(q + 1):
                if (p1, q1) != (0, 0):
                    acc = acc - G[p1, q1] @ out[p - p1, q - q1]
        out[p, q] = g0 @ acc
    return out


def jet_projector(F):
    """Jet of the orthogonal projection onto the column span of F."""
    Fh = jet_adjoint(F)
    return jet_mul(jet_mul(F, jet_inv(jet_mul(Fh, F))), Fh)


def _identity_jet(n):
    X = np.zeros((n + 1, n + 1, DIM, DIM), dtype=np.complex128)
    X[0, 0] = np.eye(DIM)
    return X


def _orthonormal(M, what):
    u, sv, _ = np.linalg.svd(M)
    if sv[0] == 0 or sv[1] < RANK_RTOL * sv[0]:
        raise RankCollapse(f"{what} has rank < 2 (singular values {sv[:2]})")
    return u[:, :2]


def sequence_frames(spec, z, length=3):
    """Jets of frames F_0, ..., F_length with F_{i+1} = (I - P_i) d/dz F_i."""
    n = max(JET_DEGREE, length)
    F = base_jet(spec, z, n)
    eye = _identity_jet(n)
    frames = [F]
    projectors = []
    for i in range(length):
        _orthonormal(F[0, 0], f"phi_{i}")
        P = jet_projector(F)
        projectors.append(P)
        F = jet_mul(eye - P, jet_dz(F))
        frames.append(F)
    return frames, projectors


def gram_norms(spec, z, length=3):
    """||Q_0^H Q_i||_2 for i = 1..length with Q_i orthonormal bases of phi_i at z."""
    frames, _ = sequence_frames(spec, z, length)
    q0 = _orthonormal(frames[0][0, 0], "phi_0")
    out = []
    for i, F in enumerate(frames[1:], start=1):
        qi = _orthonormal(F[0, 0], f"phi_{i}")
        out.append(float(np.linalg.norm(q0.conj().T @ qi, 2)))
    return out


def afr_matrix(spec, z):
    """Matrix of the three-step map phi_0 -> phi_1 -> phi_2 -> phi_0 in an orthonormal basis."""
    frames, proj = sequence_frames(spec, z, 2)
    F0 = frames[0]
    P0, P1, P2 = proj[0], proj[1], jet_projector(frames[2])
    X = jet_mul(P1, jet_dz(F0))
    X = jet_mul(P2, jet_dz(X))
    X = jet_mul(P0, jet_dz(X))
    f0 = F0[0, 0]
    gram = f0.conj().T @ f0
    return np.linalg.solve(gram, f0.conj().T @ X[0, 0])


def det_afr_sequence(spec, z=0.0):
    """det of the three-step projected derivative map on phi_0, from the sequence itself."""
    return complex(np.linalg.det(afr_matrix(spec, z)))
