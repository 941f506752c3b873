"""Exponential lifts of totally real flat minimal immersions C -> HP^3.

A lift is s(z) = U V0(z) in C^8 where V0 has entries xi_j exp(a_j z - conj(a_j z))
for six frequencies a_0 = 1, a_1, a_2, a_{k+3} = -a_k, and U is an explicit
unitary frame whose form depends on the family (which of the three pairs
(0,3), (1,4), (2,5) carries the quaternionic twist a + b j).
"""
from dataclasses import dataclass, field, replace
from enum import Enum
import math

import numpy as np

from . import _kernels
from .algebra import DIM, J, QUAT_ONE, c8_to_h4, quat_inv, quat_mul, quat_norm

WEIGHT_SUM_TOL = 1e-12


class Family(str, Enum):
    I = "I"
    II = "II"
    III = "III"

    @property
    def twist_slot(self):
        """Index k of the frequency pair (k, k+3) that carries a + b j."""
        return {"I": 0, "II": 1, "III": 2}[self.value]

    @property
    def free_weight_names(self):
        return ("r2", "r5") if self is Family.I else ("r0", "r3")


class Mode(str, Enum):
    GENERAL = "general"
    ISOTROPY2 = "isotropy2"


class RegionError(ValueError):
    """Parameters outside the admissible region; ``violated`` names the failed conditions."""

    def __init__(self, message, violated=()):
        super().__init__(message)
        self.violated = list(violated)


def frequencies(theta1, theta2):
    a = np.exp(1j * np.array([0.0, theta1, theta2]))
    return np.concatenate([a, -a])


@dataclass(frozen=True)
class DerivedScalars:
    theta1: float
    theta2: float
    r: tuple

    @property
    def c1(self):
        return math.cos(self.theta1)

    @property
    def s1(self):
        return math.sin(self.theta1)

    @property
    def c2(self):
        return math.cos(self.theta2)

    @property
    def s2(self):
        return math.sin(self.theta2)

    @property
    def box(self):
        """s1 c2 - c1 s2 = sin(theta1 - theta2)."""
        return math.sin(self.theta1 - self.theta2)

    @property
    def xi(self):
        return np.sqrt(np.asarray(self.r, dtype=float))

    @property
    def freqs(self):
        return frequencies(self.theta1, self.theta2)


def _family_weights(family, theta1, theta2, free):
    family = Family(family)
    p, q = (float(x) for x in free)
    s1, s2 = math.sin(theta1), math.sin(theta2)
    box = math.sin(theta1 - theta2)
    if box == 0.0 or s1 == 0.0:
        raise RegionError("degenerate angles: theta1 = theta2 or sin(theta1) = 0",
                          ["theta_order"])
    if family is Family.I:
        r2, r5 = p, q
        r4 = s2 * r2 / s1
        r1 = s2 * r5 / s1
        r0 = 0.5 * (1 - r2 - r5 - (s2 + box) / s1 * r2 - (s2 - box) / s1 * r5)
        r3 = 0.5 * (1 - r2 - r5 - (s2 + box) / s1 * r5 - (s2 - box) / s1 * r2)
    elif family is Family.II:
        r0, r3 = p, q
        r2 = -s1 * r0 / box
        r5 = -s1 * r3 / box
        r1 = 0.5 * (1 - r0 - r3 + (s1 + s2) / box * r0 + (s1 - s2) / box * r3)
        r4 = 0.5 * (1 - r0 - r3 + (s1 + s2) / box * r3 + (s1 - s2) / box * r0)
    else:
        r0, r3 = p, q
        r4 = -s2 * r0 / box
        r1 = -s2 * r3 / box
        r2 = 0.5 * (1 - r0 - r3 - (s1 - s2) / box * r0 + (s1 + s2) / box * r3)
        r5 = 0.5 * (1 - r0 - r3 - (s1 - s2) / box * r3 + (s1 + s2) / box * r0)
    return (r0, r1, r2, r3, r4, r5)


def derive_scalars(family, theta1, theta2, free_weights):
    """Fill all six weights from the family's two free weights.

    Family I takes (r2, r5); families II and III take (r0, r3).  Raises
    RegionError if the angles are out of order or a derived weight is not
    positive.
    """
    if not 0 < theta1 < theta2 < math.pi:
        raise RegionError(f"need 0 < theta1 < theta2 < pi, got ({theta1}, {theta2})",
                          ["theta_order"])
    if any(float(x) <= 0 for x in free_weights):
        raise RegionError("free weights must be positive", ["weights_positive"])
    r = _family_weights(family, theta1, theta2, free_weights)
    bad = [f"r{j}" for j, x in enumerate(r) if not x > 0]
    if bad:
        raise RegionError(f"derived weights not positive: {', '.join(bad)}", ["weights_positive"])
    return DerivedScalars(float(theta1), float(theta2), tuple(float(x) for x in r))


def build_v0(scalars, z):
    """V0(z) in C^8: xi_j exp(a_j z - conj(a_j z)) for j < 6, zeros after."""
    amps = np.zeros((DIM, 6), dtype=np.complex128)
    amps[np.arange(6), np.arange(6)] = scalars.xi
    out = _kernels.lift_batch(scalars.freqs, amps, np.atleast_1d(z))
    return out[0] if np.ndim(z) == 0 else out


def solve_pairing(scalars, w03):
    """Solve the two linear pairing constraints for (w14, w25) given w03."""
    box = scalars.box
    if box == 0.0:
        raise RegionError("theta1 = theta2 makes the pairing system singular", ["theta_order"])
    xi = scalars.xi
    w14 = w03 * xi[0] * xi[3] / (xi[1] * xi[4]) * scalars.s2 / box
    w25 = w03 * xi[0] * xi[3] / (xi[2] * xi[5]) * scalars.s1 / (-box)
    return complex(w14), complex(w25)


def pairing_residuals(scalars, w03, w14, w25):
    """Residuals of sum w_{k,k+3} xi_k xi_{k+3} a_k and the same with conj(a_k)."""
    xi = scalars.xi
    a = scalars.freqs[:3]
    terms = np.array([w03 * xi[0] * xi[3], w14 * xi[1] * xi[4], w25 * xi[2] * xi[5]])
    return abs(np.sum(terms * a)), abs(np.sum(terms * np.conj(a)))


@dataclass(frozen=True)
class FamilyParams:
    family: Family
    mode: Mode
    scalars: DerivedScalars
    w: complex
    w03: complex
    w14: complex
    w25: complex
    b_mod: float
    free_weights: tuple
    theta: float = None
    r: float = None

    @property
    def theta1(self):
        return self.scalars.theta1

    @property
    def theta2(self):
        return self.scalars.theta2

    @property
    def twist_slot(self):
        return self.family.twist_slot

    @property
    def short_pairing(self):
        """The pairing coefficient with modulus < 1 (the twisted pair)."""
        return (self.w03, self.w14, self.w25)[self.twist_slot]

    @property
    def a(self):
        return self.w * self.b_mod

    @property
    def b(self):
        return self.b_mod


def _pairings(family, scalars):
    family = Family(family)
    xi = scalars.xi
    if family is Family.I:
        # |w14| = 1 fixes |w03|; the phase of w03 is a congruence gauge
        w03 = xi[1] * xi[4] * abs(scalars.box) / (xi[0] * xi[3] * scalars.s2)
    else:
        w03 = 1.0
    w14, w25 = solve_pairing(scalars, w03)
    return complex(w03), w14, w25


def make_params(family, theta1, theta2, free_weights, w, *, check=True):
    """General-mode parameters (five parameters: four real, one complex)."""
    family = Family(family)
    try:
        r = _family_weights(family, theta1, theta2, free_weights)
    except RegionError:
        if check:
            raise
        r = (float("nan"),) * 6
    scalars = DerivedScalars(float(theta1), float(theta2), tuple(float(x) for x in r))
    if all(x > 0 for x in r) and scalars.box != 0:
        w03, w14, w25 = _pairings(family, scalars)
    else:
        w03 = w14 = w25 = complex("nan")
    short = (w03, w14, w25)[family.twist_slot]
    rest = 1.0 - abs(short) ** 2
    w = complex(w)
    b_mod = math.sqrt(rest / (1.0 + abs(w) ** 2)) if rest > 0 else float("nan")
    params = FamilyParams(family, Mode.GENERAL, scalars, w, w03, w14, w25, b_mod,
                          tuple(float(x) for x in free_weights))
    if check:
        _raise_if_invalid(params)
    return params


def gamma3_bound(theta):
    """Upper bound 1/(4 sin^2 theta) on r in Gamma_3."""
    return 1.0 / (4.0 * math.sin(theta) ** 2)


def isotropy2_angles(family, theta):
    """(theta1, theta2) on the isotropy-2 hypersurface of each family.

    I: theta2 = pi - theta1 = pi - theta.  II: theta2 = 2 theta1 = 2 theta.
    III (stored with theta = pi - theta2): theta2 = pi - theta, theta1 = pi - 2 theta.
    """
    family = Family(family)
    if family is Family.I:
        return theta, math.pi - theta
    if family is Family.II:
        return theta, 2.0 * theta
    return math.pi - 2.0 * theta, math.pi - theta


def in_gamma3(theta, r):
    return math.pi / 3 < theta < math.pi / 2 and 0 < r and 4.0 * math.sin(theta) ** 2 * r < 1.0


def specialize_isotropy2(family, theta, r, w):
    """Isotropy-order-2 member of a family, parametrized by (theta, r, w) in Gamma_3."""
    family = Family(family)
    theta = float(theta)
    r = float(r)
    if not in_gamma3(theta, r):
        raise RegionError(
            f"(theta, r) = ({theta}, {r}) outside Gamma_3(C): need pi/3 < theta < pi/2 "
            f"and 0 < r < 1/(4 sin^2 theta)", ["Gamma3"])
    theta1, theta2 = isotropy2_angles(family, theta)
    bound = gamma3_bound(theta)
    params = make_params(family, theta1, theta2, (r, bound - r), w)
    return replace(params, mode=Mode.ISOTROPY2, theta=theta, r=r)


@dataclass(frozen=True)
class Validation:
    ok: bool
    violated: list = field(default_factory=list)


def validate_params(params):
    """Evaluate every admissibility inequality of the family; ok iff all hold."""
    fam = params.family
    sc = params.scalars
    t1, t2 = sc.theta1, sc.theta2
    violated = []
    if not 0 < t1 < t2 < math.pi:
        violated.append("theta_order")
        return Validation(False, violated)
    s1, s2, box = sc.s1, sc.s2, sc.box
    r0, r1, r2, r3, r4, r5 = sc.r
    if not all(0 < x < 1 for x in sc.r):
        violated.append("weights_in_(0,1)")
    if abs(sum(sc.r) - 1.0) > WEIGHT_SUM_TOL:
        violated.append("weights_sum")
    if fam is Family.I:
        u, v = 1 + (s2 + box) / s1, 1 + (s2 - box) / s1
        if not u * r2 + v * r5 < 1:
            violated.append("I.linear(2,5)")
        if not u * r5 + v * r2 < 1:
            violated.append("I.linear(5,2)")
        if not box ** 2 * r2 * r5 < s1 ** 2 * r0 * r3:
            violated.append("I.quadratic")
    elif fam is Family.II:
        u, v = 1 - (s1 + s2) / box, 1 - (s1 - s2) / box
        if not u * r0 + v * r3 < 1:
            violated.append("II.linear(0,3)")
        if not u * r3 + v * r0 < 1:
            violated.append("II.linear(3,0)")
        if not s2 ** 2 * r0 * r3 < box ** 2 * r1 * r4:
            violated.append("II.quadratic")
    else:
        u, v = 1 + (s1 - s2) / box, 1 - (s1 + s2) / box
        if not u * r0 + v * r3 < 1:
            violated.append("III.linear(0,3)")
        if not u * r3 + v * r0 < 1:
            violated.append("III.linear(3,0)")
        if not s1 ** 2 * r0 * r3 < box ** 2 * r2 * r5:
            violated.append("III.quadratic")
    ab2 = 1.0 - abs(params.short_pairing) ** 2
    if not 0 < ab2 < 1:
        violated.append("guideline")
    if not params.b_mod > 0:
        violated.append("b_positive")
    if params.mode is Mode.ISOTROPY2 and not in_gamma3(params.theta, params.r):
        violated.append("Gamma3")
    return Validation(not violated, violated)


def _raise_if_invalid(params):
    v = validate_params(params)
    if not v.ok:
        raise RegionError(
            f"family {params.family.value} parameters violate: {', '.join(v.violated)}",
            v.violated)


# ---------------------------------------------------------------------------
# lifts
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ImmersionSpec:
    """s(z) = amps @ exp(freqs z - conj(freqs z)); amps is (8, F)."""

    freqs: np.ndarray
    amps: np.ndarray
    label: str = ""

    @property
    def m(self):
        return len(self.freqs) - 1

    def evaluate(self, z, dz=0, dzbar=0):
        """d^dz/dz d^dzbar/dzbar s at z (scalar) or at each of an array of z."""
        out = _kernels.lift_batch(self.freqs, self.amps, np.atleast_1d(z), dz, dzbar)
        return out[0] if np.ndim(z) == 0 else out

    def __call__(self, z):
        return self.evaluate(z)

    @property
    def weights(self):
        """Diagonal of amps^H amps (the r_j when the frame is unitary)."""
        return np.real(np.sum(np.abs(self.amps) ** 2, axis=0))

    @property
    def gram(self):
        return self.amps.conj().T @ self.amps

    @property
    def pairing_matrix(self):
        """amps^T J amps = diag(xi) W diag(xi) restricted to the frequencies."""
        return self.amps.T @ J @ self.amps

    @property
    def slot_freq(self):
        """Frequency index per C^8 slot (-1 for empty slots), if each slot has one."""
        nz = np.abs(self.amps) > 0
        if np.any(nz.sum(axis=1) > 1):
            raise ValueError("slots mix several frequencies")
        return np.where(nz.any(axis=1), nz.argmax(axis=1), -1)

    def transformed(self, S):
        S = np.asarray(S, dtype=np.complex128)
        return ImmersionSpec(self.freqs, S @ self.amps, self.label + "*S")

    def with_amps(self, amps, label=None):
        return ImmersionSpec(self.freqs, np.asarray(amps, dtype=np.complex128),
                             self.label if label is None else label)

    def with_freqs(self, freqs, label=None):
        return ImmersionSpec(np.asarray(freqs, dtype=np.complex128), self.amps,
                             self.label if label is None else label)


def unitary_frame(params):
    """The explicit U in U(8) with s = U V0 for the family.

    Columns 0..2 are e_0, e_2, e_4; column k+3 is -w_{k,k+3} e_{2k+1} (plus
    a e_6 + b e_7 for the twisted pair k).  Columns 6, 7 complete U on rows
    {2k+1, 6, 7} so that U^T J U has the case pattern w_{k6} = a, w_{k7} = b,
    w_{k+3,6} = -conj(b), w_{k+3,7} = conj(a).
    """
    k = params.twist_slot
    wk = params.short_pairing
    a, b = params.a, params.b
    U = np.zeros((DIM, DIM), dtype=np.complex128)
    U[0, 0] = U[2, 1] = U[4, 2] = 1.0
    U[1, 3] = -params.w03
    U[3, 4] = -params.w14
    U[5, 5] = -params.w25
    U[6, k + 3] = a
    U[7, k + 3] = b
    U[2 * k + 1, 6] = -a
    U[2 * k + 1, 7] = -b
    v = np.array([a, b])
    u = np.array([-np.conj(b), np.conj(a)])
    rho2 = abs(a) ** 2 + abs(b) ** 2
    U[6:8, 6:8] = -(np.conj(wk) * np.outer(v, v) + np.outer(u, u)) / rho2
    return U


def immersion_spec(params):
    U = unitary_frame(params)
    xi = params.scalars.xi
    amps = U[:, :6] * xi[None, :]
    label = f"{params.family.value}/{params.mode.value}"
    return ImmersionSpec(params.scalars.freqs, amps, label)


def build_family_lift(params, z):
    """s(z) in C^8 for valid family parameters."""
    _raise_if_invalid(params)
    return immersion_spec(params).evaluate(z)


def family_quaternionic(params, z):
    """The displayed quaternionic 4-vector of the family at z (independent of U).

    Entries 0..2 are (xi_k - w_{k,k+3} xi_{k+3} j) e^{a_k z - conj(a_k z)};
    the twisted entry carries xi_{k+3} e^{conj(a_k z) - a_k z} b (w + j).
    """
    sc = params.scalars
    xi = sc.xi
    a = sc.freqs
    ws = (params.w03, params.w14, params.w25)
    k = params.twist_slot
    out = np.zeros((4, 2), dtype=np.complex128)
    for i in range(3):
        e = np.exp(a[i] * z - np.conj(a[i] * z))
        q = np.array([xi[i], -ws[i] * xi[i + 3]])
        # right multiplication by the complex scalar e: (x + y j) e = x e + y conj(e) j
        out[i] = [q[0] * e, q[1] * np.conj(e)]
    e = np.exp(np.conj(a[k] * z) - a[k] * z)
    out[3] = xi[k + 3] * e * params.b_mod * np.array([params.w, 1.0])
    return out


# ---------------------------------------------------------------------------
# CP^3 references
# ---------------------------------------------------------------------------

REFERENCE_KINDS = ("clifford", "eighth")


def reference_spec(kind):
    """Equal-weight CP^3 lift in the even (0-based) slots.

    clifford: a_k = exp(i 2k pi/4); eighth: a_k = exp(i k pi/4), k = 0..3.
    """
    if kind == "clifford":
        a = np.exp(1j * 2 * np.pi * np.arange(4) / 4)
    elif kind == "eighth":
        a = np.exp(1j * np.pi * np.arange(4) / 4)
    else:
        raise ValueError(f"unknown reference kind {kind!r}; expected one of {REFERENCE_KINDS}")
    amps = np.zeros((DIM, 4), dtype=np.complex128)
    amps[[0, 2, 4, 6], [0, 1, 2, 3]] = 0.5
    return ImmersionSpec(a, amps, f"cp3/{kind}")


def reference_cp3(kind, z):
    return reference_spec(kind).evaluate(z)


# ---------------------------------------------------------------------------
# twistor projection
# ---------------------------------------------------------------------------

def twistor_project(v):
    """Quaternionic homogeneous coordinates of t([v]), normalized.

    The representative is q_p^{-1} q (left multiplication) with p the first
    entry of (near-)maximal norm, so v, lambda v and j v all give the same
    output.
    """
    q = c8_to_h4(v)
    n = quat_norm(q)
    if not np.any(n > 0):
        raise ValueError("zero vector has no twistor image")
    pivot = int(np.argmax(n >= (1.0 - 1e-9) * n.max()))
    return quat_mul(quat_inv(q[pivot])[None, :], q)


def same_quaternionic_line(v, w, tol=1e-10):
    """True when v and w span the same point of HP^3."""
    qv = c8_to_h4(v)
    qw = c8_to_h4(w)
    nv = quat_norm(qv)
    if not np.any(nv > 0) or not np.any(quat_norm(qw) > 0):
        raise ValueError("zero vector has no twistor image")
    pivot = int(np.argmax(nv))
    if quat_norm(qw[pivot]) <= tol:
        return False
    a = quat_mul(quat_inv(qv[pivot])[None, :], qv)
    b = quat_mul(quat_inv(qw[pivot])[None, :], qw)
    return bool(np.max(np.abs(a - b)) <= tol)


__all__ = [
    "Family", "Mode", "RegionError", "DerivedScalars", "FamilyParams", "ImmersionSpec",
    "Validation", "derive_scalars", "build_v0", "solve_pairing", "pairing_residuals",
    "make_params", "specialize_isotropy2", "validate_params", "unitary_frame",
    "immersion_spec", "build_family_lift", "family_quaternionic", "reference_spec",
    "reference_cp3", "twistor_project", "same_quaternionic_line", "isotropy2_angles",
    "gamma3_bound", "in_gamma3", "frequencies", "QUAT_ONE",
]
