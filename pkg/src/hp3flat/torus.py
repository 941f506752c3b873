"""Exact torus descent decisions and period lattices.

A lift with frequencies a_0 = 1, a_1 = e^{i theta1}, a_2 = e^{i theta2}
(and a_{k+3} = -a_k) is invariant under z -> z + pi (x + i y) exactly when

    s_j x + (c_j - 1) y  is an integer,   j = 1, 2,

plus the same for the twisted frequency a_{k+3} (row (-s_k, -c_k - 1)) when
w != 0.  Periods are reported in units of pi.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
import numbers

from .exact import ExactAngle, Surd, is_rational_square
from .immersions import Family


class ExactnessError(TypeError):
    """A float was supplied where an exact rational angle is required."""


class CriterionError(ValueError):
    """Lattice requested for a lift that does not descend to a torus."""


class Reason(str, Enum):
    W_ZERO = "w_zero"
    RATIONAL = "rational_criterion"
    IRRATIONAL = "irrational_obstruction"


@dataclass(frozen=True)
class LatticeBasis:
    """Periods pi * (x, y) of the lift.

    ``vectors`` holds the two basis vectors as (x, y) Surd pairs.
    ``hnf`` is the integer lower-triangular basis of the lattice in the
    coordinates of the w = 0 lattice (columns are basis vectors), and
    ``index`` its determinant, i.e. the index in the w = 0 lattice.
    """

    vectors: tuple
    hnf: tuple
    index: int
    rows: tuple

    def congruence_values(self):
        """Exact values of every congruence row on every basis vector."""
        return [[r[0] * v[0] + r[1] * v[1] for v in self.vectors] for r in self.rows]

    def is_exact(self):
        return all(val.is_rational() and val.rational_value().denominator == 1
                   for row in self.congruence_values() for val in row)

    def as_fractions(self):
        """Vectors as Fractions when all entries are rational, else None."""
        if all(e.is_rational() for v in self.vectors for e in v):
            return tuple(tuple(e.rational_value() for e in v) for v in self.vectors)
        return None


@dataclass(frozen=True)
class TorusCertificate:
    descends: bool
    reason: Reason
    lattice_basis: LatticeBasis = None


def _is_zero(w):
    return complex(w) == 0


def _require_exact(*angles):
    for a in angles:
        if not isinstance(a, ExactAngle):
            raise ExactnessError(
                f"an exact angle (rational cosine) is required, got {type(a).__name__}; "
                "rationality cannot be decided from floating-point data")


def _check_order(theta1, theta2):
    if isinstance(theta1, ExactAngle) and isinstance(theta2, ExactAngle):
        if not theta1.cos > theta2.cos:
            raise ValueError("need 0 < theta1 < theta2 < pi (cos theta1 > cos theta2)")
    elif isinstance(theta1, numbers.Real) and isinstance(theta2, numbers.Real):
        if not 0 < theta1 < theta2 < 3.141592653589793:
            raise ValueError("need 0 < theta1 < theta2 < pi")
    else:
        raise TypeError("angles must be two ExactAngle or two floats")


def _slot(k):
    k = int(k)
    if k not in (0, 1, 2):
        raise ValueError(f"twist slot must be 0, 1 or 2, got {k}")
    return k


def torus_criterion(theta1, theta2, w, k):
    """Decide descent to a torus exactly.

    w = 0 always descends.  Otherwise the angles must be ExactAngle and the
    lift descends iff sin^2 theta1 / sin^2 theta2 is a rational square
    (the cosines are rational by construction).
    """
    _slot(k)
    _check_order(theta1, theta2)
    if _is_zero(w):
        return TorusCertificate(True, Reason.W_ZERO)
    _require_exact(theta1, theta2)
    ratio = theta1.sin_sq / theta2.sin_sq
    if is_rational_square(ratio) is not None:
        return TorusCertificate(True, Reason.RATIONAL)
    return TorusCertificate(False, Reason.IRRATIONAL)


def _rows(theta1, theta2):
    s1, s2 = theta1.sin, theta2.sin
    return ((s1, Surd.rational(theta1.cos - 1)), (s2, Surd.rational(theta2.cos - 1)))


def _twist_row(theta1, theta2, k):
    if k == 0:
        return (Surd(), Surd.rational(-2))
    ang = theta1 if k == 1 else theta2
    return (-ang.sin, Surd.rational(-ang.cos - 1))


def _inverse(rows):
    (a, b), (c, d) = rows
    det = a * d - b * c
    if det.is_zero():
        raise ZeroDivisionError("congruence matrix is singular (theta1 = theta2)")
    inv_det = det.inverse()
    return ((d * inv_det, -b * inv_det), (-c * inv_det, a * inv_det))


def twist_coefficients(theta1, theta2, k):
    """(-s_k, -c_k - 1) M^{-1} as exact Surds."""
    _require_exact(theta1, theta2)
    k = _slot(k)
    inv = _inverse(_rows(theta1, theta2))
    v = _twist_row(theta1, theta2, k)
    return (v[0] * inv[0][0] + v[1] * inv[1][0], v[0] * inv[0][1] + v[1] * inv[1][1])


def criterion_matrix_form(theta1, theta2, k):
    """True iff both entries of (-s_k, -c_k - 1) M^{-1} are rational."""
    u = twist_coefficients(theta1, theta2, k)
    return u[0].is_rational() and u[1].is_rational()


def hnf_sublattice(p1, p2, q):
    """Lower-triangular Hermite basis of {n in Z^2 : p1 n1 + p2 n2 = 0 mod q}.

    Returns ((h11, 0), (h21, h22)) as rows; basis vectors are the columns
    (h11, h21) and (0, h22), with h11, h22 > 0 and 0 <= h21 < h22.
    """
    if q <= 0:
        raise ValueError("modulus must be positive")
    g = gcd(p2, q)
    h22 = q // g
    h11 = g // gcd(p1, g)
    m = q // g
    if m == 1:
        h21 = 0
    else:
        h21 = (-(p1 * h11 // g) * pow((p2 // g) % m, -1, m)) % m
    return ((h11, 0), (h21, h22))


def lattice_basis(theta1, theta2, w, k):
    """Exact period lattice (units of pi) of a lift that descends."""
    _require_exact(theta1, theta2)
    k = _slot(k)
    cert = torus_criterion(theta1, theta2, w, k)
    if not cert.descends:
        raise CriterionError("the lift does not descend to a torus; no period lattice")
    rows = _rows(theta1, theta2)
    inv = _inverse(rows)
    if _is_zero(w):
        hnf = ((1, 0), (0, 1))
        all_rows = rows
    else:
        u = twist_coefficients(theta1, theta2, k)
        if not (u[0].is_rational() and u[1].is_rational()):
            raise CriterionError("twisted congruence coefficients are irrational")
        f1, f2 = u[0].rational_value(), u[1].rational_value()
        q = f1.denominator * f2.denominator // gcd(f1.denominator, f2.denominator)
        hnf = hnf_sublattice(int(f1 * q), int(f2 * q), q)
        all_rows = rows + (_twist_row(theta1, theta2, k),)
    cols = [(hnf[0][0], hnf[1][0]), (hnf[0][1], hnf[1][1])]
    vectors = tuple(
        (inv[0][0] * n1 + inv[0][1] * n2, inv[1][0] * n1 + inv[1][1] * n2) for n1, n2 in cols
    )
    index = hnf[0][0] * hnf[1][1]
    basis = LatticeBasis(vectors, hnf, index, all_rows)
    if not basis.is_exact():  # pragma: no cover - guaranteed by construction
        raise ArithmeticError("lattice basis failed its own congruences")
    return basis


def certify(theta1, theta2, w, k):
    """Criterion plus, on descent with exact angles, the lattice basis."""
    cert = torus_criterion(theta1, theta2, w, k)
    if cert.descends and isinstance(theta1, ExactAngle) and isinstance(theta2, ExactAngle):
        return TorusCertificate(True, cert.reason, lattice_basis(theta1, theta2, w, k))
    return cert


def isotropy2_exact_angles(family, cos_theta):
    """Exact (theta1, theta2) on the isotropy-2 slice for a rational cos(theta)."""
    family = Family(family)
    th = ExactAngle.from_cos(cos_theta)
    if not 0 < th.cos < Fraction(1, 2):
        raise ValueError("isotropy-2 slice needs pi/3 < theta < pi/2, i.e. 0 < cos < 1/2")
    if family is Family.I:
        return th, th.supplement()
    if family is Family.II:
        return th, th.double()
    return th.double().supplement(), th.supplement()


def surd_to_str(x):
    """Readable exact form such as '5/3' or '1/2*sqrt(15) + 1/4'."""
    if x.is_rational():
        return str(x.rational_value())
    parts = [f"{c}" if m == 1 else f"{c}*sqrt({m})" for m, c in sorted(x.terms.items())]
    return " + ".join(parts)
