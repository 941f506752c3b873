"""Numerical certification of lifts: horizontality, totally real, flat, harmonic,
isotropy order and the determinant of the three-step map on phi_0."""
from dataclasses import asdict, dataclass, field
import math

import numpy as np

from . import _kernels
from .algebra import DEFAULT_TOL
from .harmonic import RankCollapse, gram_norms
from .immersions import (
    Family, RegionError, frequencies, gamma3_bound, in_gamma3, immersion_spec,
    specialize_isotropy2,
)

ISOTROPY_TOL = 1e-8
MAX_ISOTROPY = 3
DEGENERATE_W_TOL = 1e-12


def _check_tol(tol):
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")


def lift_derivative(spec, order, z):
    """d^order/dz^order s(z), exact (componentwise frequency powers)."""
    if order not in (1, 2, 3):
        raise ValueError(f"unsupported derivative order {order}; expected 1, 2 or 3")
    return spec.evaluate(z, order, 0)


@dataclass(frozen=True)
class CheckResult:
    residual: float
    passed: bool


@dataclass(frozen=True)
class TotallyRealResult:
    k1: float
    k2: float
    passed: bool


@dataclass(frozen=True)
class FlatResult:
    norm_residual: float
    first_moment: float
    metric_value: float
    passed: bool


def _points(spec, zs, dz=0, dzbar=0):
    return spec.evaluate(np.atleast_1d(np.asarray(zs, dtype=np.complex128)), dz, dzbar)


def check_horizontal(spec, z, tol=DEFAULT_TOL):
    """max over z of |sum_i (s_{2i} ds_{2i+1} - s_{2i+1} ds_{2i})|."""
    _check_tol(tol)
    s = _points(spec, z)
    ds = _points(spec, z, 1)
    r = float(np.max(np.abs(_kernels.pairing_batch(ds, s))))
    return CheckResult(r, r <= tol)


def check_totally_real(spec, z, tol=DEFAULT_TOL):
    """|<d^k s, j s>| = |(d^k s)^T J s| for k = 1, 2 (max over z)."""
    _check_tol(tol)
    s = _points(spec, z)
    res = [float(np.max(np.abs(_kernels.pairing_batch(_points(spec, z, k), s)))) for k in (1, 2)]
    return TotallyRealResult(res[0], res[1], max(res) <= tol)


def check_flat_isometric(spec, z, tol=DEFAULT_TOL):
    """Unit norm, vanishing first moment <ds, s>, and |ds|^2 - |<ds, s>|^2 = 1."""
    _check_tol(tol)
    s = _points(spec, z)
    ds = _points(spec, z, 1)
    nrm = np.real(_kernels.hermitian_batch(s, s))
    fm = _kernels.hermitian_batch(ds, s)
    metric = np.real(_kernels.hermitian_batch(ds, ds)) - np.abs(fm) ** 2
    norm_res = float(np.max(np.abs(nrm - 1.0)))
    first = float(np.max(np.abs(fm)))
    i = int(np.argmax(np.abs(metric - 1.0)))
    metric_value = float(metric[i])
    ok = norm_res <= tol and first <= tol and abs(metric_value - 1.0) <= tol
    return FlatResult(norm_res, first, metric_value, ok)


def check_harmonic(spec, z, tol=DEFAULT_TOL):
    """max |d/dz d/dzbar s + s| over components and z."""
    _check_tol(tol)
    r = float(np.max(np.abs(_points(spec, z, 1, 1) + _points(spec, z))))
    return CheckResult(r, r <= tol)


def isotropy_gram_norms(spec, sample_zs):
    """Max over z of ||Gram(phi_0, phi_i)|| for i = 1..3."""
    zs = np.atleast_1d(np.asarray(sample_zs, dtype=np.complex128))
    return np.max(np.array([gram_norms(spec, z, MAX_ISOTROPY) for z in zs]), axis=0)


def isotropy_order(spec, sample_zs, tol=ISOTROPY_TOL):
    """Largest r <= 3 with phi_0 orthogonal to phi_1, ..., phi_r at every sample point.

    Raises RankCollapse if some phi_i is not a rank-2 bundle at a sample.
    """
    _check_tol(tol)
    zs = np.atleast_1d(np.asarray(sample_zs, dtype=np.complex128))
    if zs.size < 10:
        raise ValueError("isotropy_order needs at least 10 sample points")
    g = isotropy_gram_norms(spec, zs)
    order = 0
    for x in g:
        if x > tol:
            break
        order += 1
    return order


def det_afr_series(spec, z=0.0):
    """-(sum a^3 r)^2 - (sum conj(w_ij) xi_i xi_j a_j^3 e..)(sum w_ij xi_i xi_j a_j^3 e..).

    The pairing matrix amps^T J amps supplies w_ij xi_i xi_j over ordered
    pairs.  If it vanishes (a lift into CP^3) the value <d^3 s, s> = sum a^3 r
    is returned instead.
    """
    a = spec.freqs
    r = spec.weights
    wx = spec.pairing_matrix
    first = complex(np.sum(a ** 3 * r))
    if np.max(np.abs(wx)) <= DEGENERATE_W_TOL:
        return first
    z = complex(z)
    ssum = a[:, None] + a[None, :]
    ez = np.exp(ssum * z - np.conj(ssum) * np.conj(z))
    a3 = (a ** 3)[None, :]
    s_plus = np.sum(wx * a3 * ez)
    s_minus = np.sum(np.conj(wx) * a3 * np.conj(ez))
    return -first ** 2 - complex(s_minus * s_plus)


def _region_check(theta, r):
    if not in_gamma3(theta, r):
        raise RegionError(f"(theta, r) = ({theta}, {r}) outside Gamma_3(C)", ["Gamma3"])


def det_afr_closed(family, theta, r, w):
    """Closed form of the determinant on the isotropy-2 slice of each family.

    All three share the factor (r0 - r3)^2 + 4 |w03|^2 r0 r3; the second
    factor is (1 - (a^3 + conj(a)^3) / (2c))^2 for I (a = e^{i theta1}),
    (1 - 2c a^3 + a^6)^2 for II (theta1) and for III (theta2).
    """
    family = Family(family)
    _region_check(theta, r)
    p = specialize_isotropy2(family, theta, r, w)
    r0, r3 = p.scalars.r[0], p.scalars.r[3]
    lead = (r0 - r3) ** 2 + 4 * abs(p.w03) ** 2 * r0 * r3
    if family is Family.I:
        a, c = np.exp(1j * p.theta1), math.cos(p.theta1)
        second = (1 - (a ** 3 + np.conj(a) ** 3) / (2 * c)) ** 2
    else:
        t = p.theta1 if family is Family.II else p.theta2
        a, c = np.exp(1j * t), math.cos(t)
        second = (1 - 2 * c * a ** 3 + a ** 6) ** 2
    return complex(-lead * second)


def sextic_nonvanishing(theta):
    """|a^6 - 2c a^3 + 1| for a = e^{i theta}, c = cos theta."""
    theta = float(theta)
    if theta == math.pi / 2:
        raise ValueError("theta = pi/2 is excluded")
    if not (math.pi / 3 < theta < math.pi / 2 or math.pi / 2 < theta < 2 * math.pi / 3):
        raise ValueError(f"theta = {theta} outside (pi/3, pi/2) and (pi/2, 2pi/3)")
    a = complex(math.cos(theta), math.sin(theta))
    return abs(a ** 6 - 2 * math.cos(theta) * a ** 3 + 1)


def sextic_modulus_closed(theta):
    """Same quantity in closed form: 4 |sin theta| |sin 2 theta|."""
    return 4 * abs(math.sin(theta)) * abs(math.sin(2 * theta))


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    horizontality_residual: float
    totally_real_residuals: tuple
    norm_residual: float
    first_moment: float
    metric_value: float
    harmonic_residual: float
    isotropy_order: int
    isotropy_gram: tuple
    det_afr_series: complex
    det_afr_closed: complex = None
    passes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.passes.values())

    def to_dict(self):
        d = asdict(self)
        for key in ("det_afr_series", "det_afr_closed"):
            v = d[key]
            d[key] = None if v is None else [v.real, v.imag]
        d["totally_real_residuals"] = list(self.totally_real_residuals)
        d["isotropy_gram"] = list(self.isotropy_gram)
        d["passed"] = self.passed
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d.pop("passed", None)
        for key in ("det_afr_series", "det_afr_closed"):
            v = d.get(key)
            d[key] = None if v is None else complex(v[0], v[1])
        d["totally_real_residuals"] = tuple(d["totally_real_residuals"])
        d["isotropy_gram"] = tuple(d["isotropy_gram"])
        return cls(**d)


def random_points(n, seed, radius=10.0):
    rng = np.random.default_rng(seed)
    return radius * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))


def run_suite(spec, zs, tol=DEFAULT_TOL, *, params=None, isotropy=True,
              expected_isotropy=None, isotropy_tol=ISOTROPY_TOL):
    """Run every check on ``spec`` at the points ``zs``.

    ``params`` (isotropy-2 FamilyParams) enables the closed-form determinant.
    ``expected_isotropy`` adds an isotropy pass entry.
    """
    h = check_horizontal(spec, zs, tol)
    t = check_totally_real(spec, zs, tol)
    f = check_flat_isometric(spec, zs, tol)
    hm = check_harmonic(spec, zs, tol)
    order, gram = -1, ()
    passes = {
        "horizontal": h.passed,
        "totally_real": t.passed,
        "flat_isometric": f.passed,
        "harmonic": hm.passed,
    }
    if isotropy:
        sample = np.atleast_1d(zs)[:10]
        try:
            gram = tuple(float(x) for x in isotropy_gram_norms(spec, sample))
            order = isotropy_order(spec, sample, isotropy_tol)
        except RankCollapse:
            passes["isotropy_rank"] = False
        if expected_isotropy is not None:
            passes["isotropy"] = order == expected_isotropy
    det_s = det_afr_series(spec)
    det_c = None
    if params is not None and params.theta is not None:
        det_c = det_afr_closed(params.family, params.theta, params.r, params.w)
        passes["det_agree"] = abs(det_s - det_c) <= 1e-9 * max(1.0, abs(det_c))
        passes["det_nonzero"] = abs(det_c) > 0
    return VerificationReport(
        horizontality_residual=h.residual,
        totally_real_residuals=(t.k1, t.k2),
        norm_residual=f.norm_residual,
        first_moment=f.first_moment,
        metric_value=f.metric_value,
        harmonic_residual=hm.residual,
        isotropy_order=order,
        isotropy_gram=gram,
        det_afr_series=det_s,
        det_afr_closed=det_c,
        passes=passes,
    )


def verify_params(params, n_points=100, seed=0, tol=DEFAULT_TOL, isotropy=True):
    spec = immersion_spec(params)
    zs = random_points(n_points, seed)
    expected = 2 if params.theta is not None else None
    return run_suite(spec, zs, tol, params=params, isotropy=isotropy, expected_isotropy=expected)


__all__ = [
    "lift_derivative", "check_horizontal", "check_totally_real", "check_flat_isometric",
    "check_harmonic", "isotropy_order", "isotropy_gram_norms", "det_afr_series",
    "det_afr_closed", "sextic_nonvanishing", "sextic_modulus_closed", "VerificationReport",
    "run_suite", "verify_params", "random_points", "CheckResult", "TotallyRealResult",
    "FlatResult", "frequencies", "gamma3_bound",
]
