"""Membership, sampling and plotting for the parameter regions of the three families."""
from dataclasses import dataclass, replace
from fractions import Fraction
import csv
import math
from pathlib import Path

import numpy as np

from . import _kernels
from .exact import ExactAngle
from .immersions import (
    Family, Mode, RegionError, gamma3_bound, in_gamma3, make_params, validate_params,
)
from .torus import ExactnessError, torus_criterion

GAMMA3_AREA = 1.0 / (4.0 * math.sqrt(3.0))
THETA_LO, THETA_HI = math.pi / 3, math.pi / 2
W_RADIUS = 4.0


@dataclass(frozen=True)
class RegionPoint:
    """A parameter point.  General mode uses (theta1, theta2, free, w);
    isotropy-2 mode uses (theta, r, w).  ``exact`` optionally carries exact
    angles: (theta1, theta2) ExactAngles, and ``r`` may be a Fraction."""

    family: Family
    mode: Mode
    w: complex = 0j
    theta1: float = None
    theta2: float = None
    free: tuple = None
    theta: float = None
    r: object = None
    exact: tuple = None
    in_torus_subspace: bool = False

    def to_params(self, check=True):
        if self.mode is Mode.ISOTROPY2:
            from .immersions import specialize_isotropy2
            return specialize_isotropy2(self.family, float(self.theta), float(self.r), self.w)
        return make_params(self.family, self.theta1, self.theta2, self.free, self.w, check=check)


def isotropy2_point(family, theta, r, w=0j, cos_theta=None):
    """Isotropy-2 point; pass ``cos_theta`` (rational) to attach exact angles."""
    family = Family(family)
    exact = None
    if cos_theta is not None:
        from .torus import isotropy2_exact_angles
        exact = isotropy2_exact_angles(family, cos_theta)
        theta = math.acos(float(Fraction(cos_theta)))
    return RegionPoint(family, Mode.ISOTROPY2, complex(w), theta=theta, r=r, exact=exact)


def general_point(family, theta1, theta2, free, w=0j, exact=None):
    if exact is not None:
        theta1, theta2 = exact[0].radians, exact[1].radians
    return RegionPoint(Family(family), Mode.GENERAL, complex(w), theta1=float(theta1),
                       theta2=float(theta2), free=tuple(float(x) for x in free), exact=exact)


def _gamma3_exact(cos_theta, r):
    c = Fraction(cos_theta)
    r = Fraction(r)
    return 0 < c < Fraction(1, 2) and 0 < r < 1 / (4 * (1 - c * c))


def region_contains(p):
    """Gamma_3 box test (isotropy-2) or the full family inequalities (general)."""
    if p.mode is Mode.ISOTROPY2:
        if p.exact is not None and isinstance(p.r, (Fraction, int)):
            return _gamma3_exact(p.exact[0].cos if p.family is not Family.III
                                 else p.exact[1].supplement().cos, p.r)
        if p.theta is None or p.r is None:
            return False
        return in_gamma3(float(p.theta), float(p.r))
    try:
        params = make_params(p.family, p.theta1, p.theta2, p.free, p.w, check=False)
    except RegionError:
        return False
    return validate_params(params).ok


def _disk(rng, n, radius=W_RADIUS):
    rad = radius * np.sqrt(rng.uniform(0, 1, n))
    ang = rng.uniform(0, 2 * np.pi, n)
    return rad * np.exp(1j * ang)


def sample_region(family, mode, n, seed, *, max_batches=10_000):
    """n members of the region by rejection sampling; deterministic per seed."""
    if n <= 0:
        raise ValueError("n must be positive")
    family, mode = Family(family), Mode(mode)
    rng = np.random.default_rng(seed)
    out = []
    batch = max(64, 4 * n)
    for _ in range(max_batches):
        if mode is Mode.ISOTROPY2:
            th = rng.uniform(THETA_LO, THETA_HI, batch)
            r = rng.uniform(0.0, 1.0, batch)
            w = _disk(rng, batch)
            keep = _kernels.gamma3_mask(th, r)
            for t, rr, ww in zip(th[keep], r[keep], w[keep]):
                out.append(RegionPoint(family, mode, complex(ww), theta=float(t), r=float(rr)))
                if len(out) == n:
                    return out
        else:
            angles = np.sort(rng.uniform(0.0, np.pi, (batch, 2)), axis=1)
            free = rng.uniform(0.0, 1.0, (batch, 2))
            w = _disk(rng, batch)
            for (t1, t2), fw, ww in zip(angles, free, w):
                p = RegionPoint(family, mode, complex(ww), theta1=float(t1), theta2=float(t2),
                                free=(float(fw[0]), float(fw[1])))
                if region_contains(p):
                    out.append(p)
                    if len(out) == n:
                        return out
    raise RuntimeError(f"rejection sampling found only {len(out)} of {n} points")


def estimate_gamma3_area(n, seed):
    """Monte-Carlo area of the Gamma_3 (theta, r) slice using the box [pi/3, pi/2] x [0, 1]."""
    rng = np.random.default_rng(seed)
    th = rng.uniform(THETA_LO, THETA_HI, n)
    r = rng.uniform(0.0, 1.0, n)
    frac = np.count_nonzero(_kernels.gamma3_mask(th, r)) / n
    return frac * (THETA_HI - THETA_LO)


def torus_filter(points, exact_data=None):
    """Keep points with w = 0 or whose exact angles pass the torus criterion.

    ``exact_data`` optionally gives per-point (theta1, theta2) ExactAngle
    pairs, overriding the points' own ``exact`` field.
    """
    kept = []
    for i, p in enumerate(points):
        exact = exact_data[i] if exact_data is not None and exact_data[i] is not None else p.exact
        if p.w == 0:
            kept.append(replace(p, in_torus_subspace=True))
            continue
        if exact is None:
            raise ExactnessError(f"point {i} has w != 0 but no exact angle data")
        if torus_criterion(exact[0], exact[1], p.w, p.family.twist_slot).descends:
            kept.append(replace(p, in_torus_subspace=True))
    return kept


def hypersurface_residuals(params):
    """Residuals of the two equations cutting out the isotropy-2 slice of a family.

    I: theta1 + theta2 = pi and r2 + r5 = 1/(4 s1^2).
    II: theta2 = 2 theta1 and r0 + r3 = 1/(4 s1^2).
    III: theta1 = 2 theta2 - pi and r0 + r3 = 1/(4 s2^2).
    """
    sc = params.scalars
    r = sc.r
    if params.family is Family.I:
        return sc.theta1 + sc.theta2 - math.pi, r[2] + r[5] - gamma3_bound(sc.theta1)
    if params.family is Family.II:
        return sc.theta2 - 2 * sc.theta1, r[0] + r[3] - gamma3_bound(sc.theta1)
    return sc.theta1 - 2 * sc.theta2 + math.pi, r[0] + r[3] - gamma3_bound(sc.theta2)


# ---------------------------------------------------------------------------
# plot emission
# ---------------------------------------------------------------------------

def boundary_curve(resolution):
    """(theta, r) samples of r = 1/(4 sin^2 theta) on [pi/3, pi/2], endpoints exact."""
    th = np.linspace(THETA_LO, THETA_HI, resolution)
    r = 1.0 / (4.0 * np.sin(th) ** 2)
    # rounding can land a curve point inside the open region; step it out by an ulp
    inside = _kernels.gamma3_mask(th, r)
    r[inside] = np.nextafter(r[inside], np.inf)
    th[0], th[-1] = THETA_LO, THETA_HI
    r[0], r[-1] = 1.0 / 3.0, 0.25
    return th, r


def _box_edges(resolution):
    th = np.linspace(THETA_LO, THETA_HI, resolution)
    bottom = [(t, 0.0) for t in th]
    left = [(THETA_LO, x) for x in np.linspace(0.0, 1.0 / 3.0, resolution)]
    right = [(THETA_HI, x) for x in np.linspace(0.0, 0.25, resolution)]
    return bottom + left + right


def _output_paths(path):
    path = Path(path)
    if path.suffix.lower() in (".csv", ".svg"):
        path = path.with_suffix("")
    return path.with_suffix(".csv"), path.with_suffix(".svg")


def emit_region_plot(resolution, path):
    """Write the Gamma_3 region as CSV (theta,r,kind) and a 600x600 SVG.

    Rows: ``resolution`` boundary points on r = 1/(4 sin^2 theta) and
    ``resolution`` points on each of the three box edges (r = 0,
    theta = pi/3, theta = pi/2).  None of these points is a member of the
    open region.  Returns (csv_path, svg_path).
    """
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    csv_path, svg_path = _output_paths(path)
    th, r = boundary_curve(resolution)
    box = _box_edges(resolution)
    try:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        with open(csv_path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["theta", "r", "kind"])
            for t, x in zip(th, r):
                wr.writerow([repr(float(t)), repr(float(x)), "boundary"])
            for t, x in box:
                wr.writerow([repr(float(t)), repr(float(x)), "box"])
        svg_path.write_text(_svg(th, r))
    except OSError as exc:
        raise OSError(f"cannot write region plot to {csv_path.parent}: {exc}") from exc
    return csv_path, svg_path


def _svg(th, r, size=600, margin=60):
    r_max = 0.36

    def px(t, x):
        u = margin + (t - THETA_LO) / (THETA_HI - THETA_LO) * (size - 2 * margin)
        v = size - margin - x / r_max * (size - 2 * margin)
        return f"{u:.2f},{v:.2f}"

    pts = [px(THETA_LO, 0.0)] + [px(t, x) for t, x in zip(th, r)] + [px(THETA_HI, 0.0)]
    region = "M " + " L ".join(pts) + " Z"
    curve = "M " + " L ".join(px(t, x) for t, x in zip(th, r))
    x0, y0 = margin, size - margin
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<path d="{region}" fill="#9ecae1" fill-opacity="0.8" stroke="none"/>',
        f'<path d="{curve}" fill="none" stroke="#08519c" stroke-width="2" '
        'stroke-dasharray="6,4"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{size - margin}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{margin}" stroke="black"/>',
        f'<text x="{size / 2}" y="{size - 15}" text-anchor="middle" font-size="16">theta</text>',
        f'<text x="18" y="{size / 2}" font-size="16">r</text>',
        f'<text x="{x0}" y="{y0 + 20}" text-anchor="middle" font-size="12">pi/3</text>',
        f'<text x="{size - margin}" y="{y0 + 20}" text-anchor="middle" font-size="12">pi/2</text>',
        f'<text x="{x0 - 8}" y="{px(THETA_LO, 1 / 3).split(",")[1]}" text-anchor="end" '
        'font-size="12">1/3</text>',
        f'<text x="{size - margin + 8}" y="{px(THETA_HI, 0.25).split(",")[1]}" '
        'font-size="12">1/4</text>',
        "</svg>",
    ]
    return "\n".join(lines) + "\n"


def exact_gamma3_bound(cos_theta):
    """1/(4 (1 - c^2)) as a Fraction."""
    c = Fraction(cos_theta)
    return 1 / (4 * (1 - c * c))


__all__ = [
    "RegionPoint", "region_contains", "sample_region", "estimate_gamma3_area", "torus_filter",
    "emit_region_plot", "boundary_curve", "hypersurface_residuals", "isotropy2_point",
    "general_point", "GAMMA3_AREA", "exact_gamma3_bound", "ExactAngle",
]
