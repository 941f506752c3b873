import csv
import math
from fractions import Fraction

import numpy as np
import pytest

from hp3flat.immersions import build_family_lift, specialize_isotropy2, twistor_project
from hp3flat.moduli import (
    GAMMA3_AREA, estimate_gamma3_area, emit_region_plot, exact_gamma3_bound, general_point,
    hypersurface_residuals, isotropy2_point, region_contains, sample_region, torus_filter,
)
from hp3flat.exact import ExactAngle
from hp3flat.torus import ExactnessError
from hp3flat.verify import verify_params, random_points, run_suite
from hp3flat.immersions import immersion_spec


def test_region_contains_examples():
    assert region_contains(isotropy2_point("I", 5 * math.pi / 12, 0.2))
    assert not region_contains(isotropy2_point("I", math.pi / 3, 0.1))
    assert exact_gamma3_bound("1/4") == Fraction(4, 15)
    assert not region_contains(isotropy2_point("I", None, Fraction(4, 15), cos_theta="1/4"))
    assert region_contains(isotropy2_point("III", None, Fraction(1, 4), cos_theta="1/4"))


def test_region_contains_general():
    assert not region_contains(general_point("I", 1.0, 2.0, (0.6, 0.6)))
    p = sample_region("II", "general", 1, 3)[0]
    assert region_contains(p)


@pytest.mark.parametrize("mode", ["isotropy2", "general"])
def test_sampler_members_and_seed_stability(mode):
    pts = sample_region("I", mode, 200 if mode == "isotropy2" else 30, 42)
    assert all(region_contains(p) for p in pts)
    assert pts == sample_region("I", mode, len(pts), 42)
    assert pts != sample_region("I", mode, len(pts), 43)


def test_sampler_n_1000():
    assert len(sample_region("II", "isotropy2", 1000, 0)) == 1000
    with pytest.raises(ValueError):
        sample_region("II", "isotropy2", 0, 0)


def test_area_estimate():
    est = estimate_gamma3_area(200_000, 1)
    assert abs(est - GAMMA3_AREA) / GAMMA3_AREA < 0.02
    assert math.isclose(GAMMA3_AREA, 1 / math.tan(math.pi / 3) / 4)


def test_torus_filter():
    pts = sample_region("I", "isotropy2", 5, 1)
    zero = [type(p)(**{**p.__dict__, "w": 0j}) for p in pts]
    kept = torus_filter(zero)
    assert len(kept) == len(zero) and all(p.in_torus_subspace for p in kept)
    good = isotropy2_point("II", None, 0.1, 1j, cos_theta="1/4")
    bad = general_point("II", 0, 0, (0.1, 0.05), 1 + 1j,
                        exact=(ExactAngle(Fraction(1, 4)), ExactAngle(Fraction(-1, 3))))
    assert [p.family for p in torus_filter([good, bad])] == [good.family]
    with pytest.raises(ExactnessError):
        torus_filter([isotropy2_point("I", 1.2, 0.1, 1)])


def test_hypersurfaces_vanish_on_isotropy2_slice():
    for fam in ("I", "II", "III"):
        p = specialize_isotropy2(fam, 1.25, 0.13, 1)
        assert np.allclose(hypersurface_residuals(p), 0, atol=1e-14)
    g = sample_region("I", "general", 1, 0)[0].to_params()
    assert max(abs(x) for x in hypersurface_residuals(g)) > 1e-6


def test_families_are_separated():
    z = 0.37 + 0.61j
    for theta, r, w in ((1.2, 0.1, 1), (1.4, 0.2, 0.5j)):
        t = [twistor_project(build_family_lift(specialize_isotropy2(f, theta, r, w), z))
             for f in ("I", "II", "III")]
        for i in range(3):
            for j in range(i + 1, 3):
                assert np.max(np.abs(t[i] - t[j])) > 1e-3


def test_sampled_points_pass_suite():
    for fam in ("I", "II", "III"):
        for p in sample_region(fam, "isotropy2", 3, 5):
            rep = verify_params(p.to_params(), n_points=30, tol=1e-9)
            assert rep.passed and rep.isotropy_order == 2
        for p in sample_region(fam, "general", 3, 5):
            spec = immersion_spec(p.to_params())
            rep = run_suite(spec, random_points(30, 1), 1e-9)
            assert rep.passed and rep.isotropy_order >= 1


def test_emit_region_plot(tmp_path):
    csv_path, svg_path = emit_region_plot(64, tmp_path / "sub" / "region")
    rows = list(csv.DictReader(open(csv_path)))
    assert list(rows[0].keys()) == ["theta", "r", "kind"]
    boundary = [r for r in rows if r["kind"] == "boundary"]
    box = [r for r in rows if r["kind"] == "box"]
    assert len(boundary) == 64 and len(box) == 3 * 64
    assert float(boundary[-1]["r"]) == 0.25 and float(boundary[-1]["theta"]) == math.pi / 2
    assert float(boundary[0]["r"]) == 1 / 3 and float(boundary[0]["theta"]) == math.pi / 3
    for row in boundary + box:
        assert not region_contains(isotropy2_point("I", float(row["theta"]), float(row["r"])))
    text = svg_path.read_text()
    assert 'width="600"' in text and 'height="600"' in text and 'fill="#9ecae1"' in text
    with pytest.raises(ValueError):
        emit_region_plot(8, tmp_path / "x")
    with pytest.raises(OSError):
        emit_region_plot(16, "/proc/forbidden/region")
