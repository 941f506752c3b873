import math

import numpy as np
import pytest

from hp3flat.harmonic import (
    RankCollapse, base_jet, gram_norms, jet_adjoint, jet_dz, jet_inv, jet_mul, jet_projector,
)
from hp3flat.immersions import ImmersionSpec, immersion_spec, make_params, reference_spec, specialize_isotropy2
from hp3flat.moduli import sample_region
from hp3flat.verify import isotropy_order, random_points

ZS = random_points(10, 4, radius=3)


def test_base_jet_matches_derivatives():
    spec = immersion_spec(specialize_isotropy2("I", 1.2, 0.1, 1))
    z = 0.2 + 0.5j
    X = base_jet(spec, z)
    assert np.allclose(X[0, 0, :, 0], spec.evaluate(z))
    assert np.allclose(X[1, 0, :, 0], spec.evaluate(z, 1))
    assert np.allclose(X[1, 1, :, 0], spec.evaluate(z, 1, 1))
    assert np.allclose(X[0, 2, :, 0], spec.evaluate(z, 0, 2) / 2)
    # the second column is j s: its z-derivative is j of the zbar-derivative of s
    assert np.allclose(X[1, 0, 0::2, 1], -np.conj(spec.evaluate(z, 0, 1)[1::2]))


def test_jet_algebra():
    spec = immersion_spec(specialize_isotropy2("II", 1.3, 0.05, 0.5j))
    F = base_jet(spec, 0.1 - 0.3j)
    G = jet_mul(jet_adjoint(F), F)
    ident = jet_mul(jet_inv(G), G)
    assert np.allclose(ident[0, 0], np.eye(2))
    assert np.allclose(ident[1:], 0, atol=1e-12) and np.allclose(ident[0, 1:], 0, atol=1e-12)
    P = jet_projector(F)
    assert np.allclose(jet_mul(P, P), P, atol=1e-12)
    assert np.allclose(jet_dz(F)[0, 0], F[1, 0])


def test_jet_product_matches_pointwise_derivative():
    spec = immersion_spec(specialize_isotropy2("III", 1.2, 0.1, 1))
    z = 0.3j
    F = base_jet(spec, z)
    G = jet_mul(jet_adjoint(F), F)
    # d/dz of F^H F at z, by central differences of the exact frame
    h = 1e-5

    def gram(zz):
        s = spec.evaluate(zz)
        js = np.conj(s)[[1, 0, 3, 2, 5, 4, 7, 6]] * np.array([-1, 1] * 4)
        M = np.column_stack([s, js])
        return M.conj().T @ M

    dx = (gram(z + h) - gram(z - h)) / (2 * h)
    dy = (gram(z + 1j * h) - gram(z - 1j * h)) / (2 * h)
    assert np.allclose(G[1, 0], 0.5 * (dx - 1j * dy), atol=1e-8)


@pytest.mark.parametrize("fam", ["I", "II", "III"])
def test_gamma3_points_have_isotropy_two(fam):
    for p in sample_region(fam, "isotropy2", 5, 9):
        spec = immersion_spec(p.to_params())
        assert isotropy_order(spec, ZS) == 2


@pytest.mark.parametrize("fam", ["I", "II", "III"])
def test_general_points_have_isotropy_one(fam):
    for p in sample_region(fam, "general", 5, 9):
        spec = immersion_spec(p.to_params())
        assert isotropy_order(spec, ZS) == 1
        sc = p.to_params().scalars
        assert abs(np.sum(sc.freqs ** 2 * np.array(sc.r))) > 1e-6


def test_references():
    assert isotropy_order(reference_spec("clifford"), ZS) == 3
    assert isotropy_order(reference_spec("eighth"), ZS) == 1


def test_gram_norms_first_entry_always_small():
    p = make_params("I", 0.9, 2.0, (0.05, 0.07), 1.5, check=False)
    spec = immersion_spec(p)
    assert gram_norms(spec, 0.5)[0] < 1e-12


def test_rank_collapse():
    amps = np.zeros((8, 1), dtype=complex)
    amps[0, 0] = 1
    spec = ImmersionSpec(np.array([1.0 + 0j]), amps)
    with pytest.raises(RankCollapse):
        isotropy_order(spec, ZS)


def test_isotropy_needs_ten_points():
    with pytest.raises(ValueError):
        isotropy_order(reference_spec("clifford"), ZS[:5])
