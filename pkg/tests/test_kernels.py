import os
import subprocess
import sys

import numpy as np
from hypothesis import given, settings, strategies as st

from hp3flat import _kernels


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2), st.integers(0, 2))
def test_lift_backends_agree(seed, p, q):
    rng = np.random.default_rng(seed)
    freqs = np.exp(1j * rng.uniform(0, 2 * np.pi, 6))
    amps = rng.standard_normal((8, 6)) + 1j * rng.standard_normal((8, 6))
    zs = rng.standard_normal(50) + 1j * rng.standard_normal(50)
    a = _kernels.lift_batch_numpy(freqs, amps, zs, p, q)
    b = _kernels.lift_batch_numba(freqs, amps, zs, p, q)
    assert np.allclose(a, b, atol=1e-12)


def test_pairing_and_mask_backends_agree():
    rng = np.random.default_rng(0)
    x = rng.standard_normal((100, 8)) + 1j * rng.standard_normal((100, 8))
    y = rng.standard_normal((100, 8)) + 1j * rng.standard_normal((100, 8))
    assert np.allclose(_kernels.pairing_batch_numpy(x, y), _kernels.pairing_batch_numba(x, y))
    assert np.allclose(_kernels.hermitian_batch_numpy(x, y), _kernels.hermitian_batch_numba(x, y))
    th = rng.uniform(0.9, 1.7, 1000)
    r = rng.uniform(0, 0.4, 1000)
    assert np.array_equal(_kernels.gamma3_mask_numpy(th, r), _kernels.gamma3_mask_numba(th, r))


def test_pairing_kernel_is_transpose_j():
    from hp3flat.algebra import J
    rng = np.random.default_rng(1)
    x = rng.standard_normal((5, 8)) + 1j * rng.standard_normal((5, 8))
    y = rng.standard_normal((5, 8)) + 1j * rng.standard_normal((5, 8))
    assert np.allclose(_kernels.pairing_batch(x, y), np.einsum("ni,ij,nj->n", x, J, y))


def test_env_flag_selects_numpy_backend():
    code = "from hp3flat import _kernels; print(_kernels.backend())"
    for flag, expected in (("1", "numpy"), ("0", "numba" if _kernels.HAVE_NUMBA else "numpy")):
        env = dict(os.environ, HP3FLAT_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
        assert out.stdout.strip() == expected


def test_numpy_backend_runs_suite():
    code = (
        "from hp3flat import _kernels; assert _kernels.backend() == 'numpy';"
        "from hp3flat.immersions import specialize_isotropy2;"
        "from hp3flat.verify import verify_params;"
        "rep = verify_params(specialize_isotropy2('II', 1.2, 0.1, 1), n_points=20);"
        "assert rep.passed and rep.isotropy_order == 2"
    )
    env = dict(os.environ, HP3FLAT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.returncode == 0, out.stderr
