"""Totally real flat minimal surfaces in quaternionic projective 3-space:
construction, numerical certification, exact torus descent and moduli regions."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    DEFAULT_TOL, J, MatrixClass, c8_to_h4, h4_to_c8, herm_inner, j_map, matrix_class,
    pairing, random_symplectic,
)
from .exact import ExactAngle, Surd, is_rational_square  # noqa: E402
from .immersions import (  # noqa: E402
    DerivedScalars, Family, FamilyParams, ImmersionSpec, Mode, RegionError, build_family_lift,
    build_v0, derive_scalars, immersion_spec, make_params, reference_cp3, reference_spec,
    solve_pairing, specialize_isotropy2, twistor_project, validate_params,
)
from .torus import (  # noqa: E402
    TorusCertificate, criterion_matrix_form, lattice_basis, torus_criterion,
)
from .verify import (  # noqa: E402
    VerificationReport, check_flat_isometric, check_harmonic, check_horizontal,
    check_totally_real, det_afr_closed, det_afr_series, isotropy_order, lift_derivative,
    run_suite, sextic_nonvanishing,
)
