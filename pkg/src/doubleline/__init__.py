"""Exact power-sum decompositions of double-line plane quartics.

Public surface: exact homogeneous forms and tuple calculus (``forms``),
fraction-free rational linear algebra and moment systems (``linalg``), the
decomposition engine with tangency certificates and symbolic identity checks
(``engine``), and the ``doubleline`` command-line driver (``cli``).
"""

from .engine import (
    AnalysisReport,
    CoordinateInstance,
    DoubleLineQuartic,
    KernelBasis,
    TangencyCertificate,
    WaringDecomposition,
    analyze,
    extract_cofactor,
    generate_six_term_family,
    generate_tangent_instance,
    kernel_descend,
    line_x2,
    power_kernel,
    six_term_vanishing_check,
    tangency_certificate,
    tangency_defect,
    two_value_collapse_check,
    verify_identity_slice,
)
from .forms import (
    BinaryQuadratic,
    FormTuple,
    HomogeneousForm,
    conic_rank,
    line_tangent_to_conic,
    parse_form,
    polarization_matrix,
    render_form,
    restrict,
)
from .linalg import (
    RationalMatrix,
    VandermondeSystem,
    nullspace,
    rref,
    vandermonde_nullspace,
    weighted_moment_kernel,
)

__version__ = "0.1.0"
