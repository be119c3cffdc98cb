"""Exact-arithmetic toolkit for finite-dimensional commutative
nonassociative algebras given by structure constants: idempotent
eigendecompositions, axis certification, fusion rules, Frobenius forms,
Miyamoto involutions, identity testing, and solidity audits of 2-generated
subalgebras."""

from .algebra import Algebra, Element, Subalgebra, generate_subalgebra, make_algebra
from .axes import (
    AxisReport,
    EigenData,
    FusionVerdicts,
    MiyamotoMap,
    axis_orbit,
    check_axis,
    check_fusion,
    component_recovery,
    eigen_decompose,
    infer_lambda,
    is_idempotent,
    miyamoto,
    seress_check,
)
from .constructions import (
    TripleSystem,
    jordan_symmetric_matrices,
    matsuo_from_triple_system,
    toric_euf,
    trace_form,
    universal_2gen,
)
from .errors import AxialError
from .fields import QQ, PrimeField, RationalFunctions, Rationals, parse_scalar
from .frobenius import (
    BilinearForm,
    axial_radical,
    is_4_nilpotent,
    radical,
    solve_frobenius,
    trace_admissibility_audit,
)
from .identities import (
    BUILTIN_NAMES,
    GenPoly,
    builtin_identity,
    evaluate,
    format_poly,
    full_linearize,
    holds_as_identity,
    linearize_step,
    parse_poly,
    sample_identity,
    specialize_idempotent_slot,
)
from .linalg import Matrix, kernel, minimal_polynomial, rref
from .solidity import (
    classify_pair,
    enumerate_idempotents_2gen,
    hardness_probe,
    solid_audit,
)

__version__ = "0.1.0"
