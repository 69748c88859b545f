"""Grades relative to Serre classes and S-Cohen-Macaulay tests for graded
modules over polynomial rings over prime fields."""

from .cm import CMReport, a_invariant, quotient_stability_check, s_cm_test, s_dim, s_height
from .core import (
    GREVLEX,
    LEX,
    AlgebraError,
    DescriptorMismatch,
    ModuleOrder,
    MonomialOrder,
    NotPrimeError,
    Polynomial,
    PrimeField,
    RingDescriptor,
    make_ring,
    multivariate_division,
    quotient_ring,
)
from .fpmodule import (
    FPModule,
    FreeResolution,
    GradingError,
    PreconditionError,
    annihilator,
    colon_step_module,
    cyclic_module,
    ext_module,
    free_resolution,
    module_dimension,
    prune,
    subquotient,
)
from .grade import (
    NEG_INF,
    POS_INF,
    GradeReport,
    UnsupportedRoute,
    WitnessSearchFailure,
    check_weak_sequence,
    classical_grade,
    depth,
    ext_grade,
    find_max_weak_sequence,
    koszul_cohomology,
    koszul_complex,
    koszul_grade,
    named_depths,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_colon,
    ideal_intersection,
    krull_dimension,
    normal_form,
    radical_membership,
    syzygy_module,
)
from .serre import DimLE, SerreClassSpec, SuppInV, ZeroOnly, contains, contains_prime

__version__ = "0.1.0"
