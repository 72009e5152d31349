"""Exact computer algebra for the q-deformed Virasoro-like algebra and
the classification of its windowed graded modules."""

from .field import (
    BigRational,
    DivisionByZero,
    FieldContext,
    Monomial2,
    NotQuadratic,
    PoleAtPoint,
    Poly2,
    RF_A,
    RF_ONE,
    RF_Q,
    RF_ZERO,
    RationalFunction,
    RepeatedRoot,
    RootsNotInField,
    TwoRoots,
    ZeroDenominator,
    normalize,
    poly_gcd,
    poly_sqrt,
    q_pow,
    rf_int,
    sign_pow,
    solve_quadratic,
    substitute,
)
from .expr import ExprSyntaxError, parse_expr, parse_value, print_canonical
from .table import (
    TableDocument,
    TableSemanticError,
    TableSyntaxError,
    parse_table,
    write_table,
)
from .algebra import (
    AlgebraElement,
    bracket,
    component_of_degree,
    parse_element,
    print_element,
    random_element,
)
from .families import (
    Family,
    FamilyModule,
    GradedVector,
    Irreducible,
    Reducible,
    TrivialSumModule,
    act,
    action_coeff,
    check_graded_irreducible,
    closed_form_f,
    gen_table,
    verify_axiom,
)
from .presentation import (
    Degenerate,
    DegenerateTable,
    HasZeroDims,
    InvariantTriple,
    Nondegenerate,
    NormalizedTable,
    NotConstant,
    Violation,
    degeneracy_test,
    extract_invariants,
    omega_normalize,
    validate_table,
    verify_relation_suite,
)
from .classifier import (
    ClassificationResult,
    DistinctRoots,
    Geometric,
    Inconsistent,
    IsoClass,
    NotGeometric,
    Orientation,
    Reason,
    RepeatedRootFit,
    TrivialSum,
    characteristic_equation,
    classify,
    fit_geometric,
    orientation_from_b,
    solve_recurrence2,
)

__version__ = "0.1.0"
