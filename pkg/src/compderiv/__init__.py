"""compderiv: exact n-th derivatives of function compositions.

Given the derivative values of an outer function phi and an inner
function psi at a point, this package computes D_y^n of phi(psi(y)) by
five independent routes over arbitrary-precision rationals:

* a sum over integer partitions of n (the closed form),
* the same sum regrouped through partial Bell polynomials,
* an (n+1) x (n+1) determinant over a formal polynomial ring,
* truncated Taylor series (jet) composition, and
* brute-force symbolic differentiation of polynomial expressions.

Every route returns exactly the same ``Fraction``, bit for bit; the test
suite and the ``compderiv check`` command enforce that continuously.
"""

from .composition import (
    DerivativeSequence,
    SequenceTooShortError,
    derivative_bell,
    derivative_partition_sum,
    lagrange_power_coefficient,
    partial_bell,
    power_derivatives,
)
from .determinant import (
    CompositionMatrix,
    PhiPolynomial,
    build_matrix,
    derivative_determinant,
    determinant_expand,
    interpret_phi_polynomial,
)
from .exact import (
    Rational,
    as_rational,
    binomial,
    factorial,
    falling_factorial,
    format_rational,
    parse_rational,
)
from .partitions import (
    MultiplicityVector,
    enumerate_multiplicity_vectors,
    multinomial_weight,
    total_order,
)
from .series import (
    Jet,
    derivative_via_jets,
    derivatives_from_jet,
    jet_add,
    jet_compose,
    jet_from_derivatives,
    jet_mul,
)
from .symbolic import (
    ParseError,
    derivative_sequence_of,
    differentiate,
    evaluate,
    format_expr,
    nth_derivative_of_composition,
    parse,
    substitute,
    taylor_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "factorial",
    "binomial",
    "falling_factorial",
    "parse_rational",
    "format_rational",
    "as_rational",
    "MultiplicityVector",
    "enumerate_multiplicity_vectors",
    "total_order",
    "multinomial_weight",
    "DerivativeSequence",
    "SequenceTooShortError",
    "derivative_partition_sum",
    "derivative_bell",
    "partial_bell",
    "lagrange_power_coefficient",
    "power_derivatives",
    "PhiPolynomial",
    "CompositionMatrix",
    "build_matrix",
    "determinant_expand",
    "interpret_phi_polynomial",
    "derivative_determinant",
    "Jet",
    "jet_add",
    "jet_mul",
    "jet_compose",
    "jet_from_derivatives",
    "derivatives_from_jet",
    "derivative_via_jets",
    "ParseError",
    "parse",
    "format_expr",
    "differentiate",
    "evaluate",
    "substitute",
    "nth_derivative_of_composition",
    "derivative_sequence_of",
    "taylor_polynomial",
    "__version__",
]
