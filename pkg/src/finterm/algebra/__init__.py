"""Exact arithmetic: rationals, number fields, polynomials, function fields."""

from .numbers import QQ, AlgNumber, NumberField, format_rational, nf_arith, parse_rational
from .poly import (
    Poly,
    diophantine,
    gcd,
    partial_fractions,
    resultant,
    squarefree_decomposition,
    sylvester_resultant,
    xgcd,
)
from .fields import AlgElement, AlgebraicExtension, RatFunc, RationalFunctionField
