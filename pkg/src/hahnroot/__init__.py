"""Exact root expansions over F_p(t): Hahn-series prefixes, additive
companions, intersection points, and ramification/residue bounds."""

from .ffield import FF, FieldCtx, Embedding, field_ctx, poly_roots, frobenius_solve
from .ratfun import RatFun, leading_term, rebase
from .hahn import HahnSeries, truncate, is_approximation, ramifies_at, expands_at
from .hasse import Poly, NewtonLine, hasse_derivative, taylor_coeffs, evaluate, newton_data, gamma_J
from .ore import AdditivePolynomial, addpol, is_additive
from .envelope import Breakpoint, intersection_points, maxram, maxexp, maxexp_base, order_type_bound
from .expand import (
    AccumulationReport,
    BranchNode,
    ExpansionTree,
    accumulation_analysis,
    approximation_terms,
    branch_step,
    expand_roots,
)
from .cli import Command, parse_polynomial, poly_text, run

__all__ = [
    "FF", "FieldCtx", "Embedding", "field_ctx", "poly_roots", "frobenius_solve",
    "RatFun", "leading_term", "rebase",
    "HahnSeries", "truncate", "is_approximation", "ramifies_at", "expands_at",
    "Poly", "NewtonLine", "hasse_derivative", "taylor_coeffs", "evaluate",
    "newton_data", "gamma_J",
    "AdditivePolynomial", "addpol", "is_additive",
    "Breakpoint", "intersection_points", "maxram", "maxexp", "maxexp_base",
    "order_type_bound",
    "AccumulationReport", "BranchNode", "ExpansionTree", "accumulation_analysis",
    "approximation_terms", "branch_step", "expand_roots",
    "Command", "parse_polynomial", "poly_text", "run",
]

__version__ = "0.1.0"
