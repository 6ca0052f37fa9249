"""Exact cohomology of finite complex differential bigraded algebras.

Computes Dolbeault, Bott-Chern, Aeppli and de Rham dimensions of
invariant-form models of compact complex manifolds, decides the
del-delbar-lemma, builds invariant subcomplexes for finite group actions and
does Hodge diamond arithmetic for blow-ups and projective bundles.
"""

from .bicomplex import FiniteBicomplex
from .cdba import CDBA, apply_del, apply_delbar, build_cdba, compile_bicomplex
from .cohomology import (
    CohomologyEngine, CohomologyReport, aeppli, bott_chern, compute_report, conjugate_dolbeault,
    ddbar_verdict, de_rham, dolbeault, frolicher_check,
)
from .cyclotomic import CyclotomicNumber, cyclo_poly
from .diamond import BettiVector, HodgeDiamond, blowup_diamond, check_hodge_structure, projectivize
from .exterior import Form, Monomial, basis, conjugate_form, wedge
from .group import (
    FiniteGroupAction, GeneratorAction, invariant_differentials_report, invariant_subcomplex,
    validate_action,
)
from .manifest import Manifest, parse_expression, parse_manifest

__version__ = "0.1.0"

__all__ = [
    "BettiVector", "CDBA", "CohomologyEngine", "CohomologyReport", "CyclotomicNumber",
    "FiniteBicomplex", "FiniteGroupAction", "Form", "GeneratorAction", "HodgeDiamond",
    "Manifest", "Monomial", "aeppli", "apply_del", "apply_delbar", "basis", "blowup_diamond",
    "bott_chern", "build_cdba", "check_hodge_structure", "compile_bicomplex", "compute_report",
    "conjugate_dolbeault", "conjugate_form", "cyclo_poly", "ddbar_verdict", "de_rham",
    "dolbeault", "frolicher_check", "invariant_differentials_report", "invariant_subcomplex",
    "parse_expression", "parse_manifest", "projectivize", "validate_action", "wedge",
]
