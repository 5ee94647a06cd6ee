"""Planar functions over finite fields and base-p digit-sum degree bounds."""
from .bounds import (
    ExceptionLabel,
    Witness,
    classify_planar_monomials,
    exceptions_for,
    power2_case3_witness,
    technical_lemma_check,
    witness_search,
)
from .digitkit import DigitVec, cl_triage, d_form, digit_sum, star
from .ffield import FieldCtx, make_ctx
from .interp import FuncTable, PolyCoeffs, adeg, interpolate
from .planar import PlanarityReport, is_planar, is_planar_monomial, monomial_table
from .scan import ScanConfig, conjecture_scan

__version__ = "0.1.0"
