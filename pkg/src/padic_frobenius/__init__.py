"""Traces of Frobenius of elliptic curves through p-adic hypergeometric functions."""

from .cyclotomic import CharacterTable, CycloRing, gauss_sum, oracle_suite
from .errors import *  # noqa: F401,F403
from .finite_field import (
    E1,
    E2,
    FieldCtx,
    FqElem,
    ShortW,
    count_points,
    cubic_roots,
    field_create,
    hasse_bound,
    quadratic_character,
    sqrt_in_fq,
    trace_bruteforce,
)
from .gfunction import G, GammaCache, GArgs, GValue, evaluate_G
from .padic import PadicCtx, PadicNum, gamma_p, padic_context, teichmuller
from .sweep import SweepConfig, SweepRecord, run_sweep
from .trace_formulas import (
    Method,
    TraceReport,
    check_corollary15,
    padic_to_hasse_integer,
    trace_thm12,
    trace_thm13,
    trace_thm14,
    trace_thm_E1,
    trace_thm_E2,
)
