"""Maxmin reconfiguration: exact values, approximation algorithms and gap reductions."""
from .errors import BudgetExceeded, ParseError, ReconfigError, ValidationError
from .instances import (
    Assignment,
    CnfFormula,
    Coloring,
    CutReconfigInstance,
    ReconfigSequence,
    SatReconfigInstance,
    WeightedMultigraph,
    parse_cut_instance,
    parse_sat_instance,
    parse_sequence,
    serialize_cut_instance,
    serialize_sat_instance,
    serialize_sequence,
)
from .valuation import (
    GridColoring,
    StripeReport,
    cut_value,
    explicit_verifier_accept_prob,
    sat_value,
    sequence_value,
    stripe_reject_prob,
    stripe_report,
    tester_accept_prob,
)
from .exact import ExactResult, opt_cut_exact, opt_sat_exact
from .approx_cut import CutAlgoConfig, approx_cut_reconfig, edge_survival_prob, run_approx_cut, uplift_low_value
from .approx_sat import (
    SatAlgoConfig,
    approx_sat_reconfig,
    binom_sum,
    clause_survival_prob,
    min_clause_survival,
    run_approx_sat,
)

__version__ = "0.1.0"
