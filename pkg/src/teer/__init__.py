"""Tandem equal error rate (t-EER) evaluation of CM + ASV detector cascades."""

from .analysis import class_conditional_correlation, special_case_eers
from .concurrent import ConcurrentPoint, concurrent_teer, verify_intersection, xpoint_residual
from .curves import RateCurve, asv_rate_curve, build_rate_curve, cm_rate_curve, eer, weighted_error_min
from .path import TeerPath, asv_feasible, build_teer_path, cm_feasible, teer_along_path
from .score_io import (AsvScoreSet, CmScoreSet, PairedScoreSet, TrialClass, parse_paired_scores,
                       parse_subsystem_scores)
from .simulate import SimulationParams, simulate_scores
from .tandem import TandemPriors, TandemRates, rho_from_priors, tandem_rates_at, tandem_total_error
from .tdcf import TdcfParams, min_tdcf, tdcf, tdcf_bounds_at_concurrent

__all__ = [
    "AsvScoreSet", "CmScoreSet", "PairedScoreSet", "TrialClass",
    "parse_subsystem_scores", "parse_paired_scores",
    "RateCurve", "build_rate_curve", "asv_rate_curve", "cm_rate_curve", "eer", "weighted_error_min",
    "TandemPriors", "TandemRates", "rho_from_priors", "tandem_rates_at", "tandem_total_error",
    "TeerPath", "asv_feasible", "cm_feasible", "build_teer_path", "teer_along_path",
    "ConcurrentPoint", "concurrent_teer", "verify_intersection", "xpoint_residual",
    "TdcfParams", "tdcf", "min_tdcf", "tdcf_bounds_at_concurrent",
    "SimulationParams", "simulate_scores",
    "special_case_eers", "class_conditional_correlation",
]
