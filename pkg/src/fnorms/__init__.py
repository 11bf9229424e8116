"""Generalized f-norms on semimodular spaces of piecewise-constant functions."""

__version__ = "0.1.0"

from .engine import (NormResult, NotInSpaceError, SpacePair, amemiya_norm,
                     dual_modular, dual_norm_inequality_probe, f_norm,
                     luxemburg_s_norm, modular_norm_bound_probe, objective,
                     pairing_integral, regularity_check)
from .lab import (SUITES, PropertyReport, TrialConfig, counterexample_constructor,
                  fatou_suite, family_delta2_probe, llum_suite, measure_convergence_probe,
                  oc_suite, seven_way_dashboard, sm_suite, snorm_axiom_suite,
                  ulum_oc_link_probe, um_suite)
from .modular import (ModularComponent, ProbeReport, SemimodularFamily, axiom_probe,
                      d_condition_check, left_continuity_probe, monotonicity_probe,
                      rho_sequence_condition, scaling_lemma_probe,
                      superadditivity_probe, uniform_weight)
from .orlicz import (OrliczFunction, capped, exp_minus_one, flat_power, power,
                     s_composed)
from .outer import (OuterNorm, a_norm, crucial_probe, dual_norm, equivalence_constants,
                    l1, lp, max_norm, monotonicity_modulus, monotonicity_profile,
                    uniformly_monotone_probe, weighted_lp)
from .spaces import builtin_matrix, dashboard_matrix, load_function, load_space, simple_space
from .stepfun import (MeasureDomain, PiecewiseCurve, StepFunction,
                      random_ordered_pair, random_step_function)
