"""Accelerated gradient methods, their continuous-time models, and experiments."""

from .coefficients import (ContinuousScaling, GrowthFamily, MonotoneMap, Schedule,
                           chen_scaling, constant_momentum_sc, fit_geometric_ratio,
                           fit_polynomial_growth, muehlebach_convex_scaling,
                           muehlebach_sc_scaling, scaling_from_tau, schedule_from_A,
                           su_growth, su_limit_coefficients, su_limit_scaling,
                           tau_from_scaling, validate_ideal_scaling, wilson_growth)
from .errors import (CapabilityError, ConfigError, ConfigFileNotFoundError,
                     ConfigParseError, ConfigSchemaError, DivergenceError,
                     ScheduleError, TimeDomainError)
from .flows import (CATALOG, FlowModel, lookahead_Y, make_model, rhs, xv_to_xz, xz_to_xv)
from .integrate import (DeviationMetrics, IntegrationSpec, deviation_metrics, integrate,
                        reduction_percent)
from .lyapunov import EnergyTrace, certify, energy_general, energy_single
from .nag import (IterateState, nag_step_three, nag_step_two, run_nag,
                  run_three_sequence, run_two_sequence)
from .problems import (MirrorMap, Objective, bregman_divergence, diag_quadratic_map,
                       euclidean_map, finite_diff_hess_vec, make_diag_quadratic,
                       make_random_spd_quadratic)
from .reparam import (cubic_interpolate, qr_discretize, reparametrize, verify_time_xz,
                      z_trajectory)
from .restart import (RestartRun, UnifiedForm, restart_condition_ours,
                      restart_condition_su, run_restart, unified_form_from_scaling,
                      verify_monotone)
from .trajectory import Trajectory

__version__ = "0.1.0"
