"""Adaptive quantum state tomography benchmarks with a lifted-projector L1 estimator."""

from .estimator import (EigenDecomposition, EstimationProblem, SolverConfig,
                        estimate_density_matrix, forward_map, hermitian_eig,
                        project_psd_trace_one, project_simplex)
from .metrics import frobenius_sq, mse, trace_distance
from .pauli import (PauliSetting, ProjectorBasis, born_probabilities,
                    dictionary_matrix, enumerate_settings, full_dictionary,
                    projector)
from .pipeline import (ExperimentPlan, RunResult, StateSpec, combine_three_step,
                       combine_two_step, run_fixed, run_plan, run_three_step,
                       run_two_step, save_run_result, uniform_allocation)
from .sampling import (CountTable, FrequencyTable, measure_round,
                       simulate_counts, substream)
from .selection import (SelectionConfig, SelectionError, allocate_copies,
                        decompose_l1, setting_weights)
from .states import (check_density_matrix, load_state_file, make_cat_state,
                     make_noon_state, make_w_state, maximally_mixed, purity,
                     random_density_matrix, save_state_file)

__version__ = "0.1.0"
