"""Entanglement polytopes: classify and witness multipartite entanglement from local spectra."""

__version__ = "0.1.0"

from .state import (LocalOperatorTuple, PureState, SpectrumPoint, apply_local_ops,
                    local_spectra, make_state, named_state, purity_bound_from_spectra,
                    reduced_density_matrix)
from .covariants3 import classify3, eval_covariants, polytope_from_covariants, vanishing_pattern
from .polytope import (HalfspaceSystem, Polytope, contains, l1_distance, max_linear_entropy,
                       min_norm_point)
from .catalogs import (Catalog, catalog_3q, catalog_4q, marginal_polytope_nqubits,
                       partition_polytope)
from .witness import (exclusion_report, genuine_multipartite_check, ghz_witness_3q,
                      noise_radius, w4_facet_check)
from .distill import FlowSettings, Trajectory, distill_step, flow_direction, linear_entropy, run_flow
from .bosonic import BosonicState, bosonic_catalog, bosonic_flow_step, bosonic_rdm
