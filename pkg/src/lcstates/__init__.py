"""Which multipartite mixed states can arise from pure states under local
noise, with or without classical communication."""

from .states import (SystemShape, PureState, DensityMatrix, SchmidtForm,
                     InvariantError, UnsupportedError, tensor_product,
                     partial_trace, distance, schmidt_decompose,
                     canonical_state, basis_state, ghz_state, w_state,
                     max_entangled, z_mixture, purify, deterministic_eigh)
from .channels import (LocalChannel, EnvironmentGram, ParameterCounts,
                       channel_from_environment_gram,
                       environment_gram_from_channel, apply_product_channel,
                       adjoint_channel, random_local_channel, standard_noise,
                       depolarizing_channel, dephasing_channel,
                       amplitude_damping_channel, identity_channel, compose,
                       parameter_counts)
from .slocc import SloccClass, three_tangle, marginal_ranks, classify_three_qubit
from .locc import (Ensemble, ConversionProtocol, SynthesisPlan, majorizes,
                   can_convert, build_conversion, spectral_ensemble,
                   build_synthesis_plan, simulate_synthesis,
                   lccc_synthesize_bipartite)
from .reach import (LCConfiguration, SearchResult, Certificate,
                    precursor_optimal_for_channels, lc_distance_search,
                    lccc_obstruction_check, NOT_LCCC, LCCC_BIPARTITE, UNKNOWN)

__version__ = "0.1.0"
