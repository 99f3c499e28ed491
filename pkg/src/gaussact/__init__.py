"""Activation and superactivation of quantum capacity for single-mode
phase-insensitive Gaussian channels assisted by a two-mode PPT channel."""
from .activation import (
    ActivationResult,
    InputFamilyParams,
    SearchConfig,
    activation_difference_map,
    activation_objective,
    input_family,
    optimize_activation,
)
from .bounds import (
    BoundKind,
    coherent_information,
    max_coherent_information,
    q_data,
    q_plob,
    q_upper,
)
from .channels import (
    DilatedChannel,
    PhaseInsensitiveSpec,
    Region,
    amplifier,
    apply,
    apply_complementary,
    attenuator,
    classify_region,
    is_ppt_parameter,
    ppt_channel,
    tensor_with_ppt,
    weak_complementary_attenuator,
)
from .symplectic import (
    direct_sum,
    g_function,
    gaussian_entropy,
    is_physical,
    is_symplectic,
    partial_transpose,
    symplectic_eigenvalues,
    symplectic_form,
    tmsv,
)

__version__ = "0.1.0"
