"""Symmetric multiqubit states without N-partite correlations.

Tensor coordinates, the antistate pairing, entanglement certifiers and the
Dicke-pair families, with a small CLI on top.
"""
from ._config import USE_NUMBA
from .antistate import (
    NotSNCError,
    PairingError,
    SpectralPairing,
    majorana_roots,
    pair_decompose,
    purity_check,
    unot_conjugate,
)
from .entcert import (
    CertVerdict,
    Verdict,
    a_matrix,
    alpha_condition,
    max_overlap,
    ppt_first_qubit,
    q_poly,
    rank2_certify,
    sufficient_criterion,
    three_qubit_exact,
    x_matrix_positivity,
)
from .families import (
    MixtureSpec,
    a_closed_form,
    exact_threshold_n3,
    max_u,
    mixture_state,
    rank2_state,
    sphere_bound,
    u_function,
    weighted_bound,
)
from .nocorr import is_anticoherent_1, is_snc, snc_report
from .symrep import (
    BlochVector,
    PauliCounts,
    SymTensor,
    coherent_state,
    dicke_state,
    embed_one_qubit,
    from_tensor,
    reduce,
    s_matrix,
    to_tensor,
)

__version__ = "0.1.0"
