"""Bell-state discrimination, Smolin-type states and their entanglement bounds."""
from .qcore import (
    Spectrum,
    UsageError,
    ValidationError,
    eigh,
    fidelity_with_pure,
    partial_trace,
    partial_transpose,
    permute_qubits,
    projector,
    relative_entropy,
    tensor,
    von_neumann_entropy,
)
from .bellzoo import (
    AB_CD,
    AC_BD,
    AD_BC,
    AbPair,
    BellLabel,
    Cut,
    bell,
    cut_permutation,
    rel_pauli,
    rho2,
    rho2prime,
    rho3,
    smolin,
)
from .entanglement import (
    BoundsReport,
    CertificateError,
    SeparabilityCertificate,
    dephasing_candidate,
    distillable_bounds,
    log_negativity,
    ppt_min_eigenvalue,
    rel_ent_upper_bound,
    smolin_certificate,
    verify_certificate,
)
from .locc import (
    Transcript,
    conditional_bob_state,
    discriminate_four_bell_two_copies,
    discriminate_two_bell,
    overlap_triple,
    sample,
    three_bell_oneway_search,
    unlock_joint,
    unlock_rho2prime,
)

__version__ = "0.1.0"
