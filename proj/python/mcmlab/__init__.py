"""Hilbert coefficients, Tor and e^T of maximal Cohen-Macaulay modules."""

from ._mcmlab import (
    CapExceeded,
    Error,
    ExtGroup,
    Filtration,
    InputError,
    InvariantViolation,
    Module,
    NotGraded,
    Ring,
    Sequence,
    TruncationInsufficient,
    WindowTooShort,
    adic,
    annihilation_index,
    baer_sum,
    betti_numbers,
    catalog_list,
    catalog_run,
    complexity,
    etor,
    etor_of_sequence,
    hilbert_coefficients,
    integral_closure,
    is_exact,
    is_tsplit,
    m_adic,
    make_ring,
    pullback,
    pushout,
    scalar_mult,
    split_sequence,
    tor_lengths,
)

__version__ = "0.1.0"
