"""Exact computations on strata of real Bruhat cells.

Reduced words and permutations live in :mod:`.combinatorics`, the Clifford
algebra over Z[1/sqrt2] in :mod:`.clifford`, the finite spin groups in
:mod:`.spinweyl`, sign-vector strata and their 1-skeleta in :mod:`.strata`
and exact rational matrices in :mod:`.matrixland`.
"""

from __future__ import annotations

from .clifford import (
    CliffordElement,
    generator_acute,
    generator_ahat,
    pi_matrix,
    sign_conjugate,
    to_ahat_string,
)
from .combinatorics import (
    Face,
    Permutation,
    ReducedWord,
    block_set,
    canonical_word,
    cycle_count,
    faces,
    inversions,
    is_reduced,
    longest_word,
    parse_permutation,
    parse_word,
    perm_from_word,
)
from .dyadic import ScaledDyadic
from .kernels import BACKEND
from .spinweyl import (
    OrbitReport,
    acute_of,
    coset,
    in_tilde_H,
    lift_word,
    n_of_z,
    orbit,
    orbit_decomposition,
    perm_of_spin,
    quat_elements,
)
from .strata import (
    AncestryVector,
    StrataGraph,
    click,
    components,
    components_total,
    edge_label,
    enumerate_dim0,
    isolated_count,
    strata_graph,
)

__version__ = "0.1.0"
