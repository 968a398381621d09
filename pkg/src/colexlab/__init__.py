"""colexlab: a desk-scale verification laboratory for topological color codes.

Builds colorable lattices on closed 2- and 3-manifolds, the CSS codes they
carry, and checks — exactly, in cyclotomic arithmetic — transversal phase
gate behavior, boundary SPT structure of restricted-gate excitations, the
transparent domain-wall census, and two- and three-loop braiding phases.
"""

from .colex import (
    BoundaryLattice,
    Cell,
    CellSupport,
    Colex,
    Region,
    build_16cell_colex,
    build_bcc_torus,
    build_hex_torus,
    build_octahedral_sphere,
    cell_support,
    region_and_boundary,
)
from .code import (
    ColorCode,
    GroundState,
    Syndrome,
    build_color_code,
    code_parameters,
    conjugate_by_transversal,
    export_css,
    ground_state,
    string_or_membrane_operator,
    syndrome_of,
)
from .cyclo import Cyc, phase_as_pi_fraction
from .errors import (
    ColexlabError,
    ConfigurationError,
    ConstructionError,
    DegenerateBoundaryError,
    ResourceError,
)
from .f2 import BinMat, BinVec, Pauli, f2_rank_solve, pauli_product, symplectic_commute
from .phasepoly import (
    MixedOperator,
    PhasePolynomial,
    ground_expectation,
    pauli_commutator,
    preserves_codespace,
    scalar_on_codespace,
    sequential_commutator,
    transversal_phase_poly,
)

__version__ = "0.1.0"
