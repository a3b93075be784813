"""Actions of generalized quasi-dihedral groups on Riemann and Klein surfaces.

Exact group arithmetic, NEC-signature bookkeeping, exhaustive surface-kernel
epimorphism enumeration, topological classification, dessins d'enfants and
minimal-genus searches, with a CLI for one-shot verification runs.
"""

from .groups import (
    Automorphism,
    FiniteGroup,
    ProductWithCyclicGroup,
    SemidirectC2Group,
    Subgroup,
    SubgroupViewGroup,
    automorphism_group,
    cyclic_index_two,
    dicyclic_index_two,
    dihedral_index_two,
    doubled_quasi_dihedral,
    euler_phi,
    index_two_by_tag,
    product_with_cyclic,
    quasi_dihedral,
)
from .signatures import (
    KernelKind,
    NECSignature,
    PresentationSkeleton,
    SignatureError,
    enumerate_signatures,
    orientation_double,
    parse_signature,
    presentation,
    rh_genus,
)
from .epimorphisms import (
    GeneratingVector,
    KernelConstraint,
    admissible,
    check_vector,
    enumerate_vectors,
    vector_from_images,
)
from .actions import (
    JacobianLedger,
    ParityVerdict,
    QuotientOrbifold,
    conformal_part_vector,
    fix_profile,
    fixed_point_count,
    is_purely_non_free,
    jacobian_ledger,
    pseudo_real_conformal_part,
    quotient_signature,
    sylow_parity_obstruction,
    triangular_vector,
)
from .classify import MoveSet, NoMoveSetError, Orbit, classify, default_moves, separating_invariant
from .dessins import DessinGraph, MonodromyPair, dessin_data, generator_pair_classes, regular_monodromy
from .genus import (
    BoundTooSmallError,
    GenusRecord,
    ejemplo_family_vector,
    pseudo_real_min,
    pure_symmetric_genus,
    real_genus,
    strong_symmetric_genus,
    symmetric_crosscap,
    symmetric_hyperbolic_genus,
    tps1_family_vector,
    tps_family_vector,
)
from .tables import extension_lookup, fuchsian_always_extends
from .theorems import REGISTRY, TheoremResult, VerifyReport, run_theorem, theorem_ids

__version__ = "0.1.0"
