"""Exact computation with comonoids, comodules and quantum categories.

Structures live in a strict monoidal backend: finite sets (``FinSet``),
rational vector spaces with chosen bases (``FdVect``) or the opposite of either
(``Opposite``).  All arithmetic is exact.
"""

from .checks import Check
from .comod import (
    Comodule,
    ComoduleMap,
    Comonoid,
    associator,
    bidual_monoidale,
    counit_comodule,
    cofree_corestrict,
    cofree_extend,
    cofree_target,
    comodule_checks,
    comonoid_checks,
    cotensor,
    identity_comodule,
    left_unitor,
    opposite_comonoid,
    right_unitor,
    star_adjunction,
    tensor_comodules,
    tensor_comonoids,
    triangle_identities,
    unit_comonoid,
    unit_extend,
    validate_comodule,
    validate_comonoid,
)
from .constructors import (
    BialgebraData,
    FinCat,
    FinFunctor,
    HopfGroupCoalgebraData,
    dual_group_algebra,
    from_bialgebra,
    from_hopf_group_coalgebra,
    from_small_category,
    functor_from_small,
    group_algebra,
    linearize,
    monoid_category,
    nat_from_components,
    to_small_category,
    trivial_hopf_group_coalgebra,
    walking_arrow,
)
from .context import Atom, FdVect, FinSet, MonoidalContext, Morphism, Obj, Opposite
from .errors import QCatError
from .functors import (
    QuantumFunctor,
    QuantumNatTransformation,
    compose_functors,
    identity_functor,
    validate_functor,
    validate_nat_transformation,
)
from .linalg import ExactMatrix
from .quantum import (
    AxiomReport,
    QuantumCategory,
    QuantumGraph,
    check_axiom,
    check_axioms,
    composable_pairs,
    is_quantum_category,
    tensor_quantum_categories,
)

__all__ = [
    "Atom",
    "AxiomReport",
    "BialgebraData",
    "Check",
    "Comodule",
    "ComoduleMap",
    "Comonoid",
    "ExactMatrix",
    "FdVect",
    "FinCat",
    "FinFunctor",
    "FinSet",
    "HopfGroupCoalgebraData",
    "MonoidalContext",
    "Morphism",
    "Obj",
    "Opposite",
    "QCatError",
    "QuantumCategory",
    "QuantumFunctor",
    "QuantumGraph",
    "QuantumNatTransformation",
    "associator",
    "bidual_monoidale",
    "check_axiom",
    "check_axioms",
    "cofree_corestrict",
    "cofree_extend",
    "cofree_target",
    "comodule_checks",
    "comonoid_checks",
    "composable_pairs",
    "compose_functors",
    "cotensor",
    "counit_comodule",
    "dual_group_algebra",
    "from_bialgebra",
    "from_hopf_group_coalgebra",
    "from_small_category",
    "functor_from_small",
    "group_algebra",
    "identity_comodule",
    "identity_functor",
    "is_quantum_category",
    "left_unitor",
    "linearize",
    "monoid_category",
    "nat_from_components",
    "opposite_comonoid",
    "right_unitor",
    "star_adjunction",
    "tensor_comodules",
    "tensor_comonoids",
    "tensor_quantum_categories",
    "to_small_category",
    "triangle_identities",
    "trivial_hopf_group_coalgebra",
    "unit_comonoid",
    "unit_extend",
    "validate_comodule",
    "validate_comonoid",
    "validate_functor",
    "validate_nat_transformation",
    "walking_arrow",
]
__version__ = "0.1.0"
