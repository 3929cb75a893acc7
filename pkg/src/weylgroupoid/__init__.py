"""Exact Weyl groupoids of diagonal bicharacters, their Cayley graphs, and
Hamilton circuits built by inductive coset splicing, with a backtracking
oracle for independent verification."""

from .exactnum import (
    CycInteger,
    CycScalar,
    CyclotomicRing,
    ScalarWorkspace,
    WorkspaceMismatch,
    format_scalar,
    mult_order,
    parse_scalar,
    q_number_is_zero,
    solve_pow_eq,
)
from .bichar import (
    Bicharacter,
    DynkinDiagram,
    InfiniteType,
    ObjectKey,
    is_cartan_type,
    n_ij,
    normalize,
    object_key,
    reflection_s_i,
    relabel,
    restrict,
    tau_i,
)
from .groupoid import (
    CapExceeded,
    CayleyGraph,
    CosetPartition,
    Morphism,
    RootSystem,
    coset_partition,
    enumerate,
    m_ij,
    objects,
    roots,
    verify_axioms,
)
from .coxeter import CoxeterSystem, csw_circuit, enumerate_group, generator_ordering
from .hamilton import (
    CircuitMap,
    CircuitReport,
    Requirement,
    SpliceStuck,
    backtrack_search,
    find_circuit,
    splice_groupoid,
    transform,
    verify,
)
from .catalog import (
    builtin_rank3_examples,
    cartan_bicharacter,
    get_entry,
    load_entries,
    super_bicharacter,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
