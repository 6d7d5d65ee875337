"""Kernelization workbench for generalized distance covering and packing.

Given a finite family of small connected patterns and radii (p, r), the
covering problem asks for few vertices whose distance-r ball hits every
pattern occurrence in the p-th graph power, and the packing problem for many
occurrences pairwise farther than r apart.  This package implements
size-reducing kernelizations for both on sparse graphs, the approximation
and structural subroutines they need, and brute-force oracles that certify
kernel correctness at desk scale.
"""

from .backend import BACKEND
from .config import KernelConfig
from .graph import (
    DistanceMap,
    Graph,
    GraphBuilder,
    GraphError,
    attach_pendant_path,
    ball,
    build_graph,
    disjoint_union,
    distances,
    induced_subgraph,
    is_connected,
    q_subdivision,
    set_distance,
    vertex_set,
)
from .kernel_cover import CoverKernelOutput, annotated_cover_kernel, compute_core, core_reduction_step, full_cover_kernel
from .kernel_pack import PackKernelOutput, annotated_pack_kernel, full_pack_kernel, pack_reduction_step, reduce_pack_set
from .oracle import (
    ExactResult,
    OracleCapExceeded,
    check_core_property,
    cover_decision,
    enumerate_min_covers,
    exact_cover_number,
    exact_packing_number,
    packing_decision,
    verify_kernel_equivalence,
)
from .patterns import (
    CriticalGadget,
    Occurrence,
    PatternFamily,
    build_critical_gadget,
    enumerate_occurrences,
    exists_occurrence_avoiding,
    guard_holds,
    is_cover,
    is_packing,
    is_pattern_match,
)
from .sparsity import (
    CloseSetResult,
    LinearOrder,
    ProjectionProfile,
    UqwResult,
    close_set,
    degeneracy_order,
    partition_by_profile,
    path_closure,
    projection_profile,
    uqw_extract,
    wcol_exact,
    wcol_of_order,
    weak_reach,
)
from .approx import CoverResult, dual_cover, dual_cover_report, greedy_cover_wcol, greedy_hitting_cover
from .workbench import (
    FormatError,
    Report,
    generate_instance,
    parse_family,
    parse_graph,
    parse_vertex_list,
    run_experiment,
    write_graph,
)

__version__ = "0.1.0"
