"""Embedded graphs, dual orientations and the homology of slack vectors."""

from .embedding import (EmbeddedGraph, EmbeddingError, Face, FaceStructure,
                        odd_cycles_one_sided, trace_faces)
from .dual import (IN, OUT, CrossFreeDecomposition, DualOrientation, alternating_orientation,
                   crosses, crossfree_decompose, is_cross_free)
from .homology import (HomologyBasis, HomologyClass, RepresentationReport, check_hypotheses,
                       homology_basis, omega, shortest_odd_cycle, verify_dual_representation)

__all__ = [
    "EmbeddedGraph", "EmbeddingError", "Face", "FaceStructure", "odd_cycles_one_sided",
    "trace_faces", "IN", "OUT", "CrossFreeDecomposition", "DualOrientation",
    "alternating_orientation", "crosses", "crossfree_decompose", "is_cross_free",
    "HomologyBasis", "HomologyClass", "RepresentationReport", "check_hypotheses",
    "homology_basis", "omega", "shortest_odd_cycle", "verify_dual_representation",
]
