"""Exact homology of matching and bounded-degree graph complexes."""

from matchhom.complexes import (
    ComplexSpec,
    FaceTable,
    ParallelEdgeError,
    bounded,
    consecutive_blocks,
    contract_simplex,
    delta_part,
    enumerate_faces,
    face_counts,
    gamma_part,
    interleaved_blocks,
    is_face,
    iter_faces,
    lift_simplex,
    make_simplex,
    matching,
    matching_minus_edge,
)

__version__ = "0.1.0"
