"""Reconstruct lines from a 2-transitive action and check the geometry."""

from .axioms import (
    DEFAULT_VEBLEN_BUDGET,
    AxiomReport,
    AxiomSuite,
    check_quadrilateral,
    check_unique_line,
    check_veblen,
    run_axioms,
    veblen_holds,
)
from .lines import (
    DEFAULT_POLICY,
    IncidenceGeometry,
    LineDetectionPolicy,
    build_geometry,
    detect_line,
    line_orbit,
    split_suborbits,
    two_point_suborbits,
)
from .structure import (
    FrameReport,
    GeneralPosition,
    PencilReport,
    frame_stabilizer_report,
    general_position_tuple,
    greedy_max_tuple,
    infer_dimension,
    pencil_quotient_report,
)

__all__ = [
    "DEFAULT_POLICY", "DEFAULT_VEBLEN_BUDGET", "AxiomReport", "AxiomSuite",
    "FrameReport", "GeneralPosition", "IncidenceGeometry", "LineDetectionPolicy",
    "PencilReport", "build_geometry", "check_quadrilateral", "check_unique_line",
    "check_veblen", "detect_line", "frame_stabilizer_report",
    "general_position_tuple", "greedy_max_tuple", "infer_dimension",
    "line_orbit", "pencil_quotient_report", "run_axioms", "split_suborbits",
    "two_point_suborbits", "veblen_holds",
]
