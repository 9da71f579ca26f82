"""Crossing numbers and certified drawings for bounded-pathwidth graphs."""

from __future__ import annotations

from .approx3 import ApproxResult, draw_approx_pw3, is_3_traceable, lower_bound_pw3, split_at_missing_edge
from .approxw import PwwBounds, draw_maximal_pww, layout_maximal_pww, lower_bound_pww, mu, upper_bound_pww
from .decomposition import (
    AlternatingDecomposition,
    Cluster,
    PathDecomposition,
    compute_pathwidth_exact,
    extract_clusters,
    is_maximal,
    maximize,
    to_alternating,
    validate_decomposition,
)
from .drawing import CrossingReport, Drawing, count_crossings, render_svg
from .exact import cr_exact, draw_exact, layout_exact, zarankiewicz
from .gadget import PartitionInstance, build_gadget, check_instance, draw_from_partition, formula
from .generate import Instance, random_maximal, random_subgraph
from .graph import Graph
from .oracle import partition_bruteforce, rectilinear_cr_bruteforce

__all__ = [
    "AlternatingDecomposition",
    "ApproxResult",
    "Cluster",
    "CrossingReport",
    "Drawing",
    "Graph",
    "Instance",
    "PartitionInstance",
    "PathDecomposition",
    "PwwBounds",
    "build_gadget",
    "check_instance",
    "compute_pathwidth_exact",
    "count_crossings",
    "cr_exact",
    "draw_approx_pw3",
    "draw_exact",
    "draw_from_partition",
    "draw_maximal_pww",
    "extract_clusters",
    "formula",
    "is_3_traceable",
    "is_maximal",
    "layout_exact",
    "layout_maximal_pww",
    "lower_bound_pw3",
    "lower_bound_pww",
    "maximize",
    "mu",
    "partition_bruteforce",
    "random_maximal",
    "random_subgraph",
    "rectilinear_cr_bruteforce",
    "render_svg",
    "split_at_missing_edge",
    "to_alternating",
    "upper_bound_pww",
    "validate_decomposition",
    "zarankiewicz",
]
