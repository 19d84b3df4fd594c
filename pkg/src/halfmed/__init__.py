"""halfmed: exact halfspace depth, depth regions, medians, and robustness.

The package computes the Tukey halfspace depth of rational point sets
exactly — duplicated points, collinear subsets, and other degeneracies are
counted with multiplicity rather than perturbed — and builds on it:

* depth regions as explicit convex polytopes with a certificate route
  (non-rotatable supporting halfspaces) and a fast cutting-plane route;
* the deepest-point region and its barycenter (the halfspace median);
* exact contamination-robustness bounds for the median, including
  constructive worst-case contamination plans;
* reference samplers and diagnostic probes for the assumptions behind the
  asymptotic one-third robustness level, plus convergence experiments.
"""

from .geometry import (
    DataSet,
    Halfspace,
    Side,
    affine_dimension,
    as_fraction,
    canonical_direction,
    convex_hull_2d,
    convex_hull_contains,
    dataset,
    dataset_from_floats,
    halfspace,
    hull_halfspaces,
    point,
    read_dataset,
    side_of,
    snap,
    write_dataset,
)
from .polytope import (
    Polytope,
    barycenter,
    clip_polygon,
    dedup_halfspaces,
    intersect_halfspaces,
    vertex_centroid,
    write_region_files,
)
from .depth import (
    DepthResult,
    approximate_depth,
    directional_quantile,
    direction_net,
    max_depth_1d,
    median_interval_1d,
    optimal_direction_cone,
    population_depth_estimate,
    quantile_index,
    tukey_depth,
)
from .regions import (
    IrrotatableCertificate,
    MedianResult,
    RegionResult,
    certificate_for,
    depth_region,
    enumerate_irrotatable,
    halfspace_median,
    is_irrotatable,
    max_depth,
    median_region,
)
from .breakdown import (
    AttackVerification,
    BreakdownReport,
    BREAKDOWN_CSV_HEADER,
    ContaminationPlan,
    DirectionSearchConfig,
    ProjectionFrame,
    UpperBoundResult,
    breakdown_csv_row,
    build_attack,
    exact_breakdown,
    lower_bound,
    project_dataset,
    projected_lambda,
    projection_frame,
    upper_bound,
    verify_attack,
)
from .distributions import (
    DistributionSpec,
    ProbeReport,
    atom_on_hyperplane,
    ball_sphere_mixture,
    degenerate_sampler,
    depth_continuity_probe,
    discrete_cloud,
    format_spec,
    halfspace_symmetry_probe,
    parse_spec_file,
    parse_spec_text,
    sample,
    sample_floats,
    smoothness_probe,
    symmetrize,
    uniform_ball,
    uniform_sphere,
)
from .experiments import (
    AttackDemoResult,
    AttackDemoRow,
    ConvergenceResult,
    ConvergenceRow,
    ExperimentConfig,
    OracleSummary,
    PreflightError,
    aggregate_convergence,
    median_fraction,
    run_attack_demo,
    run_convergence,
    run_region_oracle,
    trend_ok,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AttackDemoResult",
    "AttackDemoRow",
    "AttackVerification",
    "BREAKDOWN_CSV_HEADER",
    "BreakdownReport",
    "ContaminationPlan",
    "ConvergenceResult",
    "ConvergenceRow",
    "DataSet",
    "DirectionSearchConfig",
    "DistributionSpec",
    "ExperimentConfig",
    "Halfspace",
    "IrrotatableCertificate",
    "MedianResult",
    "OracleSummary",
    "PreflightError",
    "ProbeReport",
    "ProjectionFrame",
    "RegionResult",
    "Side",
    "DepthResult",
    "Polytope",
    "UpperBoundResult",
    "affine_dimension",
    "aggregate_convergence",
    "atom_on_hyperplane",
    "ball_sphere_mixture",
    "breakdown_csv_row",
    "build_attack",
    "degenerate_sampler",
    "depth_continuity_probe",
    "discrete_cloud",
    "exact_breakdown",
    "format_spec",
    "halfspace_symmetry_probe",
    "lower_bound",
    "median_fraction",
    "parse_spec_file",
    "parse_spec_text",
    "project_dataset",
    "projected_lambda",
    "projection_frame",
    "run_attack_demo",
    "run_convergence",
    "run_region_oracle",
    "sample",
    "sample_floats",
    "smoothness_probe",
    "symmetrize",
    "trend_ok",
    "uniform_ball",
    "uniform_sphere",
    "upper_bound",
    "verify_attack",
    "write_csv",
    "certificate_for",
    "depth_region",
    "enumerate_irrotatable",
    "halfspace_median",
    "is_irrotatable",
    "max_depth",
    "median_region",
    "approximate_depth",
    "as_fraction",
    "barycenter",
    "canonical_direction",
    "clip_polygon",
    "convex_hull_2d",
    "convex_hull_contains",
    "dataset",
    "dataset_from_floats",
    "dedup_halfspaces",
    "direction_net",
    "directional_quantile",
    "halfspace",
    "hull_halfspaces",
    "intersect_halfspaces",
    "max_depth_1d",
    "median_interval_1d",
    "optimal_direction_cone",
    "point",
    "population_depth_estimate",
    "quantile_index",
    "read_dataset",
    "side_of",
    "snap",
    "tukey_depth",
    "vertex_centroid",
    "write_dataset",
    "write_region_files",
]
