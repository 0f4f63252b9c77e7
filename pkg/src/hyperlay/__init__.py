"""Graph layout in hyperbolic, spherical and Euclidean geometry.

Three layout methods: projection of a precomputed Euclidean layout into
H^2 (inverse hyperbolic Lambert azimuthal projection), a tangent-plane
force-directed solver, and stochastic-gradient-descent metric MDS in all
three geometries; plus stress/distortion evaluation and Poincare-disk
SVG rendering.
"""

from .geometry import (
    DomainError,
    EuclideanPoint,
    HyperbolicPolar,
    LobachevskyPoint,
    MobiusTranslation,
    PoincarePoint,
    SpherePoint,
    distance_gradient,
    lambert_inverse_radius,
    lobachevsky_distance,
    lobachevsky_to_poincare,
    mobius_apply,
    mobius_unapply,
    poincare_distance,
    poincare_to_lobachevsky,
    polar_to_poincare,
    sphere_distance,
)
from .graphs import (
    DistanceMatrix,
    Graph,
    GraphError,
    GraphParseError,
    apsp,
    generate,
    parse_graph,
)
from .projection import (
    Layout,
    center_layout,
    coverage_scale,
    project_pipeline,
    project_to_hyperbolic,
    to_display,
)
from .force import ForceParams, kk_energy, layout_force, tangent_map, tangent_unmap
from .hmds import (
    Schedule,
    SgdParams,
    init_layout,
    pair_order,
    resolve_alpha,
    run_gd,
    run_mds,
    schedule_eta,
    sgd_step_pair,
)
from .metrics import (
    QualityReport,
    compare_geometries,
    distortion,
    evaluate,
    format_comparison,
    stress,
)
from .render import GeodesicArc, RenderStyle, geodesic_arc, label_size, render_svg
from .layout_io import read_layout_file, write_layout_file

__version__ = "0.1.0"
