"""Computation on piecewise-constant-curvature polygonal complexes.

Comparison geometry in the model planes, combinatorial Gauss-Bonnet
accounting, closed-form contraction constants, approximate geodesics and
projections on realized complexes, and cube-complex link conditions.
"""

from .complexes import (
    AngledComplex,
    CurvatureReport,
    LinkGraph,
    cat_minus_one_admissible,
    face_curvature,
    gauss_bonnet,
    is_locally_cat0,
    link_graph,
    link_shortest_cycle,
    subdivide_edge,
    triangle_deficiency,
    vertex_curvature,
    vertex_link_girths,
)
from .constants import (
    ContractionParams,
    contraction_bound,
    eta,
    max_base_angle,
    prop1_radii,
    shadow_scale,
)
from .cubelinks import (
    SimplicialLink,
    classify_cat_minus1_vertices,
    has_induced_4cycle,
    is_flag,
)
from .generators import (
    SurfaceGluingSpec,
    gen_beaded_strip,
    gen_figure3,
    gen_standard,
    gen_surface,
    regular_polygon_side,
)
from .metric import (
    ChartLine,
    GeodesicPath,
    H2Patch,
    Location,
    MarkedGeodesic,
    MetricComplex,
    approx_distance,
    contraction_diameter_test,
    project_to_path,
    realize,
    shadow_lemma_test,
    shadow_member,
    shortest_path,
)
from .model import (
    CurvatureClass,
    FLAT,
    HYPERBOLIC,
    ModelPoint,
    TriangleAngles,
    TriangleSides,
    alexandrov_angle,
    angle_from_angles_and_side,
    cat_inequality_check,
    comparison_angles,
    embed_comparison_triangle,
    geodesic_point,
    model_distance,
)
from .prop2 import (
    Prop2Certificate,
    build_prop2_certificate,
    certificate_from_configuration,
    verify_prop2_certificate,
)

__version__ = "0.1.0"
